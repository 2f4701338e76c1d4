// SPDX-License-Identifier: Apache-2.0
//
// System parameters, derived constants and the generalized pathloss law with
// lognormal shadowing, shared by the closed-form and Monte Carlo code.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "d2dmimo/errors.hpp"
#include "d2dmimo/units.hpp"

namespace d2dmimo {

inline constexpr double kSpeedOfLight = 3.0e8;  // m/s, the rounded value

/// Physical and layout constants, strict SI.
struct SystemParams {
  double f_c = 2.0e9;                       // carrier frequency, Hz
  double d0 = 35.0;                         // far-field distance, m
  double D = 50.0;                          // D2D pair separation, m
  double alpha_d = 4.0;                     // pathloss exponent
  double sigma_db = 3.0;                    // shadowing std, dB
  double sigma_sq = units::dbm_to_watt(-114.0);  // noise power, W
  int N = 4;                                // D2D Tx antennas
  double R0_c = 3.0;                        // interference-free CUE SE, bits/s/Hz

  /// Throws DomainError naming the first violated constraint.
  void validate() const {
    auto fail = [](const std::string& constraint) {
      throw DomainError("parameter constraint violated: " + constraint);
    };
    if (!(std::isfinite(f_c) && f_c > 0.0)) fail("f_c > 0");
    if (!(std::isfinite(d0) && d0 > 0.0)) fail("d0 > 0");
    if (!(std::isfinite(D) && D > d0)) fail("D > d0");
    if (!(std::isfinite(alpha_d) && alpha_d > 2.0)) fail("alpha_d > 2");
    if (!(std::isfinite(sigma_db) && sigma_db >= 0.0)) fail("sigma_db >= 0");
    if (!(std::isfinite(sigma_sq) && sigma_sq > 0.0)) fail("sigma_sq > 0");
    if (N < 2) fail("N >= 2");
    if (!(std::isfinite(R0_c) && R0_c > 0.0)) fail("R0_c > 0");
  }
};

/// Constants computed once from SystemParams.
struct DerivedConstants {
  double lambda_c;  // wavelength, m
  double c0;        // E[beta] * l(r)
  double c1;        // E[1/beta] / l(r)
  double vartheta;  // m^2, mean interference per unit density and power
  double Theta;     // m^2
};

/// The free variables of every formula: density and transmit SNR.
struct OperatingPoint {
  double lambda;   // D2D Tx density, m^-2
  double gamma_d;  // P_D / sigma^2

  double pd_watt(const SystemParams& p) const { return gamma_d * p.sigma_sq; }

  static OperatingPoint from_power(double lambda, double pd_watt, const SystemParams& p) {
    return {lambda, pd_watt / p.sigma_sq};
  }

  void validate() const {
    if (!(std::isfinite(lambda) && lambda >= 0.0)) {
      throw DomainError("operating point constraint violated: lambda >= 0");
    }
    if (!(std::isfinite(gamma_d) && gamma_d > 0.0)) {
      throw DomainError("operating point constraint violated: gamma_d > 0");
    }
  }
};

/// exp(sigma_db^2 (ln 10)^2 / 200): the mean of exp(+-Xi ln10/10) for Xi ~ N(0, sigma_db^2).
inline double shadowing_moment(double sigma_db) {
  const double ln10 = std::numbers::ln10;
  return std::exp(sigma_db * sigma_db * ln10 * ln10 / 200.0);
}

inline DerivedConstants derive_constants(const SystemParams& p) {
  p.validate();
  const double pi = std::numbers::pi;
  DerivedConstants dc{};
  dc.lambda_c = kSpeedOfLight / p.f_c;
  const double ref = dc.lambda_c / (4.0 * pi * p.d0);  // free-space gain at d0 (amplitude)
  const double m = shadowing_moment(p.sigma_db);
  dc.c0 = ref * ref * m;
  dc.c1 = m / (ref * ref);
  dc.vartheta = pi * p.d0 * p.d0 * dc.c0 * p.alpha_d / (p.alpha_d - 2.0);
  dc.Theta = dc.vartheta * dc.c1 * std::pow(p.D / p.d0, p.alpha_d);
  return dc;
}

/// l(r) = max(1, r/d0)^alpha_d
inline double pathloss(double r, const SystemParams& p) {
  return std::pow(std::max(1.0, r / p.d0), p.alpha_d);
}

/// Draws shadowed link gains beta(r) for a fixed parameter set. Caches the
/// free-space reference gain so the per-link cost is one normal draw.
class ShadowedPathloss {
 public:
  explicit ShadowedPathloss(const SystemParams& p)
      : d0_(p.d0),
        alpha_(p.alpha_d),
        shadow_(0.0, p.sigma_db),
        sigma_db_(p.sigma_db) {
    const double ref = (kSpeedOfLight / p.f_c) / (4.0 * std::numbers::pi * p.d0);
    ref_gain_ = ref * ref;
  }

  double reference_gain() const noexcept { return ref_gain_; }

  double mean_gain(double r) const {
    return ref_gain_ * shadowing_moment(sigma_db_) / std::pow(std::max(1.0, r / d0_), alpha_);
  }

  template <class Rng>
  double operator()(double r, Rng& rng) {
    return ref_gain_ / loss(r) * shadowing(rng);
  }

  /// exp(-Xi_dB ln10 / 10)
  template <class Rng>
  double shadowing(Rng& rng) {
    if (sigma_db_ == 0.0) return 1.0;
    return std::exp(-shadow_(rng) * (std::numbers::ln10 / 10.0));
  }

  double loss(double r) const {
    const double x = r / d0_;
    if (x <= 1.0) return 1.0;
    if (alpha_ == 4.0) {
      const double x2 = x * x;
      return x2 * x2;
    }
    return std::pow(x, alpha_);
  }

 private:
  double d0_;
  double alpha_;
  double ref_gain_ = 0.0;
  std::normal_distribution<double> shadow_;
  double sigma_db_;
};

/// beta = (lambda_c / 4 pi d0)^2 / l(r) * exp(-Xi_dB ln10 / 10), Xi_dB ~ N(0, sigma_db^2).
template <class Rng>
double sample_beta(double r, const SystemParams& p, Rng& rng) {
  ShadowedPathloss law(p);
  return law(r, rng);
}

}  // namespace d2dmimo
