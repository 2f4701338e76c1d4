// SPDX-License-Identifier: Apache-2.0
//
// Closed-form D2D ASE bound, its interference-limited ceiling, the required
// transmit SNR for a target ASE, and the CUE spectral efficiency under D2D
// interference (finite density and dense-network limit).
//
// Units: densities in m^-2, ASE in bits/s/Hz/m^2, SE in bits/s/Hz.
#pragma once

#include <cassert>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "d2dmimo/errors.hpp"
#include "d2dmimo/model.hpp"

namespace d2dmimo {

inline constexpr double kDefaultFeasibilityMargin = 1e-9;

struct AseBoundResult {
  double r_lambda_d;    // lower bound on the ergodic ASE
  double r_lambda_inf;  // its gamma_d -> infinity ceiling
};

struct CueSeResult {
  double r_lambda_cd;  // CUE per-user SE, bits/s/Hz
  double kappa;        // fraction of the CUE SINR lost to D2D interference
  double gamma0_c;     // interference-free CUE SINR
};

namespace detail {

inline void require_positive_density(double lambda, const char* op) {
  if (!(std::isfinite(lambda) && lambda > 0.0)) {
    throw DomainError(std::string(op) + ": lambda > 0 required");
  }
}

/// (N-1)(d0/D)^alpha_d / c1: array gain times mean inverse desired-link loss.
inline double signal_scale(const SystemParams& p, const DerivedConstants& dc) {
  return (p.N - 1) * std::pow(p.d0 / p.D, p.alpha_d) / dc.c1;
}

}  // namespace detail

/// g(lambda) = lambda (2^{R/lambda} - 1), evaluated without cancellation.
inline double rate_growth(double lambda, double ase) {
  return lambda * std::expm1(ase / lambda * std::numbers::ln2);
}

inline double interference_free_sinr(double R0_c) {
  if (!(std::isfinite(R0_c) && R0_c >= 0.0)) {
    throw DomainError("interference_free_sinr: R0_c >= 0 required");
  }
  return std::exp2(R0_c) - 1.0;
}

/// Jensen lower bound on the ergodic D2D ASE.
inline double ase_lower_bound(const OperatingPoint& op, const SystemParams& p,
                              const DerivedConstants& dc) {
  op.validate();
  detail::require_positive_density(op.lambda, "ase_lower_bound");
  const double sinr =
      detail::signal_scale(p, dc) * op.gamma_d / (1.0 + op.lambda * dc.vartheta * op.gamma_d);
  return op.lambda * std::log1p(sinr) / std::numbers::ln2;
}

/// Interference-limited ceiling of ase_lower_bound as gamma_d grows without bound.
inline double ase_limit(double lambda, const SystemParams& p, const DerivedConstants& dc) {
  detail::require_positive_density(lambda, "ase_limit");
  const double a = detail::signal_scale(p, dc) / dc.vartheta;
  return lambda * std::log1p(a / lambda) / std::numbers::ln2;
}

/// The lambda -> infinity value of ase_limit (per m^2).
inline double ase_limit_asymptote(const SystemParams& p, const DerivedConstants& dc) {
  return detail::signal_scale(p, dc) / dc.vartheta / std::numbers::ln2;
}

inline AseBoundResult ase_bounds(const OperatingPoint& op, const SystemParams& p,
                                 const DerivedConstants& dc) {
  return {ase_lower_bound(op, p, dc), ase_limit(op.lambda, p, dc)};
}

/// Strict check R0_d < ase_limit(lambda), shrunk by a relative margin so the
/// pole of the required-power relation is never approached numerically.
inline bool ase_feasible(double lambda, double R0_d, const SystemParams& p,
                         const DerivedConstants& dc,
                         double margin = kDefaultFeasibilityMargin) {
  return R0_d < ase_limit(lambda, p, dc) * (1.0 - margin);
}

/// Transmit SNR at which ase_lower_bound equals R0_d.
inline double required_gamma_d(double lambda, double R0_d, const SystemParams& p,
                               const DerivedConstants& dc,
                               double margin = kDefaultFeasibilityMargin) {
  detail::require_positive_density(lambda, "required_gamma_d");
  if (!(std::isfinite(R0_d) && R0_d > 0.0)) {
    throw DomainError("required_gamma_d: R0_d > 0 required");
  }
  const double limit = ase_limit(lambda, p, dc);
  if (!ase_feasible(lambda, R0_d, p, dc, margin)) {
    throw InfeasibleAse("target ASE is not below the interference-limited ceiling at this density",
                        limit);
  }
  const double bracket = detail::signal_scale(p, dc) / rate_growth(lambda, R0_d) - dc.vartheta;
  assert(bracket > 0.0);
  return 1.0 / (lambda * bracket);
}

/// Smallest density at which R0_d is strictly feasible, or nullopt if R0_d is
/// at or above the lambda -> infinity ceiling.
inline std::optional<double> min_feasible_lambda(double R0_d, const SystemParams& p,
                                                 const DerivedConstants& dc) {
  if (!(R0_d > 0.0)) return 0.0;
  if (R0_d >= ase_limit_asymptote(p, dc)) return std::nullopt;
  // ase_limit is increasing in lambda; bracket then bisect in log space.
  double lo = 1e-12;
  double hi = 1.0;
  while (ase_limit(hi, p, dc) <= R0_d) {
    lo = hi;
    hi *= 2.0;
  }
  while (ase_limit(lo, p, dc) > R0_d && lo > 1e-300) lo *= 0.5;
  for (int i = 0; i < 200 && hi / lo - 1.0 > 1e-14; ++i) {
    const double mid = std::sqrt(lo * hi);
    (ase_limit(mid, p, dc) > R0_d ? hi : lo) = mid;
  }
  return hi;
}

/// Jensen lower bound on the ergodic CUE SE for a given density and D2D SNR.
/// lambda = 0 is allowed and yields R0_c.
inline double cue_se_bound(const OperatingPoint& op, const SystemParams& p,
                           const DerivedConstants& dc) {
  op.validate();
  const double gamma0 = interference_free_sinr(p.R0_c);
  return std::log2(1.0 + gamma0 / (1.0 + dc.vartheta * op.lambda * op.gamma_d));
}

/// CUE SE when the D2D network is held at ASE R0_d by choosing gamma_d from
/// required_gamma_d. R0_d = 0 means no D2D traffic.
inline CueSeResult cue_se_theorem(double lambda, double R0_d, const SystemParams& p,
                                  const DerivedConstants& dc,
                                  double margin = kDefaultFeasibilityMargin) {
  detail::require_positive_density(lambda, "cue_se_theorem");
  if (!(std::isfinite(R0_d) && R0_d >= 0.0)) {
    throw DomainError("cue_se_theorem: R0_d >= 0 required");
  }
  if (R0_d > 0.0 && !ase_feasible(lambda, R0_d, p, dc, margin)) {
    throw InfeasibleAse("target ASE is not below the interference-limited ceiling at this density",
                        ase_limit(lambda, p, dc));
  }
  CueSeResult out{};
  out.gamma0_c = interference_free_sinr(p.R0_c);
  out.kappa = rate_growth(lambda, R0_d) * dc.Theta / (p.N - 1);
  assert(out.kappa < 1.0);
  out.r_lambda_cd = std::log2(1.0 + out.gamma0_c * (1.0 - out.kappa));
  return out;
}

/// Theta R0_d ln2 / (N-1): the dense-limit value of kappa.
inline double dense_kappa(double R0_d, const SystemParams& p, const DerivedConstants& dc) {
  return dc.Theta * R0_d * std::numbers::ln2 / (p.N - 1);
}

inline bool cue_limit_exists(double R0_d, const SystemParams& p, const DerivedConstants& dc) {
  return dense_kappa(R0_d, p, dc) < 1.0;
}

/// Dense-network (lambda -> infinity) CUE SE at fixed D2D ASE R0_d.
inline double cue_se_limit(double R0_d, const SystemParams& p, const DerivedConstants& dc) {
  if (!(std::isfinite(R0_d) && R0_d >= 0.0)) {
    throw DomainError("cue_se_limit: R0_d >= 0 required");
  }
  const double kappa = dense_kappa(R0_d, p, dc);
  if (!(kappa < 1.0)) {
    throw NoPositiveLimit("no positive CUE SE survives the dense-network limit at this ASE");
  }
  return std::log2(1.0 + interference_free_sinr(p.R0_c) * (1.0 - kappa));
}

/// Mean aggregate D2D interference power at a receiver, W.
inline double mean_interference(const OperatingPoint& op, const SystemParams& p,
                                const DerivedConstants& dc) {
  op.validate();
  return dc.vartheta * op.lambda * op.pd_watt(p);
}

}  // namespace d2dmimo
