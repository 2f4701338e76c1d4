// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo estimators of the exact ergodic quantities: the D2D ASE, the
// CUE per-user SE and the mean aggregate D2D interference. Interferers are a
// PPP truncated to a disk whose radius bounds the omitted mean interference.
//
// Each trial draws its randomness from rng::substream(seed, tag, trial), and
// trial outputs are reduced in trial order, so results are bit-identical for
// any worker count.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "d2dmimo/analytic.hpp"
#include "d2dmimo/errors.hpp"
#include "d2dmimo/model.hpp"
#include "d2dmimo/rng.hpp"

namespace d2dmimo {

enum class SamplerMode { reduced, full_vector };

inline const char* to_string(SamplerMode m) {
  return m == SamplerMode::reduced ? "reduced" : "full_vector";
}

struct McConfig {
  std::size_t trials = 20000;
  std::uint64_t seed = 1;
  double truncation_eps = 1e-3;
  SamplerMode sampler_mode = SamplerMode::reduced;
  unsigned workers = 1;

  void validate() const {
    if (trials < 1) throw DomainError("mc config constraint violated: trials >= 1");
    if (!(truncation_eps > 0.0 && truncation_eps <= 0.1)) {
      throw DomainError("mc config constraint violated: 0 < truncation_eps <= 0.1");
    }
    if (workers < 1) throw DomainError("mc config constraint violated: workers >= 1");
  }
};

struct McEstimate {
  double mean = 0.0;
  double std_err = 0.0;  // NaN when fewer than two trials
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;
  std::size_t trials_used = 0;

  bool std_err_available() const { return !std::isnan(std_err); }

  /// Normal-approximation summary of i.i.d. samples, reduced in index order.
  static McEstimate from_samples(std::span<const double> xs) {
    McEstimate e;
    e.trials_used = xs.size();
    if (xs.empty()) {
      e.mean = e.std_err = e.ci95_lo = e.ci95_hi = std::numeric_limits<double>::quiet_NaN();
      return e;
    }
    double sum = 0.0;
    for (double x : xs) sum += x;
    e.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) {
      e.std_err = std::numeric_limits<double>::quiet_NaN();
      e.ci95_lo = e.ci95_hi = e.mean;
      return e;
    }
    double ss = 0.0;
    for (double x : xs) ss += (x - e.mean) * (x - e.mean);
    const double n = static_cast<double>(xs.size());
    e.std_err = std::sqrt(ss / (n - 1.0) / n);
    e.ci95_lo = e.mean - 1.96 * e.std_err;
    e.ci95_hi = e.mean + 1.96 * e.std_err;
    return e;
  }
};

// Stream tags; one per independent random field.
namespace stream {
inline constexpr std::uint64_t kD2dReceiver = 1;
inline constexpr std::uint64_t kCueReceiver = 2;
inline constexpr std::uint64_t kInterference = 3;
}  // namespace stream

/// Disk radius beyond which the expected omitted interference is eps of the
/// total. Valid for eps in (0, 2/alpha_d], where the radius is at least d0.
inline double truncation_radius(double lambda, const SystemParams& p, double eps) {
  (void)lambda;  // the omitted fraction does not depend on the density
  const double whole = 2.0 / p.alpha_d;
  if (!(eps > 0.0 && eps <= whole)) {
    throw DomainError("truncation_radius: eps must lie in (0, 2/alpha_d]");
  }
  return p.d0 * std::pow(whole / eps, 1.0 / (p.alpha_d - 2.0));
}

/// |h_d^T conj(h)|^2 / ||h||^2 for independent h, h_d ~ CN(0, I_N).
/// Exponential(1) in either mode; full_vector builds the vectors explicitly.
template <class Rng>
double sample_cross_fading(int N, SamplerMode mode, Rng& rng) {
  if (mode == SamplerMode::reduced) {
    return std::exponential_distribution<double>(1.0)(rng);
  }
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  std::complex<double> inner{};
  double norm_sq = 0.0;
  for (int i = 0; i < N; ++i) {
    const std::complex<double> h(g(rng), g(rng));
    const std::complex<double> hd(g(rng), g(rng));
    inner += hd * std::conj(h);
    norm_sq += std::norm(h);
  }
  return std::norm(inner) / norm_sq;
}

/// ||h_0||^2 for h_0 ~ CN(0, I_N): Gamma(N, 1).
template <class Rng>
double sample_signal_fading(int N, SamplerMode mode, Rng& rng) {
  if (mode == SamplerMode::reduced) {
    return std::gamma_distribution<double>(static_cast<double>(N), 1.0)(rng);
  }
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  double s = 0.0;
  for (int i = 0; i < N; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    s += re * re + im * im;
  }
  return s;
}

/// Visits the points of a PPP of intensity lambda inside the disk of the given
/// radius, nearest first, calling visit(r) with each distance. The areas
/// pi lambda r_k^2 are the arrival times of a unit-rate Poisson process, so
/// the count is Poisson(lambda pi R^2) and positions are uniform on the disk.
/// A larger radius only appends points to the same prefix.
template <class Rng, class Visit>
std::size_t for_each_ppp_distance(double lambda, double radius, Rng& rng, Visit&& visit) {
  if (lambda <= 0.0) return 0;
  const double area_scale = 1.0 / (lambda * std::numbers::pi);
  const double horizon = lambda * std::numbers::pi * radius * radius;
  std::exponential_distribution<double> gap(1.0);
  std::size_t count = 0;
  for (double t = gap(rng); t <= horizon; t += gap(rng)) {
    visit(std::sqrt(t * area_scale));
    ++count;
  }
  return count;
}

/// Sum over a truncated PPP of beta_k * |cross fading|^2, i.e. the aggregate
/// interference at a receiver at the origin per unit transmit power.
template <class Rng>
double sample_interference_gain(double lambda, double radius, const SystemParams& p,
                                ShadowedPathloss& law, SamplerMode mode, Rng& rng) {
  double s = 0.0;
  for_each_ppp_distance(lambda, radius, rng, [&](double r) {
    s += law(r, rng) * sample_cross_fading(p.N, mode, rng);
  });
  return s;
}

namespace detail {

/// Runs body(i) for i in [0, n) on `workers` threads, contiguous blocks.
inline void parallel_trials(std::size_t n, unsigned workers,
                            const std::function<void(std::size_t)>& body) {
  const std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
  if (w == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(w);
  std::vector<std::exception_ptr> errors(w);
  for (std::size_t t = 0; t < w; ++t) {
    const std::size_t begin = n * t / w;
    const std::size_t end = n * (t + 1) / w;
    pool.emplace_back([&, begin, end, t] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline double log2_1p(double x) { return std::log2(1.0 + x); }

}  // namespace detail

/// Per-trial channel draws at the typical D2D receiver. SINR at any gamma_d
/// follows as gamma X / (gamma S + 1), so one set of draws serves every power.
struct D2dFieldSamples {
  double lambda = 0.0;
  std::vector<double> signal_gain;        // X = beta_0 ||h_0||^2
  std::vector<double> interference_gain;  // S = sum_k beta_k^(d) E_k

  std::vector<double> rate_samples(double gamma_d) const {
    std::vector<double> out(signal_gain.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double sinr =
          gamma_d * signal_gain[i] / (gamma_d * interference_gain[i] + 1.0);
      out[i] = lambda * detail::log2_1p(sinr);
    }
    return out;
  }

  double mean_ase(double gamma_d) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < signal_gain.size(); ++i) {
      sum += detail::log2_1p(gamma_d * signal_gain[i] / (gamma_d * interference_gain[i] + 1.0));
    }
    return lambda * sum / static_cast<double>(signal_gain.size());
  }

  /// Interference-limited ceiling of mean_ase as gamma_d grows.
  double mean_ase_ceiling() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < signal_gain.size(); ++i) {
      if (interference_gain[i] == 0.0) return std::numeric_limits<double>::infinity();
      sum += detail::log2_1p(signal_gain[i] / interference_gain[i]);
    }
    return lambda * sum / static_cast<double>(signal_gain.size());
  }
};

inline D2dFieldSamples sample_d2d_field(double lambda, const SystemParams& p,
                                        const McConfig& cfg) {
  cfg.validate();
  p.validate();
  const double radius = truncation_radius(lambda, p, cfg.truncation_eps);
  D2dFieldSamples f;
  f.lambda = lambda;
  f.signal_gain.resize(cfg.trials);
  f.interference_gain.resize(cfg.trials);
  const ShadowedPathloss proto(p);
  detail::parallel_trials(cfg.trials, cfg.workers, [&](std::size_t i) {
    auto eng = rng::substream(cfg.seed, stream::kD2dReceiver, i);
    ShadowedPathloss law = proto;
    const double beta0 = law(p.D, eng);
    f.signal_gain[i] = beta0 * sample_signal_fading(p.N, cfg.sampler_mode, eng);
    f.interference_gain[i] = sample_interference_gain(lambda, radius, p, law, cfg.sampler_mode, eng);
  });
  return f;
}

/// Per-trial aggregate interference gain at a receiver at the origin.
inline std::vector<double> sample_interference_field(double lambda, const SystemParams& p,
                                                     const McConfig& cfg, std::uint64_t tag) {
  cfg.validate();
  p.validate();
  std::vector<double> s(cfg.trials, 0.0);
  if (lambda <= 0.0) return s;
  const double radius = truncation_radius(lambda, p, cfg.truncation_eps);
  const ShadowedPathloss proto(p);
  detail::parallel_trials(cfg.trials, cfg.workers, [&](std::size_t i) {
    auto eng = rng::substream(cfg.seed, tag, i);
    ShadowedPathloss law = proto;
    s[i] = sample_interference_gain(lambda, radius, p, law, cfg.sampler_mode, eng);
  });
  return s;
}

/// Ergodic D2D ASE, bits/s/Hz/m^2.
inline McEstimate mc_d2d_ase(const OperatingPoint& op, const SystemParams& p,
                             const DerivedConstants& dc, const McConfig& cfg) {
  (void)dc;
  op.validate();
  detail::require_positive_density(op.lambda, "mc_d2d_ase");
  const auto field = sample_d2d_field(op.lambda, p, cfg);
  const auto xs = field.rate_samples(op.gamma_d);
  return McEstimate::from_samples(xs);
}

inline std::vector<double> cue_rate_samples(std::span<const double> interference_gain,
                                            double gamma_d, const SystemParams& p) {
  const double gamma0 = std::exp2(p.R0_c) - 1.0;
  std::vector<double> out(interference_gain.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = detail::log2_1p(gamma0 / (gamma_d * interference_gain[i] + 1.0));
  }
  return out;
}

/// Ergodic CUE per-user SE, bits/s/Hz. lambda = 0 gives R0_c with zero spread.
inline McEstimate mc_cue_se(const OperatingPoint& op, const SystemParams& p,
                            const DerivedConstants& dc, const McConfig& cfg) {
  (void)dc;
  op.validate();
  const auto s = sample_interference_field(op.lambda, p, cfg, stream::kCueReceiver);
  return McEstimate::from_samples(cue_rate_samples(s, op.gamma_d, p));
}

/// Mean aggregate D2D interference power at a CUE, W.
inline McEstimate mc_mean_interference(const OperatingPoint& op, const SystemParams& p,
                                       const DerivedConstants& dc, const McConfig& cfg) {
  (void)dc;
  op.validate();
  detail::require_positive_density(op.lambda, "mc_mean_interference");
  auto s = sample_interference_field(op.lambda, p, cfg, stream::kInterference);
  const double pd = op.pd_watt(p);
  for (double& x : s) x *= pd;
  return McEstimate::from_samples(s);
}

/// Transmit SNR at which the simulated ergodic ASE equals R0_d. Solved on a
/// fixed set of draws (common random numbers), where the ASE is increasing in
/// gamma_d, by bisection in log gamma_d.
inline double solve_exact_gamma_d(const D2dFieldSamples& field, double R0_d, double start) {
  if (!(R0_d > 0.0)) throw DomainError("solve_exact_gamma_d: R0_d > 0 required");
  const double ceiling = field.mean_ase_ceiling();
  if (!(R0_d < ceiling)) {
    throw InfeasibleAse("target ASE is not below the simulated interference-limited ceiling",
                        ceiling);
  }
  double hi = (std::isfinite(start) && start > 0.0) ? start : 1.0;
  int guard = 0;
  while (field.mean_ase(hi) < R0_d) {
    hi *= 4.0;
    if (++guard > 200) {
      throw InfeasibleAse("target ASE not reached by the simulated ASE at any finite power",
                          ceiling);
    }
  }
  double lo = hi;
  while (field.mean_ase(lo) >= R0_d) {
    lo *= 0.25;
    if (lo < 1e-300) return lo;
  }
  for (int i = 0; i < 200 && hi / lo - 1.0 > 1e-13; ++i) {
    const double mid = std::sqrt(lo * hi);
    (field.mean_ase(mid) < R0_d ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

struct FixedAseCueEstimate {
  double gamma_d_exact;   // SNR giving simulated ASE = R0_d
  double gamma_d_bound;   // SNR from the closed-form bound (NaN if infeasible there)
  McEstimate d2d_ase;     // simulated ASE at gamma_d_exact (per m^2)
  McEstimate cue_se;      // simulated CUE SE at gamma_d_exact
};

/// CUE SE with the D2D network operated so that its simulated ergodic ASE
/// equals R0_d. The D2D and CUE fields use independent streams.
inline FixedAseCueEstimate mc_cue_se_fixed_ase(double lambda, double R0_d, const SystemParams& p,
                                               const DerivedConstants& dc, const McConfig& cfg) {
  detail::require_positive_density(lambda, "mc_cue_se_fixed_ase");
  FixedAseCueEstimate out{};
  out.gamma_d_bound = ase_feasible(lambda, R0_d, p, dc)
                          ? required_gamma_d(lambda, R0_d, p, dc)
                          : std::numeric_limits<double>::quiet_NaN();
  const auto field = sample_d2d_field(lambda, p, cfg);
  out.gamma_d_exact = solve_exact_gamma_d(field, R0_d, out.gamma_d_bound);
  out.d2d_ase = McEstimate::from_samples(field.rate_samples(out.gamma_d_exact));
  const auto s = sample_interference_field(lambda, p, cfg, stream::kCueReceiver);
  out.cue_se = McEstimate::from_samples(cue_rate_samples(s, out.gamma_d_exact, p));
  return out;
}

}  // namespace d2dmimo
