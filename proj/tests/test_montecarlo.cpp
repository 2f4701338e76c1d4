// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "d2dmimo/analytic.hpp"
#include "d2dmimo/montecarlo.hpp"
#include "d2dmimo/units.hpp"
#include "oracles.hpp"

using namespace d2dmimo;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

McConfig small_cfg(std::size_t trials, std::uint64_t seed = 5) {
  McConfig c;
  c.trials = trials;
  c.seed = seed;
  c.workers = 2;
  return c;
}

bool ci_overlap(const McEstimate& a, const McEstimate& b) {
  return a.ci95_lo <= b.ci95_hi && b.ci95_lo <= a.ci95_hi;
}

}  // namespace

// --- truncation --------------------------------------------------------------

TEST(TruncationRadius, ClosedFormAndTailOracle) {
  SystemParams p;
  const double R = truncation_radius(1e-4, p, 1e-3);
  EXPECT_LT(rel(R, 782.62379212492639), 1e-12);
  EXPECT_LT(rel(oracle::campbell_tail_fraction(p.d0, p.alpha_d, R), 1e-3), 1e-6);

  SystemParams p35 = p;
  p35.alpha_d = 3.5;
  const double R35 = truncation_radius(1e-4, p35, 1e-2);
  EXPECT_LT(rel(oracle::campbell_tail_fraction(p35.d0, p35.alpha_d, R35), 1e-2), 1e-5);
}

TEST(TruncationRadius, WholeMassAndScaling) {
  SystemParams p;
  EXPECT_DOUBLE_EQ(truncation_radius(1e-4, p, 2.0 / p.alpha_d), p.d0);
  for (double alpha : {3.0, 4.0, 5.5}) {
    p.alpha_d = alpha;
    const double ratio = truncation_radius(1e-4, p, 5e-4) / truncation_radius(1e-4, p, 1e-3);
    EXPECT_LT(rel(ratio, std::pow(2.0, 1.0 / (alpha - 2.0))), 1e-12);
  }
  EXPECT_THROW(truncation_radius(1e-4, p, 0.0), DomainError);
  McConfig c;
  c.truncation_eps = 0.2;
  EXPECT_THROW(c.validate(), DomainError);
}

// --- point process -------------------------------------------------------------

TEST(Ppp, CountIsPoissonAndPositionsUniform) {
  const double lambda = 1e-4;
  const double R = 300.0;
  const double mean = lambda * std::numbers::pi * R * R;
  std::vector<double> counts;
  std::vector<double> radial;  // r^2 / R^2 should be U(0,1)
  for (std::uint64_t t = 0; t < 20000; ++t) {
    auto eng = rng::substream(9, 0, t);
    const auto n = for_each_ppp_distance(lambda, R, eng, [&](double r) {
      if (radial.size() < 100000) radial.push_back(r * r / (R * R));
    });
    counts.push_back(static_cast<double>(n));
  }
  const auto m = oracle::moments(counts);
  EXPECT_NEAR(m.mean, mean, 3.0 * m.std_err);
  // Poisson: variance equals mean (stderr of sample variance ~ sqrt(2/n) var)
  EXPECT_NEAR(m.var / mean, 1.0, 3.0 * std::sqrt(2.0 / counts.size() + 1.0 / (mean * counts.size())));
  std::vector<double> uniform(radial.size());
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& x : uniform) x = u(gen);
  EXPECT_LT(oracle::ks_statistic(radial, uniform),
            oracle::ks_critical_5pct(radial.size(), uniform.size()));
}

// --- fading --------------------------------------------------------------------

TEST(CrossFading, ReducedIsUnitMean) {
  std::mt19937_64 gen(21);
  std::vector<double> xs(1'000'000);
  for (double& x : xs) x = sample_cross_fading(4, SamplerMode::reduced, gen);
  const auto m = oracle::moments(xs);
  EXPECT_NEAR(m.mean, 1.0, 3.0 * m.std_err);
}

TEST(CrossFading, FullVectorMatchesReduced) {
  for (int N : {2, 8}) {
    std::mt19937_64 gen(100 + N);
    std::vector<double> full(100000), reduced(100000);
    for (double& x : full) x = sample_cross_fading(N, SamplerMode::full_vector, gen);
    for (double& x : reduced) x = sample_cross_fading(N, SamplerMode::reduced, gen);
    const auto mf = oracle::moments(full);
    const auto mr = oracle::moments(reduced);
    EXPECT_NEAR(mf.mean, mr.mean, 3.0 * std::hypot(mf.std_err, mr.std_err)) << N;
    // Exp(1): var of the sample variance is (mu4 - sigma^4)/n = 8/n
    const double var_se = std::sqrt(8.0 / full.size());
    EXPECT_NEAR(mf.var, mr.var, 3.0 * std::sqrt(2.0) * var_se) << N;
    EXPECT_LT(oracle::ks_statistic(full, reduced), oracle::ks_critical_5pct(full.size(), reduced.size()))
        << N;
  }
}

TEST(SignalFading, ChiSquareMoments) {
  for (int N : {2, 4, 8}) {
    for (auto mode : {SamplerMode::reduced, SamplerMode::full_vector}) {
      std::mt19937_64 gen(300 + N);
      const std::size_t n = mode == SamplerMode::reduced ? 1'000'000 : 200'000;
      std::vector<double> xs(n), inv(n);
      for (std::size_t i = 0; i < n; ++i) {
        xs[i] = sample_signal_fading(N, mode, gen);
        inv[i] = 1.0 / xs[i];
      }
      const auto m = oracle::moments(xs);
      EXPECT_NEAR(m.mean, N, 3.0 * m.std_err) << N;
      EXPECT_NEAR(m.var, N, 3.0 * std::sqrt((6.0 * N + 2.0 * N * N) / n)) << N;
      const auto mi = oracle::moments(inv);
      EXPECT_NEAR(mi.mean, 1.0 / (N - 1), 3.0 * mi.std_err) << N;
    }
  }
}

// --- estimators ------------------------------------------------------------------

TEST(McEstimate, SummaryStatistics) {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const auto e = McEstimate::from_samples(xs);
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  EXPECT_DOUBLE_EQ(e.std_err, std::sqrt((2.25 + 0.25 + 0.25 + 2.25) / 3.0 / 4.0));
  EXPECT_DOUBLE_EQ(e.ci95_lo, e.mean - 1.96 * e.std_err);
  EXPECT_DOUBLE_EQ(e.ci95_hi, e.mean + 1.96 * e.std_err);
  const std::vector<double> one{7.0};
  const auto s = McEstimate::from_samples(one);
  EXPECT_EQ(s.mean, 7.0);
  EXPECT_FALSE(s.std_err_available());
  EXPECT_EQ(s.trials_used, 1u);
}

TEST(McCueSe, NoInterferersIsExact) {
  SystemParams p;
  const auto dc = derive_constants(p);
  const auto e = mc_cue_se({0.0, 1e6}, p, dc, small_cfg(100));
  EXPECT_EQ(e.mean, 3.0);
  EXPECT_EQ(e.std_err, 0.0);
}

TEST(McEstimators, DeterministicAcrossWorkerCounts) {
  SystemParams p;
  const auto dc = derive_constants(p);
  const OperatingPoint op{2e-4, 1e6};
  auto cfg = small_cfg(600, 77);
  cfg.workers = 1;
  const auto a1 = mc_d2d_ase(op, p, dc, cfg);
  const auto c1 = mc_cue_se(op, p, dc, cfg);
  const auto i1 = mc_mean_interference(op, p, dc, cfg);
  cfg.workers = 7;
  const auto a7 = mc_d2d_ase(op, p, dc, cfg);
  const auto c7 = mc_cue_se(op, p, dc, cfg);
  const auto i7 = mc_mean_interference(op, p, dc, cfg);
  EXPECT_EQ(a1.mean, a7.mean);
  EXPECT_EQ(a1.std_err, a7.std_err);
  EXPECT_EQ(c1.mean, c7.mean);
  EXPECT_EQ(i1.mean, i7.mean);
  cfg.seed = 78;
  EXPECT_NE(mc_cue_se(op, p, dc, cfg).mean, c1.mean);
}

TEST(McEstimators, JensenOrdering) {
  SystemParams p;
  const auto dc = derive_constants(p);
  for (double lambda_km : {20.0, 150.0}) {
    for (double gamma_db : {50.0, 70.0}) {
      const OperatingPoint op{units::per_km2_to_per_m2(lambda_km), units::db_to_linear(gamma_db)};
      const auto cfg = small_cfg(2000, 11);
      const auto ase = mc_d2d_ase(op, p, dc, cfg);
      EXPECT_GE(ase.mean, ase_lower_bound(op, p, dc) - 3.0 * ase.std_err);
      const auto cue = mc_cue_se(op, p, dc, cfg);
      EXPECT_GE(cue.mean, cue_se_bound(op, p, dc) - 3.0 * cue.std_err);
    }
  }
}

TEST(McD2dAse, NoiseLimitedMatchesQuadrature) {
  SystemParams p;
  const auto dc = derive_constants(p);
  const double lambda = units::per_km2_to_per_m2(1.0);
  const double gamma = units::db_to_linear(75.0);
  const auto e = mc_d2d_ase({lambda, gamma}, p, dc, small_cfg(20000, 3));
  const double ref = std::pow(dc.lambda_c / (4.0 * std::numbers::pi * p.d0), 2.0);
  const double scale = gamma * ref / std::pow(p.D / p.d0, p.alpha_d);
  const double expected = lambda * oracle::noise_limited_rate(scale, p.sigma_db, p.N);
  EXPECT_NEAR(e.mean, expected, 3.0 * e.std_err);
}

TEST(McD2dAse, ReferenceOperatingPointMeetsTarget) {
  SystemParams p;
  const auto dc = derive_constants(p);
  const double lambda = 1e-4;
  const double g = required_gamma_d(lambda, 25e-6, p, dc);
  const auto e = mc_d2d_ase({lambda, g}, p, dc, small_cfg(4000, 8));
  EXPECT_GE(e.mean, 25e-6 - 3.0 * e.std_err);
}

TEST(McD2dAse, RejectsZeroDensityAndSingleTrialFlagsStdErr) {
  SystemParams p;
  const auto dc = derive_constants(p);
  EXPECT_THROW(mc_d2d_ase({0.0, 1e6}, p, dc, small_cfg(10)), DomainError);
  const auto e = mc_d2d_ase({1e-4, 1e6}, p, dc, small_cfg(1));
  EXPECT_FALSE(e.std_err_available());
  EXPECT_TRUE(std::isfinite(e.mean));
}

TEST(McMeanInterference, CampbellIdentity) {
  SystemParams p;
  const auto dc = derive_constants(p);
  for (double lambda_km : {10.0, 80.0}) {
    const OperatingPoint op{units::per_km2_to_per_m2(lambda_km), 1e6};
    const auto e = mc_mean_interference(op, p, dc, small_cfg(5000, 41));
    EXPECT_NEAR(e.mean, mean_interference(op, p, dc), 3.0 * e.std_err) << lambda_km;
  }
}

TEST(McMeanInterference, DoublingDensityDoublesEstimate) {
  SystemParams p;
  const auto dc = derive_constants(p);
  const auto cfg = small_cfg(4000, 42);
  const auto a = mc_mean_interference({40e-6, 1e6}, p, dc, cfg);
  const auto b = mc_mean_interference({80e-6, 1e6}, p, dc, cfg);
  McEstimate a2 = a;
  a2.mean *= 2;
  a2.ci95_lo = a2.mean - 2 * 1.96 * a.std_err;
  a2.ci95_hi = a2.mean + 2 * 1.96 * a.std_err;
  EXPECT_TRUE(ci_overlap(a2, b));
}

TEST(McMeanInterference, TruncationToleranceChangesLittle) {
  SystemParams p;
  const auto dc = derive_constants(p);
  const OperatingPoint op{20e-6, 1e6};
  auto cfg = small_cfg(3000, 43);
  cfg.truncation_eps = 1e-2;
  const auto coarse = mc_mean_interference(op, p, dc, cfg);
  cfg.truncation_eps = 1e-4;
  const auto fine = mc_mean_interference(op, p, dc, cfg);
  const double analytic = mean_interference(op, p, dc);
  EXPECT_LT(std::abs(fine.mean - coarse.mean), 0.011 * analytic);
  EXPECT_GT(fine.mean, coarse.mean);  // nested disks: only the tail is added
}

TEST(McEstimators, DoublingDiskRadiusIsSound) {
  SystemParams p;
  const auto dc = derive_constants(p);
  const OperatingPoint op{100e-6, units::db_to_linear(66.0)};
  const double eps = 1e-3;
  auto cfg = small_cfg(2000, 44);
  cfg.truncation_eps = eps;
  // a radius twice as large omits eps / 2^(alpha-2) of the mean
  auto wide = cfg;
  wide.truncation_eps = eps / std::pow(2.0, p.alpha_d - 2.0);
  const auto a = mc_mean_interference(op, p, dc, cfg);
  const auto b = mc_mean_interference(op, p, dc, wide);
  EXPECT_LT(std::abs(a.mean - b.mean),
            std::max(3.0 * a.std_err, eps * mean_interference(op, p, dc)));
  const auto ca = mc_cue_se(op, p, dc, cfg);
  const auto cb = mc_cue_se(op, p, dc, wide);
  EXPECT_LT(std::abs(ca.mean - cb.mean), std::max(3.0 * ca.std_err, eps * cue_se_bound(op, p, dc)));
}

TEST(McD2dAse, SamplerModesAgree) {
  SystemParams p;
  p.N = 2;
  const auto dc = derive_constants(p);
  const OperatingPoint op{50e-6, units::db_to_linear(60.0)};
  auto cfg = small_cfg(3000, 45);
  const auto reduced = mc_d2d_ase(op, p, dc, cfg);
  cfg.sampler_mode = SamplerMode::full_vector;
  cfg.seed = 46;
  const auto full = mc_d2d_ase(op, p, dc, cfg);
  EXPECT_TRUE(ci_overlap(reduced, full));
}

TEST(ExactGamma, SimulatedAseHitsTarget) {
  SystemParams p;
  const auto dc = derive_constants(p);
  const double lambda = 300e-6;
  const double R0 = 25e-6;
  const auto field = sample_d2d_field(lambda, p, small_cfg(1500, 50));
  const double bound_gamma = required_gamma_d(lambda, R0, p, dc);
  const double g = solve_exact_gamma_d(field, R0, bound_gamma);
  EXPECT_LT(rel(field.mean_ase(g), R0), 1e-9);
  EXPECT_LT(g, bound_gamma);  // the bound needs more power than the exact ASE
  EXPECT_THROW(solve_exact_gamma_d(field, 1.01 * field.mean_ase_ceiling(), 1.0), InfeasibleAse);
}

TEST(ExactGamma, FixedAseCueSitsAboveTheorem) {
  SystemParams p;
  const auto dc = derive_constants(p);
  const double lambda = 300e-6;
  const auto est = mc_cue_se_fixed_ase(lambda, 25e-6, p, dc, small_cfg(1500, 51));
  EXPECT_LT(rel(est.d2d_ase.mean, 25e-6), 1e-9);
  EXPECT_GT(est.cue_se.mean, cue_se_theorem(lambda, 25e-6, p, dc).r_lambda_cd);
}
