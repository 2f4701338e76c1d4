// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference computations. Nothing here calls into the library's
// formulas: moments and integrals are evaluated by brute-force quadrature.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline double normal_pdf(double x, double sigma) {
  return std::exp(-0.5 * x * x / (sigma * sigma)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

/// E[exp(sign * Xi ln10 / 10)], Xi ~ N(0, sigma_db^2), by quadrature.
inline double shadowing_moment(double sigma_db, double sign) {
  if (sigma_db == 0.0) return 1.0;
  const double k = sign * std::numbers::ln10 / 10.0;
  return simpson([&](double x) { return normal_pdf(x, sigma_db) * std::exp(k * x); },
                 -12.0 * sigma_db, 12.0 * sigma_db, 4000);
}

/// Integral of 2 pi r / max(1, r/d0)^alpha over [0, inf), split at d0; the
/// tail uses r = d0 / u on u in (0, 1]. Accurate for alpha >= 3.
inline double campbell_integral(double d0, double alpha) {
  const double inner = simpson([](double r) { return 2.0 * std::numbers::pi * r; }, 0.0, d0, 200);
  // r = d0/u, dr = d0/u^2 du: integrand 2 pi (d0/u) u^alpha d0/u^2
  const double tail = simpson(
      [&](double u) {
        if (u == 0.0) return 0.0;
        return 2.0 * std::numbers::pi * d0 * d0 * std::pow(u, alpha - 3.0);
      },
      0.0, 1.0, 20000);
  return inner + tail;
}

/// Fraction of the Campbell integral beyond radius R, by quadrature.
inline double campbell_tail_fraction(double d0, double alpha, double R) {
  const double u_max = d0 / R;
  const double tail = simpson(
      [&](double u) {
        if (u == 0.0) return 0.0;
        return 2.0 * std::numbers::pi * d0 * d0 * std::pow(u, alpha - 3.0);
      },
      0.0, u_max, 20000);
  return tail / campbell_integral(d0, alpha);
}

inline double gamma_pdf(double x, int shape) {
  if (x <= 0.0) return 0.0;
  return std::exp((shape - 1) * std::log(x) - x - std::lgamma(static_cast<double>(shape)));
}

/// E[log2(1 + scale * exp(-Xi ln10/10) * G)], Xi ~ N(0, sigma_db^2), G ~ Gamma(N, 1).
inline double noise_limited_rate(double scale, double sigma_db, int N) {
  const double k = std::numbers::ln10 / 10.0;
  auto over_g = [&](double shadow) {
    return simpson(
        [&](double g) { return gamma_pdf(g, N) * std::log2(1.0 + scale * shadow * g); }, 0.0,
        20.0 + 8.0 * N, 4000);
  };
  if (sigma_db == 0.0) return over_g(1.0);
  return simpson([&](double x) { return normal_pdf(x, sigma_db) * over_g(std::exp(-k * x)); },
                 -10.0 * sigma_db, 10.0 * sigma_db, 400);
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

inline double ks_critical_5pct(std::size_t n, std::size_t m) {
  return 1.358 * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

struct Moments {
  double mean;
  double var;
  double std_err;
};

inline Moments moments(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  const double n = static_cast<double>(xs.size());
  const double mean = s / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / (n - 1.0);
  return {mean, var, std::sqrt(var / n)};
}

}  // namespace oracle
