// SPDX-License-Identifier: Apache-2.0
//
// Parameter sweeps pairing the closed-form CUE SE with Monte Carlo estimates:
// a density sweep at fixed D2D ASE and a D2D-ASE sweep of the dense-network
// limit. Rows are emitted as CSV or JSON in presentation units.
#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"  // nlohmann/json, vendored

#include "d2dmimo/analytic.hpp"
#include "d2dmimo/errors.hpp"
#include "d2dmimo/model.hpp"
#include "d2dmimo/montecarlo.hpp"
#include "d2dmimo/units.hpp"

namespace d2dmimo {

enum class SweepKind { lambda_sweep, ase_sweep };

inline const char* to_string(SweepKind k) {
  return k == SweepKind::lambda_sweep ? "lambda_sweep" : "ase_sweep";
}

struct SweepSpec {
  SweepKind kind = SweepKind::lambda_sweep;
  std::vector<double> grid;               // lambda (m^-2) or R0_d (per m^2), SI
  SystemParams params{};
  double fixed_ase = 25e-6;               // lambda_sweep: R0_d per m^2
  double dense_lambda = 2000e-6;          // ase_sweep: finite stand-in for lambda -> inf
  std::optional<McConfig> mc;

  void validate() const {
    params.validate();
    if (grid.empty()) throw DomainError("sweep grid must be nonempty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!std::isfinite(grid[i])) throw DomainError("sweep grid values must be finite");
      if (i > 0 && !(grid[i] > grid[i - 1])) {
        throw DomainError("sweep grid must be strictly increasing");
      }
    }
    if (kind == SweepKind::lambda_sweep) {
      if (!(grid.front() > 0.0)) throw DomainError("lambda grid values must be > 0");
      if (!(fixed_ase > 0.0)) throw DomainError("fixed D2D ASE must be > 0");
    } else {
      if (!(grid.front() >= 0.0)) throw DomainError("ASE grid values must be >= 0");
      if (!(dense_lambda > 0.0)) throw DomainError("dense lambda proxy must be > 0");
    }
    if (mc) mc->validate();
  }
};

/// One sweep record, SI units. Infeasible rows carry no power or MC fields.
struct SweepRow {
  SweepKind kind{};
  double sweep_value = 0.0;
  int N = 0;
  double R0_d = 0.0;    // per m^2
  double lambda = 0.0;  // m^-2 (the dense proxy for ase sweeps)
  std::optional<double> gamma_d;
  std::optional<double> pd_watt;
  bool feasible = false;
  std::optional<double> analytic_se;
  std::optional<double> mc_mean;
  std::optional<double> mc_stderr;
  std::optional<double> limit_ase;  // per m^2, ceiling at `lambda`
};

/// n log-spaced points from lo to hi inclusive.
inline std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi > lo) || n < 2) {
    throw DomainError("geometric_grid: need 0 < lo < hi and n >= 2");
  }
  std::vector<double> g(n);
  const double ratio = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::exp(ratio * static_cast<double>(i));
  g.front() = lo;
  g.back() = hi;
  return g;
}

namespace detail {

inline void fill_mc(SweepRow& row, double lambda, double R0_d, const SystemParams& p,
                    const DerivedConstants& dc, const McConfig& cfg) {
  const auto est = mc_cue_se_fixed_ase(lambda, R0_d, p, dc, cfg);
  row.mc_mean = est.cue_se.mean;
  if (est.cue_se.std_err_available()) row.mc_stderr = est.cue_se.std_err;
}

}  // namespace detail

/// CUE SE versus D2D density at a fixed D2D ASE.
inline std::vector<SweepRow> run_lambda_sweep(const SweepSpec& spec) {
  if (spec.kind != SweepKind::lambda_sweep) throw DomainError("run_lambda_sweep: wrong sweep kind");
  spec.validate();
  const auto& p = spec.params;
  const auto dc = derive_constants(p);
  const double R0 = spec.fixed_ase;

  bool any_feasible = false;
  for (double lambda : spec.grid) any_feasible = any_feasible || ase_feasible(lambda, R0, p, dc);
  if (!any_feasible) {
    const auto min_lambda = min_feasible_lambda(R0, p, dc);
    std::string msg = "no grid density supports the target ASE; ";
    if (min_lambda) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.9g", units::per_m2_to_per_km2(*min_lambda));
      msg += std::string("minimum feasible lambda is ") + buf + " per km^2";
    } else {
      msg += "no density supports it";
    }
    throw InfeasibleAse(msg, ase_limit(spec.grid.back(), p, dc));
  }

  std::vector<SweepRow> rows;
  rows.reserve(spec.grid.size());
  for (double lambda : spec.grid) {
    SweepRow row;
    row.kind = SweepKind::lambda_sweep;
    row.sweep_value = lambda;
    row.N = p.N;
    row.R0_d = R0;
    row.lambda = lambda;
    row.limit_ase = ase_limit(lambda, p, dc);
    row.feasible = ase_feasible(lambda, R0, p, dc);
    if (row.feasible) {
      row.gamma_d = required_gamma_d(lambda, R0, p, dc);
      row.pd_watt = *row.gamma_d * p.sigma_sq;
      row.analytic_se = cue_se_theorem(lambda, R0, p, dc).r_lambda_cd;
      if (spec.mc) detail::fill_mc(row, lambda, R0, p, dc, *spec.mc);
    }
    rows.push_back(row);
  }
  return rows;
}

/// Dense-network CUE SE versus D2D ASE. The analytic column is the
/// lambda -> infinity limit; MC uses spec.dense_lambda as a finite proxy.
inline std::vector<SweepRow> run_ase_sweep(const SweepSpec& spec) {
  if (spec.kind != SweepKind::ase_sweep) throw DomainError("run_ase_sweep: wrong sweep kind");
  spec.validate();
  const auto& p = spec.params;
  const auto dc = derive_constants(p);
  const double lambda = spec.dense_lambda;

  bool any_feasible = false;
  for (double R0 : spec.grid) any_feasible = any_feasible || cue_limit_exists(R0, p, dc);
  if (!any_feasible) {
    throw NoPositiveLimit("no grid ASE leaves a positive dense-network CUE SE");
  }

  std::vector<SweepRow> rows;
  rows.reserve(spec.grid.size());
  for (double R0 : spec.grid) {
    SweepRow row;
    row.kind = SweepKind::ase_sweep;
    row.sweep_value = R0;
    row.N = p.N;
    row.R0_d = R0;
    row.lambda = lambda;
    row.limit_ase = ase_limit(lambda, p, dc);
    row.feasible = cue_limit_exists(R0, p, dc);
    if (!row.feasible) {
      rows.push_back(row);
      continue;
    }
    row.analytic_se = cue_se_limit(R0, p, dc);
    if (R0 == 0.0) {
      // D2D silent: the CUE sees no interference in any realization.
      if (spec.mc) {
        row.mc_mean = p.R0_c;
        row.mc_stderr = 0.0;
      }
    } else if (ase_feasible(lambda, R0, p, dc)) {
      row.gamma_d = required_gamma_d(lambda, R0, p, dc);
      row.pd_watt = *row.gamma_d * p.sigma_sq;
      if (spec.mc) detail::fill_mc(row, lambda, R0, p, dc, *spec.mc);
    }
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  return spec.kind == SweepKind::lambda_sweep ? run_lambda_sweep(spec) : run_ase_sweep(spec);
}

// ---------------------------------------------------------------------------
// Emission

enum class EmitFormat { csv, json };

inline constexpr const char* kCsvHeader =
    "sweep_kind,sweep_value,unit,N,R0_d_per_km2,lambda_per_km2,gamma_d_db,pd_dbm,feasible,"
    "analytic_se_bpshz,mc_mean_bpshz,mc_stderr_bpshz,limit_ase_per_km2";

/// %.9g; an empty string for absent values.
inline std::string format_number(std::optional<double> v) {
  if (!v) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", *v);
  return buf;
}

namespace detail {

struct PresentationRow {
  std::string sweep_kind;
  std::optional<double> sweep_value;
  std::string unit;
  int N;
  std::optional<double> R0_d_per_km2;
  std::optional<double> lambda_per_km2;
  std::optional<double> gamma_d_db;
  std::optional<double> pd_dbm;
  bool feasible;
  std::optional<double> analytic_se;
  std::optional<double> mc_mean;
  std::optional<double> mc_stderr;
  std::optional<double> limit_ase_per_km2;
};

inline PresentationRow present(const SweepRow& r) {
  PresentationRow out;
  out.sweep_kind = to_string(r.kind);
  if (r.kind == SweepKind::lambda_sweep) {
    out.sweep_value = units::per_m2_to_per_km2(r.sweep_value);
    out.unit = "per_km2";
  } else {
    out.sweep_value = units::ase_per_m2_to_per_km2(r.sweep_value);
    out.unit = "bpshz_per_km2";
  }
  out.N = r.N;
  out.R0_d_per_km2 = units::ase_per_m2_to_per_km2(r.R0_d);
  out.lambda_per_km2 = units::per_m2_to_per_km2(r.lambda);
  if (r.gamma_d && *r.gamma_d > 0.0) out.gamma_d_db = units::linear_to_db(*r.gamma_d);
  if (r.pd_watt && *r.pd_watt > 0.0) out.pd_dbm = units::watt_to_dbm(*r.pd_watt);
  out.feasible = r.feasible;
  out.analytic_se = r.analytic_se;
  out.mc_mean = r.mc_mean;
  out.mc_stderr = r.mc_stderr;
  if (r.limit_ase) out.limit_ase_per_km2 = units::ase_per_m2_to_per_km2(*r.limit_ase);
  return out;
}

// Values go through the same %.9g text in both formats.
inline nlohmann::json json_number(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return std::stod(format_number(v));
}

}  // namespace detail

inline void emit_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
  os << kCsvHeader << '\n';
  for (const auto& row : rows) {
    const auto r = detail::present(row);
    os << r.sweep_kind << ',' << format_number(r.sweep_value) << ',' << r.unit << ',' << r.N
       << ',' << format_number(r.R0_d_per_km2) << ',' << format_number(r.lambda_per_km2) << ','
       << format_number(r.gamma_d_db) << ',' << format_number(r.pd_dbm) << ','
       << (r.feasible ? "true" : "false") << ',' << format_number(r.analytic_se) << ','
       << format_number(r.mc_mean) << ',' << format_number(r.mc_stderr) << ','
       << format_number(r.limit_ase_per_km2) << '\n';
  }
}

inline nlohmann::json rows_to_json(const std::vector<SweepRow>& rows) {
  using detail::json_number;
  auto arr = nlohmann::json::array();
  for (const auto& row : rows) {
    const auto r = detail::present(row);
    arr.push_back({
        {"sweep_kind", r.sweep_kind},
        {"sweep_value", json_number(r.sweep_value)},
        {"unit", r.unit},
        {"N", r.N},
        {"R0_d_per_km2", json_number(r.R0_d_per_km2)},
        {"lambda_per_km2", json_number(r.lambda_per_km2)},
        {"gamma_d_db", json_number(r.gamma_d_db)},
        {"pd_dbm", json_number(r.pd_dbm)},
        {"feasible", r.feasible},
        {"analytic_se_bpshz", json_number(r.analytic_se)},
        {"mc_mean_bpshz", json_number(r.mc_mean)},
        {"mc_stderr_bpshz", json_number(r.mc_stderr)},
        {"limit_ase_per_km2", json_number(r.limit_ase_per_km2)},
    });
  }
  return arr;
}

inline void emit(const std::vector<SweepRow>& rows, EmitFormat format, std::ostream& os) {
  if (rows.empty()) throw DomainError("emit: no rows");
  if (format == EmitFormat::csv) {
    emit_csv(rows, os);
  } else {
    os << rows_to_json(rows).dump(2) << '\n';
  }
  if (!os) throw IoError("emit: write failed");
}

/// Writes to `path`; "-" means the given fallback stream (standard output).
inline void emit(const std::vector<SweepRow>& rows, EmitFormat format, const std::string& path,
                 std::ostream& stdout_stream) {
  if (path.empty() || path == "-") {
    emit(rows, format, stdout_stream);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  emit(rows, format, out);
  out.close();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace d2dmimo
