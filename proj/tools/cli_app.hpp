// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Presentation units at this boundary: dBm, dB,
// km^-2 and bits/s/Hz/km^2; everything below is SI.
//
// Exit codes: 0 success, 2 usage or domain error, 3 infeasible, 4 I/O.
#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "d2dmimo/d2dmimo.hpp"

namespace d2dmimo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitIo = 4;

inline constexpr const char* kSeedEnv = "D2DMIMO_SEED";

/// All user-facing settings in presentation units.
struct CliConfig {
  // system
  double fc_ghz = 2.0;
  double d0 = 35.0;
  double pair_distance = 50.0;
  double alpha_d = 4.0;
  double sigma_db = 3.0;
  double noise_dbm = -114.0;
  std::vector<int> n{};  // empty means the default N = 4
  double r0c = 3.0;

  // operating point
  std::optional<double> lambda_per_km2;
  std::optional<double> gamma_d_db;
  std::optional<double> pd_dbm;
  std::optional<double> target_ase;
  bool limit = false;

  // monte carlo
  std::size_t trials = 20000;
  std::uint64_t seed = 1;
  double eps = 1e-3;
  std::string mode = "reduced";
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());

  // sweep
  std::string grid;
  std::optional<double> grid_min;
  std::optional<double> grid_max;
  std::optional<std::size_t> points;
  double proxy_lambda = 2000.0;
  std::string mc = "off";
  std::string out = "-";
  std::string format = "csv";

  bool json = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline nlohmann::json jnum(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

inline int single_n(const CliConfig& c) {
  if (c.n.empty()) return 4;
  if (c.n.size() > 1) throw UsageError("--n given more than once; only `sweep` accepts several");
  return c.n.front();
}

inline SystemParams to_params(const CliConfig& c, int N) {
  SystemParams p;
  p.f_c = c.fc_ghz * 1e9;
  p.d0 = c.d0;
  p.D = c.pair_distance;
  p.alpha_d = c.alpha_d;
  p.sigma_db = c.sigma_db;
  p.sigma_sq = units::dbm_to_watt(c.noise_dbm);
  p.N = N;
  p.R0_c = c.r0c;
  p.validate();
  return p;
}

inline double require_lambda(const CliConfig& c) {
  if (!c.lambda_per_km2) throw UsageError("--lambda-per-km2 is required");
  return units::per_km2_to_per_m2(*c.lambda_per_km2);
}

/// gamma_d from --gamma-d-db or --pd-dbm, if either was given.
inline std::optional<double> gamma_from_flags(const CliConfig& c, const SystemParams& p) {
  if (c.gamma_d_db && c.pd_dbm) throw UsageError("give only one of --gamma-d-db and --pd-dbm");
  if (c.gamma_d_db) return units::db_to_linear(*c.gamma_d_db);
  if (c.pd_dbm) return units::dbm_to_watt(*c.pd_dbm) / p.sigma_sq;
  return std::nullopt;
}

inline McConfig to_mc(const CliConfig& c) {
  McConfig m;
  m.trials = c.trials;
  m.seed = c.seed;
  m.truncation_eps = c.eps;
  if (c.mode == "reduced") {
    m.sampler_mode = SamplerMode::reduced;
  } else if (c.mode == "full_vector" || c.mode == "full") {
    m.sampler_mode = SamplerMode::full_vector;
  } else {
    throw UsageError("--mode must be reduced or full_vector");
  }
  m.workers = c.workers;
  m.validate();
  return m;
}

inline void print_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

inline nlohmann::json estimate_json(const McEstimate& e) {
  return {{"mean", jnum(e.mean)},
          {"std_err", jnum(e.std_err)},
          {"ci95_lo", jnum(e.ci95_lo)},
          {"ci95_hi", jnum(e.ci95_hi)},
          {"trials_used", e.trials_used}};
}

inline void print_estimate(std::ostream& out, const std::string& label, const McEstimate& e,
                           const std::string& unit) {
  out << label << ": mean=" << num(e.mean) << " std_err="
      << (e.std_err_available() ? num(e.std_err) : std::string("unavailable")) << " ci95=["
      << num(e.ci95_lo) << ", " << num(e.ci95_hi) << "] trials=" << e.trials_used << ' ' << unit
      << '\n';
}

// ---------------------------------------------------------------------------
// commands

inline void cmd_constants(const CliConfig& c, std::ostream& out) {
  const auto p = to_params(c, single_n(c));
  const auto dc = derive_constants(p);
  if (c.json) {
    print_json(out, {{"lambda_c_m", dc.lambda_c},
                     {"c0", dc.c0},
                     {"c1", dc.c1},
                     {"c0_c1", dc.c0 * dc.c1},
                     {"vartheta_m2", dc.vartheta},
                     {"Theta_m2", dc.Theta}});
    return;
  }
  out << "lambda_c = " << num(dc.lambda_c) << " m\n"
      << "c0       = " << num(dc.c0) << '\n'
      << "c1       = " << num(dc.c1) << '\n'
      << "c0*c1    = " << num(dc.c0 * dc.c1) << '\n'
      << "vartheta = " << num(dc.vartheta) << " m^2\n"
      << "Theta    = " << num(dc.Theta) << " m^2\n";
}

inline void cmd_ase(const CliConfig& c, std::ostream& out) {
  const auto p = to_params(c, single_n(c));
  const auto dc = derive_constants(p);
  const double lambda = require_lambda(c);
  const double limit = units::ase_per_m2_to_per_km2(ase_limit(lambda, p, dc));
  if (c.limit) {
    if (c.json) {
      print_json(out, {{"lambda_per_km2", *c.lambda_per_km2}, {"limit_ase_per_km2", limit}});
    } else {
      out << "ase_limit = " << num(limit) << " bits/s/Hz/km^2\n";
    }
    return;
  }
  const auto gamma = gamma_from_flags(c, p);
  if (!gamma) throw UsageError("one of --gamma-d-db, --pd-dbm or --limit is required");
  const OperatingPoint op{lambda, *gamma};
  const double bound = units::ase_per_m2_to_per_km2(ase_lower_bound(op, p, dc));
  if (c.json) {
    print_json(out, {{"lambda_per_km2", *c.lambda_per_km2},
                     {"gamma_d_db", units::linear_to_db(*gamma)},
                     {"ase_bound_per_km2", bound},
                     {"limit_ase_per_km2", limit}});
  } else {
    out << "ase_bound = " << num(bound) << " bits/s/Hz/km^2\n"
        << "ase_limit = " << num(limit) << " bits/s/Hz/km^2\n";
  }
}

inline void cmd_cue(const CliConfig& c, std::ostream& out) {
  const auto p = to_params(c, single_n(c));
  const auto dc = derive_constants(p);
  const double lambda = require_lambda(c);
  const auto gamma_flag = gamma_from_flags(c, p);
  if (c.target_ase && gamma_flag) {
    throw UsageError("give either --target-ase or a power, not both");
  }
  double se = 0.0;
  double kappa = std::numeric_limits<double>::quiet_NaN();
  double gamma = 0.0;
  if (c.target_ase) {
    const double R0 = units::ase_per_km2_to_per_m2(*c.target_ase);
    const auto r = cue_se_theorem(lambda, R0, p, dc);
    se = r.r_lambda_cd;
    kappa = r.kappa;
    gamma = R0 > 0.0 ? required_gamma_d(lambda, R0, p, dc) : 0.0;
  } else if (gamma_flag) {
    gamma = *gamma_flag;
    se = cue_se_bound({lambda, gamma}, p, dc);
  } else {
    throw UsageError("one of --target-ase, --gamma-d-db or --pd-dbm is required");
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double gamma_db = gamma > 0.0 ? units::linear_to_db(gamma) : nan;
  const double pd = gamma > 0.0 ? units::watt_to_dbm(gamma * p.sigma_sq) : nan;
  const double mean_i = gamma > 0.0 ? dc.vartheta * lambda * gamma : 0.0;  // E[I_d] / sigma^2
  if (c.json) {
    print_json(out, {{"lambda_per_km2", *c.lambda_per_km2},
                     {"cue_se_bpshz", se},
                     {"kappa", jnum(kappa)},
                     {"gamma_d_db", jnum(gamma_db)},
                     {"pd_dbm", jnum(pd)},
                     {"mean_interference_over_noise", mean_i},
                     {"mean_interference_w", mean_i * p.sigma_sq}});
    return;
  }
  auto or_none = [](double v, const char* unit) {
    return std::isnan(v) ? std::string("none") : num(v) + unit;
  };
  out << "cue_se     = " << num(se) << " bits/s/Hz\n";
  if (!std::isnan(kappa)) out << "kappa      = " << num(kappa) << '\n';
  out << "gamma_d    = " << or_none(gamma_db, " dB") << '\n'
      << "P_D        = " << or_none(pd, " dBm") << '\n'
      << "E[I_d]     = " << num(mean_i * p.sigma_sq) << " W\n";
}

inline void cmd_mc(const std::string& which, const CliConfig& c, std::ostream& out) {
  const auto p = to_params(c, single_n(c));
  const auto dc = derive_constants(p);
  const auto cfg = to_mc(c);
  const double lambda = require_lambda(c);
  auto gamma = gamma_from_flags(c, p);

  if (which == "cue" && c.target_ase) {
    if (gamma) throw UsageError("give either --target-ase or a power, not both");
    const double R0 = units::ase_per_km2_to_per_m2(*c.target_ase);
    const auto est = mc_cue_se_fixed_ase(lambda, R0, p, dc, cfg);
    if (c.json) {
      print_json(out, {{"quantity", "cue_se_fixed_ase"},
                       {"unit", "bpshz"},
                       {"gamma_d_exact_db", units::linear_to_db(est.gamma_d_exact)},
                       {"gamma_d_bound_db", jnum(std::isnan(est.gamma_d_bound)
                                                     ? est.gamma_d_bound
                                                     : units::linear_to_db(est.gamma_d_bound))},
                       {"estimate", estimate_json(est.cue_se)},
                       {"d2d_ase_per_km2", units::ase_per_m2_to_per_km2(est.d2d_ase.mean)}});
      return;
    }
    out << "gamma_d (exact ASE) = " << num(units::linear_to_db(est.gamma_d_exact)) << " dB\n";
    print_estimate(out, "cue_se", est.cue_se, "bits/s/Hz");
    return;
  }

  if (!gamma) {
    if (which == "cue" && lambda == 0.0) {
      gamma = 1.0;  // irrelevant without interferers
    } else {
      throw UsageError("one of --gamma-d-db or --pd-dbm is required");
    }
  }
  const OperatingPoint op{lambda, *gamma};
  McEstimate est;
  std::string unit;
  double analytic = 0.0;
  if (which == "ase") {
    est = mc_d2d_ase(op, p, dc, cfg);
    analytic = ase_lower_bound(op, p, dc);
    // report per km^2
    est.mean = units::ase_per_m2_to_per_km2(est.mean);
    est.std_err = units::ase_per_m2_to_per_km2(est.std_err);
    est.ci95_lo = units::ase_per_m2_to_per_km2(est.ci95_lo);
    est.ci95_hi = units::ase_per_m2_to_per_km2(est.ci95_hi);
    analytic = units::ase_per_m2_to_per_km2(analytic);
    unit = "bits/s/Hz/km^2";
  } else if (which == "cue") {
    est = mc_cue_se(op, p, dc, cfg);
    analytic = cue_se_bound(op, p, dc);
    unit = "bits/s/Hz";
  } else {
    est = mc_mean_interference(op, p, dc, cfg);
    analytic = mean_interference(op, p, dc);
    unit = "W";
  }
  if (c.json) {
    print_json(out, {{"quantity", which},
                     {"unit", unit},
                     {"estimate", estimate_json(est)},
                     {"analytic", analytic},
                     {"seed", cfg.seed},
                     {"mode", to_string(cfg.sampler_mode)}});
    return;
  }
  print_estimate(out, which, est, unit);
  out << "analytic: " << num(analytic) << ' ' << unit << '\n';
}

inline std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> g;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("bad grid value '" + item + "'");
    }
    if (used != item.size()) throw UsageError("bad grid value '" + item + "'");
    g.push_back(v);
  }
  return g;
}

inline void cmd_sweep(const std::string& which, const CliConfig& c, std::ostream& out) {
  SweepKind kind;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 0;
  std::vector<int> ns = c.n;
  if (which == "fig2" || which == "lambda") {
    kind = SweepKind::lambda_sweep;
    lo = 50.0;
    hi = 2000.0;
    points = 16;
    if (ns.empty()) ns = {4};
  } else if (which == "fig3" || which == "ase") {
    kind = SweepKind::ase_sweep;
    lo = 5.0;
    hi = 120.0;
    points = 24;
    if (ns.empty()) ns = which == "fig3" ? std::vector<int>{4, 8} : std::vector<int>{4};
  } else {
    throw UsageError("unknown sweep '" + which + "' (fig2, fig3, lambda, ase)");
  }

  std::vector<double> grid;  // presentation units
  if (!c.grid.empty()) {
    grid = parse_grid(c.grid);
  } else {
    grid = geometric_grid(c.grid_min.value_or(lo), c.grid_max.value_or(hi), c.points.value_or(points));
  }
  if (grid.empty()) throw UsageError("sweep grid is empty");

  SweepSpec spec;
  spec.kind = kind;
  for (double v : grid) {
    spec.grid.push_back(kind == SweepKind::lambda_sweep ? units::per_km2_to_per_m2(v)
                                                        : units::ase_per_km2_to_per_m2(v));
  }
  spec.fixed_ase = units::ase_per_km2_to_per_m2(c.target_ase.value_or(25.0));
  spec.dense_lambda = units::per_km2_to_per_m2(c.proxy_lambda);
  if (c.mc == "on") {
    spec.mc = to_mc(c);
  } else if (c.mc != "off") {
    throw UsageError("--mc must be on or off");
  }

  EmitFormat format;
  if (c.format == "csv") {
    format = EmitFormat::csv;
  } else if (c.format == "json") {
    format = EmitFormat::json;
  } else {
    throw UsageError("--format must be csv or json");
  }

  std::vector<SweepRow> rows;
  for (int N : ns) {
    spec.params = to_params(c, N);
    auto part = run_sweep(spec);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  emit(rows, format, c.out, out);
}

/// Applies a JSON config object whose keys are the long flag names.
inline void apply_config_file(const std::string& path, CliConfig& c) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "fc-ghz") c.fc_ghz = v.get<double>();
      else if (key == "d0") c.d0 = v.get<double>();
      else if (key == "pair-distance") c.pair_distance = v.get<double>();
      else if (key == "alpha-d") c.alpha_d = v.get<double>();
      else if (key == "sigma-db") c.sigma_db = v.get<double>();
      else if (key == "noise-dbm") c.noise_dbm = v.get<double>();
      else if (key == "n") c.n = v.is_array() ? v.get<std::vector<int>>() : std::vector<int>{v.get<int>()};
      else if (key == "r0c") c.r0c = v.get<double>();
      else if (key == "lambda-per-km2") c.lambda_per_km2 = v.get<double>();
      else if (key == "gamma-d-db") c.gamma_d_db = v.get<double>();
      else if (key == "pd-dbm") c.pd_dbm = v.get<double>();
      else if (key == "target-ase") c.target_ase = v.get<double>();
      else if (key == "trials") c.trials = v.get<std::size_t>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "eps") c.eps = v.get<double>();
      else if (key == "mode") c.mode = v.get<std::string>();
      else if (key == "workers") c.workers = v.get<unsigned>();
      else if (key == "grid") {
        if (v.is_array()) {
          std::string s;
          for (const auto& x : v) s += num(x.get<double>()) + ",";
          c.grid = s;
        } else {
          c.grid = v.get<std::string>();
        }
      } else if (key == "grid-min") c.grid_min = v.get<double>();
      else if (key == "grid-max") c.grid_max = v.get<double>();
      else if (key == "points") c.points = v.get<std::size_t>();
      else if (key == "proxy-lambda") c.proxy_lambda = v.get<double>();
      else if (key == "mc") c.mc = v.get<std::string>();
      else if (key == "out") c.out = v.get<std::string>();
      else if (key == "format") c.format = v.get<std::string>();
      else throw UsageError("unknown config key '" + key + "'");
    } catch (const nlohmann::json::exception&) {
      throw UsageError("config key '" + key + "' has the wrong type");
    }
  }
}

inline void report(std::ostream& err, const char* category, const std::string& msg) {
  std::string one_line = msg;
  for (char& ch : one_line) {
    if (ch == '\n') ch = ' ';
  }
  err << "error: " << category << ": " << one_line << '\n';
}

}  // namespace detail

/// Parses argv and runs one command. Never throws.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  try {
    if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
      cfg.seed = std::stoull(env);
    }
  } catch (const std::exception&) {
    detail::report(err, "usage", std::string(kSeedEnv) + " must be an unsigned integer");
    return kExitUsage;
  }

  // The config file provides defaults that explicit flags override.
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string a = argv[i];
      if (a == "--config" && i + 1 < argc) detail::apply_config_file(argv[i + 1], cfg);
      if (a.rfind("--config=", 0) == 0) detail::apply_config_file(a.substr(9), cfg);
    }
  } catch (const IoError& e) {
    detail::report(err, "io", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    detail::report(err, "usage", e.what());
    return kExitUsage;
  }

  CLI::App app{"D2D underlay / massive MIMO downlink spectral efficiency toolkit", "d2dmimo"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with flag defaults");
  app.add_flag("--json", cfg.json, "machine-readable output");

  auto* sys = app.add_option_group("system", "system parameters (defaults: 2 GHz, d0 35 m, D 50 m, alpha 4, N 4)");
  sys->add_option("--fc-ghz", cfg.fc_ghz, "carrier frequency, GHz");
  sys->add_option("--d0", cfg.d0, "far-field distance, m");
  sys->add_option("--pair-distance", cfg.pair_distance, "D2D Tx-Rx separation, m");
  sys->add_option("--alpha-d", cfg.alpha_d, "pathloss exponent (> 2)");
  sys->add_option("--sigma-db", cfg.sigma_db, "lognormal shadowing std, dB");
  sys->add_option("--noise-dbm", cfg.noise_dbm, "noise power, dBm");
  sys->add_option("--n", cfg.n, "D2D Tx antennas (repeatable for sweep)");
  sys->add_option("--r0c", cfg.r0c, "interference-free CUE SE, bits/s/Hz");

  auto add_point = [&](CLI::App* sub) {
    sub->add_option("--lambda-per-km2", cfg.lambda_per_km2, "D2D Tx density, per km^2");
    sub->add_option("--gamma-d-db", cfg.gamma_d_db, "D2D transmit SNR, dB");
    sub->add_option("--pd-dbm", cfg.pd_dbm, "D2D transmit power, dBm");
  };
  auto add_mc = [&](CLI::App* sub) {
    sub->add_option("--trials", cfg.trials, "Monte Carlo trials");
    sub->add_option("--seed", cfg.seed, std::string("seed (env ") + kSeedEnv + ")");
    sub->add_option("--eps", cfg.eps, "truncated interference fraction, (0, 0.1]");
    sub->add_option("--mode", cfg.mode, "reduced | full_vector");
    sub->add_option("--workers", cfg.workers, "worker threads");
  };

  auto* constants = app.add_subcommand("constants", "print derived constants");
  auto* ase = app.add_subcommand("ase", "D2D ASE lower bound or its ceiling");
  add_point(ase);
  ase->add_flag("--limit", cfg.limit, "print the interference-limited ceiling");
  auto* cue = app.add_subcommand("cue", "CUE per-user SE under D2D interference");
  add_point(cue);
  cue->add_option("--target-ase", cfg.target_ase, "fixed D2D ASE, bits/s/Hz/km^2");

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimates");
  mc->require_subcommand(1);
  std::string mc_which;
  for (const char* name : {"ase", "cue", "interference"}) {
    auto* sub = mc->add_subcommand(name, std::string("simulate ") + name);
    add_point(sub);
    add_mc(sub);
    if (std::string(name) == "cue") {
      sub->add_option("--target-ase", cfg.target_ase,
                      "operate D2D at this simulated ASE, bits/s/Hz/km^2");
    }
    sub->callback([&mc_which, name] { mc_which = name; });
  }

  auto* sweep = app.add_subcommand("sweep", "fig2 | fig3 | lambda | ase parameter sweeps");
  std::string sweep_which;
  sweep->add_option("preset", sweep_which, "fig2, fig3, lambda or ase")->required();
  sweep->add_option("--grid", cfg.grid, "comma-separated grid in presentation units");
  sweep->add_option("--grid-min", cfg.grid_min, "geometric grid start");
  sweep->add_option("--grid-max", cfg.grid_max, "geometric grid end");
  sweep->add_option("--points", cfg.points, "geometric grid size");
  sweep->add_option("--target-ase", cfg.target_ase, "fixed D2D ASE for lambda sweeps");
  sweep->add_option("--proxy-lambda", cfg.proxy_lambda, "dense-network density proxy, per km^2");
  sweep->add_option("--mc", cfg.mc, "on | off");
  sweep->add_option("--out", cfg.out, "output path, - for stdout");
  sweep->add_option("--format", cfg.format, "csv | json");
  add_mc(sweep);

  for (auto* sub : {constants, ase, cue, mc, sweep}) sub->fallthrough();
  for (auto* sub : mc->get_subcommands({})) sub->fallthrough();

  bool grid_given = false;
  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
    grid_given = sweep->count("--grid") > 0 || !cfg.grid.empty();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    detail::report(err, "usage", e.what());
    return kExitUsage;
  }

  try {
    if (*constants) {
      detail::cmd_constants(cfg, out);
    } else if (*ase) {
      detail::cmd_ase(cfg, out);
    } else if (*cue) {
      detail::cmd_cue(cfg, out);
    } else if (*mc) {
      detail::cmd_mc(mc_which, cfg, out);
    } else if (*sweep) {
      if (grid_given && cfg.grid.find_first_not_of(", ") == std::string::npos) {
        throw UsageError("sweep grid is empty");
      }
      detail::cmd_sweep(sweep_which, cfg, out);
    }
  } catch (const UsageError& e) {
    detail::report(err, "usage", e.what());
    return kExitUsage;
  } catch (const DomainError& e) {
    detail::report(err, "domain", e.what());
    return kExitUsage;
  } catch (const InfeasibleAse& e) {
    detail::report(err, "infeasible",
                   std::string(e.what()) + " (limit_ase_per_km2=" +
                       detail::num(units::ase_per_m2_to_per_km2(e.limit_ase())) + ")");
    return kExitInfeasible;
  } catch (const NoPositiveLimit& e) {
    detail::report(err, "infeasible", e.what());
    return kExitInfeasible;
  } catch (const IoError& e) {
    detail::report(err, "io", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    detail::report(err, "internal", e.what());
    return 1;
  }
  return kExitOk;
}

}  // namespace d2dmimo::cli
