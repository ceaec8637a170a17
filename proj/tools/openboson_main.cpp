// Command-line front end: closed-form thermal transport of a damped bosonic
// mode, numerical cross-checks, and figure-ready CSV sweeps.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "openboson/analytic.hpp"
#include "openboson/cli_config.hpp"
#include "openboson/csv.hpp"
#include "openboson/fock.hpp"
#include "openboson/fokker_planck.hpp"
#include "openboson/lindblad.hpp"
#include "openboson/parallel.hpp"
#include "openboson/validate.hpp"

namespace {

using namespace openboson;

unsigned worker_cap() {
  const char* env = std::getenv("OPEN_BOSON_THREADS");
  if (env == nullptr || *env == '\0') {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value < 1) {
    throw std::invalid_argument(
        "OPEN_BOSON_THREADS must be a positive integer");
  }
  return static_cast<unsigned>(value);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file '" + path + "'");
  }
  out << text;
  if (!out.good()) {
    throw std::runtime_error("failed writing output file '" + path + "'");
  }
}

void apply_sweep_value(RunConfig& cfg, const std::string& name, double value) {
  if (name == "omega_s") {
    cfg.params.omega_s = value;
  } else if (name == "delta") {
    cfg.params.delta = value;
  } else if (name == "gamma_e") {
    cfg.params.gamma_e = value;
  } else if (name == "gamma_c") {
    cfg.params.gamma_c = value;
  } else if (name == "temp_e") {
    cfg.params.temp_e = value;
  } else if (name == "temp_c") {
    cfg.params.temp_c = value;
  } else if (name == "mass") {
    cfg.params.mass = value;
  } else if (name == "n0") {
    cfg.n0 = value;
  } else if (name == "t_end") {
    cfg.t_end = value;
  } else {
    throw std::invalid_argument("unknown sweep parameter '" + name + "'");
  }
}

// Runs rows_fn once, or once per sweep value with the swept parameter
// prepended as the first column. Sweep blocks are computed by a worker pool
// but always emitted in sweep order, so output bytes never depend on the
// schedule.
int run_tabular(const RunConfig& cfg, const std::string& header,
                const std::function<std::vector<std::string>(const RunConfig&)>&
                    rows_fn) {
  std::ostringstream out;
  if (!cfg.sweep) {
    out << header << '\n';
    for (const std::string& row : rows_fn(cfg)) {
      out << row << '\n';
    }
  } else {
    const std::vector<double> grid = sweep_grid(*cfg.sweep);
    std::vector<std::vector<std::string>> blocks(grid.size());
    parallel_for(grid.size(), worker_cap(), [&](std::size_t i) {
      RunConfig local = cfg;
      apply_sweep_value(local, cfg.sweep->name, grid[i]);
      blocks[i] = rows_fn(local);
    });
    out << cfg.sweep->name << ',' << header << '\n';
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (const std::string& row : blocks[i]) {
        out << fmt17(grid[i]) << ',' << row << '\n';
      }
    }
  }
  write_output(cfg.out, out.str());
  return 0;
}

std::vector<std::string> steady_rows(const RunConfig& cfg) {
  const ThermalSummary s = summarize(cfg.params);
  const TransportReport r = transport_report(cfg.params, cfg.n0);
  std::ostringstream row;
  row << fmt17(s.n_e) << ',' << fmt17(s.n_c) << ',' << fmt17(s.n_s) << ','
      << fmt17(s.temp_sys) << ',' << fmt17(r.i_s) << ',' << fmt17(r.eta_s)
      << ',' << fmt17(r.eta_c) << ',' << fmt17(r.e_s);
  return {row.str()};
}

std::vector<std::string> transport_rows(const RunConfig& cfg) {
  if (!(cfg.t_end > 0.0)) {
    throw std::invalid_argument("transport: t_end must be > 0");
  }
  const int n_rows = 501;
  std::vector<std::string> rows;
  rows.reserve(n_rows);
  for (int i = 0; i < n_rows; ++i) {
    const double t = cfg.t_end * i / (n_rows - 1);
    std::ostringstream row;
    row << fmt17(t) << ',' << fmt17(mean_number(cfg.params, cfg.n0, t)) << ','
        << fmt17(current(cfg.params, cfg.n0, t)) << ','
        << fmt17(transport_factor_t(cfg.params, cfg.n0, t));
    rows.push_back(row.str());
  }
  return rows;
}

std::vector<std::string> evolve_rows(const RunConfig& cfg) {
  const ThermalSummary s = summarize(cfg.params);
  if (!(cfg.t_end > 0.0)) {
    throw std::invalid_argument("evolve: t_end must be > 0");
  }
  const int dim =
      cfg.dim > 0
          ? cfg.dim
          : recommended_dim(std::max({s.n_e, s.n_c, s.n_s, cfg.n0}));
  const DensityMatrix rho0 = thermal_density(FockSpace{dim}, cfg.n0);
  const double dt = cfg.dt > 0.0 ? cfg.dt : stable_dt(cfg.params, dim);
  const long steps = std::lround(std::ceil(cfg.t_end / dt));
  const int sample_every = static_cast<int>(std::max(1L, steps / 500));
  const Trajectory traj = evolve(cfg.params, rho0, cfg.t_end, dt, sample_every);
  std::vector<std::string> rows;
  rows.reserve(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::ostringstream row;
    row << fmt17(traj.times[i]) << ',' << fmt17(traj.mean_n[i]) << ','
        << fmt17(traj.current[i]) << ',' << fmt17(traj.trace_defect[i]) << ','
        << fmt17(traj.min_eig[i]);
    rows.push_back(row.str());
  }
  return rows;
}

int cmd_fig1(const RunConfig& cfg, const std::vector<double>& curves) {
  std::vector<double> tc_grid;
  if (cfg.sweep) {
    if (cfg.sweep->name != "temp_c") {
      throw std::invalid_argument("fig1 sweeps temp_c; got '" +
                                  cfg.sweep->name + "'");
    }
    const double min_te = *std::min_element(curves.begin(), curves.end());
    if (!(cfg.sweep->min > 0.0)) {
      throw std::invalid_argument("fig1: temp_c sweep must start above 0");
    }
    if (cfg.sweep->max >= min_te) {
      throw std::invalid_argument(
          "fig1: temp_c sweep bound must stay below every emitter "
          "temperature");
    }
    tc_grid = sweep_grid(*cfg.sweep);
  }
  struct Row {
    double t_e, t_c, eta_s, eta_c;
  };
  std::vector<std::vector<Row>> blocks(curves.size());
  parallel_for(curves.size(), worker_cap(), [&](std::size_t i) {
    SystemParams p = cfg.params;
    p.temp_e = curves[i];
    std::vector<double> grid = tc_grid;
    if (grid.empty()) {
      // Relative grid up to and including T_c = T_e, where the factor
      // pinches to zero.
      const int count = 200;
      grid.resize(count);
      for (int j = 1; j <= count; ++j) {
        grid[j - 1] = curves[i] * j / count;
      }
    }
    blocks[i].reserve(grid.size());
    for (double t_c : grid) {
      SystemParams q = p;
      q.temp_c = t_c;
      blocks[i].push_back({curves[i], t_c, transport_factor_steady(q),
                           carnot_factor(q)});
    }
  });
  std::ostringstream out;
  out << "T_e,T_c,eta_s,eta_c\n";
  for (const auto& block : blocks) {
    for (const Row& r : block) {
      out << fmt17(r.t_e) << ',' << fmt17(r.t_c) << ',' << fmt17(r.eta_s)
          << ',' << fmt17(r.eta_c) << '\n';
    }
  }
  write_output(cfg.out, out.str());
  return 0;
}

int cmd_fig2(const RunConfig& cfg) {
  if (!(cfg.target_fraction > 0.0 && cfg.target_fraction < 1.0)) {
    throw std::invalid_argument("fig2: target fraction must lie in (0, 1)");
  }
  std::vector<double> te_grid;
  if (cfg.sweep) {
    if (cfg.sweep->name != "temp_e") {
      throw std::invalid_argument("fig2 sweeps temp_e; got '" +
                                  cfg.sweep->name + "'");
    }
    if (!(cfg.sweep->min > 0.0)) {
      throw std::invalid_argument("fig2: temp_e sweep must start above 0");
    }
    te_grid = sweep_grid(*cfg.sweep);
  } else {
    for (int i = 1; i <= 24; ++i) {
      te_grid.push_back(0.25 * i);
    }
  }
  std::vector<LocusPoint> points(te_grid.size());
  parallel_for(te_grid.size(), worker_cap(), [&](std::size_t i) {
    points[i] = half_factor_locus(cfg.params, {te_grid[i]},
                                  cfg.target_fraction)[0];
  });
  std::ostringstream out;
  out << "T_e,T_c_half,status\n";
  for (const LocusPoint& p : points) {
    out << fmt17(p.temp_e) << ','
        << (p.temp_c ? fmt17(*p.temp_c) : std::string("nan")) << ','
        << (p.temp_c ? "ok" : "absent") << '\n';
  }
  write_output(cfg.out, out.str());
  return 0;
}

int cmd_fp(const RunConfig& cfg) {
  if (cfg.sweep) {
    throw std::invalid_argument("fp does not support --sweep");
  }
  const ThermalSummary s = summarize(cfg.params);
  if (cfg.points < 3) {
    throw std::invalid_argument("fp: points must be >= 3");
  }
  const double sigma2 =
      cfg.sigma0_sq > 0.0 ? cfg.sigma0_sq : 1e-3 * s.n_s;
  GridDistribution grid =
      make_gaussian_grid(cfg.params, cfg.x0, sigma2, cfg.points);
  const double dt = cfg.dt > 0.0 ? cfg.dt : suggest_fp_dt(cfg.params, grid.dx());
  std::vector<double> times = cfg.snapshot_times;
  if (times.empty()) {
    if (!(cfg.t_end > 0.0)) {
      throw std::invalid_argument("fp: t_end must be > 0");
    }
    for (int k = 1; k <= 5; ++k) {
      times.push_back(cfg.t_end * k / 5.0);
    }
  }
  double prev = 0.0;
  for (double t : times) {
    if (!(t > prev)) {
      throw std::invalid_argument(
          "fp: snapshot times must be strictly increasing and > 0");
    }
    prev = t;
  }
  std::ostringstream out;
  const std::string hash = params_hash(cfg.params);
  bool first = true;
  prev = 0.0;
  for (double t : times) {
    grid = solve_fp(cfg.params, grid, t - prev, dt);
    write_snapshot_csv(grid, t, hash, out, first);
    first = false;
    prev = t;
  }
  write_output(cfg.out, out.str());
  return 0;
}

int cmd_validate(const RunConfig& cfg, bool corrupt) {
  if (cfg.sweep) {
    throw std::invalid_argument("validate does not support --sweep");
  }
  const ValidationReport report =
      run_validation(cfg.params, cfg.seed, corrupt ? 1e-9 : 1.0);
  const std::string text = report.to_text();
  std::cout << text;
  if (!cfg.out.empty()) {
    write_output(cfg.out, text);
  }
  return report.all_passed() ? 0 : 1;
}

struct FlagBundle {
  std::string config;
  std::vector<double> temp_e;
  std::string sweep;
  std::string times;
};

void add_common(CLI::App* sub, RunConfig& cfg, FlagBundle& flags) {
  sub->add_option("--config", flags.config,
                  "flat JSON config file; flags override its values");
  sub->add_option("--omega-s", cfg.params.omega_s, "mode frequency");
  sub->add_option("--delta", cfg.params.delta, "coherent frequency shift");
  sub->add_option("--gamma-e", cfg.params.gamma_e, "emitter damping rate");
  sub->add_option("--gamma-c", cfg.params.gamma_c, "collector damping rate");
  sub->add_option("--temp-e", flags.temp_e,
                  "emitter temperature (repeat for extra fig1 curves)");
  sub->add_option("--temp-c", cfg.params.temp_c, "collector temperature");
  sub->add_option("--mass", cfg.params.mass, "oscillator mass");
  sub->add_option("--n0", cfg.n0, "initial mean occupation");
  sub->add_option("--t-end", cfg.t_end, "end time");
  sub->add_option("--dt", cfg.dt, "time step; 0 picks a stable default");
  sub->add_option("--dim", cfg.dim, "basis dimension; 0 picks the recommended size");
  sub->add_option("--seed", cfg.seed, "random seed");
  sub->add_option("--sweep", flags.sweep,
                  "name:min:max:count sweep; rows keep sweep order");
  sub->add_option("--out", cfg.out, "output file (default: stdout)");
}

std::vector<double> parse_times(const std::string& text) {
  std::vector<double> times;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item =
        text.substr(start, comma == std::string::npos ? comma : comma - start);
    try {
      std::size_t used = 0;
      times.push_back(std::stod(item, &used));
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("--times expects comma-separated numbers");
    }
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  return times;
}

std::string find_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      return argv[i + 1];
    }
    if (arg.rfind("--config=", 0) == 0) {
      return arg.substr(9);
    }
  }
  return "";
}

int run_cli(int argc, char** argv) {
  RunConfig cfg;

  // Config file first, so command-line flags override its values.
  const std::string config_path = find_config_path(argc, argv);
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      throw std::invalid_argument("cannot read config file '" + config_path +
                                  "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    apply_json_config(text.str(), cfg);
  }

  CLI::App app{
      "Thermal transport of a damped bosonic mode between two reservoirs.\n"
      "Closed-form results plus numerical cross-checks. Option precedence:\n"
      "built-in defaults, then --config file values, then flags."};
  app.require_subcommand(1);

  FlagBundle flags;
  bool corrupt = false;

  CLI::App* steady = app.add_subcommand(
      "steady", "steady-state report: occupations, current, transport factor");
  add_common(steady, cfg, flags);

  CLI::App* evolve_cmd = app.add_subcommand(
      "evolve", "integrate the master equation and record the trajectory");
  add_common(evolve_cmd, cfg, flags);

  CLI::App* transport = app.add_subcommand(
      "transport", "closed-form time series of occupation, current, factor");
  add_common(transport, cfg, flags);

  CLI::App* fig1 = app.add_subcommand(
      "fig1", "steady transport factor vs collector temperature");
  add_common(fig1, cfg, flags);

  CLI::App* fig2 = app.add_subcommand(
      "fig2", "collector temperature reaching a target transport fraction");
  add_common(fig2, cfg, flags);
  fig2->add_option("--target-fraction", cfg.target_fraction,
                   "fraction of the low-temperature limit to hit");

  CLI::App* fp = app.add_subcommand(
      "fp", "finite-difference quadrature distribution snapshots");
  add_common(fp, cfg, flags);
  fp->add_option("--x0", cfg.x0, "initial center");
  fp->add_option("--sigma0-sq", cfg.sigma0_sq,
                 "initial variance; 0 picks a narrow default");
  fp->add_option("--points", cfg.points, "grid points");
  fp->add_option("--times", flags.times, "comma-separated snapshot times");

  CLI::App* validate = app.add_subcommand(
      "validate", "run the numerical cross-validation suite");
  add_common(validate, cfg, flags);
  validate->add_flag("--corrupt-tolerances", corrupt,
                     "shrink every tolerance so the suite must fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!flags.sweep.empty()) {
    cfg.sweep = parse_sweep(flags.sweep);
  }
  if (!flags.temp_e.empty()) {
    cfg.params.temp_e = flags.temp_e.front();
    cfg.temp_e_list = flags.temp_e;
  }
  if (!flags.times.empty()) {
    cfg.snapshot_times = parse_times(flags.times);
  }
  cfg.params.validate();

  std::vector<double> curves =
      cfg.temp_e_list.empty() ? std::vector<double>{cfg.params.temp_e}
                              : cfg.temp_e_list;
  if (curves.size() > 1 && !fig1->parsed()) {
    throw std::invalid_argument(
        "multiple emitter temperatures only make sense for fig1");
  }

  if (steady->parsed()) {
    return run_tabular(cfg, "n_e,n_c,n_s,T_sys,I_s,eta_s,eta_c,E_s",
                       steady_rows);
  }
  if (evolve_cmd->parsed()) {
    return run_tabular(cfg, "t,mean_n,current,trace_defect,min_eig",
                       evolve_rows);
  }
  if (transport->parsed()) {
    return run_tabular(cfg, "t,mean_n,current,eta", transport_rows);
  }
  if (fig1->parsed()) {
    return cmd_fig1(cfg, curves);
  }
  if (fig2->parsed()) {
    return cmd_fig2(cfg);
  }
  if (fp->parsed()) {
    return cmd_fp(cfg);
  }
  return cmd_validate(cfg, corrupt);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
