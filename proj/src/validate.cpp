#include "openboson/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "openboson/analytic.hpp"
#include "openboson/fock.hpp"
#include "openboson/fokker_planck.hpp"
#include "openboson/lindblad.hpp"

namespace openboson {

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  for (const CheckResult& c : checks) {
    char line[160];
    std::snprintf(line, sizeof(line), "[%s] %-42s measured %.3e  tolerance %.3e\n",
                  c.passed ? "PASS" : "FAIL", c.name.c_str(), c.measured,
                  c.tolerance);
    out << line;
  }
  out << "settings: dim=" << dim << " dt=" << dt << " seed=" << seed << '\n';
  out << "overall: " << (all_passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

ValidationReport run_validation(const SystemParams& params, std::uint64_t seed,
                                double tolerance_scale) {
  const ThermalSummary s = summarize(params);
  if (!(tolerance_scale > 0.0)) {
    throw std::domain_error("run_validation: tolerance_scale must be > 0");
  }
  ValidationReport report;
  report.seed = seed;
  const auto add = [&](const std::string& name, double measured, double tol) {
    const double scaled = tol * tolerance_scale;
    report.checks.push_back({name, measured, scaled, measured <= scaled});
  };

  const int dim = recommended_dim(std::max({s.n_e, s.n_c, s.n_s}));
  const double dt = stable_dt(params, dim);
  report.dim = dim;
  report.dt = dt;

  // Occupation and current against the integrator.
  const double t_end = 5.0 / s.gamma_total;
  const DensityMatrix rho0 = thermal_density(FockSpace{dim}, 0.0);
  const long steps = std::lround(std::ceil(t_end / dt));
  const int sample_every = static_cast<int>(std::max(1L, steps / 10));
  const Trajectory traj = evolve(params, rho0, t_end, dt, sample_every);
  double occ_err = 0.0;
  double cur_err = 0.0;
  const double i_s =
      params.gamma_e * params.gamma_c * (s.n_e - s.n_c) / s.gamma_total;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double ana_n = mean_number(params, 0.0, traj.times[k]);
    occ_err = std::max(occ_err, std::abs(traj.mean_n[k] - ana_n) /
                                    std::max(std::abs(ana_n), 1e-12));
    const double ana_i = current(params, 0.0, traj.times[k]);
    cur_err = std::max(cur_err, std::abs(traj.current[k] - ana_i) /
                                    std::max(std::abs(i_s), 1e-12));
  }
  add("mean occupation vs integrator", occ_err, 1e-5);
  add("current vs integrator", cur_err, 1e-6);

  // Steady state against the geometric weights.
  const LadderOps ops = build_ops(FockSpace{dim});
  const DensityMatrix rho_s = steady_state(params, ops);
  double diag_err = 0.0;
  double offdiag = 0.0;
  for (int n = 0; n < dim; ++n) {
    diag_err = std::max(
        diag_err, std::abs(rho_s.rho(n, n).real() - steady_diagonal(params, n)));
    for (int m = 0; m < dim; ++m) {
      if (n != m) {
        offdiag = std::max(offdiag, std::abs(rho_s.rho(n, m)));
      }
    }
  }
  add("steady diagonal vs geometric weights", diag_err, 1e-6);
  add("steady off-diagonal mass", offdiag, 1e-9);

  add("flux balance residual", std::abs(flux_balance_residual(params)), 1e-12);

  // Quadrature distribution against the finite-difference solver.
  {
    const double x0 = 1.0;
    const int n_points = 1025;
    const GridDistribution initial =
        make_gaussian_grid(params, x0, 1e-3 * s.n_s, n_points);
    const double t_probe = 1.0 / s.gamma_total;
    const double fp_dt = suggest_fp_dt(params, initial.dx());
    const GridDistribution evolved = solve_fp(params, initial, t_probe, fp_dt);
    double l1 = 0.0;
    for (int i = 0; i < evolved.n_points(); ++i) {
      l1 += std::abs(evolved.values[i] -
                     gaussian_x(params, x0, evolved.x_at(i), t_probe));
    }
    l1 *= evolved.dx();
    add("quadrature density vs grid solver (L1)", l1, 1e-3);
    add("grid solver mass conservation", std::abs(evolved.mass() - 1.0), 1e-6);
  }

  // Steady occupation against Monte-Carlo phase-space sampling.
  {
    const McEstimate mc = p_sampling_mean(params, 200000, seed);
    add("steady occupation vs phase-space sampling",
        std::abs(mc.mean - s.n_s), 4.0 * mc.std_error);
  }

  // Force against the numerical log-derivative of the position marginal.
  {
    const double q0 = 0.7;
    const double t_probe = 0.9 / s.gamma_total;
    const double h = 1e-4;
    double force_err = 0.0;
    for (double q : {-1.5, -0.3, 0.2, 0.8, 2.0}) {
      const double up = std::log(p_position(params, q0, q + h, t_probe));
      const double down = std::log(p_position(params, q0, q - h, t_probe));
      const double numeric =
          params.k_b * s.temp_sys * (up - down) / (2.0 * h);
      force_err = std::max(
          force_err, std::abs(entropic_force(params, q, q0, t_probe) - numeric));
    }
    add("force vs log-derivative of marginal", force_err, 1e-8);
  }

  {
    const std::vector<double> devs = hooke_limit_check(params, {1000.0});
    add("restoring coefficient at high temperature", devs.front(), 1e-3);
  }

  return report;
}

}  // namespace openboson
