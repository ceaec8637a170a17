#include "openboson/fokker_planck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "openboson/csv.hpp"

namespace openboson {

namespace {

double check_positive_time(double t) {
  if (!std::isfinite(t) || !(t > 0.0)) {
    throw std::domain_error(
        "time must be > 0; the t -> 0+ limit is a point distribution");
  }
  return t;
}

double gaussian(double x, double mean, double variance) {
  const double z = x - mean;
  return std::exp(-z * z / (2.0 * variance)) /
         std::sqrt(2.0 * std::numbers::pi * variance);
}

}  // namespace

double GridDistribution::mass() const {
  if (n_points() < 2) {
    return 0.0;
  }
  double total = 0.5 * (values.front() + values.back());
  for (int i = 1; i + 1 < n_points(); ++i) {
    total += values[i];
  }
  return total * dx();
}

double gaussian_x(const SystemParams& params, double x0, double x, double t) {
  check_positive_time(t);
  const ThermalSummary s = summarize(params);
  const double decay = std::exp(-s.gamma_total * t);
  const double v = s.n_s * (1.0 - decay);
  if (!(v > 0.0)) {
    throw std::domain_error("gaussian_x: width parameter underflows to zero");
  }
  const double z = x - x0 * std::exp(-0.5 * s.gamma_total * t);
  return std::exp(-z * z / v) / std::sqrt(std::numbers::pi * v);
}

GaussianState gaussian_state(const SystemParams& params, double x0, double t) {
  check_positive_time(t);
  const ThermalSummary s = summarize(params);
  const double decay = std::exp(-s.gamma_total * t);
  GaussianState state{};
  state.center = x0 * std::exp(-0.5 * s.gamma_total * t);
  state.variance_param = 0.5 * s.n_s * (1.0 - decay);
  if (!(state.variance_param > 0.0)) {
    throw std::domain_error(
        "gaussian_state: width parameter underflows to zero");
  }
  // Trapezoid check over +-12 sigma; resolution well below the quadrature
  // error of interest.
  const double sigma = std::sqrt(state.variance_param);
  const int n = 4001;
  const double lo = state.center - 12.0 * sigma;
  const double hi = state.center + 12.0 * sigma;
  const double step = (hi - lo) / (n - 1);
  double total = 0.5 * (gaussian_x(params, x0, lo, t) +
                        gaussian_x(params, x0, hi, t));
  for (int i = 1; i + 1 < n; ++i) {
    total += gaussian_x(params, x0, lo + i * step, t);
  }
  state.norm_check = total * step;
  return state;
}

double p_position(const SystemParams& params, double q0, double q, double t) {
  check_positive_time(t);
  const ThermalSummary s = summarize(params);
  const double decay = std::exp(-s.gamma_total * t);
  const double variance =
      params.hbar * s.n_s * (1.0 - decay) / (params.mass * params.omega_s);
  if (!(variance > 0.0)) {
    throw std::domain_error("p_position: variance underflows to zero");
  }
  return gaussian(q, q0 * std::exp(-0.5 * s.gamma_total * t), variance);
}

double p_momentum(const SystemParams& params, double p0, double p, double t) {
  check_positive_time(t);
  const ThermalSummary s = summarize(params);
  const double decay = std::exp(-s.gamma_total * t);
  const double variance =
      params.hbar * params.mass * params.omega_s * s.n_s * (1.0 - decay);
  if (!(variance > 0.0)) {
    throw std::domain_error("p_momentum: variance underflows to zero");
  }
  return gaussian(p, p0 * std::exp(-0.5 * s.gamma_total * t), variance);
}

double steady_p(const SystemParams& params, double alpha_sq) {
  if (!std::isfinite(alpha_sq) || alpha_sq < 0.0) {
    throw std::domain_error("steady_p: alpha_sq must be >= 0");
  }
  const ThermalSummary s = summarize(params);
  if (!(s.n_s > 0.0)) {
    throw std::domain_error("steady_p: steady occupation underflows to zero");
  }
  return std::exp(-alpha_sq / s.n_s) / (std::numbers::pi * s.n_s);
}

double fp_diffusion(const SystemParams& params) {
  const ThermalSummary s = summarize(params);
  return 0.25 * s.gamma_total * s.n_s;
}

double suggest_fp_dt(const SystemParams& params, double dx) {
  if (!(dx > 0.0)) {
    throw std::domain_error("suggest_fp_dt: dx must be > 0");
  }
  return 0.4 * dx * dx / fp_diffusion(params);
}

GridDistribution make_gaussian_grid(const SystemParams& params, double x0,
                                    double sigma2, int n_points) {
  const ThermalSummary s = summarize(params);
  if (n_points < 3) {
    throw std::domain_error("make_gaussian_grid: need at least 3 points");
  }
  if (!(sigma2 > 0.0)) {
    throw std::domain_error("make_gaussian_grid: sigma2 must be > 0");
  }
  GridDistribution grid;
  const double half_width = std::abs(x0) + 8.0 * std::sqrt(0.5 * s.n_s);
  grid.x_min = -half_width;
  grid.x_max = half_width;
  grid.values.resize(n_points);
  for (int i = 0; i < n_points; ++i) {
    grid.values[i] = gaussian(grid.x_at(i), x0, sigma2);
  }
  // Renormalize so the trapezoid mass is exactly 1 on this grid.
  const double mass = grid.mass();
  if (!(mass > 0.0)) {
    throw std::domain_error(
        "make_gaussian_grid: density vanishes on the grid; widen sigma2");
  }
  for (double& v : grid.values) {
    v /= mass;
  }
  return grid;
}

GridDistribution solve_fp(const SystemParams& params,
                          const GridDistribution& initial, double t_end,
                          double dt) {
  const ThermalSummary s = summarize(params);
  if (initial.n_points() < 3) {
    throw std::domain_error("solve_fp: grid needs at least 3 points");
  }
  if (!(initial.x_max > initial.x_min)) {
    throw std::domain_error("solve_fp: grid bounds must satisfy x_max > x_min");
  }
  if (!std::isfinite(t_end) || t_end < 0.0) {
    throw std::domain_error("solve_fp: t_end must be >= 0");
  }
  const double dx = initial.dx();
  const double diffusion = fp_diffusion(params);
  if (!(dt > 0.0) || diffusion * dt / (dx * dx) > 0.4 * (1.0 + 1e-12)) {
    const double suggested = suggest_fp_dt(params, dx);
    std::ostringstream msg;
    msg << "solve_fp: D dt/dx^2 = " << diffusion * dt / (dx * dx)
        << " exceeds the stability bound 0.4; try dt <= " << suggested;
    throw CflError(msg.str(), suggested);
  }
  if (std::abs(initial.mass() - 1.0) > 1e-6) {
    throw std::domain_error("solve_fp: initial mass must be 1 within 1e-6");
  }

  GridDistribution grid = initial;
  grid.values.front() = 0.0;
  grid.values.back() = 0.0;
  const long n_steps =
      t_end > 0.0 ? std::lround(std::ceil(t_end / dt - 1e-12)) : 0;
  const double h = n_steps > 0 ? t_end / static_cast<double>(n_steps) : 0.0;
  const int n = grid.n_points();
  const double half_gamma = 0.5 * s.gamma_total;
  std::vector<double> flux(n - 1);  // flux[i] lives on the face i+1/2
  std::vector<double>& v = grid.values;
  for (long step = 0; step < n_steps; ++step) {
    for (int i = 0; i + 1 < n; ++i) {
      const double x_face = grid.x_min + (i + 0.5) * dx;
      flux[i] = half_gamma * x_face * 0.5 * (v[i] + v[i + 1]) +
                diffusion * (v[i + 1] - v[i]) / dx;
    }
    for (int i = 1; i + 1 < n; ++i) {
      v[i] += h * (flux[i] - flux[i - 1]) / dx;
    }
  }
  return grid;
}

double entropic_force(const SystemParams& params, double q, double q0,
                      double t) {
  check_positive_time(t);
  const ThermalSummary s = summarize(params);
  if (!(s.n_s > 0.0)) {
    throw std::domain_error(
        "entropic_force: steady occupation underflows to zero");
  }
  const double decay = std::exp(-s.gamma_total * t);
  const double stiffness = params.mass * params.omega_s * params.k_b *
                           s.temp_sys / (params.hbar * s.n_s);
  return -stiffness * (q - q0 * std::exp(-0.5 * s.gamma_total * t)) /
         (1.0 - decay);
}

std::vector<double> hooke_limit_check(const SystemParams& params,
                                      const std::vector<double>& lambdas) {
  params.validate();
  std::vector<double> deviations;
  deviations.reserve(lambdas.size());
  for (double lambda : lambdas) {
    if (!std::isfinite(lambda) || lambda < 1.0) {
      throw std::domain_error("hooke_limit_check: scale factors must be >= 1");
    }
    SystemParams scaled = params;
    scaled.temp_e = lambda * params.temp_e;
    scaled.temp_c = lambda * params.temp_c;
    const ThermalSummary s = summarize(scaled);
    const double stiffness = scaled.mass * scaled.omega_s * scaled.k_b *
                             s.temp_sys / (scaled.hbar * s.n_s);
    const double hooke = scaled.mass * scaled.omega_s * scaled.omega_s;
    deviations.push_back(std::abs(stiffness - hooke) / hooke);
  }
  return deviations;
}

void write_snapshot_csv(const GridDistribution& dist, double t,
                        const std::string& params_hash, std::ostream& out,
                        bool with_header) {
  if (with_header) {
    out << "x,value\n";
  }
  out << "# t=" << fmt17(t) << " params=" << params_hash << '\n';
  for (int i = 0; i < dist.n_points(); ++i) {
    out << fmt17(dist.x_at(i)) << ','
        << fmt17(std::max(0.0, dist.values[i])) << '\n';
  }
}

}  // namespace openboson
