#include "openboson/lindblad.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "openboson/csv.hpp"

namespace openboson {

namespace {

// Coefficients of the generator, lifted from the ladder matrices once per
// run. The ladder operators are single-band, so applying the generator
// touches only the two neighbouring diagonals of rho in each sideband and
// stays O(dim^2).
struct Generator {
  int dim;
  double omega;
  double c_down;             // gamma (n_s + 1)
  double c_up;               // gamma n_s
  std::vector<double> amp;   // amp[n] = <n| a |n+1>
  std::vector<double> ndig;  // <n| a+ a |n>
  std::vector<double> gdig;  // <n| a a+ |n>; zero at the truncated top
};

Generator make_generator(const SystemParams& params, const LadderOps& ops) {
  const ThermalSummary s = summarize(params);
  Generator g;
  g.dim = ops.dim();
  g.omega = params.omega();
  g.c_down = s.gamma_total * (s.n_s + 1.0);
  g.c_up = s.gamma_total * s.n_s;
  g.amp.resize(g.dim - 1);
  g.ndig.resize(g.dim);
  g.gdig.resize(g.dim);
  for (int n = 0; n + 1 < g.dim; ++n) {
    g.amp[n] = ops.annihilate(n, n + 1).real();
  }
  for (int n = 0; n < g.dim; ++n) {
    g.ndig[n] = ops.number(n, n).real();
    g.gdig[n] = (n + 1 < g.dim) ? g.amp[n] * g.amp[n] : 0.0;
  }
  return g;
}

void apply_generator(const Generator& g, const Eigen::MatrixXcd& rho,
                     Eigen::MatrixXcd& out) {
  const int d = g.dim;
  out.resize(d, d);
  const std::complex<double> i_unit(0.0, 1.0);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      std::complex<double> v =
          -i_unit * g.omega * (g.ndig[n] - g.ndig[m]) * rho(n, m);
      // a rho a+ - {a+ a, rho}/2
      std::complex<double> down = -0.5 * (g.ndig[n] + g.ndig[m]) * rho(n, m);
      if (n + 1 < d && m + 1 < d) {
        down += g.amp[n] * g.amp[m] * rho(n + 1, m + 1);
      }
      // a+ rho a - {a a+, rho}/2
      std::complex<double> up = -0.5 * (g.gdig[n] + g.gdig[m]) * rho(n, m);
      if (n > 0 && m > 0) {
        up += g.amp[n - 1] * g.amp[m - 1] * rho(n - 1, m - 1);
      }
      out(n, m) = v + g.c_down * down + g.c_up * up;
    }
  }
}

struct Rk4Workspace {
  Eigen::MatrixXcd k1, k2, k3, k4, stage;
};

void rk4_step(const Generator& g, Eigen::MatrixXcd& rho, double h,
              Rk4Workspace& w) {
  apply_generator(g, rho, w.k1);
  w.stage = rho + (0.5 * h) * w.k1;
  apply_generator(g, w.stage, w.k2);
  w.stage = rho + (0.5 * h) * w.k2;
  apply_generator(g, w.stage, w.k3);
  w.stage = rho + h * w.k3;
  apply_generator(g, w.stage, w.k4);
  rho += (h / 6.0) * (w.k1 + 2.0 * w.k2 + 2.0 * w.k3 + w.k4);
}

void check_step(const SystemParams& params, const ThermalSummary& s, double dt,
                int dim) {
  const double omega_abs = std::abs(params.omega());
  if (!(dt > 0.0) || dt * s.gamma_total >= 0.1 || dt * omega_abs >= 0.1) {
    const double suggested = stable_dt(params, dim);
    std::ostringstream msg;
    msg << "time step " << dt << " violates dt*gamma < 0.1 and dt*|omega| < 0.1"
        << "; try dt = " << suggested;
    throw TimestepError(msg.str(), suggested);
  }
}

}  // namespace

double default_dt(const SystemParams& params) {
  params.validate();
  const double gamma = params.gamma_e + params.gamma_c;
  return 0.01 / std::max(gamma, std::abs(params.omega()));
}

double stiffest_rate(const SystemParams& params, int dim) {
  if (dim < 2) {
    throw std::domain_error("stiffest_rate: dim must be >= 2");
  }
  const ThermalSummary s = summarize(params);
  const double down = s.gamma_total * (s.n_s + 1.0);
  const double up = s.gamma_total * s.n_s;
  // Population block of the generator, symmetrized by the geometric
  // stationary weights; its spectrum is real and bounds the decay rates.
  Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    sym(n, n) = -(down * n + (n + 1 < dim ? up * (n + 1) : 0.0));
    if (n + 1 < dim) {
      const double coupling = std::sqrt(down * up) * (n + 1);
      sym(n, n + 1) = coupling;
      sym(n + 1, n) = coupling;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym,
                                                        Eigen::EigenvaluesOnly);
  return -solver.eigenvalues().minCoeff();
}

double stable_dt(const SystemParams& params, int dim) {
  const double rate = stiffest_rate(params, dim);
  return std::min(default_dt(params), 1.6 / rate);
}

Eigen::MatrixXcd rhs(const SystemParams& params, const LadderOps& ops,
                     const DensityMatrix& rho) {
  if (ops.dim() != rho.dim()) {
    throw std::invalid_argument("rhs: operator and state dimensions differ");
  }
  const Generator g = make_generator(params, ops);
  Eigen::MatrixXcd out;
  apply_generator(g, rho.rho, out);
  return out;
}

Trajectory evolve(const SystemParams& params, const DensityMatrix& rho0,
                  double t_end, double dt, int sample_every) {
  const ThermalSummary s = summarize(params);
  if (!std::isfinite(t_end) || t_end < 0.0) {
    throw std::domain_error("evolve: t_end must be >= 0");
  }
  if (sample_every < 1) {
    throw std::domain_error("evolve: sample_every must be >= 1");
  }
  check_step(params, s, dt, rho0.dim());

  const LadderOps ops = build_ops(FockSpace{rho0.dim()});
  const Generator g = make_generator(params, ops);
  // Uniform steps landing exactly on t_end; h <= dt keeps the guards valid.
  const long n_steps =
      t_end > 0.0 ? std::lround(std::ceil(t_end / dt - 1e-12)) : 0;
  const double h = n_steps > 0 ? t_end / static_cast<double>(n_steps) : 0.0;

  Trajectory traj;
  DensityMatrix state{rho0.rho};
  const auto record = [&](double t) {
    const double n_mean = mean_occupation(state);
    traj.times.push_back(t);
    traj.mean_n.push_back(n_mean);
    traj.current.push_back(0.5 * (params.gamma_e * (s.n_e - n_mean) +
                                  params.gamma_c * (n_mean - s.n_c)));
    traj.trace_defect.push_back(trace_defect(state));
    traj.min_eig.push_back(min_eigenvalue(state));
  };

  record(0.0);
  Rk4Workspace w;
  for (long k = 1; k <= n_steps; ++k) {
    rk4_step(g, state.rho, h, w);
    if (k % sample_every == 0 || k == n_steps) {
      record(static_cast<double>(k) * h);
    }
  }
  return traj;
}

DensityMatrix steady_state(const SystemParams& params, const LadderOps& ops) {
  const ThermalSummary s = summarize(params);
  const double dt = stable_dt(params, ops.dim());
  constexpr double kResidualTol = 1e-10;
  // The residual decays like exp(-gamma t); this horizon is far beyond any
  // realistic convergence time.
  const double t_max = 400.0 / s.gamma_total;
  const long chunk = std::max(
      1L, std::lround(1.0 / (s.gamma_total * dt)));

  DensityMatrix state = thermal_density(FockSpace{ops.dim()}, 0.0);
  const Generator g = make_generator(params, ops);
  Rk4Workspace w;
  Eigen::MatrixXcd residual;
  double t = 0.0;
  while (true) {
    apply_generator(g, state.rho, residual);
    const double res = residual.cwiseAbs().maxCoeff();
    if (res < kResidualTol) {
      return state;
    }
    if (t >= t_max) {
      std::ostringstream msg;
      msg << "steady_state: residual " << res << " after t = " << t
          << " has not reached " << kResidualTol;
      throw std::runtime_error(msg.str());
    }
    for (long k = 0; k < chunk; ++k) {
      rk4_step(g, state.rho, dt, w);
    }
    t += static_cast<double>(chunk) * dt;
  }
}

McEstimate p_sampling_mean(const SystemParams& params, std::size_t n_samples,
                           std::uint64_t seed) {
  const ThermalSummary s = summarize(params);
  if (n_samples < 10000) {
    throw std::invalid_argument("p_sampling_mean: need at least 1e4 samples");
  }
  if (!(s.n_s > 0.0)) {
    throw std::domain_error(
        "p_sampling_mean: steady occupation underflows to zero");
  }
  std::mt19937_64 rng(seed);
  // Uniform on (0, 1]: keeps the Box-Muller radius finite.
  const auto uniform = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
  };
  const double sigma = std::sqrt(0.5 * s.n_s);
  const double two_pi = 2.0 * std::numbers::pi;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double radius = sigma * std::sqrt(-2.0 * std::log(uniform()));
    const double angle = two_pi * uniform();
    const double re = radius * std::cos(angle);
    const double im = radius * std::sin(angle);
    const double value = re * re + im * im;
    sum += value;
    sum_sq += value * value;
  }
  const double n = static_cast<double>(n_samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

void write_csv(const Trajectory& traj, std::ostream& out) {
  out << "t,mean_n,current,trace_defect,min_eig\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out << fmt17(traj.times[i]) << ',' << fmt17(traj.mean_n[i]) << ','
        << fmt17(traj.current[i]) << ',' << fmt17(traj.trace_defect[i]) << ','
        << fmt17(traj.min_eig[i]) << '\n';
  }
}

}  // namespace openboson
