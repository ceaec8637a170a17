#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "openboson/fock.hpp"
#include "openboson/params.hpp"

namespace openboson {

// Observables sampled along one integration run.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> mean_n;
  std::vector<double> current;       // flux formula applied to mean_n
  std::vector<double> trace_defect;  // |tr(rho) - 1|
  std::vector<double> min_eig;       // smallest eigenvalue of rho
};

// Requested step violates a stability guard; carries a step that satisfies
// both guards with margin.
class TimestepError : public std::runtime_error {
 public:
  TimestepError(const std::string& what, double suggested)
      : std::runtime_error(what), suggested_dt_(suggested) {}

  double suggested_dt() const { return suggested_dt_; }

 private:
  double suggested_dt_;
};

struct McEstimate {
  double mean;
  double std_error;
};

// 0.01 / max(gamma, |omega|): satisfies both step guards with a 10x margin.
double default_dt(const SystemParams& params);

// Fastest decay rate in the truncated generator at this dimension: the
// extreme eigenvalue of the population block, which grows like
// gamma * dim * (2 n_s + 1) and is what actually limits an explicit
// integrator. Computed exactly from the symmetrized rate matrix.
double stiffest_rate(const SystemParams& params, int dim);

// Largest step that is both inside the guards and safely inside the
// explicit-RK4 stability region for this dimension:
// min(default_dt, 1.6 / stiffest_rate).
double stable_dt(const SystemParams& params, int dim);

// Generator of the damped thermal mode,
//   d rho/dt = -i omega [n, rho]
//              + gamma (n_s + 1) (a rho a+ - {a+ a, rho}/2)
//              + gamma  n_s     (a+ rho a - {a a+, rho}/2),
// with omega = omega_s + delta, gamma = gamma_e + gamma_c and
// gamma n_s = gamma_e n_e + gamma_c n_c. The mean occupation obeys
// d<n>/dt = -gamma (<n> - n_s) and the truncated geometric state at n_s is
// an exact fixed point (detailed balance holds level by level, including
// the top of the basis).
Eigen::MatrixXcd rhs(const SystemParams& params, const LadderOps& ops,
                     const DensityMatrix& rho);

// Classical fixed-step 4th-order integration of rhs from rho0 to t_end.
// Records a sample at t = 0, every sample_every steps, and at t_end.
// Guards: dt > 0, dt*gamma < 0.1, dt*|omega| < 0.1. The guards do not cover
// the dimension-dependent stiffness of the truncated generator; callers
// wanting an automatic step should take stable_dt(params, dim).
Trajectory evolve(const SystemParams& params, const DensityMatrix& rho0,
                  double t_end, double dt, int sample_every);

// Long-time integration from vacuum until max |d rho/dt| < 1e-10.
DensityMatrix steady_state(const SystemParams& params, const LadderOps& ops);

// Monte-Carlo mean occupation of the steady state: draws alpha from the
// rotationally symmetric complex Gaussian with <|alpha|^2> = n_s
// (Box-Muller on mt19937_64, two uniforms per draw) and averages |alpha|^2.
// Deterministic for a fixed seed. Requires n_samples >= 1e4.
McEstimate p_sampling_mean(const SystemParams& params, std::size_t n_samples,
                           std::uint64_t seed);

// `t,mean_n,current,trace_defect,min_eig` rows at 17 significant digits.
void write_csv(const Trajectory& traj, std::ostream& out);

}  // namespace openboson
