#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "openboson/params.hpp"

namespace openboson {

// One separated quadrature component of the phase-space distribution at
// time t > 0: a Gaussian with center x0 exp(-gamma t/2) and variance
// parameter n_s (1 - exp(-gamma t)) / 2.
struct GaussianState {
  double center;
  double variance_param;
  double norm_check;  // numerical integral of the density, should be ~1
};

// Non-negative density sampled on a uniform grid.
struct GridDistribution {
  double x_min = 0.0;
  double x_max = 0.0;
  std::vector<double> values;

  int n_points() const { return static_cast<int>(values.size()); }
  double dx() const { return (x_max - x_min) / (n_points() - 1); }
  double x_at(int i) const { return x_min + i * dx(); }
  double mass() const;  // trapezoid integral
};

// Requested step violates the diffusive stability bound; carries one that
// satisfies it.
class CflError : public std::runtime_error {
 public:
  CflError(const std::string& what, double suggested)
      : std::runtime_error(what), suggested_dt_(suggested) {}

  double suggested_dt() const { return suggested_dt_; }

 private:
  double suggested_dt_;
};

// Green function of the quadrature equation started from a point at x0:
//   (pi v)^{-1/2} exp(-(x - x0 e^{-gamma t/2})^2 / v),
//   v = n_s (1 - e^{-gamma t}).
// The t -> 0+ limit is a delta distribution, so t must be > 0.
double gaussian_x(const SystemParams& params, double x0, double x, double t);

GaussianState gaussian_state(const SystemParams& params, double x0, double t);

// Position marginal at time t > 0: normal in q with mean q0 e^{-gamma t/2}
// and variance hbar n_s (1 - e^{-gamma t}) / (m omega_s).
double p_position(const SystemParams& params, double q0, double q, double t);

// Momentum marginal: variance hbar m omega_s n_s (1 - e^{-gamma t}).
double p_momentum(const SystemParams& params, double p0, double p, double t);

// Steady phase-space density (1 / pi n_s) exp(-|alpha|^2 / n_s) as a
// function of alpha_sq = |alpha|^2 >= 0. Errors when n_s underflows to zero.
double steady_p(const SystemParams& params, double alpha_sq);

// Diffusion coefficient of the separated quadrature equation
//   dX/dt = (gamma/2) d/dx (x X) + D d^2 X/dx^2,
//   D = (gamma_e n_e + gamma_c n_c) / 4 = gamma n_s / 4.
double fp_diffusion(const SystemParams& params);

// Largest step satisfying the stability bound D dt / dx^2 <= 0.4.
double suggest_fp_dt(const SystemParams& params, double dx);

// Uniform grid carrying a normalized Gaussian of variance sigma2 centered at
// x0. Bounds are +-(|x0| + 8 sqrt(n_s/2)) so the density vanishes at the
// edges for the lifetime of a run.
GridDistribution make_gaussian_grid(const SystemParams& params, double x0,
                                    double sigma2, int n_points);

// Explicit conservative finite-difference integration of the quadrature
// equation to t_end. Face fluxes are centered (second order in dx);
// boundaries are Dirichlet zero. Requires D dt/dx^2 <= 0.4 and an initial
// trapezoid mass of 1 within 1e-6.
GridDistribution solve_fp(const SystemParams& params,
                          const GridDistribution& initial, double t_end,
                          double dt);

// Thermodynamic restoring force on the position marginal at time t > 0,
//   F = -(m omega_s k_b T / (hbar n_s)) (q - q0 e^{-gamma t/2}) / (1 - e^{-gamma t}),
// with T the damping-weighted system temperature.
double entropic_force(const SystemParams& params, double q, double q0,
                      double t);

// Relative deviation |k - m omega_s^2| / (m omega_s^2) of the steady
// restoring coefficient k = m omega_s k_b T / (hbar n_s) when both reservoir
// temperatures are scaled by lambda, for each lambda >= 1 in the list.
std::vector<double> hooke_limit_check(const SystemParams& params,
                                      const std::vector<double>& lambdas);

// Snapshot export: a `# t=<t> params=<hash>` comment line, then `x,value`
// rows at 17 significant digits (negative undershoot clamped to zero).
// Set with_header to emit the column header before the comment.
void write_snapshot_csv(const GridDistribution& dist, double t,
                        const std::string& params_hash, std::ostream& out,
                        bool with_header);

}  // namespace openboson
