#pragma once

#include <optional>
#include <vector>

#include "openboson/params.hpp"

namespace openboson {

// Steady-state transport summary.
struct TransportReport {
  double i_0;         // quantum current at t = 0
  double i_s;         // steady current
  double eta_s;       // steady transport factor 1 - n_c/n_e
  double eta_c;       // Carnot factor 1 - T_c/T_e
  double correction;  // leading low-frequency correction to eta_c
  double e_s;         // steady energy throughput hbar*omega_s*i_s
};

struct ExpansionResult {
  double value;
  bool in_regime;  // hbar*omega_s < k_b*T for both reservoirs
};

struct LocusPoint {
  double temp_e;
  std::optional<double> temp_c;  // absent when no root lies in (0, temp_e)
};

// Mean occupation n_s + (n0 - n_s) exp(-gamma t). Requires n0 >= 0, t >= 0.
double mean_number(const SystemParams& params, double n0, double t);

// d<n>/dt = -gamma (n_now - n_s).
double mean_number_rate(const SystemParams& params, double n_now);

// Quantum current through the mode,
//   I(t) = [gamma_e (n_e - <n>) + gamma_c (<n> - n_c)] / 2,
// which relaxes from I(0) to the steady value
//   I_s = gamma_e gamma_c (n_e - n_c) / gamma.
double current(const SystemParams& params, double n0, double t);

// dI/dt = -gamma (i_now - I_s).
double current_rate(const SystemParams& params, double i_now);

// gamma_e (n_e - n_s) - gamma_c (n_s - n_c); identically zero up to rounding.
double flux_balance_residual(const SystemParams& params);

// Steady-state occupation probability of Fock level n >= 0:
// geometric weight n_s^n / (n_s + 1)^{n+1}.
double steady_diagonal(const SystemParams& params, int n);

// eta_s = 1 - n_c/n_e. Monotone decreasing in T_c with eta_s -> 1 as
// T_c -> 0+ and eta_s = 0 at T_c = T_e. Errors if n_e underflows to zero.
double transport_factor_steady(const SystemParams& params);

// Transient transport factor
//   eta(t) = eta_s + [gamma I(0) / (gamma_e gamma_c n_e) - eta_s] exp(-gamma t).
double transport_factor_t(const SystemParams& params, double n0, double t);

// Carnot factor 1 - T_c/T_e.
double carnot_factor(const SystemParams& params);

// Low-frequency expansion of eta_s about the Carnot factor:
//   order 1: eta_c
//   order 2: eta_c + (hbar omega_s / 2 k_b T_c) eta_c (1 - eta_c)
// in_regime flags hbar*omega_s/(k_b T) < 1 for both reservoirs.
ExpansionResult transport_expansion(const SystemParams& params, int order);

TransportReport transport_report(const SystemParams& params, double n0);

// For each emitter temperature in t_e_grid, the collector temperature at
// which eta_s equals target_fraction times its T_c -> 0+ supremum (which is
// exactly 1). Bisection on (eps, T_e - eps) with eps = 1e-9 T_e, relative
// tolerance 1e-10; entries whose target is not bracketed stay absent.
std::vector<LocusPoint> half_factor_locus(const SystemParams& params_base,
                                          const std::vector<double>& t_e_grid,
                                          double target_fraction = 0.5);

}  // namespace openboson
