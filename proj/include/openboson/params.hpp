#pragma once

#include <stdexcept>

namespace openboson {

// Physical inputs for a single damped bosonic mode exchanging quanta with an
// emitter reservoir at temp_e and a collector reservoir at temp_c.
//
// Defaults are natural units (hbar = k_b = mass = omega_s = 1); the constants
// stay explicit in every formula so dimensionful inputs work unchanged.
struct SystemParams {
  double omega_s = 1.0;  // mode angular frequency, > 0
  double delta = 0.0;    // coherent frequency shift, any real
  double gamma_e = 1.0;  // emitter damping rate, > 0
  double gamma_c = 1.0;  // collector damping rate, > 0
  double temp_e = 2.0;   // emitter temperature, > 0
  double temp_c = 1.0;   // collector temperature, > 0
  double mass = 1.0;     // oscillator mass, > 0; used by the force formulas
  double hbar = 1.0;
  double k_b = 1.0;

  // Rotation frequency of coherences.
  double omega() const { return omega_s + delta; }

  // Throws std::domain_error unless every field is in range.
  void validate() const;
};

// Derived thermal quantities; every downstream formula reads from here.
struct ThermalSummary {
  double n_e;          // emitter occupation
  double n_c;          // collector occupation
  double n_s;          // steady-state occupation, damping-weighted mix
  double temp_sys;     // system temperature, damping-weighted mix of T_e, T_c
  double gamma_total;  // gamma_e + gamma_c
};

// Bose-Einstein occupation 1/(exp(hbar*omega/(k_b*temp)) - 1).
// Strictly increasing in temp, decreasing in omega; vanishes as temp -> 0+.
double thermal_occupation(double omega, double temp, double hbar = 1.0,
                          double k_b = 1.0);

ThermalSummary summarize(const SystemParams& params);

}  // namespace openboson
