#include "openboson/params.hpp"

#include <cmath>
#include <string>

namespace openboson {

namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || !(value > 0.0)) {
    throw std::domain_error(std::string(name) +
                            " must be strictly positive and finite");
  }
}

}  // namespace

void SystemParams::validate() const {
  require_positive(omega_s, "omega_s");
  if (!std::isfinite(delta)) {
    throw std::domain_error("delta must be finite");
  }
  require_positive(gamma_e, "gamma_e");
  require_positive(gamma_c, "gamma_c");
  require_positive(temp_e, "temp_e");
  require_positive(temp_c, "temp_c");
  require_positive(mass, "mass");
  require_positive(hbar, "hbar");
  require_positive(k_b, "k_b");
}

double thermal_occupation(double omega, double temp, double hbar, double k_b) {
  if (!std::isfinite(omega) || !(omega > 0.0)) {
    throw std::domain_error("thermal_occupation: omega must be > 0");
  }
  if (!std::isfinite(temp) || !(temp > 0.0)) {
    throw std::domain_error("thermal_occupation: temp must be > 0");
  }
  require_positive(hbar, "hbar");
  require_positive(k_b, "k_b");
  // expm1 keeps the high-temperature limit n ~ k_b T / (hbar omega) accurate.
  return 1.0 / std::expm1(hbar * omega / (k_b * temp));
}

ThermalSummary summarize(const SystemParams& params) {
  params.validate();
  ThermalSummary s{};
  s.n_e = thermal_occupation(params.omega_s, params.temp_e, params.hbar,
                             params.k_b);
  s.n_c = thermal_occupation(params.omega_s, params.temp_c, params.hbar,
                             params.k_b);
  s.gamma_total = params.gamma_e + params.gamma_c;
  s.n_s = (params.gamma_e * s.n_e + params.gamma_c * s.n_c) / s.gamma_total;
  s.temp_sys =
      (params.gamma_e * params.temp_e + params.gamma_c * params.temp_c) /
      s.gamma_total;
  return s;
}

}  // namespace openboson
