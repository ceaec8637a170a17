#include "openboson/analytic.hpp"

#include <cmath>
#include <string>

namespace openboson {

namespace {

double check_time(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw std::domain_error("time must be >= 0");
  }
  return t;
}

double check_n0(double n0) {
  if (!std::isfinite(n0) || n0 < 0.0) {
    throw std::domain_error("initial occupation n0 must be >= 0");
  }
  return n0;
}

}  // namespace

double mean_number(const SystemParams& params, double n0, double t) {
  check_n0(n0);
  check_time(t);
  const ThermalSummary s = summarize(params);
  return s.n_s + (n0 - s.n_s) * std::exp(-s.gamma_total * t);
}

double mean_number_rate(const SystemParams& params, double n_now) {
  const ThermalSummary s = summarize(params);
  return -s.gamma_total * (n_now - s.n_s);
}

double current(const SystemParams& params, double n0, double t) {
  const ThermalSummary s = summarize(params);
  const double n_t = mean_number(params, n0, t);
  return 0.5 * (params.gamma_e * (s.n_e - n_t) + params.gamma_c * (n_t - s.n_c));
}

double current_rate(const SystemParams& params, double i_now) {
  const ThermalSummary s = summarize(params);
  const double i_s = params.gamma_e * params.gamma_c * (s.n_e - s.n_c) /
                     s.gamma_total;
  return -s.gamma_total * (i_now - i_s);
}

double flux_balance_residual(const SystemParams& params) {
  const ThermalSummary s = summarize(params);
  return params.gamma_e * (s.n_e - s.n_s) - params.gamma_c * (s.n_s - s.n_c);
}

double steady_diagonal(const SystemParams& params, int n) {
  if (n < 0) {
    throw std::domain_error("Fock index must be >= 0");
  }
  const ThermalSummary s = summarize(params);
  const double ratio = s.n_s / (s.n_s + 1.0);
  return std::pow(ratio, n) / (s.n_s + 1.0);
}

double transport_factor_steady(const SystemParams& params) {
  const ThermalSummary s = summarize(params);
  if (!(s.n_e > 0.0)) {
    throw std::domain_error(
        "transport_factor_steady: emitter occupation underflows to zero");
  }
  return 1.0 - s.n_c / s.n_e;
}

double transport_factor_t(const SystemParams& params, double n0, double t) {
  check_time(t);
  const ThermalSummary s = summarize(params);
  const double eta_s = transport_factor_steady(params);
  const double i_0 = current(params, n0, 0.0);
  const double eta_0 =
      s.gamma_total * i_0 / (params.gamma_e * params.gamma_c * s.n_e);
  return eta_s + (eta_0 - eta_s) * std::exp(-s.gamma_total * t);
}

double carnot_factor(const SystemParams& params) {
  params.validate();
  return 1.0 - params.temp_c / params.temp_e;
}

ExpansionResult transport_expansion(const SystemParams& params, int order) {
  if (order != 1 && order != 2) {
    throw std::domain_error("transport_expansion: order must be 1 or 2");
  }
  params.validate();
  const double x_c = params.hbar * params.omega_s / (params.k_b * params.temp_c);
  const double x_e = params.hbar * params.omega_s / (params.k_b * params.temp_e);
  const double eta_c = carnot_factor(params);
  ExpansionResult result{};
  result.in_regime = x_c < 1.0 && x_e < 1.0;
  result.value = eta_c;
  if (order == 2) {
    result.value += 0.5 * x_c * eta_c * (1.0 - eta_c);
  }
  return result;
}

TransportReport transport_report(const SystemParams& params, double n0) {
  const ThermalSummary s = summarize(params);
  TransportReport report{};
  report.i_0 = current(params, n0, 0.0);
  report.i_s =
      params.gamma_e * params.gamma_c * (s.n_e - s.n_c) / s.gamma_total;
  report.eta_s = transport_factor_steady(params);
  report.eta_c = carnot_factor(params);
  const double x_c = params.hbar * params.omega_s / (params.k_b * params.temp_c);
  report.correction = 0.5 * x_c * report.eta_c * (1.0 - report.eta_c);
  report.e_s = params.hbar * params.omega_s * report.i_s;
  return report;
}

std::vector<LocusPoint> half_factor_locus(const SystemParams& params_base,
                                          const std::vector<double>& t_e_grid,
                                          double target_fraction) {
  params_base.validate();
  if (!(target_fraction > 0.0 && target_fraction < 1.0)) {
    throw std::domain_error("target_fraction must lie in (0, 1)");
  }
  std::vector<LocusPoint> locus;
  locus.reserve(t_e_grid.size());
  for (double t_e : t_e_grid) {
    if (!std::isfinite(t_e) || !(t_e > 0.0)) {
      throw std::domain_error("emitter temperature grid values must be > 0");
    }
    SystemParams p = params_base;
    p.temp_e = t_e;
    const auto eta_at = [&p](double t_c) {
      SystemParams q = p;
      q.temp_c = t_c;
      return transport_factor_steady(q);
    };
    // The supremum of eta_s as T_c -> 0+ is 1, so the target level is the
    // fraction itself. eta_s is strictly decreasing in T_c.
    const double target = target_fraction;
    const double eps = 1e-9 * t_e;
    double lo = eps;
    double hi = t_e - eps;
    if (!(eta_at(hi) <= target && target <= eta_at(lo))) {
      locus.push_back({t_e, std::nullopt});
      continue;
    }
    while (hi - lo > 1e-10 * t_e) {
      const double mid = 0.5 * (lo + hi);
      if (eta_at(mid) >= target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    locus.push_back({t_e, 0.5 * (lo + hi)});
  }
  return locus;
}

}  // namespace openboson
