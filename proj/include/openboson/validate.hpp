#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "openboson/params.hpp"

namespace openboson {

struct CheckResult {
  std::string name;
  double measured;
  double tolerance;
  bool passed;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  int dim = 0;
  double dt = 0.0;
  std::uint64_t seed = 0;

  bool all_passed() const;
  std::string to_text() const;
};

// Cross-checks every closed-form result against an independent numerical
// route: the truncated-basis integrator for occupation, current and the
// steady state, the finite-difference solver for the quadrature
// distribution, Monte-Carlo sampling for the steady occupation, and
// numerical differentiation for the force.
//
// tolerance_scale multiplies every tolerance; 1 is the real suite. A tiny
// scale (the corrupt-tolerance mode) must make the suite fail, which proves
// the comparisons are live.
ValidationReport run_validation(const SystemParams& params, std::uint64_t seed,
                                double tolerance_scale = 1.0);

}  // namespace openboson
