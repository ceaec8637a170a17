#include "openboson/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace openboson {

namespace {

void check_dim(int dim) {
  if (dim < 2) {
    throw std::domain_error("Fock dimension must be >= 2");
  }
}

}  // namespace

LadderOps build_ops(FockSpace space) {
  check_dim(space.dim);
  const int d = space.dim;
  LadderOps ops;
  ops.annihilate = Eigen::MatrixXcd::Zero(d, d);
  for (int n = 1; n < d; ++n) {
    ops.annihilate(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  ops.create = ops.annihilate.adjoint();
  ops.number = ops.create * ops.annihilate;
  return ops;
}

int recommended_dim(double n_bar) {
  if (!std::isfinite(n_bar) || n_bar < 0.0) {
    throw std::domain_error("recommended_dim: n_bar must be >= 0");
  }
  constexpr double kTailBound = 1e-10;
  constexpr int kFloor = 16;
  if (n_bar == 0.0) {
    return kFloor;
  }
  const double log_ratio = std::log(n_bar / (n_bar + 1.0));
  const double raw = 1.25 * std::log(kTailBound * (n_bar + 1.0)) / log_ratio;
  const int dim = static_cast<int>(std::ceil(raw));
  return std::max(dim, kFloor);
}

DensityMatrix thermal_density(FockSpace space, double n_bar) {
  check_dim(space.dim);
  if (!std::isfinite(n_bar) || n_bar < 0.0) {
    throw std::domain_error("thermal_density: n_bar must be >= 0");
  }
  const int d = space.dim;
  DensityMatrix state;
  state.rho = Eigen::MatrixXcd::Zero(d, d);
  if (n_bar == 0.0) {
    state.rho(0, 0) = 1.0;
    return state;
  }
  const double ratio = n_bar / (n_bar + 1.0);
  const double tail = std::pow(ratio, d);  // geometric mass at n >= dim
  if (!(tail < 1e-10)) {
    const int needed = recommended_dim(n_bar);
    std::ostringstream msg;
    msg << "thermal_density: dim " << d << " leaves tail mass " << tail
        << " for n_bar " << n_bar << "; need dim >= " << needed;
    throw TruncationError(msg.str(), needed);
  }
  std::vector<double> weights(d);
  double norm = 0.0;
  for (int n = 0; n < d; ++n) {
    weights[n] = std::pow(ratio, n) / (n_bar + 1.0);
    norm += weights[n];
  }
  for (int n = 0; n < d; ++n) {
    state.rho(n, n) = weights[n] / norm;
  }
  return state;
}

std::complex<double> expect(const DensityMatrix& rho,
                            const Eigen::MatrixXcd& obs) {
  if (rho.dim() != static_cast<int>(obs.rows()) || obs.rows() != obs.cols()) {
    throw std::invalid_argument("expect: observable and state dimensions differ");
  }
  // tr(obs * rho) without forming the product.
  return obs.cwiseProduct(rho.rho.transpose()).sum();
}

double trace_defect(const DensityMatrix& rho) {
  return std::abs(rho.rho.trace() - std::complex<double>(1.0, 0.0));
}

double hermiticity_defect(const DensityMatrix& rho) {
  return (rho.rho - rho.rho.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      0.5 * (rho.rho + rho.rho.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double mean_occupation(const DensityMatrix& rho) {
  double total = 0.0;
  for (int n = 0; n < rho.dim(); ++n) {
    total += n * rho.rho(n, n).real();
  }
  return total;
}

}  // namespace openboson
