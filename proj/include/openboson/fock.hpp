#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace openboson {

// Finite number-state basis |0>, ..., |dim-1>. The hard cutoff is the only
// approximation made in this module; recommended_dim() bounds its effect.
struct FockSpace {
  int dim = 0;
};

// Dense ladder matrices on the truncated basis:
//   annihilate(n-1, n) = sqrt(n), create = annihilate^dagger,
//   number = create * annihilate.
// Truncation breaks [a, a^dagger] = 1 only in the last diagonal entry.
struct LadderOps {
  Eigen::MatrixXcd annihilate;
  Eigen::MatrixXcd create;
  Eigen::MatrixXcd number;

  int dim() const { return static_cast<int>(annihilate.rows()); }
};

struct DensityMatrix {
  Eigen::MatrixXcd rho;

  int dim() const { return static_cast<int>(rho.rows()); }
};

// Requested occupation does not fit the basis; carries the dimension that
// would hold it.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int required)
      : std::runtime_error(what), required_dim_(required) {}

  int required_dim() const { return required_dim_; }

 private:
  int required_dim_;
};

LadderOps build_ops(FockSpace space);

// Smallest dimension keeping the geometric tail mass below 1e-10 at mean
// occupation n_bar, padded by 25% for transient excursions; never below 16.
int recommended_dim(double n_bar);

// Geometric (thermal) diagonal state with mean n_bar, renormalized on the
// truncated basis. Requires the tail mass beyond the cutoff to be < 1e-10.
DensityMatrix thermal_density(FockSpace space, double n_bar);

// tr(obs * rho).
std::complex<double> expect(const DensityMatrix& rho,
                            const Eigen::MatrixXcd& obs);

// Invariant probes shared by the integrator and the tests.
double trace_defect(const DensityMatrix& rho);        // |tr(rho) - 1|
double hermiticity_defect(const DensityMatrix& rho);  // max |rho - rho^dag|
double min_eigenvalue(const DensityMatrix& rho);
double mean_occupation(const DensityMatrix& rho);     // Re tr(number * rho)

}  // namespace openboson
