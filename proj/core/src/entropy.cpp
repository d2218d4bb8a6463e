#include "lifshitz/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "lifshitz/error.hpp"

namespace lifshitz {

double max_asymmetry(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() != matrix.cols()) return std::numeric_limits<double>::infinity();
  if (matrix.size() == 0) return 0.0;
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& matrix) {
  const double asymmetry = max_asymmetry(matrix);
  if (!(asymmetry <= kHermiticityTolerance)) {
    throw Error(ErrorCode::not_hermitian, "max |C - C^dag| = " + std::to_string(asymmetry));
  }
  if (matrix.size() == 0) return {};
  // Symmetrize so round-off in the upper triangle cannot leak in.
  const Eigen::MatrixXcd hermitian = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::not_hermitian, "eigensolver did not converge");
  }
  const Eigen::VectorXd& values = solver.eigenvalues();
  std::vector<double> sorted(values.data(), values.data() + values.size());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

double binary_entropy(double c) {
  constexpr double kPure = 1e-15;
  if (c <= kPure || c >= 1.0 - kPure) return 0.0;
  return -c * std::log(c) - (1.0 - c) * std::log1p(-c);
}

double entanglement_entropy(std::span<const double> eigenvalues) {
  double total = 0.0;
  for (double c : eigenvalues) {
    if (!(c >= -kEigenvalueClampTolerance && c <= 1.0 + kEigenvalueClampTolerance)) {
      throw Error(ErrorCode::eigenvalue_out_of_range,
                  "correlation eigenvalue " + std::to_string(c) + " outside [0, 1]");
    }
    total += binary_entropy(std::clamp(c, 0.0, 1.0));
  }
  return total;
}

EntropyPoint entropy_of(const LatticeSpec& spec, ThermalParams beta, std::span<const int> subsystem,
                        bool keep_eigenvalues) {
  const CorrelationMatrix c = build_correlation_matrix(spec, beta, subsystem);
  std::vector<double> eigenvalues = hermitian_eigenvalues(c);

  EntropyPoint point;
  point.entropy = entanglement_entropy(eigenvalues);
  point.params = {spec.n_sites, static_cast<int>(subsystem.size()), spec.z, spec.mass, beta.beta(), spec.spacing};
  if (keep_eigenvalues) point.eigenvalues = std::move(eigenvalues);
  return point;
}

}  // namespace lifshitz
