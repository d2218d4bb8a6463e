#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lifshitz/lattice.hpp"

namespace lifshitz {

// Parameters that produced an entropy value.
struct EntropyParams {
  int n_sites = 0;
  int subsystem_size = 0;
  int z = 1;
  double mass = 0.0;
  double beta = 0.0;
  double spacing = 1.0;
};

struct EntropyPoint {
  double entropy = 0.0;  // nats
  EntropyParams params;
  std::optional<std::vector<double>> eigenvalues;
};

inline constexpr double kHermiticityTolerance = 1e-9;
inline constexpr double kEigenvalueClampTolerance = 1e-9;

// Largest |C - C^dag| entry.
double max_asymmetry(const Eigen::MatrixXcd& matrix);

// Ascending real eigenvalues. Throws Error(not_hermitian) when the matrix is
// more than kHermiticityTolerance away from Hermitian.
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& matrix);
inline std::vector<double> hermitian_eigenvalues(const CorrelationMatrix& c) {
  return hermitian_eigenvalues(c.entries);
}

// Binary entropy -c ln c - (1 - c) ln(1 - c), zero within 1e-15 of 0 or 1.
double binary_entropy(double c);

// S = sum_n binary_entropy(c_n). Values outside [0, 1] by at most
// kEigenvalueClampTolerance are clamped; anything further throws
// Error(eigenvalue_out_of_range).
double entanglement_entropy(std::span<const double> eigenvalues);

EntropyPoint entropy_of(const LatticeSpec& spec, ThermalParams beta, std::span<const int> subsystem,
                        bool keep_eigenvalues = false);

}  // namespace lifshitz
