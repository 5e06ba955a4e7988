#pragma once

#include "swanson/operator_matrix.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace swanson {

struct SpectralReport {
  RealVector eigenvalues;      // ascending
  RealVector residual_norms;   // ||M v - lambda v||_2 per pair, unit-norm v
  std::vector<ComplexVector> eigenvectors;
  std::string label;
  Grid grid;
  double hermiticity_tolerance = 0.0;
};

class NonHermitianInput : public std::invalid_argument {
 public:
  explicit NonHermitianInput(double defect);
  double defect() const { return defect_; }

 private:
  double defect_;
};

/// k lowest eigenpairs of a Hermitian band matrix (LAPACK zhbevx).
///
/// Throws NonHermitianInput when the relative Hermiticity defect exceeds
/// 1e-12; non-Hermitian operators here are similarity transforms of Hermitian
/// ones and are diagonalized through conjugate_by_diagonal instead.
/// Eigenvectors carry unit 2-norm and the largest-entry-real-positive phase.
SpectralReport symmetric_eigensolve(const OperatorMatrix& m, std::size_t k);

}  // namespace swanson
