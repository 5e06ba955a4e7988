#pragma once

#include "swanson/grid.hpp"
#include "swanson/operator_matrix.hpp"

#include <stdexcept>
#include <string>

namespace swanson {

/// Couplings of H = omega a'a + alpha a^2 + beta a'^2 + omega/2.
struct ModelParams {
  double omega = 2.0;
  double alpha = 0.5;
  double beta = 0.25;
};

struct DerivedParams {
  double lambda = 0.0;  // similarity exponent, rho = exp(lambda x^2 / 2)
  double delta = 1.0;   // z = delta * x
  double J = 2.0;       // h~ = J (h - omega/2)
  double Omega = 1.0;   // level spacing
  double E = 0.5;       // factorization energy in x-units, E~ / J
};

class InvalidParameters : public std::invalid_argument {
 public:
  InvalidParameters(std::string invariant, const std::string& detail);
  /// The violated invariant, e.g. "omega - alpha - beta > 0".
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

/// Throws InvalidParameters naming the first violated invariant.
void validate(const ModelParams& p);

/// (lambda, delta, J, Omega) with E set for the unextended case E~ = 1.
DerivedParams derive_params(const ModelParams& p);

/// Potential part of h: x^2 (omega^2 - 4 alpha beta) / (2 (omega - alpha - beta)) + omega/2.
double hermitian_potential(const ModelParams& p, double x);

/// omega/2 + (n + 1/2) Omega.
double exact_energy(unsigned n, const ModelParams& p);

/// eta = exp(lambda x^2) at every node.
RealVector weight_vector(const ModelParams& p, const Grid& g);

/// rho = exp(lambda x^2 / 2) and its inverse at every node.
RealVector rho_vector(const ModelParams& p, const Grid& g);
RealVector rho_inverse_vector(const ModelParams& p, const Grid& g);

/// psi_n = N exp(-(lambda + delta^2) x^2 / 2) H_n(delta x), unit weighted norm,
/// phase fixed. Throws InvalidParameters when lambda + delta^2 <= 0.
WaveSample eigenfunction(unsigned n, const ModelParams& p, const Grid& g);

/// x-grid whose half-width is half_width_z / delta, so the z-window is fixed.
Grid model_grid(const ModelParams& p, double half_width_z, std::size_t n_points);

/// h = (1/(J delta^2)) (-D2 + delta^4 x^2) + omega/2; the kinetic
/// coefficient 1/(J delta^2) equals (omega - alpha - beta)/2.
OperatorMatrix hermitian_hamiltonian(const ModelParams& p, const Grid& g);

/// H = rho^{-1} h rho, the non-Hermitian Swanson Hamiltonian on the grid.
OperatorMatrix swanson_hamiltonian(const ModelParams& p, const Grid& g);

}  // namespace swanson
