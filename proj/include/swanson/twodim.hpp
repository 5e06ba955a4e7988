#pragma once

#include "swanson/susy.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace swanson {

/// Two decoupled 1D factors, each plain or 1-step extended, with ladder powers n1, n2.
struct TwoDimModel {
  ModelParams params1;
  ModelParams params2;
  std::optional<int> m1;  // extension index of factor 1, none = plain
  std::optional<int> m2;
  unsigned n1 = 1;
  unsigned n2 = 1;
};

struct ConstraintCheck {
  bool satisfied = false;
  double mismatch = 0.0;  // |n1 Omega1 - n2 Omega2|
  double Omega1 = 0.0;
  double Omega2 = 0.0;
};

/// n1 sqrt(omega1^2 - 4 alpha1 beta1) = n2 sqrt(omega2^2 - 4 alpha2 beta2) within 1e-12 relative.
ConstraintCheck check_constraint(const TwoDimModel& m);

/// One dimension: its Hermitian Hamiltonian, ladder pair and low eigenpairs.
struct Factor {
  ModelParams params;
  DerivedParams derived;
  std::optional<ExtensionSpec> ext;
  Grid grid;
  OperatorMatrix h;      // plain: the Swanson h; extended: h- shifted so levels read omega/2 + E~_level / J
  OperatorMatrix lower;  // L or K, lowers the energy by Omega
  OperatorMatrix raise;  // L' or K'
  std::string ladder;    // "L" or "K"
  SpectralReport states;
  RealVector rho_inv;
  RealVector eta;
};

struct ProductState {
  std::size_t n = 0;  // factor-1 level index
  std::size_t k = 0;  // factor-2 level index
  double energy = 0.0;
};

class TwoDimSystem {
 public:
  TwoDimSystem(TwoDimModel model, Factor f1, Factor f2);

  const TwoDimModel& model() const { return model_; }
  const Factor& factor1() const { return f1_; }
  const Factor& factor2() const { return f2_; }

  /// The `count` lowest product states in ascending total energy (ties by n).
  std::vector<ProductState> lowest(std::size_t count) const;
  /// Per-dimension samples of a product state in the non-Hermitian frame, unit weighted norm.
  std::pair<WaveSample, WaveSample> samples(const ProductState& s) const;

 private:
  TwoDimModel model_;
  Factor f1_;
  Factor f2_;
};

/// Builds both factors on z-windows [-L, L] and solves enough 1D levels for n_states product states.
TwoDimSystem build_2d(const TwoDimModel& m, std::size_t n_states = 100, double half_width_z = 10.0,
                      std::size_t n_points = 2001);

/// Exact 1D level of a factor: omega/2 + (n + 1/2) Omega, or omega/2 + E~_level / J when extended.
double exact_factor_energy(const ModelParams& p, const std::optional<int>& m, std::size_t index);

enum class Integral { A, I_minus, I_plus, B1, B2 };
std::string to_string(Integral which);

/// Sum of separable terms a_t (x) b_t on the two grids.
struct SeparableVector {
  std::vector<std::pair<ComplexVector, ComplexVector>> terms;
  double norm() const;
  /// <u (x) v, this> for a product vector.
  complex project(const ComplexVector& u, const ComplexVector& v) const;
};

struct IntegralAction {
  SeparableVector result;         // X psi
  SeparableVector commutator;     // (hX - Xh) psi
  bool annihilated = false;
  double predicted_shift = 0.0;   // energy change implied by the ladder powers
  double energy_in = 0.0;
  double energy_out = 0.0;        // Rayleigh quotient of X psi
};

IntegralAction apply_integral(const TwoDimSystem& sys, Integral which, const ProductState& s);

struct Cluster {
  double energy = 0.0;
  std::vector<ProductState> members;
};

/// Groups states whose energies lie within `tol` of their neighbour.
std::vector<Cluster> degeneracy_map(const std::vector<ProductState>& states, double tol);

struct SuperintegrabilityReport {
  ConstraintCheck constraint;
  ResidualReport checks;
  double max_r = 0.0;             // over I- and I+
  std::size_t evaluated = 0;
  std::size_t annihilated = 0;
  std::vector<Cluster> clusters;
  bool within_clusters = false;   // every non-annihilated I+- image stays in its cluster
  // independence witness <a, I- b> / |I- b| for distinct a, b of one cluster
  bool witness_found = false;
  ProductState witness_a, witness_b;
  double witness_element = 0.0;
  double adjoint_deviation = 0.0;
};

/// Commutator-action residual r = |(hX - Xh) psi| / |X psi| over the n_states lowest
/// product states. Checks: max r for A, I-, I+ against tol, or against the floor
/// 0.1 Omega1 when `negative_control` (the run is expected to be non-integrable).
SuperintegrabilityReport verify_superintegrability(const TwoDimSystem& sys, std::size_t n_states, double tol,
                                                   bool negative_control = false);

}  // namespace swanson
