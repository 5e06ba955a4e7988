#pragma once

#include "swanson/eigensolve.hpp"
#include "swanson/model.hpp"
#include "swanson/poly.hpp"
#include "swanson/residual.hpp"

#include <string>

namespace swanson {

/// Choice of seed for the 1-step construction.
///
/// PseudoHermite: phi_m = H_m(z) e^{z^2/2}, m even >= 2, E~ = -2m - 1 (the
/// rational extension). GroundState: phi = e^{-z^2/2}, E~ = 1, the unextended
/// path whose partner is the translated oscillator z^2 + 2.
class ExtensionSpec {
 public:
  enum class Kind { PseudoHermite, GroundState };

  /// Throws std::invalid_argument unless m is even and >= 2.
  static ExtensionSpec pseudo_hermite(int m);
  static ExtensionSpec ground_state();

  Kind kind() const { return kind_; }
  int m() const { return m_; }
  double E_tilde() const { return e_tilde_; }
  /// Factorization energy in x-units, E~ / J.
  double E(const DerivedParams& d) const { return e_tilde_ / d.J; }
  const poly::Polynomial& seed_polynomial() const { return seed_; }
  std::string describe() const;

 private:
  ExtensionSpec(Kind kind, int m, double e_tilde, poly::Polynomial seed);
  Kind kind_;
  int m_;
  double e_tilde_;
  poly::Polynomial seed_;
};

/// Pointwise ratios R1 = H'/H and R2 = H''/H of the seed polynomial in z.
struct SeedRatios {
  double r1 = 0.0;
  double r2 = 0.0;
};
SeedRatios seed_ratios(const ExtensionSpec& s, double z);

struct SeedSample {
  WaveSample sample;     // phi_m on a z-grid, unnormalized
  bool exact_ode = false;  // -H'' - 2z H' + 2m H is the zero polynomial
  double ode_residual = 0.0;  // sup |(-d2 + z^2 - E~) phi| / sup |terms|, pointwise analytic
};

/// Throws std::invalid_argument for odd or zero m.
SeedSample seed_sample(int m, const Grid& z_grid);

/// W~(z) = -z - H'/H (PseudoHermite) or z (GroundState).
double superpotential_tilde(const ExtensionSpec& s, double z);
double superpotential_tilde(int m, double z);

/// V~(-)(z) = z^2 - 2 [H''/H - (H'/H)^2 + 1] (PseudoHermite) or z^2 + 2 (GroundState).
double partner_potential_tilde(const ExtensionSpec& s, double z);
double partner_potential_tilde(int m, double z);

/// Every operator of the extension chain on one x-grid.
struct OperatorSet {
  ModelParams params;
  DerivedParams derived;  // E set from the extension
  ExtensionSpec spec;
  Grid grid;

  OperatorMatrix X, D;
  OperatorMatrix A, A_dag;
  OperatorMatrix L, L_dag;
  OperatorMatrix K, K_dag;
  OperatorMatrix theta, theta_dag;  // theta_dag is the eta-adjoint rho^{-1} A' rho
  OperatorMatrix h_plus, h_minus;   // Hermitian, from the explicit potentials
  OperatorMatrix h_tilde;           // -d^2/dz^2 + z^2 written in x
  OperatorMatrix H_plus, H_minus;   // rho^{-1} h rho
  OperatorMatrix H_plus_expr, H_minus_expr;  // explicit differential forms

  RealVector rho, rho_inv, eta;
  ProbeSet probes_h;  // Hermite functions of z
  ProbeSet probes_H;  // the same times rho^{-1}

  /// Interior residuals of H_expr against H (conjugation-built).
  double H_plus_expr_residual = 0.0;
  double H_minus_expr_residual = 0.0;
};

OperatorSet build_operator_set(const ModelParams& p, const ExtensionSpec& s, const Grid& g);
/// Default x-grid: z-window [-10, 10] with 2001 nodes.
OperatorSet build_operator_set(const ModelParams& p, const ExtensionSpec& s, double half_width_z = 10.0,
                               std::size_t n_points = 2001);

inline constexpr double kDefaultTolerance = 1e-4;

ResidualReport verify_factorization(const OperatorSet& os, double tol = kDefaultTolerance);
ResidualReport verify_intertwining(const OperatorSet& os, double tol = kDefaultTolerance);

struct LadderOptions {
  double tol = kDefaultTolerance;
  std::size_t eigen_states = 8;      // extended eigenvectors used for overlap checks
  double overlap_min = 0.9999;
  double annihilation_tol = 1e-3;    // |K u| / typical |K u| for the annihilated states
};
/// The eight ladder relations plus eigenvector overlaps. Measurements:
/// "sign [h-, K']" (+1 or -1), overlaps, annihilation ratios.
ResidualReport verify_ladder_algebra(const OperatorSet& os, const LadderOptions& opt = {});

/// eta H - H' eta for the conjugation-built and the expression-built H.
ResidualReport verify_pseudo_hermiticity(const OperatorSet& os, double tol = kDefaultTolerance,
                                         double exact_tol = 1e-12);

/// Constant offsets of the paper's second-line (alpha, beta) forms of H+ and H-
/// against the conjugation-built operators, with the residual left after removing them.
ResidualReport printed_form_offsets(const OperatorSet& os);

/// k lowest eigenvalues of -d^2/dz^2 + V~(-)(z) on a z-grid.
SpectralReport extended_spectrum(const ExtensionSpec& s, const Grid& z_grid, std::size_t k);
/// Expected levels: {E~_m} followed by 1, 3, 5, ... (PseudoHermite) or 3, 5, ... (GroundState).
RealVector expected_extended_levels(const ExtensionSpec& s, std::size_t k);
/// |<u0, 1/phi>| for the lowest eigenvector u0 and the normalized zero mode 1/phi_m.
double zero_mode_overlap(const ExtensionSpec& s, const Grid& z_grid);

}  // namespace swanson
