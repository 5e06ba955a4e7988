#include "swanson/susy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swanson {

ExtensionSpec::ExtensionSpec(Kind kind, int m, double e_tilde, poly::Polynomial seed)
    : kind_(kind), m_(m), e_tilde_(e_tilde), seed_(std::move(seed)) {}

ExtensionSpec ExtensionSpec::pseudo_hermite(int m) {
  if (m < 2 || m % 2 != 0)
    throw std::invalid_argument("extension index m must be even and >= 2 (got " + std::to_string(m) +
                                "); odd or zero m gives a seed with nodes");
  return ExtensionSpec(Kind::PseudoHermite, m, -2.0 * m - 1.0, poly::pseudo_hermite(m));
}

ExtensionSpec ExtensionSpec::ground_state() {
  return ExtensionSpec(Kind::GroundState, 0, 1.0, poly::Polynomial::constant(1));
}

std::string ExtensionSpec::describe() const {
  if (kind_ == Kind::GroundState) return "ground-state seed (E~ = 1)";
  return "pseudo-Hermite seed m = " + std::to_string(m_) + " (E~ = " + std::to_string(-2 * m_ - 1) + ")";
}

SeedRatios seed_ratios(const ExtensionSpec& s, double z) {
  if (s.kind() == ExtensionSpec::Kind::GroundState) return {};
  const poly::Jet j = poly::eval_jet(s.seed_polynomial(), z);
  return {j.d1 / j.value, j.d2 / j.value};
}

SeedSample seed_sample(int m, const Grid& z_grid) {
  const ExtensionSpec s = ExtensionSpec::pseudo_hermite(m);
  const poly::Polynomial& H = s.seed_polynomial();
  const poly::Polynomial d1 = poly::derivative(H);
  const poly::Polynomial d2 = poly::derivative(d1);
  const poly::Polynomial two_z_d1 = poly::Polynomial({0, 2}) * d1;
  const poly::Polynomial ode = poly::Integer(2 * m) * H - d2 - two_z_d1;

  SeedSample out{{z_grid, ComplexVector(z_grid.size()), NormConvention::Unnormalized}, ode.is_zero(), 0.0};
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    const double z = z_grid.x(i);
    const poly::Jet j = poly::eval_jet(H, z);
    const double g = std::exp(0.5 * z * z);
    out.sample.values[i] = j.value * g;
    // phi'' = (H'' + 2z H' + (1 + z^2) H) e^{z^2/2}
    const double kinetic = -(j.d2 + 2.0 * z * j.d1 + (1.0 + z * z) * j.value);
    const double potential = (z * z - s.E_tilde()) * j.value;
    worst = std::max(worst, std::abs(kinetic + potential));
    scale = std::max({scale, std::abs(kinetic), std::abs(potential)});
  }
  out.ode_residual = scale > 0.0 ? worst / scale : 0.0;
  return out;
}

double superpotential_tilde(const ExtensionSpec& s, double z) {
  if (s.kind() == ExtensionSpec::Kind::GroundState) return z;
  return -z - seed_ratios(s, z).r1;
}

double superpotential_tilde(int m, double z) { return superpotential_tilde(ExtensionSpec::pseudo_hermite(m), z); }

double partner_potential_tilde(const ExtensionSpec& s, double z) {
  if (s.kind() == ExtensionSpec::Kind::GroundState) return z * z + 2.0;
  const SeedRatios r = seed_ratios(s, z);
  return z * z - 2.0 * (r.r2 - r.r1 * r.r1 + 1.0);
}

double partner_potential_tilde(int m, double z) {
  return partner_potential_tilde(ExtensionSpec::pseudo_hermite(m), z);
}

namespace {

// -2 [R2 - R1^2 + 1] in z, the rational part of the partner potential.
double partner_correction(const ExtensionSpec& s, double z) { return partner_potential_tilde(s, z) - z * z; }

double offset_fit(const OperatorMatrix& a, const OperatorMatrix& b, const ProbeSet& probes) {
  // least-squares constant c with (a - b) v ~ c v over interior rows
  complex num = 0.0;
  double den = 0.0;
  for (const auto& v : probes.columns) {
    const ComplexVector av = a.apply(v), bv = b.apply(v);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!probes.grid.is_interior(i)) continue;
      num += std::conj(v[i]) * (av[i] - bv[i]);
      den += std::norm(v[i]);
    }
  }
  return num.real() / den;
}

double residual_of(std::initializer_list<OperatorMatrix> terms, const ProbeSet& probes) {
  const std::vector<OperatorMatrix> t(terms);
  return identity_residual(std::span<const OperatorMatrix>(t), probes);
}

// Residual of [a, b] + rest = 0 with the commutator counted as its two products.
double commutator_residual(const OperatorMatrix& a, const OperatorMatrix& b, const OperatorMatrix& rest,
                           const ProbeSet& probes) {
  return residual_of({a * b, -1.0 * (b * a), rest}, probes);
}

}  // namespace

OperatorSet build_operator_set(const ModelParams& p, const ExtensionSpec& s, const Grid& g) {
  DerivedParams d = derive_params(p);
  d.E = s.E(d);
  const double delta = d.delta;
  const double sqrtJ = std::sqrt(d.J);
  const double c = 1.0 / (d.J * delta * delta);
  const double lam = d.lambda;

  const OperatorMatrix X = diag_matrix([](double x) { return x; }, g, "X");
  const OperatorMatrix D = d1_matrix(g).with_label("D");
  const OperatorMatrix D2 = d2_matrix(g);
  const OperatorMatrix W = diag_matrix([&](double x) { return superpotential_tilde(s, delta * x); }, g, "W");

  const OperatorMatrix A = ((1.0 / sqrtJ) * ((1.0 / delta) * D + W)).with_label("A");
  const OperatorMatrix A_dag = dagger(A).with_label("A'");
  const OperatorMatrix L = ((1.0 / delta) * D + delta * X).with_label("L");
  const OperatorMatrix L_dag = dagger(L).with_label("L'");

  const double d4 = std::pow(delta, 4);
  const OperatorMatrix osc = diag_matrix([d4](double x) { return d4 * x * x; }, g);
  const OperatorMatrix corr = diag_matrix(
      [&](double x) { return delta * delta * partner_correction(s, delta * x); }, g);
  const OperatorMatrix h_plus = (c * (osc - D2)).shifted(0.5 * p.omega - d.E).with_label("h+");
  const OperatorMatrix h_minus = (c * (osc + corr - D2)).shifted(0.5 * p.omega - d.E).with_label("h-");
  const OperatorMatrix h_tilde = ((1.0 / (delta * delta)) * (osc - D2)).with_label("h~");

  const RealVector rho = rho_vector(p, g);
  const RealVector rho_inv = rho_inverse_vector(p, g);
  const RealVector eta = weight_vector(p, g);

  // rho^{-1} d/dx rho = d/dx + lambda x, so the expression forms carry -2 lambda x d/dx - lambda^2 x^2 - lambda
  const OperatorMatrix conj_kinetic = -1.0 * D2 - 2.0 * lam * (X * D) +
                                      diag_matrix([&](double x) { return -lam * lam * x * x - lam; }, g);
  const double shift = -s.E_tilde() * delta * delta;
  const OperatorMatrix H_plus_expr =
      (c * (conj_kinetic + osc).shifted(shift)).shifted(0.5 * p.omega).with_label("H+ (expression)");
  const OperatorMatrix H_minus_expr =
      (c * (conj_kinetic + osc + corr).shifted(shift)).shifted(0.5 * p.omega).with_label("H- (expression)");

  OperatorSet os{p,
                 d,
                 s,
                 g,
                 X,
                 D,
                 A,
                 A_dag,
                 L,
                 L_dag,
                 (A * L * A_dag).with_label("K"),
                 (A * L_dag * A_dag).with_label("K'"),
                 conjugate_by_diagonal(A, rho_inv).with_label("theta"),
                 conjugate_by_diagonal(A_dag, rho_inv).with_label("theta'"),
                 h_plus,
                 h_minus,
                 h_tilde,
                 conjugate_by_diagonal(h_plus, rho_inv).with_label("H+"),
                 conjugate_by_diagonal(h_minus, rho_inv).with_label("H-"),
                 H_plus_expr,
                 H_minus_expr,
                 rho,
                 rho_inv,
                 eta,
                 hermite_probes(g, delta),
                 hermite_probes(g, delta),
                 0.0,
                 0.0};
  os.probes_H = reweighted(os.probes_h, rho_inv);
  os.H_plus_expr_residual = residual_of({os.H_plus_expr, -1.0 * os.H_plus}, os.probes_H);
  os.H_minus_expr_residual = residual_of({os.H_minus_expr, -1.0 * os.H_minus}, os.probes_H);
  return os;
}

OperatorSet build_operator_set(const ModelParams& p, const ExtensionSpec& s, double half_width_z,
                               std::size_t n_points) {
  return build_operator_set(p, s, model_grid(p, half_width_z, n_points));
}

ResidualReport verify_factorization(const OperatorSet& os, double tol) {
  const double w2 = 0.5 * os.params.omega;
  ResidualReport r;
  r.add("h+ - omega/2 = A'A", residual_of({os.h_plus.shifted(-w2), -1.0 * (os.A_dag * os.A)}, os.probes_h), tol);
  r.add("h- - omega/2 = AA'", residual_of({os.h_minus.shifted(-w2), -1.0 * (os.A * os.A_dag)}, os.probes_h), tol);
  r.add("H+ - omega/2 = theta'theta",
        residual_of({os.H_plus.shifted(-w2), -1.0 * (os.theta_dag * os.theta)}, os.probes_H), tol);
  r.add("H- - omega/2 = theta theta'",
        residual_of({os.H_minus.shifted(-w2), -1.0 * (os.theta * os.theta_dag)}, os.probes_H), tol);
  return r;
}

ResidualReport verify_intertwining(const OperatorSet& os, double tol) {
  const double w2 = 0.5 * os.params.omega;
  const OperatorMatrix hp = os.h_plus.shifted(-w2);
  const OperatorMatrix hm = os.h_minus.shifted(-w2);
  ResidualReport r;
  r.add("A h+ = h- A", residual_of({os.A * hp, -1.0 * (hm * os.A)}, os.probes_h), tol);
  r.add("A' h- = h+ A'", residual_of({os.A_dag * hm, -1.0 * (hp * os.A_dag)}, os.probes_h), tol);
  return r;
}

ResidualReport verify_ladder_algebra(const OperatorSet& os, const LadderOptions& opt) {
  const double J = os.derived.J;
  const double w2 = 0.5 * os.params.omega;
  const double JE = J * os.derived.E;
  const ProbeSet& pr = os.probes_h;
  ResidualReport r;

  r.add("[h+, L] = -(2/J) L", commutator_residual(os.h_plus, os.L, (2.0 / J) * os.L, pr), opt.tol);
  r.add("[h+, L'] = (2/J) L'", commutator_residual(os.h_plus, os.L_dag, (-2.0 / J) * os.L_dag, pr), opt.tol);
  const OperatorMatrix Jh = (J * os.h_plus).shifted(-J * w2 + JE);
  r.add("L'L = J h+ - J omega/2 + J E - 1", residual_of({os.L_dag * os.L, -1.0 * Jh.shifted(-1.0)}, pr), opt.tol);
  r.add("LL' = J h+ - J omega/2 + J E + 1", residual_of({os.L * os.L_dag, -1.0 * Jh.shifted(1.0)}, pr), opt.tol);

  // h- realized as omega/2 + AA', its defining factorization
  const OperatorMatrix AAd = os.A * os.A_dag;
  const OperatorMatrix hm = AAd.shifted(w2);
  const OperatorMatrix M = J * AAd;  // J (h- - omega/2)
  const double Et = os.spec.E_tilde();
  const double inv_J2 = 1.0 / (J * J);

  r.add("[h-, K] = -(2/J) K", commutator_residual(hm, os.K, (2.0 / J) * os.K, pr), opt.tol);
  const double r_up = commutator_residual(hm, os.K_dag, (-2.0 / J) * os.K_dag, pr);
  const double r_down = commutator_residual(hm, os.K_dag, (2.0 / J) * os.K_dag, pr);
  const double sign = r_up <= r_down ? 1.0 : -1.0;
  r.add(sign > 0 ? "[h-, K'] = +(2/J) K'" : "[h-, K'] = -(2/J) K'", std::min(r_up, r_down), opt.tol);
  r.measure("sign [h-, K']", sign);
  r.measure("[h-, K'] residual with the printed sign -(2/J)", r_down);

  const OperatorMatrix cubic_down = inv_J2 * (M.shifted(Et - 1.0) * M * M.shifted(-2.0));
  const OperatorMatrix cubic_up = inv_J2 * (M.shifted(Et + 1.0) * M * M.shifted(2.0));
  const OperatorMatrix KdK = os.K_dag * os.K;
  const OperatorMatrix KKd = os.K * os.K_dag;
  r.add("K'K = J^-2 (M + E~ - 1) M (M - 2)", residual_of({KdK, -1.0 * cubic_down}, pr), opt.tol);
  r.add("KK' = J^-2 (M + E~ + 1) M (M + 2)", residual_of({KKd, -1.0 * cubic_up}, pr), opt.tol);
  r.measure("K'K residual without the J^-2 factor", residual_of({KdK, -J * J * cubic_down}, pr));

  // the same cubic relation with h- taken from its explicit potential
  const OperatorMatrix Mx = J * os.h_minus.shifted(-w2);
  r.measure("K'K residual with explicit h-",
            residual_of({KdK, -inv_J2 * (Mx.shifted(Et - 1.0) * Mx * Mx.shifted(-2.0))}, pr));
  r.measure("[h-, K] residual with explicit h-", commutator_residual(os.h_minus, os.K, (2.0 / J) * os.K, pr));

  // eigenvector action of K and K' on the extended spectrum
  const SpectralReport sp = symmetric_eigensolve(os.h_minus, opt.eigen_states);
  const auto& u = sp.eigenvectors;
  const std::size_t k = u.size();
  auto overlap = [](const ComplexVector& a, const ComplexVector& b) {
    complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return std::abs(s) / (norm2(a) * norm2(b));
  };
  std::vector<ComplexVector> Ku(k), Kdu(k);
  for (std::size_t j = 0; j < k; ++j) {
    Ku[j] = os.K.apply(u[j]);
    Kdu[j] = os.K_dag.apply(u[j]);
  }
  const bool extended = os.spec.kind() == ExtensionSpec::Kind::PseudoHermite;
  // K lowers j -> j-1 from the first state whose image under A' is not the h+ ground state
  const std::size_t first_lowered = extended ? 2 : 1;
  const std::size_t first_raised = extended ? 1 : 0;
  double min_down = 1.0, min_up = 1.0;
  for (std::size_t j = first_lowered; j < k; ++j) min_down = std::min(min_down, overlap(u[j - 1], Ku[j]));
  for (std::size_t j = first_raised; j + 1 < k; ++j) min_up = std::min(min_up, overlap(u[j + 1], Kdu[j]));
  r.add("K u_j ~ u_(j-1) overlap", 1.0 - min_down, 1.0 - opt.overlap_min);
  r.add("K' u_j ~ u_(j+1) overlap", 1.0 - min_up, 1.0 - opt.overlap_min);
  r.measure("min overlap K u_j, u_(j-1)", min_down);
  r.measure("min overlap K' u_j, u_(j+1)", min_up);

  const double ref_down = norm2(Ku[first_lowered]);
  double worst = 0.0;
  for (std::size_t j = 0; j < first_lowered; ++j) {
    const double ratio = norm2(Ku[j]) / ref_down;
    r.measure("|K u_" + std::to_string(j) + "| / |K u_" + std::to_string(first_lowered) + "|", ratio);
    worst = std::max(worst, ratio);
  }
  r.add("K annihilates the bottom states", worst, opt.annihilation_tol);
  if (extended) {
    const double ratio = norm2(Kdu[0]) / norm2(Kdu[1]);
    r.measure("|K' u_0| / |K' u_1|", ratio);
    r.add("K' annihilates the extra state", ratio, opt.annihilation_tol);
  }
  return r;
}

ResidualReport verify_pseudo_hermiticity(const OperatorSet& os, double tol, double exact_tol) {
  const OperatorMatrix eta = OperatorMatrix::diagonal(os.grid, std::span<const double>(os.eta), "eta");
  ResidualReport r;
  auto matrix_defect = [&](const OperatorMatrix& H) {
    const OperatorMatrix a = eta * H;
    const OperatorMatrix b = dagger(H) * eta;
    return (a - b).max_abs() / std::max(a.max_abs(), b.max_abs());
  };
  r.add("eta H+ = H+' eta (conjugation)", matrix_defect(os.H_plus), exact_tol);
  r.add("eta H- = H-' eta (conjugation)", matrix_defect(os.H_minus), exact_tol);
  r.add("eta H+ = H+' eta (expression)",
        residual_of({eta * os.H_plus_expr, -1.0 * (dagger(os.H_plus_expr) * eta)}, os.probes_H), tol);
  r.add("eta H- = H-' eta (expression)",
        residual_of({eta * os.H_minus_expr, -1.0 * (dagger(os.H_minus_expr) * eta)}, os.probes_H), tol);
  r.add("H+ expression = rho^-1 h+ rho", os.H_plus_expr_residual, tol);
  r.add("H- expression = rho^-1 h- rho", os.H_minus_expr_residual, tol);
  return r;
}

ResidualReport printed_form_offsets(const OperatorSet& os) {
  ResidualReport r;
  if (os.spec.kind() != ExtensionSpec::Kind::PseudoHermite) return r;
  const ModelParams& p = os.params;
  const double Om = os.derived.Omega;
  const double m = os.spec.m();
  const double delta = os.derived.delta;
  const Grid& g = os.grid;
  const OperatorMatrix base = -0.5 * (p.omega - p.alpha - p.beta) * d2_matrix(g) + (p.alpha - p.beta) * (os.X * os.D) +
                              diag_matrix([&](double x) { return 0.5 * (p.alpha + p.beta + p.omega) * x * x; }, g);
  const OperatorMatrix plus =
      base.shifted((2.0 * m - 1.0) * Om + 0.5 * (p.alpha - p.beta) + 0.5 * p.omega).with_label("H+ printed");
  // ratio primes read as x-derivatives of H_m(delta x): (d/dx)^k -> delta^k (d/dz)^k
  const OperatorMatrix ratios = diag_matrix(
      [&](double x) {
        const SeedRatios s = seed_ratios(os.spec, delta * x);
        return delta * delta * (-2.0 * s.r2 + 2.0 * s.r1 * s.r1);
      },
      g);
  const OperatorMatrix minus = (base + 0.5 * (p.beta - p.alpha) * ratios)
                                   .shifted(0.5 * (p.alpha - p.beta) + 0.5 * p.omega + (m + 1.0) * 0.5 * Om)
                                   .with_label("H- printed");
  const double c_plus = offset_fit(plus, os.H_plus, os.probes_H);
  const double c_minus = offset_fit(minus, os.H_minus, os.probes_H);
  r.measure("H+ printed constant offset", c_plus);
  r.measure("H+ printed offset / Omega", c_plus / Om);
  r.measure("H+ residual after offset", residual_of({plus.shifted(-c_plus), -1.0 * os.H_plus}, os.probes_H));
  r.measure("H- printed constant offset", c_minus);
  r.measure("H- printed offset / Omega", c_minus / Om);
  r.measure("H- residual after offset", residual_of({minus.shifted(-c_minus), -1.0 * os.H_minus}, os.probes_H));
  return r;
}

SpectralReport extended_spectrum(const ExtensionSpec& s, const Grid& z_grid, std::size_t k) {
  const OperatorMatrix V = diag_matrix([&](double z) { return partner_potential_tilde(s, z); }, z_grid);
  return symmetric_eigensolve((V - d2_matrix(z_grid)).with_label("-d2/dz2 + V~(-)"), k);
}

RealVector expected_extended_levels(const ExtensionSpec& s, std::size_t k) {
  RealVector out;
  if (s.kind() == ExtensionSpec::Kind::PseudoHermite) {
    out.push_back(s.E_tilde());
    for (std::size_t n = 0; out.size() < k; ++n) out.push_back(2.0 * static_cast<double>(n) + 1.0);
  } else {
    for (std::size_t n = 1; out.size() < k; ++n) out.push_back(2.0 * static_cast<double>(n) + 1.0);
  }
  out.resize(k);
  return out;
}

double zero_mode_overlap(const ExtensionSpec& s, const Grid& z_grid) {
  if (s.kind() != ExtensionSpec::Kind::PseudoHermite)
    throw std::invalid_argument("zero_mode_overlap: the ground-state seed has no normalizable zero mode");
  const SpectralReport sp = extended_spectrum(s, z_grid, 1);
  ComplexVector zm(z_grid.size());
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    const double z = z_grid.x(i);
    zm[i] = std::exp(-0.5 * z * z) / poly::eval(s.seed_polynomial(), z);
  }
  const double n = norm2(zm);
  complex ip = 0.0;
  for (std::size_t i = 0; i < zm.size(); ++i) ip += std::conj(sp.eigenvectors[0][i]) * zm[i] / n;
  return std::abs(ip);
}

}  // namespace swanson
