#include "swanson/model.hpp"

#include "swanson/special.hpp"

#include <cmath>
#include <sstream>

namespace swanson {

namespace {
std::string invalid_message(const std::string& invariant, const std::string& detail) {
  return "invalid parameters: requires " + invariant + " (" + detail + ")";
}

std::string describe(const ModelParams& p) {
  std::ostringstream os;
  os << "omega=" << p.omega << ", alpha=" << p.alpha << ", beta=" << p.beta;
  return os.str();
}
}  // namespace

InvalidParameters::InvalidParameters(std::string invariant, const std::string& detail)
    : std::invalid_argument(invalid_message(invariant, detail)), invariant_(std::move(invariant)) {}

void validate(const ModelParams& p) {
  if (!std::isfinite(p.omega) || !std::isfinite(p.alpha) || !std::isfinite(p.beta))
    throw InvalidParameters("finite omega, alpha, beta", describe(p));
  if (!(p.omega - p.alpha - p.beta > 0.0)) throw InvalidParameters("omega - alpha - beta > 0", describe(p));
  if (!(p.omega * p.omega - 4.0 * p.alpha * p.beta > 0.0))
    throw InvalidParameters("omega^2 - 4 alpha beta > 0", describe(p));
}

DerivedParams derive_params(const ModelParams& p) {
  validate(p);
  const double kinetic = p.omega - p.alpha - p.beta;
  DerivedParams d;
  d.Omega = std::sqrt(p.omega * p.omega - 4.0 * p.alpha * p.beta);
  d.lambda = (p.beta - p.alpha) / kinetic;
  d.delta = std::sqrt(d.Omega / kinetic);
  d.J = 2.0 / d.Omega;
  d.E = 1.0 / d.J;
  return d;
}

double hermitian_potential(const ModelParams& p, double x) {
  validate(p);
  return 0.5 * x * x * (p.omega * p.omega - 4.0 * p.alpha * p.beta) / (p.omega - p.alpha - p.beta) +
         0.5 * p.omega;
}

double exact_energy(unsigned n, const ModelParams& p) {
  const DerivedParams d = derive_params(p);
  return 0.5 * p.omega + (static_cast<double>(n) + 0.5) * d.Omega;
}

RealVector weight_vector(const ModelParams& p, const Grid& g) {
  const double lambda = derive_params(p).lambda;
  RealVector w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) w[i] = std::exp(lambda * g.x(i) * g.x(i));
  return w;
}

RealVector rho_vector(const ModelParams& p, const Grid& g) {
  const double lambda = derive_params(p).lambda;
  RealVector r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = std::exp(0.5 * lambda * g.x(i) * g.x(i));
  return r;
}

RealVector rho_inverse_vector(const ModelParams& p, const Grid& g) {
  RealVector r = rho_vector(p, g);
  for (auto& v : r) v = 1.0 / v;
  return r;
}

WaveSample eigenfunction(unsigned n, const ModelParams& p, const Grid& g) {
  const DerivedParams d = derive_params(p);
  if (!(d.lambda + d.delta * d.delta > 0.0))
    throw InvalidParameters("lambda + delta^2 > 0 (decaying eigenfunctions)", describe(p));
  WaveSample s{g, ComplexVector(g.size()), NormConvention::WeightedUnitNorm};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.x(i);
    const double phi = hermite_function(static_cast<int>(n), d.delta * x);
    // exp(-lambda x^2/2) phi(delta x) = exp(-(lambda + delta^2) x^2 / 2) H_n(delta x) up to a constant
    s.values[i] = phi == 0.0 ? 0.0 : phi * std::exp(-0.5 * d.lambda * x * x);
  }
  const RealVector w = weight_vector(p, g);
  const double norm = std::sqrt(weighted_inner(s, s, w).real());
  for (auto& v : s.values) v /= norm;
  fix_phase(s.values);
  return s;
}

Grid model_grid(const ModelParams& p, double half_width_z, std::size_t n_points) {
  return Grid(half_width_z / derive_params(p).delta, n_points);
}

OperatorMatrix hermitian_hamiltonian(const ModelParams& p, const Grid& g) {
  const DerivedParams d = derive_params(p);
  const double d4 = std::pow(d.delta, 4);
  const double c = 1.0 / (d.J * d.delta * d.delta);
  OperatorMatrix pot = diag_matrix([d4](double x) { return d4 * x * x; }, g);
  return (c * (pot - d2_matrix(g))).shifted(0.5 * p.omega).with_label("h");
}

OperatorMatrix swanson_hamiltonian(const ModelParams& p, const Grid& g) {
  return conjugate_by_diagonal(hermitian_hamiltonian(p, g), rho_inverse_vector(p, g)).with_label("H");
}

}  // namespace swanson
