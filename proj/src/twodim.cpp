#include "swanson/twodim.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace swanson {

namespace {

constexpr double kConstraintTolerance = 1e-12;
// a ladder image below this fraction of the largest image over the solved states is a floor zero
constexpr double kAnnihilationFraction = 1e-3;
constexpr double kWitnessFloor = 0.1;

complex dot(const ComplexVector& a, const ComplexVector& b) {
  complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// Ascending enumeration of index pairs by e1[n] + e2[k]; ties broken by n.
template <typename E1, typename E2>
std::vector<ProductState> enumerate(std::size_t count, std::size_t n_max, std::size_t k_max, E1 e1, E2 e2) {
  struct Entry {
    double energy;
    std::size_t n, k;
    bool operator>(const Entry& o) const { return energy != o.energy ? energy > o.energy : n > o.n; }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  // each row n advances along k; row n + 1 is seeded when row n emits k = 0
  queue.push({e1(0) + e2(0), 0, 0});
  std::vector<ProductState> out;
  while (out.size() < count && !queue.empty()) {
    const Entry top = queue.top();
    queue.pop();
    out.push_back({top.n, top.k, top.energy});
    if (top.k + 1 < k_max) queue.push({e1(top.n) + e2(top.k + 1), top.n, top.k + 1});
    if (top.k == 0 && top.n + 1 < n_max) queue.push({e1(top.n + 1) + e2(0), top.n + 1, 0});
  }
  if (out.size() < count) throw std::runtime_error("product-state enumeration ran out of 1D levels");
  return out;
}

Factor make_factor(const ModelParams& p, const std::optional<int>& m, const Grid& g, std::size_t levels) {
  const ExtensionSpec spec = m ? ExtensionSpec::pseudo_hermite(*m) : ExtensionSpec::ground_state();
  const OperatorSet os = build_operator_set(p, spec, g);
  OperatorMatrix h = m ? os.h_minus.shifted(os.derived.E) : hermitian_hamiltonian(p, g);
  SpectralReport states = symmetric_eigensolve(h, std::min(levels, g.size()));
  Factor f{p,
           os.derived,
           m ? std::optional<ExtensionSpec>(spec) : std::nullopt,
           g,
           std::move(h),
           m ? os.K : os.L,
           m ? os.K_dag : os.L_dag,
           m ? "K" : "L",
           std::move(states),
           os.rho_inv,
           os.eta};
  return f;
}

struct Op1D {
  const OperatorMatrix* m = nullptr;  // null = identity
  unsigned power = 0;
  ComplexVector apply(const ComplexVector& v) const {
    ComplexVector out = v;
    if (m)
      for (unsigned i = 0; i < power; ++i) out = m->apply(out);
    return out;
  }
};

struct Term {
  double coef;
  Op1D p, q;
};

std::vector<Term> integral_terms(const TwoDimSystem& sys, Integral which) {
  const Factor& a = sys.factor1();
  const Factor& b = sys.factor2();
  const unsigned n1 = sys.model().n1, n2 = sys.model().n2;
  const Term minus{1.0, {&a.lower, n1}, {&b.raise, n2}};
  const Term plus{1.0, {&a.raise, n1}, {&b.lower, n2}};
  switch (which) {
    case Integral::A:
      return {{1.0, {&a.h, 1}, {}}, {-1.0, {}, {&b.h, 1}}};
    case Integral::I_minus:
      return {minus};
    case Integral::I_plus:
      return {plus};
    case Integral::B1:
      return {minus, {-1.0, plus.p, plus.q}};
    case Integral::B2:
      return {minus, plus};
  }
  throw std::invalid_argument("unknown integral");
}

// Largest |P u_j| over the solved levels, the scale for deciding annihilation.
double image_scale(const Op1D& op, const SpectralReport& states) {
  double s = 0.0;
  for (const auto& u : states.eigenvectors) s = std::max(s, norm2(op.apply(u)));
  return s;
}

}  // namespace

ConstraintCheck check_constraint(const TwoDimModel& m) {
  if (m.n1 == 0 || m.n2 == 0) throw std::invalid_argument("ladder powers n1, n2 must be positive");
  ConstraintCheck c;
  c.Omega1 = derive_params(m.params1).Omega;
  c.Omega2 = derive_params(m.params2).Omega;
  const double a = m.n1 * c.Omega1, b = m.n2 * c.Omega2;
  c.mismatch = std::abs(a - b);
  c.satisfied = c.mismatch <= kConstraintTolerance * std::max(a, b);
  return c;
}

double exact_factor_energy(const ModelParams& p, const std::optional<int>& m, std::size_t index) {
  const DerivedParams d = derive_params(p);
  if (!m) return exact_energy(static_cast<unsigned>(index), p);
  const RealVector levels = expected_extended_levels(ExtensionSpec::pseudo_hermite(*m), index + 1);
  return 0.5 * p.omega + levels[index] / d.J;
}

TwoDimSystem::TwoDimSystem(TwoDimModel model, Factor f1, Factor f2)
    : model_(std::move(model)), f1_(std::move(f1)), f2_(std::move(f2)) {}

std::vector<ProductState> TwoDimSystem::lowest(std::size_t count) const {
  const auto& e1 = f1_.states.eigenvalues;
  const auto& e2 = f2_.states.eigenvalues;
  return enumerate(count, e1.size(), e2.size(), [&](std::size_t n) { return e1[n]; },
                   [&](std::size_t k) { return e2[k]; });
}

std::pair<WaveSample, WaveSample> TwoDimSystem::samples(const ProductState& s) const {
  auto one = [](const Factor& f, std::size_t idx) {
    if (idx >= f.states.eigenvectors.size()) throw std::out_of_range("product state beyond solved levels");
    WaveSample w{f.grid, f.states.eigenvectors[idx], NormConvention::WeightedUnitNorm};
    for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] *= f.rho_inv[i];
    const double n = std::sqrt(weighted_inner(w, w, f.eta).real());
    for (auto& v : w.values) v /= n;
    fix_phase(w.values);
    return w;
  };
  return {one(f1_, s.n), one(f2_, s.k)};
}

TwoDimSystem build_2d(const TwoDimModel& m, std::size_t n_states, double half_width_z, std::size_t n_points) {
  check_constraint(m);  // validates powers and both parameter sets
  // size the 1D solves from the exact levels, with room for the ladder powers
  const std::size_t probe = 4 * n_states + 8;
  const auto exact = enumerate(
      n_states, probe, probe, [&](std::size_t n) { return exact_factor_energy(m.params1, m.m1, n); },
      [&](std::size_t k) { return exact_factor_energy(m.params2, m.m2, k); });
  std::size_t n_max = 0, k_max = 0;
  for (const auto& s : exact) {
    n_max = std::max(n_max, s.n);
    k_max = std::max(k_max, s.k);
  }
  const std::size_t reach = std::max(m.n1, m.n2) + 4;
  Factor f1 = make_factor(m.params1, m.m1, model_grid(m.params1, half_width_z, n_points), n_max + reach);
  Factor f2 = make_factor(m.params2, m.m2, model_grid(m.params2, half_width_z, n_points), k_max + reach);
  return TwoDimSystem(m, std::move(f1), std::move(f2));
}

std::string to_string(Integral which) {
  switch (which) {
    case Integral::A:
      return "A";
    case Integral::I_minus:
      return "I-";
    case Integral::I_plus:
      return "I+";
    case Integral::B1:
      return "B1";
    case Integral::B2:
      return "B2";
  }
  return "?";
}

double SeparableVector::norm() const {
  double sq = 0.0;
  for (const auto& [a, b] : terms)
    for (const auto& [c, d] : terms) sq += (dot(a, c) * dot(b, d)).real();
  return std::sqrt(std::max(sq, 0.0));
}

complex SeparableVector::project(const ComplexVector& u, const ComplexVector& v) const {
  complex s = 0.0;
  for (const auto& [a, b] : terms) s += dot(u, a) * dot(v, b);
  return s;
}

IntegralAction apply_integral(const TwoDimSystem& sys, Integral which, const ProductState& s) {
  const Factor& f1 = sys.factor1();
  const Factor& f2 = sys.factor2();
  if (s.n >= f1.states.eigenvectors.size() || s.k >= f2.states.eigenvectors.size())
    throw std::out_of_range("product state beyond solved levels");
  const ComplexVector& u = f1.states.eigenvectors[s.n];
  const ComplexVector& v = f2.states.eigenvectors[s.k];
  const ComplexVector h1u = f1.h.apply(u), h2v = f2.h.apply(v);

  IntegralAction out;
  out.energy_in = s.energy;
  const double q1 = f1.derived.Omega, q2 = f2.derived.Omega;
  const double n1 = sys.model().n1, n2 = sys.model().n2;
  if (which == Integral::I_minus) out.predicted_shift = -n1 * q1 + n2 * q2;
  if (which == Integral::I_plus) out.predicted_shift = n1 * q1 - n2 * q2;

  SeparableVector h_image;  // h X psi
  for (const Term& t : integral_terms(sys, which)) {
    const ComplexVector pu = t.p.apply(u), qv = t.q.apply(v);
    const bool floor1 = t.p.m && t.p.m != &f1.h && norm2(pu) <= kAnnihilationFraction * image_scale(t.p, f1.states);
    const bool floor2 = t.q.m && t.q.m != &f2.h && norm2(qv) <= kAnnihilationFraction * image_scale(t.q, f2.states);
    if (floor1 || floor2) continue;
    ComplexVector c1 = f1.h.apply(pu), pv = t.p.apply(h1u);
    ComplexVector c2 = f2.h.apply(qv), qh = t.q.apply(h2v);
    ComplexVector hpu = c1, hqv = c2;
    for (std::size_t i = 0; i < c1.size(); ++i) c1[i] -= pv[i];
    for (std::size_t i = 0; i < c2.size(); ++i) c2[i] -= qh[i];
    auto scaled = [&](ComplexVector x) {
      for (auto& e : x) e *= t.coef;
      return x;
    };
    out.result.terms.emplace_back(scaled(pu), qv);
    out.commutator.terms.emplace_back(scaled(c1), qv);
    out.commutator.terms.emplace_back(scaled(pu), c2);
    h_image.terms.emplace_back(scaled(hpu), qv);
    h_image.terms.emplace_back(scaled(pu), hqv);
  }
  out.annihilated = out.result.terms.empty();
  if (out.annihilated) {
    out.energy_out = out.energy_in + out.predicted_shift;
    return out;
  }
  // Rayleigh quotient <X psi, h X psi> / <X psi, X psi>
  complex num = 0.0;
  for (const auto& [a, b] : out.result.terms)
    for (const auto& [c, d] : h_image.terms) num += dot(a, c) * dot(b, d);
  const double nrm = out.result.norm();
  out.energy_out = num.real() / (nrm * nrm);
  return out;
}

std::vector<Cluster> degeneracy_map(const std::vector<ProductState>& states, double tol) {
  std::vector<ProductState> sorted = states;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ProductState& a, const ProductState& b) { return a.energy < b.energy; });
  std::vector<Cluster> out;
  for (const auto& s : sorted) {
    if (out.empty() || s.energy - out.back().members.back().energy > tol) out.push_back({s.energy, {}});
    out.back().members.push_back(s);
  }
  for (auto& c : out) {
    double sum = 0.0;
    for (const auto& s : c.members) sum += s.energy;
    c.energy = sum / static_cast<double>(c.members.size());
  }
  return out;
}

SuperintegrabilityReport verify_superintegrability(const TwoDimSystem& sys, std::size_t n_states, double tol,
                                                   bool negative_control) {
  SuperintegrabilityReport rep;
  rep.constraint = check_constraint(sys.model());
  const std::vector<ProductState> states = sys.lowest(n_states);
  const double Omega1 = sys.factor1().derived.Omega;
  const double cluster_tol = 0.01 * std::min(Omega1, sys.factor2().derived.Omega);
  rep.clusters = degeneracy_map(states, cluster_tol);

  double max_a = 0.0, max_b = 0.0, max_shift = 0.0;
  double max_energy_rel = 0.0;
  rep.within_clusters = true;
  for (const auto& s : states) {
    const IntegralAction a = apply_integral(sys, Integral::A, s);
    if (!a.annihilated) max_a = std::max(max_a, a.commutator.norm() / a.result.norm());
    for (Integral which : {Integral::I_minus, Integral::I_plus}) {
      const IntegralAction x = apply_integral(sys, which, s);
      if (x.annihilated) {
        ++rep.annihilated;
        continue;
      }
      ++rep.evaluated;
      const double r = x.commutator.norm() / x.result.norm();
      rep.max_r = std::max(rep.max_r, r);
      max_energy_rel = std::max(max_energy_rel, std::abs(x.energy_out - x.energy_in) / std::abs(x.energy_in));
      max_shift = std::max(max_shift, std::abs(x.energy_out - x.energy_in));
      if (std::abs(x.energy_out - x.energy_in) > cluster_tol) rep.within_clusters = false;
    }
    for (Integral which : {Integral::B1, Integral::B2}) {
      const IntegralAction x = apply_integral(sys, which, s);
      if (!x.annihilated) max_b = std::max(max_b, x.commutator.norm() / x.result.norm());
    }
  }

  if (negative_control) {
    rep.checks.add_floor("max r(I+-) >= 0.1 Omega1 (constraint violated)", rep.max_r, 0.1 * Omega1);
  } else {
    const double scale = std::max(sys.model().n1 * rep.constraint.Omega1, sys.model().n2 * rep.constraint.Omega2);
    rep.checks.add("constraint n1 Omega1 = n2 Omega2 (relative)", rep.constraint.mismatch / scale,
                   kConstraintTolerance);
    rep.checks.add("max r(I+-) = |(hX - Xh) psi| / |X psi|", rep.max_r, tol);
    rep.checks.add("max r(A)", max_a, 1e-8);
    rep.checks.add("energy of X psi equals energy of psi (relative)", max_energy_rel, 1e-6);
  }
  rep.checks.measure("max r(I+-)", rep.max_r);
  rep.checks.measure("max r(A)", max_a);
  rep.checks.measure("max r(B1, B2)", max_b);
  rep.checks.measure("max |E(X psi) - E(psi)|", max_shift);
  rep.checks.measure("max relative energy change", max_energy_rel);
  rep.checks.measure("states evaluated", static_cast<double>(rep.evaluated));
  rep.checks.measure("states annihilated", static_cast<double>(rep.annihilated));
  rep.checks.measure("constraint mismatch", rep.constraint.mismatch);

  // independence witness: an off-diagonal element of I- inside one cluster
  const Factor& f1 = sys.factor1();
  const Factor& f2 = sys.factor2();
  for (const auto& c : rep.clusters) {
    if (c.members.size() < 2 || rep.witness_found) continue;
    for (const auto& b : c.members) {
      const IntegralAction x = apply_integral(sys, Integral::I_minus, b);
      if (x.annihilated) continue;
      for (const auto& a : c.members) {
        if (a.n == b.n && a.k == b.k) continue;
        const double el = std::abs(x.result.project(f1.states.eigenvectors[a.n], f2.states.eigenvectors[a.k])) /
                          x.result.norm();
        if (el >= kWitnessFloor && el > rep.witness_element) {
          rep.witness_found = true;
          rep.witness_a = a;
          rep.witness_b = b;
          rep.witness_element = el;
        }
      }
      if (rep.witness_found) break;
    }
  }
  if (!negative_control)
    rep.checks.add_floor("independence witness |<a, I- b>| / |I- b| inside a cluster", rep.witness_element,
                         kWitnessFloor);
  if (rep.witness_found) {
    rep.checks.measure("independence witness element", rep.witness_element);
    // <a, I- b>_eta against conj <b, I+ a>_eta in the non-Hermitian frame
    auto element = [&](const ProductState& bra, Integral which, const ProductState& ket) {
      const IntegralAction x = apply_integral(sys, which, ket);
      WaveSample ua{f1.grid, f1.states.eigenvectors[bra.n], NormConvention::Unnormalized};
      WaveSample va{f2.grid, f2.states.eigenvectors[bra.k], NormConvention::Unnormalized};
      for (std::size_t i = 0; i < ua.values.size(); ++i) ua.values[i] *= f1.rho_inv[i];
      for (std::size_t i = 0; i < va.values.size(); ++i) va.values[i] *= f2.rho_inv[i];
      complex s = 0.0;
      for (const auto& [p, q] : x.result.terms) {
        WaveSample wp{f1.grid, p, NormConvention::Unnormalized}, wq{f2.grid, q, NormConvention::Unnormalized};
        for (std::size_t i = 0; i < p.size(); ++i) wp.values[i] *= f1.rho_inv[i];
        for (std::size_t i = 0; i < q.size(); ++i) wq.values[i] *= f2.rho_inv[i];
        s += weighted_inner(ua, wp, f1.eta) * weighted_inner(va, wq, f2.eta);
      }
      return s;
    };
    const complex m1 = element(rep.witness_a, Integral::I_minus, rep.witness_b);
    const complex m2 = element(rep.witness_b, Integral::I_plus, rep.witness_a);
    rep.adjoint_deviation = std::abs(m1 - std::conj(m2)) / std::max(std::abs(m1), std::abs(m2));
    rep.checks.measure("adjoint deviation <a, I- b> vs <I+ a, b>", rep.adjoint_deviation);
    if (!negative_control) rep.checks.add("I+ is the eta-adjoint of I-", rep.adjoint_deviation, 1e-6);
  }
  return rep;
}

}  // namespace swanson
