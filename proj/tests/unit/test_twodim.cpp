#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swanson/twodim.hpp"

#include <algorithm>
#include <cmath>
#include <map>

using namespace swanson;

namespace {

TwoDimModel plain(unsigned n1, unsigned n2) {
  TwoDimModel m;
  m.params1 = {2.0, 0.0, 0.0};
  m.params2 = {1.0, 0.0, 0.0};
  m.n1 = n1;
  m.n2 = n2;
  return m;
}

}  // namespace

TEST_CASE("commensurability constraint") {
  const ConstraintCheck a = check_constraint(plain(1, 2));
  CHECK(a.satisfied);
  CHECK(a.mismatch == 0.0);
  const ConstraintCheck b = check_constraint(plain(1, 1));
  CHECK_FALSE(b.satisfied);
  CHECK(b.mismatch == doctest::Approx(1.0));
  TwoDimModel c = plain(1, 2);
  c.params1 = {2.5, 0.9, 0.625};
  CHECK(check_constraint(c).Omega1 == doctest::Approx(2.0));
  CHECK(check_constraint(c).satisfied);
  CHECK_THROWS(check_constraint(plain(0, 2)));
}

TEST_CASE("product states") {
  const TwoDimSystem sys = build_2d(plain(1, 2), 30, 10.0, 2001);
  const auto states = sys.lowest(30);
  REQUIRE(states.size() == 30);
  CHECK(states[0].n == 0);
  CHECK(states[0].k == 0);
  CHECK(states[0].energy == doctest::Approx(3.0).epsilon(1e-4));
  for (const auto& s : states) {
    const double exact = exact_factor_energy(sys.model().params1, std::nullopt, s.n) +
                         exact_factor_energy(sys.model().params2, std::nullopt, s.k);
    CHECK(std::abs(s.energy - exact) / exact < 1e-4);
    CHECK(s.energy == doctest::Approx(sys.factor1().states.eigenvalues[s.n] + sys.factor2().states.eigenvalues[s.k])
                          .epsilon(1e-12));
  }
  for (std::size_t i = 1; i < states.size(); ++i) CHECK(states[i].energy >= states[i - 1].energy);
}

TEST_CASE("extended factor gains the extra level") {
  TwoDimModel m = plain(1, 1);
  m.params1 = {2.0, 0.5, 0.25};
  m.params2 = m.params1;
  m.m1 = 2;
  const TwoDimSystem sys = build_2d(m, 10, 10.0, 2001);
  const double J = derive_params(m.params1).J;
  CHECK(sys.factor1().states.eigenvalues[0] == doctest::Approx(1.0 - 5.0 / J).epsilon(1e-4));
  CHECK(sys.factor2().states.eigenvalues[0] == doctest::Approx(exact_energy(0, m.params2)).epsilon(1e-4));
  CHECK(sys.factor1().ladder == "K");
  CHECK(sys.factor2().ladder == "L");
}

TEST_CASE("integral actions") {
  const TwoDimSystem sys = build_2d(plain(1, 2), 30, 10.0, 2001);
  const auto states = sys.lowest(30);
  for (const auto& s : states) {
    const IntegralAction a = apply_integral(sys, Integral::A, s);
    if (a.annihilated) continue;
    CHECK(a.commutator.norm() <= 1e-8 * a.result.norm());
  }
  // I- on (n, k) lands on (n - 1, k + 2) with the same total energy
  const ProductState s20 = *std::find_if(states.begin(), states.end(), [](auto& s) { return s.n == 2 && s.k == 0; });
  const IntegralAction x = apply_integral(sys, Integral::I_minus, s20);
  REQUIRE_FALSE(x.annihilated);
  const double overlap = std::abs(x.result.project(sys.factor1().states.eigenvectors[1],
                                                   sys.factor2().states.eigenvectors[2])) /
                         x.result.norm();
  CHECK(overlap > 0.9999);
  CHECK(std::abs(x.energy_out - x.energy_in) / x.energy_in < 1e-5);
  CHECK(x.predicted_shift == doctest::Approx(0.0));
  // nothing below the ladder floor survives
  const ProductState s00 = states[0];
  CHECK(apply_integral(sys, Integral::I_minus, s00).annihilated);
}

TEST_CASE("degeneracy clusters follow the 2n + k lattice") {
  const TwoDimSystem sys = build_2d(plain(1, 2), 100, 10.0, 2001);
  const auto states = sys.lowest(100);
  const auto clusters = degeneracy_map(states, 0.01);
  std::map<std::size_t, std::size_t> lattice;  // level 2n + k -> members
  for (const auto& s : states) ++lattice[2 * s.n + s.k];
  REQUIRE(clusters.size() == lattice.size());
  std::size_t i = 0;
  for (const auto& [level, count] : lattice) {
    CAPTURE(level);
    CHECK(clusters[i].members.size() == count);
    // outside a possibly truncated top cluster, the size is floor(level / 2) + 1
    if (i + 1 < clusters.size()) CHECK(count == level / 2 + 1);
    ++i;
  }
}

TEST_CASE("superintegrability of the plain commensurate case") {
  const TwoDimSystem sys = build_2d(plain(1, 2), 100, 10.0, 2001);
  const SuperintegrabilityReport r = verify_superintegrability(sys, 100, 1e-5);
  CHECK(r.constraint.satisfied);
  CHECK(r.witness_found);
  CHECK(r.witness_element >= 0.1);
  CHECK(r.adjoint_deviation <= 1e-6);
  CHECK(r.checks.measured("max r(A)") <= 1e-8);
  // second-order discretization: about 1e-3 at 2001 points, falling fourfold per refinement
  CHECK(r.max_r < 2e-3);
  const TwoDimSystem fine = build_2d(plain(1, 2), 100, 10.0, 4001);
  const double ratio = r.max_r / verify_superintegrability(fine, 100, 1e-5).max_r;
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);
}

TEST_CASE("negative control") {
  const TwoDimSystem sys = build_2d(plain(1, 1), 100, 10.0, 2001);
  const SuperintegrabilityReport r = verify_superintegrability(sys, 100, 1e-5, true);
  CHECK_FALSE(r.constraint.satisfied);
  CHECK(r.max_r >= 0.1 * 2.0);
  CHECK(r.checks.pass());
}
