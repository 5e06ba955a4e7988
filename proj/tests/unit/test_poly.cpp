#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "swanson/poly.hpp"

using namespace swanson::poly;

namespace {

Polynomial from(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return Polynomial(v);
}

Polynomial times_x(const Polynomial& p) { return Polynomial::monomial(1, 1) * p; }

}  // namespace

TEST_CASE("hermite low orders") {
  CHECK(hermite(0) == from({1}));
  CHECK(hermite(2) == from({-2, 0, 4}));
  CHECK(hermite(4) == from({12, 0, -48, 0, 16}));
}

TEST_CASE("hermite matches the Rodrigues formula through order 40") {
  for (int n = 0; n <= 40; ++n) {
    CAPTURE(n);
    const Polynomial h = hermite(n);
    const auto expected = oracle::rodrigues_hermite(n);
    REQUIRE(h.degree() == n);
    for (int k = 0; k <= n; ++k) CHECK(h.coefficient(k) == expected[k]);
    CHECK(h.coefficient(n) == Integer(1) << n);
  }
}

TEST_CASE("pseudo-Hermite matches the imaginary-argument substitution through order 40") {
  CHECK(pseudo_hermite(0) == from({1}));
  CHECK(pseudo_hermite(2) == from({2, 0, 4}));
  CHECK(pseudo_hermite(4) == from({12, 0, 48, 0, 16}));
  for (int m = 0; m <= 40; ++m) {
    CAPTURE(m);
    const Polynomial p = pseudo_hermite(m);
    const auto expected = oracle::substituted_pseudo_hermite(m);
    REQUIRE(p.degree() == m);
    for (int k = 0; k <= m; ++k) CHECK(p.coefficient(k) == expected[k]);
    if (m % 2 == 0)
      for (int k = 0; k <= m; k += 2) CHECK(p.coefficient(k) > 0);
  }
}

TEST_CASE("order 40 coefficients exceed 64 bits") {
  const Polynomial h = hermite(40);
  CHECK(boost::multiprecision::abs(h.coefficient(0)) > Integer(std::numeric_limits<std::uint64_t>::max()));
}

TEST_CASE("derivative") {
  CHECK(derivative(from({2, 0, 4})) == from({0, 8}));
  CHECK(derivative(from({1})).is_zero());
  CHECK(derivative(from({12, 0, 48, 0, 16})) == from({0, 96, 0, 64}));
  for (int n = 1; n <= 20; ++n) CHECK(derivative(hermite(n)) == Integer(2 * n) * hermite(n - 1));
}

TEST_CASE("pseudo-Hermite differential equation holds exactly") {
  for (int m = 0; m <= 20; ++m) {
    const Polynomial p = pseudo_hermite(m);
    const Polynomial d1 = derivative(p);
    const Polynomial lhs = derivative(d1) + Integer(2) * times_x(d1) - Integer(2 * m) * p;
    CHECK(lhs.is_zero());
  }
}

TEST_CASE("evaluation") {
  CHECK(eval(from({2, 0, 4}), 0.0) == doctest::Approx(2.0));
  CHECK(eval(from({2, 0, 4}), 1.0) == doctest::Approx(6.0));
  CHECK(eval(from({12, 0, 48, 0, 16}), 1.0) == doctest::Approx(76.0));
  const Jet j = eval_jet(from({12, 0, 48, 0, 16}), 0.5);
  CHECK(j.value == doctest::Approx(12 + 48 * 0.25 + 16 * 0.0625));
  CHECK(j.d1 == doctest::Approx(96 * 0.5 + 64 * 0.125));
  CHECK(j.d2 == doctest::Approx(96 + 192 * 0.25));
}

TEST_CASE("Sturm verdicts") {
  CHECK(certify_nodeless(from({2, 0, 4})));
  CHECK_FALSE(certify_nodeless(from({-2, 0, 4})));
  CHECK(certify_nodeless(pseudo_hermite(6)));
  for (int m = 0; m <= 20; ++m) {
    CAPTURE(m);
    CHECK(certify_nodeless(pseudo_hermite(m)) == (m % 2 == 0));
    CHECK(count_real_roots(hermite(m)) == static_cast<std::size_t>(m));
    CHECK(count_real_roots(pseudo_hermite(m)) == static_cast<std::size_t>(m % 2));
  }
}

TEST_CASE("scaled polynomials compare by value") {
  const Polynomial half(std::vector<Integer>{2, 0, 4}, 1, 2);
  CHECK(half == from({1, 0, 2}));
  CHECK(half.unscaled().coefficients() == from({1, 0, 2}).coefficients());
}
