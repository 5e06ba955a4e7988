#pragma once

// Independent reference computations shared by the unit tests and the acceptance run.
// None of them call into the library code they are used to judge.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using Integer = boost::multiprecision::cpp_int;
using Coeffs = std::vector<Integer>;  // ascending powers

// H_n = (-1)^n e^{x^2} d^n/dx^n e^{-x^2}: with d/dx [P e^{-x^2}] = (P' - 2x P) e^{-x^2}.
inline Coeffs rodrigues_hermite(int n) {
  Coeffs p{1};
  for (int k = 0; k < n; ++k) {
    Coeffs next(p.size() + 1, 0);
    for (std::size_t i = 1; i < p.size(); ++i) next[i - 1] += Integer(static_cast<long>(i)) * p[i];
    for (std::size_t i = 0; i < p.size(); ++i) next[i + 1] -= 2 * p[i];
    p = std::move(next);
  }
  if (n % 2 == 1)
    for (auto& c : p) c = -c;
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

// (-i)^m H_m(i x): the x^k coefficient c_k picks up i^(k - m) = (-1)^((m - k)/2).
inline Coeffs substituted_pseudo_hermite(int m) {
  Coeffs p = rodrigues_hermite(m);
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] != 0 && ((m - static_cast<int>(k)) / 2) % 2 != 0) p[k] = -p[k];
  return p;
}

// Partner potential of the m = 2 and m = 4 extensions, from hand-expanded seeds.
inline double partner_m2(double z) {
  const double H = 4 * z * z + 2, H1 = 8 * z, H2 = 8;
  return z * z - 2 * (H2 / H - (H1 / H) * (H1 / H) + 1);
}
inline double partner_m4(double z) {
  const double z2 = z * z;
  const double H = 16 * z2 * z2 + 48 * z2 + 12, H1 = 64 * z2 * z + 96 * z, H2 = 192 * z2 + 96;
  return z * z - 2 * (H2 / H - (H1 / H) * (H1 / H) + 1);
}

// u(z_max) for -u'' + V u = E u integrated from 0 with even or odd initial data, RK4.
inline double shoot(const std::function<double(double)>& V, double E, bool even, double z_max = 8.0,
                    double step = 1e-3) {
  double u = even ? 1.0 : 0.0, v = even ? 0.0 : 1.0;
  const int n = static_cast<int>(std::lround(z_max / step));
  auto f = [&](double z, double uu) { return (V(z) - E) * uu; };
  for (int i = 0; i < n; ++i) {
    const double z = i * step;
    const double k1u = v, k1v = f(z, u);
    const double k2u = v + 0.5 * step * k1v, k2v = f(z + 0.5 * step, u + 0.5 * step * k1u);
    const double k3u = v + 0.5 * step * k2v, k3v = f(z + 0.5 * step, u + 0.5 * step * k2u);
    const double k4u = v + step * k3v, k4v = f(z + step, u + step * k3u);
    u += step / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
    v += step / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
  }
  return u;
}

// Eigenvalue in [lo, hi] where the shot changes sign, by bisection; NaN when no sign change.
inline double shooting_level(const std::function<double(double)>& V, double lo, double hi, bool even) {
  double flo = shoot(V, lo, even), fhi = shoot(V, hi, even);
  if (std::signbit(flo) == std::signbit(fhi)) return std::nan("");
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = shoot(V, mid, even);
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Expressions that exercise every production of the grammar.
inline const std::vector<std::string>& corpus() {
  static const std::vector<std::string> c = {
      "A",
      "2",
      "3/4",
      "0.5",
      "1e-3",
      "2.5E+2",
      "A'",
      "A''",
      "A^2",
      "A^0",
      "A'^3",
      "(A)",
      "-A",
      "--A",
      "-A'",
      "A + B",
      "A - B",
      "A * B",
      "A + B + C",
      "A - B - C",
      "A - (B - C)",
      "A * B * C",
      "A * (B * C)",
      "A + B * C",
      "(A + B) * C",
      "A * L * A'",
      "[h, L]",
      "[h, [h, L]]",
      "[[A, B], C]",
      "[h, L] + twoOverJ * L",
      "[hplus, L] + twoOverJ*L",
      "LdagL - (J*hplus - JomegaHalf + JE - one)",
      "LLdag - (J*hplus - JomegaHalf + JE + one)",
      "K - A*L*A'",
      "hplus' - hplus",
      "[A, A]",
      "(A + B)'",
      "(A * B)^2",
      "[A', B']'",
      "-(A + B)",
      "3/4 * A - 1/2 * B",
      "2 * 3",
      "X^2 + D^2",
      "theta' * theta - (Hplus - omegaHalf * I)",
      "[Hminus, theta]",
      "A_1 + b2c",
      "-[A, B]^2",
      "((((A))))",
      "A*B - B*A - [A, B]",
      "K' * K - KdagK",
  };
  return c;
}

// Random strings over the token alphabet (plus a few illegal characters).
inline std::string random_token_string(std::mt19937& rng) {
  static const std::vector<std::string> pieces = {
      "A", "hplus", "L", "K", "J", "x1", "2", "3/4", "0.5", "1e3", "+", "-", "*", "^", "^2", "'", "[", "]",
      "(", ")", ",", " ", "/", "?", "1.", "7/0", "\xE2\x88\x92", "\xE2\x80\xA0", ".", "e", "_", "9999999999999"};
  std::uniform_int_distribution<std::size_t> len(0, 24), pick(0, pieces.size() - 1);
  std::string s;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) s += pieces[pick(rng)];
  return s;
}

}  // namespace oracle
