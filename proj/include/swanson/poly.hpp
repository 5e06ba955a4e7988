#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace swanson::poly {

using Integer = boost::multiprecision::cpp_int;

/// Polynomial with exact integer coefficients (ascending degree) times an
/// optional rational scale factor num/den.
///
/// The coefficient list never ends in a zero; the zero polynomial has no
/// coefficients. The scale is kept reduced with a positive denominator.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Integer> coeffs, Integer scale_num = 1, Integer scale_den = 1);

  static Polynomial constant(Integer c);
  /// c * x^k
  static Polynomial monomial(Integer c, std::size_t k);

  const std::vector<Integer>& coefficients() const { return coeffs_; }
  const Integer& scale_numerator() const { return num_; }
  const Integer& scale_denominator() const { return den_; }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of x^k with the scale folded in; only exact when the scale is integral.
  Integer coefficient(std::size_t k) const;

  /// Same polynomial with the scale multiplied into the coefficients.
  /// Requires the scale denominator to divide every coefficient.
  Polynomial unscaled() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Integer& c, const Polynomial& p);

  /// Value equality: compares num_a*den_b*c_a against num_b*den_a*c_b.
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  void normalize();

  std::vector<Integer> coeffs_;
  Integer num_ = 1;
  Integer den_ = 1;
};

/// Physicists' Hermite polynomial from H_{n+1} = 2x H_n - 2n H_{n-1}.
Polynomial hermite(int n);

/// Real pseudo-Hermite polynomial (-i)^m H_m(ix), leading coefficient +2^m,
/// from P_{m+1} = 2x P_m + 2m P_{m-1}.
Polynomial pseudo_hermite(int m);

Polynomial derivative(const Polynomial& p);

/// Horner evaluation in double precision.
double eval(const Polynomial& p, double x);

/// Value, first and second derivative at x in one pass.
struct Jet {
  double value;
  double d1;
  double d2;
};
Jet eval_jet(const Polynomial& p, double x);

/// Number of distinct real roots, by an exact Sturm chain over the integers.
std::size_t count_real_roots(const Polynomial& p);

/// True iff p has no real root. p must be nonzero.
bool certify_nodeless(const Polynomial& p);

}  // namespace swanson::poly
