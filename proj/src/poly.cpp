#include "swanson/poly.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace swanson::poly {

namespace {

using Coeffs = std::vector<Integer>;

void trim(Coeffs& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

Coeffs scaled(const Coeffs& a, const Integer& s) {
  Coeffs out(a);
  for (auto& c : out) c *= s;
  trim(out);
  return out;
}

Integer content(const Coeffs& a) {
  Integer g = 0;
  for (const auto& c : a) {
    g = boost::multiprecision::gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

// Divides out the (positive) content; sign is preserved.
Coeffs primitive(Coeffs a) {
  trim(a);
  if (a.empty()) return a;
  Integer g = content(a);
  if (g < 0) g = -g;
  if (g > 1) {
    for (auto& c : a) c /= g;
  }
  return a;
}

// Remainder of f by g up to a positive factor (powers of |lc(g)|), so the
// signs a Sturm chain needs survive.
Coeffs positive_pseudo_remainder(Coeffs f, const Coeffs& g) {
  const std::size_t dg = g.size() - 1;
  const Integer& lg = g.back();
  const Integer alg = lg < 0 ? Integer(-lg) : lg;
  const int sign_g = lg < 0 ? -1 : 1;
  while (f.size() >= g.size() && !f.empty()) {
    const std::size_t shift = f.size() - g.size();
    const Integer lf = f.back();
    // f <- |lg| f - sign(lg) lf x^shift g
    for (auto& c : f) c *= alg;
    for (std::size_t i = 0; i <= dg; ++i) f[i + shift] -= sign_g * lf * g[i];
    f.pop_back();
    trim(f);
  }
  return f;
}

int sign_of(const Integer& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

std::size_t sign_changes(const std::vector<int>& signs) {
  std::size_t changes = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

}  // namespace

Polynomial::Polynomial(std::vector<Integer> coeffs, Integer scale_num, Integer scale_den)
    : coeffs_(std::move(coeffs)), num_(std::move(scale_num)), den_(std::move(scale_den)) {
  if (den_ == 0) throw std::invalid_argument("polynomial scale denominator is zero");
  normalize();
}

void Polynomial::normalize() {
  trim(coeffs_);
  if (num_ == 0) coeffs_.clear();
  if (coeffs_.empty()) {
    num_ = 1;
    den_ = 1;
    return;
  }
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  Integer g = boost::multiprecision::gcd(num_, den_);
  if (g < 0) g = -g;
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Polynomial Polynomial::constant(Integer c) { return Polynomial({std::move(c)}); }

Polynomial Polynomial::monomial(Integer c, std::size_t k) {
  Coeffs v(k + 1);
  v[k] = std::move(c);
  return Polynomial(std::move(v));
}

Integer Polynomial::coefficient(std::size_t k) const {
  if (k >= coeffs_.size()) return 0;
  return coeffs_[k] * num_ / den_;
}

Polynomial Polynomial::unscaled() const {
  Coeffs out(coeffs_);
  for (auto& c : out) {
    c *= num_;
    if (c % den_ != 0) throw std::domain_error("polynomial scale is not integral");
    c /= den_;
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-() const { return Polynomial(coeffs_, -num_, den_); }

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // (na/da) A + (nb/db) B = (1/(da db)) (na db A + nb da B)
  Coeffs sum = add(scaled(a.coeffs_, a.num_ * b.den_), scaled(b.coeffs_, b.num_ * a.den_));
  return Polynomial(std::move(sum), 1, a.den_ * b.den_);
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Coeffs out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out), a.num_ * b.num_, a.den_ * b.den_);
}

Polynomial operator*(const Integer& c, const Polynomial& p) {
  return Polynomial(p.coeffs_, p.num_ * c, p.den_);
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  const Integer sa = a.num_ * b.den_;
  const Integer sb = b.num_ * a.den_;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] * sa != b.coeffs_[i] * sb) return false;
  }
  return true;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  if (num_ != 1 || den_ != 1) os << "(" << num_ << "/" << den_ << ")*(";
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Integer& c = coeffs_[k];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const Integer mag = c < 0 ? Integer(-c) : c;
    if (mag != 1 || k == 0) os << mag;
    if (k >= 1) os << "x";
    if (k >= 2) os << "^" << k;
    first = false;
  }
  if (num_ != 1 || den_ != 1) os << ")";
  return os.str();
}

Polynomial hermite(int n) {
  if (n < 0) throw std::invalid_argument("hermite: negative degree");
  Coeffs prev{1};
  if (n == 0) return Polynomial(prev);
  Coeffs cur{0, 2};
  for (int k = 1; k < n; ++k) {
    Coeffs next(cur.size() + 1);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= 2 * k * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return Polynomial(std::move(cur));
}

Polynomial pseudo_hermite(int m) {
  if (m < 0) throw std::invalid_argument("pseudo_hermite: negative degree");
  Coeffs prev{1};
  if (m == 0) return Polynomial(prev);
  Coeffs cur{0, 2};
  for (int k = 1; k < m; ++k) {
    Coeffs next(cur.size() + 1);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] += 2 * k * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return Polynomial(std::move(cur));
}

Polynomial derivative(const Polynomial& p) {
  if (p.degree() < 1) return {};
  const auto& c = p.coefficients();
  Coeffs out(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) out[k - 1] = c[k] * static_cast<long>(k);
  return Polynomial(std::move(out), p.scale_numerator(), p.scale_denominator());
}

double eval(const Polynomial& p, double x) { return eval_jet(p, x).value; }

Jet eval_jet(const Polynomial& p, double x) {
  const auto& c = p.coefficients();
  double v = 0.0, d1 = 0.0, d2 = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) {
    d2 = d2 * x + 2.0 * d1;
    d1 = d1 * x + v;
    v = v * x + c[k].convert_to<double>();
  }
  const double s = p.scale_numerator().convert_to<double>() / p.scale_denominator().convert_to<double>();
  return {v * s, d1 * s, d2 * s};
}

std::size_t count_real_roots(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("count_real_roots: zero polynomial");
  if (p.degree() == 0) return 0;

  std::vector<Coeffs> chain;
  chain.push_back(primitive(p.coefficients()));
  chain.push_back(primitive(derivative(Polynomial(p.coefficients())).coefficients()));
  while (chain.back().size() > 1) {
    Coeffs r = positive_pseudo_remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    Coeffs next = primitive(std::move(r));
    for (auto& c : next) c = -c;
    chain.push_back(std::move(next));
  }

  std::vector<int> at_pos, at_neg;
  for (const auto& s : chain) {
    const int lead = sign_of(s.back());
    const int deg = static_cast<int>(s.size()) - 1;
    at_pos.push_back(lead);
    at_neg.push_back(deg % 2 == 0 ? lead : -lead);
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

bool certify_nodeless(const Polynomial& p) { return count_real_roots(p) == 0; }

}  // namespace swanson::poly
