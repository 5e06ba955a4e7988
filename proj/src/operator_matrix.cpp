#include "swanson/operator_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swanson {

namespace {

void require_same_grid(const OperatorMatrix& a, const OperatorMatrix& b, const char* what) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

std::string join(const std::string& a, const char* op, const std::string& b) {
  if (a.empty() || b.empty()) return {};
  return "(" + a + op + b + ")";
}

}  // namespace

OperatorMatrix::OperatorMatrix(Grid grid, std::size_t lower, std::size_t upper, std::string label)
    : grid_(grid),
      lower_(std::min(lower, grid.size() - 1)),
      upper_(std::min(upper, grid.size() - 1)),
      label_(std::move(label)),
      data_((lower_ + upper_ + 1) * grid.size(), complex(0.0)) {}

OperatorMatrix OperatorMatrix::identity(const Grid& grid) {
  OperatorMatrix m(grid, 0, 0, "I");
  for (std::size_t i = 0; i < grid.size(); ++i) m.data_[i] = 1.0;
  return m;
}

OperatorMatrix OperatorMatrix::zero(const Grid& grid) { return OperatorMatrix(grid, 0, 0, "0"); }

OperatorMatrix OperatorMatrix::diagonal(const Grid& grid, std::span<const complex> values, std::string label) {
  if (values.size() != grid.size()) throw std::invalid_argument("diagonal: length does not match grid");
  OperatorMatrix m(grid, 0, 0, std::move(label));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
      throw std::domain_error("diagonal: non-finite sample at index " + std::to_string(i));
    m.data_[i] = values[i];
  }
  return m;
}

OperatorMatrix OperatorMatrix::diagonal(const Grid& grid, std::span<const double> values, std::string label) {
  ComplexVector c(values.begin(), values.end());
  return diagonal(grid, c, std::move(label));
}

OperatorMatrix OperatorMatrix::with_label(std::string label) const {
  OperatorMatrix out(*this);
  out.label_ = std::move(label);
  return out;
}

bool OperatorMatrix::in_band(std::size_t i, std::size_t j) const {
  return j + lower_ >= i && i + upper_ >= j;
}

std::size_t OperatorMatrix::band_index(std::size_t i, std::size_t j) const {
  return (j + lower_ - i) * size() + i;
}

complex OperatorMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw std::out_of_range("OperatorMatrix index");
  return in_band(i, j) ? data_[band_index(i, j)] : complex(0.0);
}

void OperatorMatrix::set(std::size_t i, std::size_t j, complex v) {
  if (i >= size() || j >= size()) throw std::out_of_range("OperatorMatrix index");
  if (!in_band(i, j)) throw std::out_of_range("OperatorMatrix::set outside band");
  data_[band_index(i, j)] = v;
}

ComplexVector OperatorMatrix::apply(std::span<const complex> v) const {
  const std::size_t n = size();
  if (v.size() != n) throw std::invalid_argument("apply: vector length does not match grid");
  ComplexVector out(n, complex(0.0));
  for (std::size_t d = 0; d <= lower_ + upper_; ++d) {
    const long off = static_cast<long>(d) - static_cast<long>(lower_);
    const std::size_t i0 = off < 0 ? static_cast<std::size_t>(-off) : 0;
    const std::size_t i1 = off > 0 ? n - static_cast<std::size_t>(off) : n;
    const complex* row = data_.data() + d * n;
    for (std::size_t i = i0; i < i1; ++i) out[i] += row[i] * v[i + off];
  }
  return out;
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_grid(a, b, "add");
  OperatorMatrix out(a.grid_, std::max(a.lower_, b.lower_), std::max(a.upper_, b.upper_),
                     join(a.label_, " + ", b.label_));
  const std::size_t n = a.size();
  for (const auto* src : {&a, &b}) {
    for (std::size_t d = 0; d <= src->lower_ + src->upper_; ++d) {
      const std::size_t dd = d + out.lower_ - src->lower_;
      for (std::size_t i = 0; i < n; ++i) out.data_[dd * n + i] += src->data_[d * n + i];
    }
  }
  return out;
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix out = a + (-1.0 * b);
  out.label_ = join(a.label_, " - ", b.label_);
  return out;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_grid(a, b, "multiply");
  const std::size_t n = a.size();
  OperatorMatrix out(a.grid_, a.lower_ + b.lower_, a.upper_ + b.upper_, join(a.label_, "*", b.label_));
  for (std::size_t da = 0; da <= a.lower_ + a.upper_; ++da) {
    const long oa = static_cast<long>(da) - static_cast<long>(a.lower_);
    for (std::size_t db = 0; db <= b.lower_ + b.upper_; ++db) {
      const long ob = static_cast<long>(db) - static_cast<long>(b.lower_);
      const long oc = oa + ob;
      if (oc < -static_cast<long>(out.lower_) || oc > static_cast<long>(out.upper_)) continue;
      const std::size_t dc = static_cast<std::size_t>(oc + static_cast<long>(out.lower_));
      // C(i, i+oa+ob) += A(i, i+oa) B(i+oa, i+oa+ob)
      for (std::size_t i = 0; i < n; ++i) {
        const long k = static_cast<long>(i) + oa;
        const long j = k + ob;
        if (k < 0 || k >= static_cast<long>(n) || j < 0 || j >= static_cast<long>(n)) continue;
        out.data_[dc * n + i] += a.data_[da * n + i] * b.data_[db * n + static_cast<std::size_t>(k)];
      }
    }
  }
  return out.trimmed();
}

OperatorMatrix operator*(complex s, const OperatorMatrix& a) {
  OperatorMatrix out(a);
  for (auto& v : out.data_) v *= s;
  return out;
}

OperatorMatrix OperatorMatrix::shifted(complex s) const {
  OperatorMatrix out(*this);
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) out.data_[lower_ * n + i] += s;
  return out;
}

double OperatorMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool OperatorMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

double OperatorMatrix::hermiticity_defect() const {
  const double scale = max_abs();
  if (scale == 0.0) return 0.0;
  const std::size_t band = std::max(lower_, upper_);
  double worst = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const std::size_t j0 = i >= band ? i - band : 0;
    const std::size_t j1 = std::min(size() - 1, i + band);
    for (std::size_t j = j0; j <= j1; ++j) {
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
  }
  return worst / scale;
}

OperatorMatrix OperatorMatrix::trimmed() const {
  const std::size_t n = size();
  auto zero_diag = [&](std::size_t d) {
    for (std::size_t i = 0; i < n; ++i)
      if (data_[d * n + i] != complex(0.0)) return false;
    return true;
  };
  std::size_t drop_low = 0;
  while (drop_low < lower_ && zero_diag(drop_low)) ++drop_low;
  std::size_t drop_up = 0;
  while (drop_up < upper_ && zero_diag(lower_ + upper_ - drop_up)) ++drop_up;
  if (drop_low == 0 && drop_up == 0) return *this;
  OperatorMatrix out(grid_, lower_ - drop_low, upper_ - drop_up, label_);
  for (std::size_t d = 0; d <= out.lower_ + out.upper_; ++d) {
    std::copy_n(data_.begin() + static_cast<long>((d + drop_low) * n), n, out.data_.begin() + static_cast<long>(d * n));
  }
  return out;
}

std::vector<complex> OperatorMatrix::dense() const {
  const std::size_t n = size();
  std::vector<complex> out(n * n, complex(0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (in_band(i, j)) out[i * n + j] = data_[band_index(i, j)];
  return out;
}

bool operator==(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (!(a.grid_ == b.grid_)) return false;
  const std::size_t band = std::max({a.lower_, a.upper_, b.lower_, b.upper_});
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j0 = i >= band ? i - band : 0;
    const std::size_t j1 = std::min(n - 1, i + band);
    for (std::size_t j = j0; j <= j1; ++j)
      if (a(i, j) != b(i, j)) return false;
  }
  return true;
}

OperatorMatrix d2_matrix(const Grid& g) {
  if (g.size() < 5) throw std::invalid_argument("d2_matrix: grid needs at least 5 points");
  const double inv = 1.0 / (g.spacing() * g.spacing());
  OperatorMatrix m(g, 1, 1, "D2");
  for (std::size_t i = 0; i < g.size(); ++i) {
    m.set(i, i, -2.0 * inv);
    if (i > 0) m.set(i, i - 1, inv);
    if (i + 1 < g.size()) m.set(i, i + 1, inv);
  }
  return m;
}

OperatorMatrix d1_matrix(const Grid& g) {
  if (g.size() < 5) throw std::invalid_argument("d1_matrix: grid needs at least 5 points");
  const double c = 0.5 / g.spacing();
  OperatorMatrix m(g, 1, 1, "D");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i > 0) m.set(i, i - 1, -c);
    if (i + 1 < g.size()) m.set(i, i + 1, c);
  }
  return m;
}

OperatorMatrix conjugate_by_diagonal(const OperatorMatrix& m, std::span<const double> d) {
  const std::size_t n = m.size();
  if (d.size() != n) throw std::invalid_argument("conjugate_by_diagonal: length mismatch");
  for (std::size_t i = 0; i < n; ++i)
    if (!(d[i] > 0.0) || !std::isfinite(d[i]))
      throw std::domain_error("conjugate_by_diagonal: entry " + std::to_string(i) + " is not strictly positive");
  OperatorMatrix out(m.grid(), m.lower(), m.upper(), m.label());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j0 = i >= m.lower() ? i - m.lower() : 0;
    const std::size_t j1 = std::min(n - 1, i + m.upper());
    for (std::size_t j = j0; j <= j1; ++j) {
      const complex v = m(i, j);
      if (v != complex(0.0)) out.set(i, j, v * (d[i] / d[j]));
    }
  }
  return out;
}

OperatorMatrix dagger(const OperatorMatrix& a) {
  const std::size_t n = a.size();
  OperatorMatrix out(a.grid(), a.upper(), a.lower(), a.label().empty() ? "" : a.label() + "'");
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j0 = i >= a.lower() ? i - a.lower() : 0;
    const std::size_t j1 = std::min(n - 1, i + a.upper());
    for (std::size_t j = j0; j <= j1; ++j) out.set(j, i, std::conj(a(i, j)));
  }
  return out;
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_grid(a, b, "commutator");
  OperatorMatrix out = a * b - b * a;
  if (!a.label().empty() && !b.label().empty()) return out.with_label("[" + a.label() + ", " + b.label() + "]");
  return out;
}

OperatorMatrix power(const OperatorMatrix& a, unsigned k) {
  OperatorMatrix out = OperatorMatrix::identity(a.grid());
  for (unsigned i = 0; i < k; ++i) out = out * a;
  return out;
}

}  // namespace swanson
