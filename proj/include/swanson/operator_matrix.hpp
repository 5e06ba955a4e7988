#pragma once

#include "swanson/grid.hpp"

#include <span>
#include <type_traits>
#include <string>
#include <vector>

namespace swanson {

/// Grid realization of a differential or multiplication operator.
///
/// Every operator in this library is a finite-difference stencil or a product
/// of them, so entries are stored by diagonal: offsets -lower..+upper. Entries
/// outside the band are exactly zero. Values are immutable once built; all
/// arithmetic returns new matrices.
class OperatorMatrix {
 public:
  OperatorMatrix(Grid grid, std::size_t lower, std::size_t upper, std::string label = {});

  static OperatorMatrix identity(const Grid& grid);
  static OperatorMatrix zero(const Grid& grid);
  static OperatorMatrix diagonal(const Grid& grid, std::span<const complex> values, std::string label = {});
  static OperatorMatrix diagonal(const Grid& grid, std::span<const double> values, std::string label = {});

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return grid_.size(); }
  std::size_t lower() const { return lower_; }
  std::size_t upper() const { return upper_; }
  const std::string& label() const { return label_; }
  OperatorMatrix with_label(std::string label) const;

  /// Entry (i, j); zero outside the band.
  complex operator()(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, complex v);

  ComplexVector apply(std::span<const complex> v) const;

  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(complex s, const OperatorMatrix& a);
  friend OperatorMatrix operator*(double s, const OperatorMatrix& a) { return complex(s) * a; }
  OperatorMatrix operator-() const { return -1.0 * *this; }
  /// A + s I
  OperatorMatrix shifted(complex s) const;

  double max_abs() const;
  bool all_finite() const;
  /// max |A_ij - conj(A_ji)| / max |A_ij|; 0 for the zero matrix.
  double hermiticity_defect() const;
  /// Drops outer diagonals that are identically zero.
  OperatorMatrix trimmed() const;

  /// Row-major dense copy; meant for small matrices in tests.
  std::vector<complex> dense() const;

  friend bool operator==(const OperatorMatrix& a, const OperatorMatrix& b);

 private:
  std::size_t band_index(std::size_t i, std::size_t j) const;
  bool in_band(std::size_t i, std::size_t j) const;

  Grid grid_;
  std::size_t lower_;
  std::size_t upper_;
  std::string label_;
  // diag_[(j - i + lower) * n + i]
  std::vector<complex> data_;
};

/// Second-order central d^2/dx^2 with zero Dirichlet values outside [-L, L].
OperatorMatrix d2_matrix(const Grid& g);
/// Second-order central d/dx, Dirichlet ends; exactly antisymmetric.
OperatorMatrix d1_matrix(const Grid& g);
/// Multiplication by f(x) for a real- or complex-valued f; rejects non-finite samples.
template <typename F>
OperatorMatrix diag_matrix(F&& f, const Grid& g, std::string label = {}) {
  using R = std::invoke_result_t<F&, double>;
  std::vector<std::conditional_t<std::is_convertible_v<R, double>, double, complex>> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g.x(i));
  return OperatorMatrix::diagonal(g, std::span<const typename decltype(v)::value_type>(v), std::move(label));
}

/// D M D^{-1} with D = diag(d), d strictly positive.
OperatorMatrix conjugate_by_diagonal(const OperatorMatrix& m, std::span<const double> d);

OperatorMatrix dagger(const OperatorMatrix& a);
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);
/// a^k, k >= 0.
OperatorMatrix power(const OperatorMatrix& a, unsigned k);

}  // namespace swanson
