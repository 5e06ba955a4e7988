#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace swanson {

using complex = std::complex<double>;
using ComplexVector = std::vector<complex>;
using RealVector = std::vector<double>;

/// Uniform grid on [-L, L] with an odd number of points, so x = 0 is a node
/// and x_i = -x_{n-1-i} holds exactly.
class Grid {
 public:
  Grid(double half_width, std::size_t n_points);

  double half_width() const { return half_width_; }
  std::size_t size() const { return n_points_; }
  double spacing() const { return spacing_; }
  std::size_t center() const { return (n_points_ - 1) / 2; }

  double x(std::size_t i) const {
    return (static_cast<double>(i) - static_cast<double>(center())) * spacing_;
  }
  RealVector points() const;

  /// Points with |x| <= L - 10 h; identities are judged there, away from the
  /// Dirichlet boundary rows.
  bool is_interior(std::size_t i) const;

  /// Same node count with doubled resolution: n -> 2n - 1.
  Grid refined() const { return Grid(half_width_, 2 * n_points_ - 1); }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n_points_ == b.n_points_ && a.half_width_ == b.half_width_;
  }

 private:
  double half_width_;
  std::size_t n_points_;
  double spacing_;
};

enum class NormConvention {
  /// Unit norm under the weighted trapezoid rule, largest-magnitude entry real positive.
  WeightedUnitNorm,
  Unnormalized,
};

/// Complex samples of a function on a grid.
struct WaveSample {
  Grid grid;
  ComplexVector values;
  NormConvention norm = NormConvention::Unnormalized;
};

/// Trapezoid quadrature of conj(f) w g. An empty weight means w = 1.
complex weighted_inner(const WaveSample& f, const WaveSample& g, std::span<const double> w = {});

/// Rotates the phase so the largest-magnitude entry is real and positive.
void fix_phase(ComplexVector& v);

double norm2(std::span<const complex> v);

}  // namespace swanson
