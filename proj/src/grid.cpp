#include "swanson/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swanson {

Grid::Grid(double half_width, std::size_t n_points)
    : half_width_(half_width), n_points_(n_points), spacing_(0.0) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw std::invalid_argument("grid half-width must be positive and finite");
  if (n_points < 3 || n_points % 2 == 0)
    throw std::invalid_argument("grid point count must be odd and at least 3, got " +
                                std::to_string(n_points));
  spacing_ = 2.0 * half_width / static_cast<double>(n_points - 1);
}

RealVector Grid::points() const {
  RealVector out(n_points_);
  for (std::size_t i = 0; i < n_points_; ++i) out[i] = x(i);
  return out;
}

bool Grid::is_interior(std::size_t i) const {
  return std::abs(x(i)) <= half_width_ - 10.0 * spacing_ + 1e-12 * half_width_;
}

complex weighted_inner(const WaveSample& f, const WaveSample& g, std::span<const double> w) {
  if (!(f.grid == g.grid)) throw std::invalid_argument("weighted_inner: grid mismatch");
  const std::size_t n = f.grid.size();
  if (f.values.size() != n || g.values.size() != n)
    throw std::invalid_argument("weighted_inner: sample length does not match grid");
  if (!w.empty() && w.size() != n) throw std::invalid_argument("weighted_inner: weight length mismatch");
  complex sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double end = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    const double wi = w.empty() ? 1.0 : w[i];
    sum += end * wi * std::conj(f.values[i]) * g.values[i];
  }
  return sum * f.grid.spacing();
}

void fix_phase(ComplexVector& v) {
  std::size_t best = 0;
  double mag = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > mag + 1e-12 * mag) {
      mag = a;
      best = i;
    }
  }
  if (mag <= 0.0) return;
  const complex phase = std::conj(v[best]) / mag;
  for (auto& z : v) z *= phase;
  v[best] = complex(mag, 0.0);
}

double norm2(std::span<const complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace swanson
