#include "swanson/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swanson {

std::vector<double> hermite_functions(int nmax, double z) {
  if (nmax < 0) throw std::invalid_argument("hermite_functions: negative order");
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  out[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * z * z);
  if (nmax >= 1) out[1] = std::sqrt(2.0) * z * out[0];
  for (int n = 1; n < nmax; ++n) {
    out[n + 1] = std::sqrt(2.0 / (n + 1)) * z * out[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * out[n - 1];
  }
  return out;
}

}  // namespace swanson
