#pragma once

#include <vector>

namespace swanson {

/// Normalized Hermite functions pi^{-1/4} (2^n n!)^{-1/2} H_n(z) e^{-z^2/2}
/// for n = 0..nmax, from the stable three-term recurrence.
std::vector<double> hermite_functions(int nmax, double z);

inline double hermite_function(int n, double z) { return hermite_functions(n, z).back(); }

}  // namespace swanson
