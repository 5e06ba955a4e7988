#pragma once

#include "swanson/operator_matrix.hpp"

#include <string>
#include <vector>

namespace swanson {

/// Smooth, decaying test functions on one grid, used to judge operator
/// identities. Differential identities cannot be judged entry-by-entry on
/// finite-difference matrices (D1*D1 and D2 differ by O(1/h^2) entries while
/// agreeing to O(h^2) on smooth functions), so they are judged by action.
struct ProbeSet {
  Grid grid;
  std::vector<ComplexVector> columns;
};

/// Default number of probes per identity.
inline constexpr std::size_t kDefaultProbeCount = 6;

/// Hermite functions of z = delta * x, orders 0..count-1, unit 2-norm.
ProbeSet hermite_probes(const Grid& g, double delta, std::size_t count = kDefaultProbeCount);

/// Multiplies every column by `factor` and renormalizes; moves probes into a
/// similarity-transformed frame (e.g. factor = rho^{-1}).
ProbeSet reweighted(const ProbeSet& p, std::span<const double> factor);

/// Relative interior residual of the identity sum_k T_k = 0:
///   || sum_k T_k V ||_F / sum_k || T_k V ||_F
/// with V the probe columns and both norms restricted to interior rows.
/// 0 means exact agreement, 1 means the terms share no cancellation.
double identity_residual(std::span<const OperatorMatrix> terms, const ProbeSet& probes);

/// Same measure when the term actions are already computed (one vector per probe per term).
double identity_residual(const std::vector<std::vector<ComplexVector>>& term_actions, const Grid& g);

struct IdentityCheck {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  /// The check demands residual >= threshold (negative controls).
  bool floor = false;
};

/// Informational quantity carried alongside the verdict-bearing checks.
struct Measurement {
  std::string name;
  double value = 0.0;
};

struct ResidualReport {
  std::vector<IdentityCheck> checks;
  std::vector<Measurement> measurements;
  bool pass() const;
  const IdentityCheck& at(const std::string& name) const;
  double measured(const std::string& name) const;
  void add(std::string name, double residual, double threshold);
  /// Negative control: passes when value >= floor.
  void add_floor(std::string name, double value, double floor);
  void measure(std::string name, double value);
  /// Appends every check and measurement of `other`.
  void merge(const ResidualReport& other);
};

}  // namespace swanson
