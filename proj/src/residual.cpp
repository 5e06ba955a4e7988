#include "swanson/residual.hpp"

#include "swanson/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swanson {

namespace {
void normalize(ComplexVector& v) {
  const double n = norm2(v);
  if (n > 0.0)
    for (auto& x : v) x /= n;
}
}  // namespace

ProbeSet hermite_probes(const Grid& g, double delta, std::size_t count) {
  if (count == 0) throw std::invalid_argument("hermite_probes: need at least one probe");
  ProbeSet p{g, std::vector<ComplexVector>(count, ComplexVector(g.size()))};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto h = hermite_functions(static_cast<int>(count) - 1, delta * g.x(i));
    for (std::size_t j = 0; j < count; ++j) p.columns[j][i] = h[j];
  }
  for (auto& c : p.columns) normalize(c);
  return p;
}

ProbeSet reweighted(const ProbeSet& p, std::span<const double> factor) {
  if (factor.size() != p.grid.size()) throw std::invalid_argument("reweighted: length mismatch");
  ProbeSet out = p;
  for (auto& c : out.columns) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= factor[i];
    normalize(c);
  }
  return out;
}

double identity_residual(const std::vector<std::vector<ComplexVector>>& term_actions, const Grid& g) {
  if (term_actions.empty()) throw std::invalid_argument("identity_residual: no terms");
  const std::size_t probes = term_actions.front().size();
  double total_sq = 0.0;
  double scale = 0.0;
  for (const auto& actions : term_actions) {
    if (actions.size() != probes) throw std::invalid_argument("identity_residual: ragged term actions");
    double sq = 0.0;
    for (const auto& v : actions)
      for (std::size_t i = 0; i < v.size(); ++i)
        if (g.is_interior(i)) sq += std::norm(v[i]);
    scale += std::sqrt(sq);
  }
  for (std::size_t p = 0; p < probes; ++p) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!g.is_interior(i)) continue;
      complex s = 0.0;
      for (const auto& actions : term_actions) s += actions[p][i];
      total_sq += std::norm(s);
    }
  }
  if (scale == 0.0) return 0.0;
  return std::sqrt(total_sq) / scale;
}

double identity_residual(std::span<const OperatorMatrix> terms, const ProbeSet& probes) {
  std::vector<std::vector<ComplexVector>> actions;
  actions.reserve(terms.size());
  for (const auto& t : terms) {
    if (!(t.grid() == probes.grid)) throw std::invalid_argument("identity_residual: grid mismatch");
    std::vector<ComplexVector> a;
    a.reserve(probes.columns.size());
    for (const auto& c : probes.columns) a.push_back(t.apply(c));
    actions.push_back(std::move(a));
  }
  return identity_residual(actions, probes.grid);
}

bool ResidualReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass; });
}

const IdentityCheck& ResidualReport::at(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no check named " + name);
}

void ResidualReport::add(std::string name, double residual, double threshold) {
  checks.push_back({std::move(name), residual, threshold, std::isfinite(residual) && residual <= threshold, false});
}

double ResidualReport::measured(const std::string& name) const {
  for (const auto& m : measurements)
    if (m.name == name) return m.value;
  throw std::out_of_range("no measurement named " + name);
}

void ResidualReport::add_floor(std::string name, double value, double floor) {
  checks.push_back({std::move(name), value, floor, std::isfinite(value) && value >= floor, true});
}

void ResidualReport::measure(std::string name, double value) { measurements.push_back({std::move(name), value}); }

void ResidualReport::merge(const ResidualReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  measurements.insert(measurements.end(), other.measurements.begin(), other.measurements.end());
}

}  // namespace swanson
