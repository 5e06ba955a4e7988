#include "swanson/cli.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>

namespace swanson::cli {

namespace {

using ordered = nlohmann::ordered_json;

// Rounded to 12 significant digits; the JSON writer then prints the shortest round-trip text.
ordered number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x));
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_json(std::ostream& out, const RunReport& r) {
  ordered j;
  j["command"] = r.command;
  j["pass"] = r.pass();
  ordered env = ordered::object();
  for (const auto& [k, v] : r.env) env[k] = v;
  j["env"] = env;
  ordered checks = ordered::array();
  for (const auto& c : r.report.checks)
    checks.push_back({{"name", c.name},
                      {"residual", number(c.residual)},
                      {"threshold", number(c.threshold)},
                      {"pass", c.pass},
                      {"bound", c.floor ? "min" : "max"}});
  j["checks"] = checks;
  ordered meas = ordered::array();
  for (const auto& m : r.report.measurements) meas.push_back({{"name", m.name}, {"value", number(m.value)}});
  j["measurements"] = meas;
  ordered spectra = ordered::array();
  for (const auto& s : r.spectra) {
    ordered rows = ordered::array();
    for (const auto& row : s.rows)
      rows.push_back({{"n", row.n},
                      {"E_numeric", number(row.numeric)},
                      {"E_exact", number(row.exact)},
                      {"abs_err", number(row.abs_err)},
                      {"rel_err", number(row.rel_err)}});
    spectra.push_back({{"label", s.label}, {"rows", rows}});
  }
  j["spectra"] = spectra;
  ordered clusters = ordered::array();
  for (const auto& c : r.clusters) {
    ordered members = ordered::array();
    for (const auto& [n, k] : c.members) members.push_back({n, k});
    clusters.push_back({{"energy", number(c.energy)}, {"members", members}});
  }
  j["clusters"] = clusters;
  out << j.dump(2) << '\n';
}

void write_csv(std::ostream& out, const RunReport& r) {
  if (!r.spectra.empty()) {
    out << "n,E_numeric,E_exact,abs_err,rel_err\n";
    for (const auto& s : r.spectra)
      for (const auto& row : s.rows)
        out << row.n << ',' << format_number(row.numeric) << ',' << format_number(row.exact) << ','
            << format_number(row.abs_err) << ',' << format_number(row.rel_err) << '\n';
    return;
  }
  out << "name,residual,threshold,pass\n";
  for (const auto& c : r.report.checks)
    out << c.name << ',' << format_number(c.residual) << ',' << (c.floor ? ">=" : "") << format_number(c.threshold)
        << ',' << (c.pass ? "true" : "false") << '\n';
  for (const auto& m : r.report.measurements) out << m.name << ',' << format_number(m.value) << ",,info\n";
  if (!r.clusters.empty()) {
    out << "\ncluster,energy,n,k\n";
    for (std::size_t i = 0; i < r.clusters.size(); ++i)
      for (const auto& [n, k] : r.clusters[i].members)
        out << i << ',' << format_number(r.clusters[i].energy) << ',' << n << ',' << k << '\n';
  }
}

void write_report(std::ostream& out, const RunReport& r, Format f) {
  if (f == Format::Json)
    write_json(out, r);
  else
    write_csv(out, r);
}

}  // namespace swanson::cli
