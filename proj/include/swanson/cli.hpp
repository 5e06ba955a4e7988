#pragma once

#include "swanson/model.hpp"
#include "swanson/residual.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace swanson::cli {

inline constexpr const char* kVersion = "1.0.0";

enum class Format { Csv, Json };

/// Bad flags, config files or parameters; maps to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  ModelParams params;
  ModelParams params2;
  std::optional<int> m;
  std::optional<int> m2;
  std::optional<unsigned> n1;
  std::optional<unsigned> n2;
  double grid_l = 10.0;
  std::size_t grid_n = 2001;
  double tol = 1e-4;
  Format format = Format::Csv;
  bool expect_fail = false;
  std::string suite = "all";
  std::size_t levels = 8;
  std::size_t states = 100;
  std::string expression;
};

/// Values given on the command line or in a config file; unset fields keep the layer below.
struct ConfigLayer {
  std::optional<double> omega, alpha, beta;
  std::optional<double> omega2, alpha2, beta2;
  std::optional<int> m, m2;
  std::optional<unsigned> n1, n2;
  std::optional<double> grid_l;
  std::optional<std::size_t> grid_n;
  std::optional<double> tol;
  std::optional<std::string> format;
  std::optional<bool> expect_fail;
  std::optional<std::string> suite;
  std::optional<std::size_t> levels;
  std::optional<std::size_t> states;
};

/// Reads a flat JSON object whose keys are the long flag names ("grid-n", "expect-fail", ...).
ConfigLayer load_config_file(const std::string& path);
ConfigLayer parse_config_json(const std::string& text);

/// defaults <- file <- flags. The second parameter set falls back to the first.
RunConfig resolve(const ConfigLayer& file, const ConfigLayer& flags);

/// Grid, tolerance and format gates; model invariants are checked by the commands.
void validate(const RunConfig& c);

struct SpectrumRow {
  std::size_t n = 0;
  double numeric = 0.0;
  double exact = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
};

struct Spectrum {
  std::string label;
  std::vector<SpectrumRow> rows;
};

struct ClusterRow {
  double energy = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> members;
};

struct RunReport {
  std::string command;
  ResidualReport report;
  std::vector<Spectrum> spectra;
  std::vector<ClusterRow> clusters;
  std::vector<std::pair<std::string, std::string>> env;
  bool pass() const { return report.pass(); }
};

/// Shortest text of x rounded to 12 significant digits; "nan", "inf", "-inf" otherwise.
std::string format_number(double x);

void write_json(std::ostream& out, const RunReport& r);
void write_csv(std::ostream& out, const RunReport& r);
void write_report(std::ostream& out, const RunReport& r, Format f);

RunReport cmd_spectrum(const RunConfig& c);
RunReport cmd_verify(const RunConfig& c);
RunReport cmd_twodim(const RunConfig& c);
RunReport cmd_check(const RunConfig& c);

/// Two-column CSV (or JSON) of the partner potential on the z-grid.
void cmd_potential(const RunConfig& c, std::ostream& out);

/// Full front end: 0 = all checks pass, 1 = a check failed, 2 = invalid input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace swanson::cli
