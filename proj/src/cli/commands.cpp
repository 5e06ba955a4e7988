#include "swanson/cli.hpp"
#include "swanson/oplang.hpp"
#include "swanson/susy.hpp"
#include "swanson/twodim.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace swanson::cli {

namespace {

const std::vector<std::string> kSuites = {"intertwine", "ladder", "pseudo", "susy"};

// m = 0 (or none) selects the unextended chain; odd or negative m is rejected.
std::optional<ExtensionSpec> extension(const std::optional<int>& m) {
  if (!m || *m == 0) return std::nullopt;
  if (*m < 0 || *m % 2 != 0)
    throw ConfigError("extension index m must be even and >= 2 (or 0 for none), got " + std::to_string(*m));
  return ExtensionSpec::pseudo_hermite(*m);
}

std::optional<int> extension_index(const std::optional<int>& m) {
  return extension(m) ? m : std::nullopt;
}

void echo_params(RunReport& r, const std::string& suffix, const ModelParams& p, const std::optional<int>& m) {
  r.env.emplace_back("omega" + suffix, format_number(p.omega));
  r.env.emplace_back("alpha" + suffix, format_number(p.alpha));
  r.env.emplace_back("beta" + suffix, format_number(p.beta));
  r.env.emplace_back("m" + suffix, m ? std::to_string(*m) : "none");
}

RunReport start(const std::string& command, const RunConfig& c) {
  RunReport r;
  r.command = command;
  r.env.emplace_back("version", kVersion);
  r.env.emplace_back("command", command);
  echo_params(r, "", c.params, c.m);
  r.env.emplace_back("grid-l", format_number(c.grid_l));
  r.env.emplace_back("grid-n", std::to_string(c.grid_n));
  r.env.emplace_back("tol", format_number(c.tol));
  return r;
}

OperatorSet operator_set(const RunConfig& c) {
  validate(c.params);
  const auto ext = extension(c.m);
  return build_operator_set(c.params, ext ? *ext : ExtensionSpec::ground_state(), c.grid_l, c.grid_n);
}

}  // namespace

RunReport cmd_spectrum(const RunConfig& c) {
  validate(c.params);
  const auto ext = extension(c.m);
  RunReport r = start("spectrum", c);
  r.env.emplace_back("levels", std::to_string(c.levels));
  const Grid g = model_grid(c.params, c.grid_l, c.grid_n);
  const std::size_t k = std::min(c.levels, g.size());
  Spectrum table;
  table.label = ext ? "extended h-, " + ext->describe() : "h";
  const SpectralReport s = symmetric_eigensolve(
      ext ? [&] {
        const OperatorSet os = build_operator_set(c.params, *ext, g);
        return os.h_minus.shifted(os.derived.E);
      }()
          : hermitian_hamiltonian(c.params, g),
      k);
  const auto m = extension_index(c.m);
  for (std::size_t n = 0; n < s.eigenvalues.size(); ++n) {
    SpectrumRow row;
    row.n = n;
    row.numeric = s.eigenvalues[n];
    row.exact = exact_factor_energy(c.params, m, n);
    row.abs_err = std::abs(row.numeric - row.exact);
    row.rel_err = row.abs_err / std::abs(row.exact);
    r.report.add("E[" + std::to_string(n) + "] relative error", row.rel_err, c.tol);
    table.rows.push_back(row);
  }
  r.spectra.push_back(std::move(table));
  return r;
}

RunReport cmd_verify(const RunConfig& c) {
  std::vector<std::string> suites;
  if (c.suite == "all")
    suites = kSuites;
  else if (std::find(kSuites.begin(), kSuites.end(), c.suite) != kSuites.end())
    suites = {c.suite};
  else
    throw ConfigError("suite must be one of susy, ladder, pseudo, intertwine, all; got '" + c.suite + "'");
  const OperatorSet os = operator_set(c);
  RunReport r = start("verify", c);
  r.env.emplace_back("suite", c.suite);
  r.env.emplace_back("extension", os.spec.describe());
  for (const auto& suite : suites) {
    ResidualReport part;
    if (suite == "susy") {
      part = verify_factorization(os, c.tol);
    } else if (suite == "intertwine") {
      part = verify_intertwining(os, c.tol);
    } else if (suite == "ladder") {
      LadderOptions opt;
      opt.tol = c.tol;
      part = verify_ladder_algebra(os, opt);
    } else {
      part = verify_pseudo_hermiticity(os, c.tol);
      part.merge(printed_form_offsets(os));
    }
    for (auto& ch : part.checks) ch.name = suite + ": " + ch.name;
    for (auto& m : part.measurements) m.name = suite + ": " + m.name;
    r.report.merge(part);
  }
  return r;
}

RunReport cmd_twodim(const RunConfig& c) {
  if (!c.n1 || !c.n2) throw ConfigError("twodim requires both --n1 and --n2");
  if (*c.n1 == 0 || *c.n2 == 0) throw ConfigError("ladder powers n1, n2 must be positive");
  validate(c.params);
  validate(c.params2);
  TwoDimModel model{c.params, c.params2, extension_index(c.m), extension_index(c.m2), *c.n1, *c.n2};
  RunReport r = start("twodim", c);
  echo_params(r, "2", c.params2, c.m2);
  r.env.emplace_back("n1", std::to_string(*c.n1));
  r.env.emplace_back("n2", std::to_string(*c.n2));
  r.env.emplace_back("states", std::to_string(c.states));
  r.env.emplace_back("expect-fail", c.expect_fail ? "true" : "false");
  const TwoDimSystem sys = build_2d(model, c.states, c.grid_l, c.grid_n);
  const SuperintegrabilityReport rep = verify_superintegrability(sys, c.states, c.tol, c.expect_fail);
  r.report = rep.checks;
  r.report.measure("constraint satisfied", rep.constraint.satisfied ? 1.0 : 0.0);
  r.report.measure("clusters", static_cast<double>(rep.clusters.size()));
  for (const auto& cl : rep.clusters) {
    ClusterRow row;
    row.energy = cl.energy;
    for (const auto& s : cl.members) row.members.emplace_back(s.n, s.k);
    r.clusters.push_back(std::move(row));
  }
  return r;
}

RunReport cmd_check(const RunConfig& c) {
  // syntax errors surface before the operator set is built
  oplang::tokenize(c.expression);
  const OperatorSet os = operator_set(c);
  const oplang::CheckResult res = oplang::check_zero(c.expression, os, c.tol);
  RunReport r = start("check", c);
  r.env.emplace_back("expression", c.expression);
  r.env.emplace_back("canonical", res.canonical);
  r.env.emplace_back("frame", res.frame);
  r.env.emplace_back("extension", os.spec.describe());
  r.report.add(res.label.empty() ? res.canonical : res.label, res.residual, res.threshold);
  r.report.measure("terms", static_cast<double>(res.terms));
  return r;
}

void cmd_potential(const RunConfig& c, std::ostream& out) {
  const auto ext = extension(c.m);
  const Grid z(c.grid_l, c.grid_n);
  std::vector<double> v(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    v[i] = ext ? partner_potential_tilde(*ext, z.x(i)) : z.x(i) * z.x(i);
  if (c.format == Format::Json) {
    nlohmann::ordered_json j;
    j["m"] = ext ? ext->m() : 0;
    j["note"] = ext ? "partner potential V(-)(z)" : "m = 0: no extension, plain oscillator V(z) = z^2";
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < z.size(); ++i)
      rows.push_back({std::stod(format_number(z.x(i))), std::stod(format_number(v[i]))});
    j["samples"] = rows;
    out << j.dump(2) << '\n';
    return;
  }
  if (!ext) out << "# m = 0: no extension, plain oscillator V(z) = z^2\n";
  out << "z,V\n";
  for (std::size_t i = 0; i < z.size(); ++i) out << format_number(z.x(i)) << ',' << format_number(v[i]) << '\n';
}

namespace {

void add_common(CLI::App* a, ConfigLayer& f, std::string& config, bool& expect_fail) {
  a->add_option("--omega", f.omega, "oscillator frequency");
  a->add_option("--alpha", f.alpha, "coefficient of a^2");
  a->add_option("--beta", f.beta, "coefficient of a'^2");
  a->add_option("--omega2", f.omega2, "second dimension: omega");
  a->add_option("--alpha2", f.alpha2, "second dimension: alpha");
  a->add_option("--beta2", f.beta2, "second dimension: beta");
  a->add_option("--m", f.m, "extension index (even >= 2, 0 for none)");
  a->add_option("--m2", f.m2, "second dimension: extension index");
  a->add_option("--n1", f.n1, "ladder power of dimension 1");
  a->add_option("--n2", f.n2, "ladder power of dimension 2");
  a->add_option("--grid-l", f.grid_l, "half-width of the z-window");
  a->add_option("--grid-n", f.grid_n, "number of grid points (odd)");
  a->add_option("--tol", f.tol, "residual tolerance");
  a->add_option("--format", f.format, "csv or json");
  a->add_option("--config", config, "flat JSON config file");
  a->add_flag("--expect-fail", expect_fail, "treat the run as a negative control");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Swanson oscillator, rational extension and 2D superintegrable system"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  ConfigLayer flags;
  std::string config_path;
  bool expect_fail = false;
  std::string expression;

  auto* spectrum = app.add_subcommand("spectrum", "low eigenvalues against the exact levels");
  add_common(spectrum, flags, config_path, expect_fail);
  spectrum->add_option("--levels", flags.levels, "number of levels");

  auto* verify = app.add_subcommand("verify", "operator identity suites");
  add_common(verify, flags, config_path, expect_fail);
  verify->add_option("--suite", flags.suite, "susy, ladder, pseudo, intertwine or all");

  auto* twodim = app.add_subcommand("twodim", "2D superintegrability");
  add_common(twodim, flags, config_path, expect_fail);
  twodim->add_option("--states", flags.states, "number of product states");

  auto* check = app.add_subcommand("check", "judge an operator expression equal to zero");
  add_common(check, flags, config_path, expect_fail);
  check->add_option("expression", expression, "operator expression")->required();

  auto* potential = app.add_subcommand("potential", "partner potential samples");
  add_common(potential, flags, config_path, expect_fail);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (expect_fail) flags.expect_fail = true;
    const ConfigLayer file = config_path.empty() ? ConfigLayer{} : load_config_file(config_path);
    RunConfig c = resolve(file, flags);
    c.expression = expression;
    validate(c);

    if (potential->parsed()) {
      cmd_potential(c, out);
      return 0;
    }
    RunReport r;
    if (spectrum->parsed())
      r = cmd_spectrum(c);
    else if (verify->parsed())
      r = cmd_verify(c);
    else if (twodim->parsed())
      r = cmd_twodim(c);
    else
      r = cmd_check(c);
    write_report(out, r, c.format);
    return r.pass() ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace swanson::cli
