#include "swanson/cli.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace swanson::cli {

namespace {

using nlohmann::json;

template <typename T>
T read_as(const json& v, const std::string& key) {
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw ConfigError("config key '" + key + "' must be a boolean");
    return v.get<bool>();
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
    return v.get<std::string>();
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return v.get<T>();
  } else {
    if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
    if constexpr (std::is_unsigned_v<T>) {
      if (v.is_number_unsigned()) return v.get<T>();
      if (v.get<long long>() < 0) throw ConfigError("config key '" + key + "' must be non-negative");
    }
    return v.get<T>();
  }
}

template <typename T>
void take(std::optional<T>& dst, const std::optional<T>& src) {
  if (src) dst = src;
}

}  // namespace

ConfigLayer parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a flat JSON object");
  ConfigLayer l;
  for (const auto& [key, v] : j.items()) {
    if (key == "omega") l.omega = read_as<double>(v, key);
    else if (key == "alpha") l.alpha = read_as<double>(v, key);
    else if (key == "beta") l.beta = read_as<double>(v, key);
    else if (key == "omega2") l.omega2 = read_as<double>(v, key);
    else if (key == "alpha2") l.alpha2 = read_as<double>(v, key);
    else if (key == "beta2") l.beta2 = read_as<double>(v, key);
    else if (key == "m") l.m = read_as<int>(v, key);
    else if (key == "m2") l.m2 = read_as<int>(v, key);
    else if (key == "n1") l.n1 = read_as<unsigned>(v, key);
    else if (key == "n2") l.n2 = read_as<unsigned>(v, key);
    else if (key == "grid-l") l.grid_l = read_as<double>(v, key);
    else if (key == "grid-n") l.grid_n = read_as<std::size_t>(v, key);
    else if (key == "tol") l.tol = read_as<double>(v, key);
    else if (key == "format") l.format = read_as<std::string>(v, key);
    else if (key == "expect-fail") l.expect_fail = read_as<bool>(v, key);
    else if (key == "suite") l.suite = read_as<std::string>(v, key);
    else if (key == "levels") l.levels = read_as<std::size_t>(v, key);
    else if (key == "states") l.states = read_as<std::size_t>(v, key);
    else throw ConfigError("unknown config key '" + key + "'");
  }
  return l;
}

ConfigLayer load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return parse_config_json(s.str());
}

RunConfig resolve(const ConfigLayer& file, const ConfigLayer& flags) {
  ConfigLayer l = file;
  take(l.omega, flags.omega);
  take(l.alpha, flags.alpha);
  take(l.beta, flags.beta);
  take(l.omega2, flags.omega2);
  take(l.alpha2, flags.alpha2);
  take(l.beta2, flags.beta2);
  take(l.m, flags.m);
  take(l.m2, flags.m2);
  take(l.n1, flags.n1);
  take(l.n2, flags.n2);
  take(l.grid_l, flags.grid_l);
  take(l.grid_n, flags.grid_n);
  take(l.tol, flags.tol);
  take(l.format, flags.format);
  take(l.expect_fail, flags.expect_fail);
  take(l.suite, flags.suite);
  take(l.levels, flags.levels);
  take(l.states, flags.states);

  RunConfig c;
  c.params.omega = l.omega.value_or(c.params.omega);
  c.params.alpha = l.alpha.value_or(c.params.alpha);
  c.params.beta = l.beta.value_or(c.params.beta);
  c.params2.omega = l.omega2.value_or(c.params.omega);
  c.params2.alpha = l.alpha2.value_or(c.params.alpha);
  c.params2.beta = l.beta2.value_or(c.params.beta);
  c.m = l.m;
  c.m2 = l.m2;
  c.n1 = l.n1;
  c.n2 = l.n2;
  c.grid_l = l.grid_l.value_or(c.grid_l);
  c.grid_n = l.grid_n.value_or(c.grid_n);
  c.tol = l.tol.value_or(c.tol);
  if (l.format) {
    if (*l.format == "csv") c.format = Format::Csv;
    else if (*l.format == "json") c.format = Format::Json;
    else throw ConfigError("format must be csv or json, got '" + *l.format + "'");
  }
  c.expect_fail = l.expect_fail.value_or(false);
  c.suite = l.suite.value_or(c.suite);
  c.levels = l.levels.value_or(c.levels);
  c.states = l.states.value_or(c.states);
  return c;
}

void validate(const RunConfig& c) {
  if (!(c.tol > 0.0) || !std::isfinite(c.tol)) throw ConfigError("tolerance must be positive and finite");
  if (!(c.grid_l > 0.0) || !std::isfinite(c.grid_l)) throw ConfigError("grid-l must be positive and finite");
  if (c.grid_n < 101 || c.grid_n > 100001 || c.grid_n % 2 == 0)
    throw ConfigError("grid-n must be odd and within [101, 100001], got " + std::to_string(c.grid_n));
  if (c.levels == 0) throw ConfigError("levels must be positive");
  if (c.states == 0) throw ConfigError("states must be positive");
}

}  // namespace swanson::cli
