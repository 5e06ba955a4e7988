#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swanson/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace swanson::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "swanson");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string column(const std::string& line, std::size_t index) {
  std::istringstream in(line);
  std::string cell;
  for (std::size_t i = 0; i <= index; ++i) std::getline(in, cell, ',');
  return cell;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1 + 0.2) == "0.3");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(-2.5e-7) == "-2.5e-07");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("spectrum of the plain oscillator") {
  const Outcome o = run_cli({"spectrum", "--omega", "1", "--alpha", "0", "--beta", "0", "--levels", "4"});
  CHECK(o.code == 0);
  const auto l = lines(o.out);
  REQUIRE(l.size() == 5);
  CHECK(l[0] == "n,E_numeric,E_exact,abs_err,rel_err");
  for (int n = 0; n < 4; ++n) CHECK(std::stod(column(l[n + 1], 2)) == doctest::Approx(n + 1.0));
}

TEST_CASE("extended spectrum starts at the extra level") {
  const Outcome o = run_cli({"spectrum", "--omega", "2", "--alpha", "0.5", "--beta", "0.25", "--m", "2", "--levels", "6"});
  CHECK(o.code == 0);
  const auto l = lines(o.out);
  REQUIRE(l.size() == 7);
  const double expected = 1.0 - 5.0 * std::sqrt(3.5) / 2.0;
  CHECK(std::stod(column(l[1], 1)) == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("invalid input exits with code 2") {
  const Outcome bad = run_cli({"spectrum", "--omega", "1", "--alpha", "1", "--beta", "1"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("omega - alpha - beta > 0") != std::string::npos);
  CHECK(run_cli({"spectrum", "--m", "3"}).code == 2);
  CHECK(run_cli({"spectrum", "--grid-n", "2000"}).code == 2);
  CHECK(run_cli({"spectrum", "--tol", "-1"}).code == 2);
  CHECK(run_cli({"spectrum", "--format", "xml"}).code == 2);
  CHECK(run_cli({"spectrum", "--omega", "abc"}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"verify", "--suite", "nope"}).code == 2);
  CHECK(run_cli({"twodim", "--n1", "1"}).code == 2);
  CHECK(run_cli({"potential", "--m", "3"}).code == 2);
  CHECK(run_cli({"spectrum", "--config", "/nonexistent.json"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("verify suites") {
  const Outcome all = run_cli({"verify", "--suite", "all"});
  CHECK(all.code == 0);
  CHECK(all.out.find(",false") == std::string::npos);
  CHECK(run_cli({"verify", "--suite", "ladder", "--tol", "1e-12"}).code == 1);
  const Outcome pseudo = run_cli({"verify", "--suite", "pseudo", "--alpha", "0.4", "--beta", "0.4"});
  CHECK(pseudo.code == 0);
  for (const auto& l : lines(pseudo.out))
    if (l.rfind("pseudo: eta", 0) == 0) CHECK(std::stod(column(l, 1)) <= 1e-12);
}

TEST_CASE("check front end") {
  CHECK(run_cli({"check", "[hplus, L] + twoOverJ*L"}).code == 0);
  CHECK(run_cli({"check", "[hplus, L] - twoOverJ*L"}).code == 1);
  CHECK(run_cli({"check", "hplus' - hplus"}).code == 0);
  const Outcome bad = run_cli({"check", "[hplus, L"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("unbalanced bracket at offset 9") != std::string::npos);
  CHECK(run_cli({"check", "A + nosuch"}).code == 2);
  CHECK(run_cli({"check", "2/J"}).code == 2);
}

TEST_CASE("potential samples") {
  const Outcome m2 = run_cli({"potential", "--m", "2"});
  CHECK(m2.code == 0);
  bool found = false;
  for (const auto& l : lines(m2.out))
    if (column(l, 0) == "0") {
      CHECK(std::stod(column(l, 1)) == doctest::Approx(-10.0));
      found = true;
    }
  CHECK(found);
  const Outcome m0 = run_cli({"potential", "--m", "0", "--grid-n", "101"});
  CHECK(m0.code == 0);
  const auto l = lines(m0.out);
  CHECK(l[0].rfind("#", 0) == 0);
  CHECK(l[1] == "z,V");
  CHECK(l[2] == "-10,100");
}

TEST_CASE("config precedence: flags over file over defaults") {
  const std::string path = "swanson_cli_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"omega": 1, "alpha": 0, "beta": 0, "levels": 3})";
  }
  const Outcome from_file = run_cli({"spectrum", "--config", path});
  CHECK(from_file.code == 0);
  CHECK(lines(from_file.out).size() == 4);
  CHECK(std::stod(column(lines(from_file.out)[1], 2)) == doctest::Approx(1.0));
  const Outcome overridden = run_cli({"spectrum", "--config", path, "--omega", "3"});
  CHECK(std::stod(column(lines(overridden.out)[1], 2)) == doctest::Approx(3.0));
  {
    std::ofstream f(path);
    f << R"({"omgea": 1})";
  }
  CHECK(run_cli({"spectrum", "--config", path}).code == 2);
  {
    std::ofstream f(path);
    f << R"({"levels": "many"})";
  }
  CHECK(run_cli({"spectrum", "--config", path}).code == 2);
  std::remove(path.c_str());

  const ConfigLayer none;
  const RunConfig c = resolve(none, none);
  CHECK(c.grid_l == 10.0);
  CHECK(c.grid_n == 2001);
  CHECK(c.tol == 1e-4);
}

TEST_CASE("output is deterministic") {
  const Outcome a = run_cli({"verify", "--format", "json"});
  const Outcome b = run_cli({"verify", "--format", "json"});
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("twodim controls") {
  const std::vector<std::string> base = {"twodim", "--omega", "2", "--alpha", "0", "--beta", "0", "--omega2", "1",
                                         "--alpha2", "0", "--beta2", "0", "--states", "30", "--tol", "1e-3"};
  auto with = [&](std::vector<std::string> extra) {
    auto a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return run_cli(a);
  };
  const Outcome neg = with({"--n1", "1", "--n2", "1", "--expect-fail"});
  CHECK(neg.code == 0);
  CHECK(with({"--n1", "1", "--n2", "1"}).code == 1);
  const Outcome pos = with({"--n1", "1", "--n2", "2"});
  CHECK(pos.out.find("cluster,energy,n,k") != std::string::npos);
}
