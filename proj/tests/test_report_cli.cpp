#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "conemod/errors.hpp"
#include "conemod/report.hpp"

using namespace conemod;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const char* cli = std::getenv("CONEMOD_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "CONEMOD_CLI must point at the built binary");
  std::string cmd = std::string(cli) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  while (size_t n = fread(buffer, 1, sizeof buffer, pipe)) result.output.append(buffer, n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/conemod_test_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("rate serialization forms") {
  CHECK(rate_to_json(Rate::from_rational(Rational(-1, 2))) == json("-1/2"));
  CHECK(rate_to_json(Rate::from_rational(Rational(3))) == json("3"));
  json surd = rate_to_json(Rate::from_double(0.5, "demo"));
  CHECK(surd["float"] == 0.5);
  CHECK(surd["label"] == "demo");
  CHECK(rate_from_json(json("-5/2")).exact == Rational(-5, 2));
  CHECK(rate_from_json(json(3)).exact == Rational(3));
  CHECK_FALSE(rate_from_json(surd).is_exact);
}

TEST_CASE("operator JSON schema round trip") {
  json doc = {
      {"order", 2},
      {"self_adjoint", false},
      {"modes",
       {{{"coefficients", {"0", "-4", "-1"}}, {"multiplicity", 1}},
        {{"coefficients", {"5", "-4", "-1"}}, {"multiplicity", 6}}}},
  };
  ConeOperatorSpec op = operator_from_json(doc);
  CHECK(op.order == 2);
  CHECK(op.modes.size() == 2);
  CHECK(op.modes[1].coefficients[0] == Rational(5));
  CHECK(op.laplacian_form());

  json echoed = operator_to_json(op);
  ConeOperatorSpec again = operator_from_json(echoed);
  CHECK(operator_to_json(again) == echoed);

  json bad = doc;
  bad["modes"][0]["coefficients"] = {"0", "-4", "0"};  // vanishing leading symbol
  CHECK_THROWS_AS(operator_from_json(bad), Error);
}

TEST_CASE("moduli config round trip is byte-stable") {
  json doc = {{"group", {{"type", "PU"}, {"n", 2}}},
              {"points",
               {{{"preset", "fubini-study"}, {"mu", "-1/2"}},
                {{"bundle", "abstract(r=2,c1=0,c2=2,stable)"}, {"stab_dim", 0}, {"mu", "-1/2"}}}}};
  ModuliConfig config = moduli_config_from_json(doc);
  std::string once = dump_report(moduli_config_to_json(config));
  ModuliConfig reparsed = moduli_config_from_json(json::parse(once));
  std::string twice = dump_report(moduli_config_to_json(reparsed));
  CHECK(once == twice);
}

TEST_CASE("cli: dim on the fubini-study preset") {
  auto r = run_cli("dim --preset fubini-study --points 1 --mu -0.5");
  CHECK(r.exit_code == 0);
  json report = json::parse(r.output);
  CHECK(report["results"]["virt_dim"] == 0);
  CHECK(report["schema_version"] == 1);
  // determinism: identical configs produce identical bytes
  auto r2 = run_cli("dim --preset fubini-study --points 1 --mu -0.5");
  CHECK(r.output == r2.output);
}

TEST_CASE("cli: rates on the scalar Laplacian over (-4, 0)") {
  auto r = run_cli("rates --preset scalar-laplacian-s5 --window -4 0");
  CHECK(r.exit_code == 0);
  json report = json::parse(r.output);
  CHECK(report["results"]["rates"].empty());
  CHECK(report["results"]["complete"] == true);
}

TEST_CASE("cli: cohomology of End(T)(-1)") {
  auto r = run_cli("cohomology --expr \"End(T)(-1)\"");
  CHECK(r.exit_code == 0);
  json report = json::parse(r.output);
  CHECK(report["results"]["h0"] == 0);
  CHECK(report["results"]["h1"] == 3);
  CHECK(report["results"]["h2"] == 0);
  CHECK(report["results"]["euler_characteristic"] == -3);
}

TEST_CASE("cli: config file input and --out") {
  std::string config = write_temp("dim.json", R"json({
    "group": {"type": "PU", "n": 2},
    "points": [{"bundle": "abstract(r=2,c1=0,c2=2,stable)", "stab_dim": 0, "mu": "-1/2"}]
  })json");
  std::string out = "/tmp/conemod_test_report.json";
  auto r = run_cli("dim --config " + config + " --assume-trivial-kernel --out " + out);
  CHECK(r.exit_code == 0);
  std::ifstream in(out);
  json report = json::parse(in);
  CHECK(report["results"]["virt_dim"] == -12);
  CHECK(report["results"]["obstruction"]["coker_dim"] == 12);
  CHECK(report["results"]["obstruction"]["ker_dim"] == 0);
}

TEST_CASE("cli: validation errors exit 1 with a diagnostic") {
  auto r = run_cli("rates --preset no-such-preset --window -1 0");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("unknown preset") != std::string::npos);

  auto collision = run_cli("dim --preset fubini-study --points 1 --mu -2");
  CHECK(collision.exit_code == 1);
  CHECK(collision.output.find("-2") != std::string::npos);

  auto missing = run_cli("dim");
  CHECK(missing.exit_code == 1);
}

TEST_CASE("cli: internal inconsistency exits 2") {
  // chi(O + abstract with fractional c2) is not an integer
  auto r = run_cli("cohomology --expr \"End(abstract(r=2,c1=1,c2=1/3,stable))\"");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("integer") != std::string::npos);
}

TEST_CASE("cli: malformed config file") {
  std::string path = write_temp("broken.json", "{ not json");
  auto r = run_cli("dim --config " + path);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("parse error") != std::string::npos);
}
