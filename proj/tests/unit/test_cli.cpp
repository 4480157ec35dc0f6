#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "blochkit/cli.hpp"

using namespace blochkit;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

json result(const json& j, const std::string& name) {
  for (const auto& r : j["results"])
    if (r["name"] == name) return r;
  return {};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("qf report") {
  auto r = run({"qf", "--domain", "disk", "--symbol", "z1^2", "--point", "0.5"});
  REQUIRE(r.code == kExitOk);
  auto j = json::parse(r.out);
  for (const char* k : {"version", "command", "domain", "symbol", "seed", "samples", "results", "verdicts", "elapsed_ms"})
    CHECK(j.contains(k));
  CHECK(j["command"] == "qf");
  CHECK(j["elapsed_ms"] == 0);
  auto q = result(j, "Q_f");
  REQUIRE_FALSE(q.is_null());
  CHECK(q["value"].get<double>() == doctest::Approx(0.75));  // (1 - 0.25) * |2 * 0.5|
  CHECK(q["mode"] == "exact");
  CHECK_FALSE(q["paper_ref"].get<std::string>().empty());
}

TEST_CASE("constants") {
  auto r = run({"constants", "--domain", "product(ball:2,cartan4:6)"});
  REQUIRE(r.code == kExitOk);
  auto j = json::parse(r.out);
  CHECK(j["verdicts"]["class_D"]["product(ball:2,cartan4:6)"] == true);
  CHECK(run({"constants"}).code == kExitOk);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"qf", "--domain", "torus:2", "--symbol", "z1", "--point", "0,0"}).code == kExitUsage);
  auto bad = run({"qf", "--domain", "disk", "--symbol", "z1 +", "--point", "0.5"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("position") != std::string::npos);
  CHECK(run({"qf", "--domain", "disk", "--symbol", "z1", "--point", "1.5"}).code == kExitNumerical);
  CHECK(run({"qf", "--domain", "cartan2:2", "--symbol", "z1", "--point", "0,0,0"}).code == kExitNumerical);
  CHECK(run({"qf", "--domain", "disk", "--symbol", "z1", "--point", "0.5", "--format", "xml"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("verify exit code reflects the checks") {
  auto r = run({"verify", "--suite", "constants"});
  CHECK(r.code == kExitOk);
  auto j = json::parse(r.out);
  CHECK(j["verdicts"]["pass"] == true);
  CHECK(run({"verify", "--suite", "nonsense"}).code == kExitUsage);
}

TEST_CASE("reports are deterministic and seeded") {
  std::vector<std::string> a{"beta", "--domain", "ball:2", "--symbol", "z1*z2", "--samples", "2000", "--seed", "7"};
  CHECK(run(a).out == run(a).out);
  auto b = a;
  b.back() = "8";
  CHECK(run(a).out != run(b).out);

  ::setenv("BLOCHKIT_SEED", "7", 1);
  std::vector<std::string> env{"beta", "--domain", "ball:2", "--symbol", "z1*z2", "--samples", "2000"};
  CHECK(run(env).out == run(a).out);
  ::unsetenv("BLOCHKIT_SEED");
}

TEST_CASE("formats") {
  auto csv = run({"qf", "--domain", "disk", "--symbol", "z1", "--point", "0.5", "--format", "csv"});
  REQUIRE(csv.code == kExitOk);
  CHECK(csv.out.rfind("name,value,lower,upper,mode,paper_ref", 0) == 0);
  auto pretty = run({"qf", "--domain", "disk", "--symbol", "z1", "--point", "0.5", "--format", "pretty"});
  CHECK(pretty.out.find("Q_f") != std::string::npos);
  auto timed = run({"qf", "--domain", "disk", "--symbol", "z1", "--point", "0.5", "--timing"});
  CHECK(json::parse(timed.out)["elapsed_ms"].get<long>() >= 0);
}

TEST_CASE("config file and --out") {
  auto dir = std::filesystem::temp_directory_path() / "blochkit_cli_test";
  std::filesystem::create_directories(dir);
  auto ini = dir / "run.ini";
  auto out = dir / "report.json";
  std::ofstream(ini) << "domain = ball:2\nsymbol = z1\npoint = \"0.3,0\"\n";
  auto r = run({"qf", "--config", ini.string(), "--out", out.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream f(out);
  auto j = json::parse(f);
  CHECK(j["domain"] == "ball:2");
  CHECK(result(j, "Q_f")["value"].get<double>() == doctest::Approx(1 - 0.09));
  std::filesystem::remove_all(dir);
}

TEST_CASE("probe is exploratory") {
  auto r = run({"probe", "--question", "norm-sharpness", "--domain", "disk", "--symbol", "z1", "--samples", "2000"});
  REQUIRE(r.code == kExitOk);
  auto j = json::parse(r.out);
  CHECK(j["verdicts"]["verdict"] == "exploratory");
  auto rows = j["verdicts"]["table"]["rows"];
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][3].get<double>() >= 0.0);  // gap = upper - empirical lower

  auto rho = run({"probe", "--question", "omega-vs-rho", "--domain", "polydisk:2", "--points", "5", "--format", "csv"});
  REQUIRE(rho.code == kExitOk);
  CHECK(rho.out.rfind("gauge,omega_lower,rho_lower,rho_upper,gap", 0) == 0);
}

TEST_CASE("other commands run") {
  for (std::vector<std::string> a : std::vector<std::vector<std::string>>{
           {"domain", "--domain", "cartan1:2,2", "--point", "0.1,0,0,0.2"},
           {"omega", "--domain", "polydisk:2", "--point", "0.5,0.2"},
           {"rho", "--domain", "polydisk:2", "--point", "0.5,0.2"},
           {"sigma", "--domain", "disk", "--symbol", "z1", "--samples", "2000"},
           {"bounds", "--domain", "disk", "--symbol", "z1", "--samples", "2000"},
           {"opnorm", "--domain", "disk", "--symbol", "z1", "--samples", "2000"},
           {"spectrum", "--domain", "disk", "--symbol", "z1^2", "--samples", "2000", "--point", "1.2"},
           {"compactness", "--domain", "disk", "--symbol", "0"},
           {"isometry", "--domain", "ball:2", "--symbol", "i", "--samples", "500"}}) {
    auto r = run(a);
    INFO(a[0], " ", r.err);
    CHECK(r.code == kExitOk);
    CHECK(json::accept(r.out));
  }
}

}  // TEST_SUITE
