#include "momentflow/cli.hpp"
#include "momentflow/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using momentflow::io::Json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = momentflow::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("momentflow_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("label of E12") {
  const auto r = run({"label", "--family", "adjoint", "--n", "2", "--vector", "[0,1,0,0]"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["semistable"] == false);
  CHECK(j["eta"] == Json::array({"1/1", "-1/1"}));
  CHECK(j["q"] == "2/1");
  CHECK(j["eta_normalized"] == Json::array({"1/2", "-1/2"}));
}

TEST_CASE("semistable label") {
  const auto r = run({"label", "--family", "adjoint", "--n", "2", "--vector", "[1,0,0,1]"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["semistable"] == true);
}

TEST_CASE("jordan 3,2") {
  const auto r = run({"jordan", "--partition", "3,2"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["q"] == "2/5");
  CHECK(j["q_paper"] == "5/2");
  CHECK(j["identity_ok"] == true);
  CHECK(j["partition"] == Json::array({3, 2}));
}

TEST_CASE("Standard flow CSV has constant energy") {
  const auto r = run({"flow", "--family", "standard", "--n", "3", "--vector", "[1,1,1]", "--t-max", "1", "--full"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,F,residual,e1,e2,e3");
  int rows = 0;
  while (std::getline(in, line)) {
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    CHECK(std::abs(std::stod(line.substr(a + 1, b - a - 1)) - 1.0) <= 1e-12);
    ++rows;
  }
  CHECK(rows == 11);
}

TEST_CASE("Standard flow forced to run keeps energy one") {
  const auto r = run({"flow", "--family", "standard", "--n", "3", "--vector", "[1,2,3]", "--t-max", "1", "--full",
                      "--format", "json"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["samples"].size() == 11);
  for (const auto& s : j["samples"]) CHECK(std::abs(s["F"].get<double>() - 1.0) < 1e-12);
}

TEST_CASE("flow output is deterministic") {
  const std::vector<std::string> args{"flow", "--family", "adjoint", "--n", "2", "--vector", "[0.3,1,0.2,-0.1]",
                                      "--t-max", "5"};
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const std::vector<std::string> v{"verify-flows", "--family", "adjoint", "--n", "2", "--vector", "[0,1,0,0]",
                                   "--random-h0", "--seed", "9", "--t-max", "1"};
  const auto c = run(v), d = run(v);
  REQUIRE(c.code == 0);
  CHECK(c.out == d.out);
  CHECK(Json::parse(c.out)["passed"] == true);
}

TEST_CASE("label output round-trips through stratum") {
  const auto l = run({"label", "--family", "adjoint", "--n", "3", "--vector", "[0,1,0,0,0,1,0,0,0]"});
  REQUIRE(l.code == 0);
  const auto path = temp_file("label.json", l.out);
  const auto s = run({"stratum", "--family", "adjoint", "--n", "3", "--vector", "[0,1,0,0,0,1,0,0,0]", "--label", "@" + path});
  REQUIRE(s.code == 0);
  const Json j = Json::parse(s.out);
  CHECK(j["in_V_ge0"] == true);
  CHECK(j["in_U_ge0"] == true);
  CHECK(j["matches_optimal_class"] == true);
  std::filesystem::remove(path);
}

TEST_CASE("stratum accepts pair-encoded rationals") {
  const auto s = run({"stratum", "--family", "adjoint", "--n", "2", "--vector", "[0,0,1,0]", "--label",
                      R"({"eta": [["1","1"], ["-1","1"]], "q": ["2","1"], "semistable": false})"});
  REQUIRE(s.code == 0);
  CHECK(Json::parse(s.out)["in_V_ge0"] == false);
}

TEST_CASE("other subcommands") {
  const auto info = run({"rep-info", "--family", "brackets", "--n", "3"});
  REQUIRE(info.code == 0);
  const Json ij = Json::parse(info.out);
  CHECK(ij["dim"] == 9);
  CHECK(ij["basis"][2] == "c^3_12");

  const auto m = run({"moment", "--family", "lambda2", "--n", "3", "--vector", "[1,2,3]"});
  REQUIRE(m.code == 0);
  const Json mj = Json::parse(m.out);
  CHECK(std::abs(mj["energy"].get<double>() - mj["closed_form"]["energy"].get<double>()) < 1e-12);

  const auto e = run({"labels-enumerate", "--family", "standard", "--n", "3"});
  REQUIRE(e.code == 0);
  CHECK(Json::parse(e.out)["labels"].size() == 3);

  const auto p = run({"project-sl", "--eta", "[1,0]"});
  REQUIRE(p.code == 0);
  CHECK(Json::parse(p.out)["projected"] == Json::array({"1/2", "-1/2"}));

  const auto b = run({"bracket", "--preset", "heisenberg", "--D", "[[1,0,0],[0,1,0],[0,0,2]]"});
  REQUIRE(b.code == 0);
  const Json bj = Json::parse(b.out);
  CHECK(bj["critical_check"]["is_derivation"] == true);
  CHECK(bj["derivation"]["all_positive"] == true);

  const auto t = run({"moment", "--family", "torus", "--weights", "[[1,0],[0,1]]", "--vector", "[1,1]"});
  REQUIRE(t.code == 0);
}

TEST_CASE("bracket flow to a critical chain") {
  const auto b = run({"bracket", "--preset", "chain", "--n", "5", "--flow"});
  REQUIRE(b.code == 0);
  const Json j = Json::parse(b.out);
  CHECK(j["flow"]["converged"] == true);
  CHECK(j["critical_check"]["is_derivation"] == true);
  CHECK(j["critical_check"]["positive"] == true);
}

TEST_CASE("config file fills missing flags and flags win") {
  const auto path = temp_file("cfg.txt", "# flow settings\nfamily = standard\nn = 3\nt-max = 0.5\nformat = json\n");
  const auto r = run({"flow", "--config", path, "--vector", "[1,2,3]", "--full"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["samples"].back()["t"] == 0.5);
  const auto r2 = run({"flow", "--config", path, "--vector", "[1,2,3]", "--full", "--t-max", "0.2"});
  REQUIRE(r2.code == 0);
  CHECK(Json::parse(r2.out)["samples"].back()["t"] == 0.2);
  std::filesystem::remove(path);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"label", "--family", "adjoint", "--n", "2", "--bogus", "1"}).code == 2);
  CHECK(run({"label", "--family", "adjoint", "--n", "2"}).code == 2);
  CHECK(run({"label", "--family", "adjoint", "--n", "2", "--vector", "[1,2]"}).code == 2);
  CHECK(run({"label", "--family", "adjoint", "--n", "2", "--vector", "not json"}).code == 2);
  CHECK(run({"label", "--family", "spin", "--n", "2", "--vector", "[1]"}).code == 2);
  CHECK(run({"jordan", "--partition", "1,1"}).code == 1);
  CHECK(run({"moment", "--family", "standard", "--n", "2", "--vector", "[0,0]"}).code == 1);
  CHECK(run({"flow", "--family", "standard", "--n", "2", "--vector", "[1,0]", "--format", "xml"}).code == 2);
  CHECK(run({"bracket", "--preset", "heisenberg", "--n", "4"}).code == 2);
  const auto e = run({"frobnicate"});
  CHECK_FALSE(e.err.empty());
  CHECK(e.out.empty());
  CHECK(run({"--help"}).code == 0);
}
