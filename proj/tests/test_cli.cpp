#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "linfty/algebroid_spec.hpp"
#include "linfty/commands.hpp"

using namespace linfty;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(GOLDEN_DIR) + "/" + name);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Case {
  std::string file;
  std::vector<std::string> args;
  int status;
};

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = std::string(TEMP_DIR) + "/" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("golden outputs") {
  std::vector<Case> cases;
  for (const char* b : {"derham", "lie-algebroid-demo", "so3", "lie-3-algebroid-demo", "graded-3-lie",
                        "higher-poisson-on-algebroid"}) {
    const std::string s = b;
    cases.push_back({s + ".build-schouten.txt", {"build-schouten", s}, 0});
    cases.push_back({s + ".build-poisson.txt", {"build-poisson", s}, 0});
    cases.push_back({s + ".brackets-schouten.txt", {"brackets", s, "--flavor", "schouten"}, 0});
    cases.push_back({s + ".brackets-poisson.txt", {"brackets", s, "--flavor", "poisson"}, 0});
  }
  cases.push_back({"derham.check-q.txt", {"check-q", "derham"}, 0});
  cases.push_back({"so3.describe.txt", {"describe", "so3"}, 0});
  cases.push_back({"so3-perturbed.jacobiator3.txt", {"jacobiator", "so3-perturbed", "--arity", "3"}, 1});
  cases.push_back({"graded-3-lie.statement-check.txt", {"statement-check", "graded-3-lie"}, 0});
  cases.push_back({"derham.example.json", {"example", "derham"}, 0});
  cases.push_back({"so3.check-q.json", {"--json", "check-q", "so3"}, 0});
  cases.push_back({"so3.leibniz2.txt", {"leibniz", "so3", "--arity", "2", "--trials", "20", "--seed", "5"}, 0});
  for (const auto& c : cases) {
    CAPTURE(c.file);
    const auto r = run(c.args);
    CHECK(r.status == c.status);
    CHECK(r.out == golden(c.file));
  }
}

TEST_CASE("the de Rham structures") {
  CHECK(run({"build-schouten", "derham"}).out.find("  S = pi1*p1 + pi2*p2\n") != std::string::npos);
  CHECK(run({"build-poisson", "derham"}).out.find("  P = estar1*xstar1 + estar2*xstar2\n") != std::string::npos);
}

TEST_CASE("every builtin passes its checks") {
  for (const char* b : {"derham", "lie-algebroid-demo", "so3", "lie-3-algebroid-demo", "graded-3-lie",
                        "higher-poisson-on-algebroid"}) {
    CAPTURE(b);
    for (const char* cmd : {"describe", "check-q", "build-schouten", "build-poisson", "jacobiator"})
      CHECK(run({cmd, b}).status == 0);
    CHECK(run({"leibniz", b, "--trials", "30"}).status == 0);
    CHECK(run({"brackets", b, "--flavor", "poisson", "--arity", "2"}).status == 0);
    CHECK(run({"naturality", b}).status == 0);
  }
  CHECK(run({"statement-check", "so3"}).status == 0);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"--seed", "9", "leibniz", "lie-3-algebroid-demo", "--trials", "25"};
  CHECK(run(args).out == run(args).out);
  CHECK(run({"--seed", "9", "naturality", "so3"}).out == run({"--seed", "9", "naturality", "so3"}).out);
}

TEST_CASE("json reports") {
  const auto r = run({"--json", "jacobiator", "so3-perturbed", "--arity", "3"});
  CHECK(r.status == 1);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["status"] == "fail");
  CHECK(doc["command"] == "jacobiator");
  bool witnessed = false;
  for (const auto& c : doc["checks"])
    if (c["status"] == "fail") witnessed = witnessed || !c["witness"].empty();
  CHECK(witnessed);
  const auto ok = nlohmann::json::parse(run({"--json", "build-poisson", "so3"}).out);
  CHECK(ok["status"] == "pass");
}

TEST_CASE("spec files and examples") {
  for (const char* b : {"derham", "lie-algebroid-demo", "so3", "lie-3-algebroid-demo", "graded-3-lie",
                        "higher-poisson-on-algebroid"}) {
    CAPTURE(b);
    const auto doc = run({"example", b});
    CHECK(doc.status == 0);
    const auto path = temp_file(std::string(b) + ".json", doc.out);
    auto from_file = run({"build-schouten", path}).out;
    auto from_name = run({"build-schouten", b}).out;
    // only the header names the source
    from_file = from_file.substr(from_file.find('\n'));
    from_name = from_name.substr(from_name.find('\n'));
    CHECK(from_file == from_name);
  }
  CHECK(run({"example", "so3-perturbed"}).status == 2);
}

TEST_CASE("naturality with a matrix file") {
  const auto diag = temp_file("diag.json", R"([["2", "0", "0"], ["0", "1", "0"], [0, 0, "-1/3"]])");
  CHECK(run({"naturality", "so3", "--matrix", diag}).status == 0);
  const auto perm = temp_file("perm.json", "[[0, 1, 0], [0, 0, 1], [1, 0, 0]]");
  CHECK(run({"naturality", "so3", "--matrix", perm}).status == 0);
  const auto singular = temp_file("singular.json", "[[1, 1, 0], [1, 1, 0], [0, 0, 1]]");
  CHECK(run({"naturality", "so3", "--matrix", singular}).status == 2);
  const auto wrong = temp_file("wrong.json", "[[1, 0], [0, 1]]");
  CHECK(run({"naturality", "so3", "--matrix", wrong}).status == 2);
  CHECK(run({"naturality", "so3", "--matrix", std::string(TEMP_DIR) + "/absent.json"}).status == 2);
}

TEST_CASE("input errors exit with status 2") {
  CHECK(run({}).status != 0);
  CHECK(run({"frobnicate", "so3"}).status == 2);
  CHECK(run({"describe"}).status == 2);
  CHECK(run({"describe", "no-such-algebroid"}).status == 2);
  CHECK(run({"brackets", "so3", "--flavor", "odd"}).status == 2);
  CHECK(run({"describe", "so3", "--bogus"}).status == 2);
  CHECK(run({"statement-check", "derham"}).status == 2);
  const auto bad = temp_file("bad.json", R"({"name": "b", "base": [], "fibre": [], "q_terms": []})");
  const auto r = run({"check-q", bad});
  CHECK(r.status == 2);
  CHECK(r.err.find("fibre") != std::string::npos);
  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("check-q reports a witness") {
  const auto doc = temp_file("broken.json", R"({
    "name": "broken",
    "base": [],
    "fibre": [{"name": "xi1", "parity": "even"}, {"name": "xi2", "parity": "odd"}],
    "q_terms": [{"target": "xi2", "coefficient": "1", "monomial": ["xi1", "xi2"], "base_monomial": []},
                {"target": "xi2", "coefficient": "1", "monomial": ["xi1"], "base_monomial": []},
                {"target": "xi1", "coefficient": "1", "monomial": ["xi2", "xi2"], "base_monomial": []}]
  })");
  const auto r = run({"check-q", doc});
  CHECK(r.status == 1);
  CHECK(r.out.find("witness") != std::string::npos);
}
