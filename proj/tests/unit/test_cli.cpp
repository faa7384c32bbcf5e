#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "hypar/cli.hpp"

using namespace hypar;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hypar");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "hypar_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"fold", "--n", "0", "--theta", "30"}).code == cli::kUsage);
  CHECK(run({"fold", "--n", "3", "--theta", "180"}).code == cli::kUsage);
  CHECK(run({"fold", "--n", "3", "--theta", "abc"}).code == cli::kUsage);
  CHECK(run({"fold", "--n", "3", "--theta", "30", "--kind", "sym"}).code == cli::kUsage);
  CHECK(run({"limits"}).code == cli::kUsage);
  CHECK(run({"precision", "--theta", "1", "--digit-grid", "32,16"}).code == cli::kUsage);
  CHECK(run({"cross-section", "--n", "2", "--theta", "30"}).code == cli::kUsage);
  CHECK(run({"bogus"}).code == cli::kUsage);
}

TEST_CASE("fold writes a state document with its run configuration") {
  const auto r = run({"fold", "--kind", "alt", "--n", "4", "--theta", "30", "--auto"});
  REQUIRE(r.code == cli::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["format"] == "hypar-fold");
  CHECK(doc["n"] == 4);
  CHECK(doc["run_config"]["command"] == "fold");
  CHECK(doc["run_config"]["kind"] == "alt");
  CHECK(doc["creases"].size() == pattern::crease_count(4));
  const auto back = fold::from_json(doc);
  CHECK(fold::isometry_audit(back).empty());
}

TEST_CASE("fold exit codes") {
  CHECK(run({"fold", "--n", "3", "--theta", "74", "--check-embedding"}).code == cli::kOk);
  CHECK(run({"fold", "--n", "4", "--theta", "74", "--auto", "--check-embedding"}).code == cli::kSelfIntersection);
  CHECK(run({"fold", "--n", "40", "--theta", "1", "--digits", "16"}).code == cli::kPrecisionExhausted);
  CHECK(run({"fold", "--n", "40", "--theta", "1", "--digits-max", "32"}).code == cli::kPrecisionExhausted);
}

TEST_CASE("fold side outputs") {
  const auto dir = scratch();
  const auto mesh = dir / "m.obj", pat = dir / "p.json", state = dir / "s.json";
  const auto r = run({"fold", "--n", "3", "--theta", "48", "--digits", "64", "--mesh", mesh.string(), "--dump-pattern",
                      pat.string(), "-o", state.string()});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.empty());
  CHECK(slurp(mesh).find("\nf ") != std::string::npos);
  CHECK(nlohmann::json::parse(slurp(pat))["format"] == "hypar-pattern");
  const auto doc = nlohmann::json::parse(slurp(state));
  CHECK_FALSE(doc["run_config"].contains("wall_seconds"));

  CHECK(run({"audit", "--input", state.string()}).code == cli::kOk);
  auto bad = doc;
  bad["vertices"][8]["x"] = nlohmann::json::array({"5", "5"});
  std::ofstream(dir / "bad.json") << bad.dump();
  const auto a = run({"audit", "--input", (dir / "bad.json").string()});
  CHECK(a.code == cli::kAuditFailure);
  CHECK(a.out.find("FAIL") != std::string::npos);
}

TEST_CASE("limits") {
  const auto r = run({"limits", "--theta", "74,48"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find("run_config") != std::string::npos);
  const auto j = run({"limits", "--theta", "74,48,179.5", "--format", "json", "-j", "2"});
  REQUIRE(j.code == cli::kOk);
  const auto doc = nlohmann::json::parse(j.out);
  REQUIRE(doc["rows"].size() == 3);
  CHECK(doc["rows"][0]["theta_deg"] == "74");
  CHECK(doc["rows"][0]["n_max"] == 3);
  CHECK(doc["rows"][1]["n_max"] == 5);
  CHECK(doc["rows"][2]["off_grid"] == true);
  CHECK(doc["rows"][2]["n_max"] == 3);
}

TEST_CASE("precision table") {
  const auto r = run({"precision", "--theta", "1", "--digit-grid", "16,32", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["run_config"]["digit_grid"] == nlohmann::json::array({16, 32}));
  const auto t = run({"precision", "--theta", "1", "--digit-grid", "16,32", "--n-cap", "10"});
  CHECK(t.code == cli::kOk);
  CHECK(t.out.find(">=10") != std::string::npos);
}

TEST_CASE("audit grid") {
  const auto grid = cli::audit_grid();
  CHECK(grid.size() == 29);
  const auto r = run({"audit", "-j", "4"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("cross-section outputs") {
  const auto dir = scratch();
  const auto csv = dir / "cs.csv";
  const auto r = run({"cross-section", "--kind", "alt", "--n", "8", "--theta", "30", "--csv", csv.string(), "--svg",
                      (dir / "cs").string()});
  REQUIRE(r.code == cli::kOk);
  std::istringstream in(slurp(csv));
  int rows = 0;
  bool config = false;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("#", 0) == 0) {
      config = config || line.find("run_config") != std::string::npos;
      continue;
    }
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
    ++rows;
  }
  CHECK(config);
  CHECK(rows == 10);
  for (const char* suffix : {"_section.svg", "_abs.svg", "_rel.svg"})
    CHECK(slurp(dir / ("cs" + std::string(suffix))).find("<svg") != std::string::npos);
}

TEST_CASE("digits cap from the environment") {
  ::setenv(cli::kDigitsMaxEnv, "32", 1);
  const auto r = run({"fold", "--n", "40", "--theta", "1"});
  ::unsetenv(cli::kDigitsMaxEnv);
  CHECK(r.code == cli::kPrecisionExhausted);
  CHECK(run({"fold", "--n", "12", "--theta", "1"}).code == cli::kOk);
}
