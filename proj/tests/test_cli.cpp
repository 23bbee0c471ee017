// End-to-end tests for the vstar binary: exit codes, report contents, and
// output stability. The binary path and defs directory come from the build.

#include <sys/wait.h>

#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  std::filesystem::path tmp =
      std::filesystem::temp_directory_path() / ("vstar_cli_" + std::to_string(counter++) + ".out");
  std::string cmd = std::string("\"") + VSTAR_BIN_PATH + "\" " + args + " > " + tmp.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
  if (rc != -1 && WIFEXITED(rc)) r.exit_code = WEXITSTATUS(rc);
  std::ifstream in(tmp);
  std::stringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  std::filesystem::remove(tmp);
  return r;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("defeq verb verifies the top/nei pair") {
  RunResult r = run_cli("defeq top-nei --max-atoms 3 --json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["status"] == "verified");
  CHECK(j["check"] == "defeq(top_to_nei, nei_to_top)");

  RunResult two = run_cli("defeq top_to_nei nei_to_top --max-atoms 2");
  CHECK(two.exit_code == 0);
  CHECK(two.output.find("verified") != std::string::npos);
}

TEST_CASE("defeq verb refutes the bool/stone pair with a counterexample") {
  RunResult r = run_cli("defeq bool-stone --max-atoms 2 --json");
  REQUIRE(r.exit_code == 2);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["status"] == "refuted");
  REQUIRE(j.contains("counterexample"));
  CHECK(j["counterexample"].contains("model"));
}

TEST_CASE("obstruct verb reports the set1/set2 separation") {
  RunResult r = run_cli("obstruct set1 set2 --json");
  REQUIRE(r.exit_code == 2);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["status"] == "refuted");
  CHECK(j["counterexample"]["aut_order"] == "1");
  CHECK(j["counterexample"]["candidate_orders"] == "2");
}

TEST_CASE("models verb enumerates the 29 labeled topologies on 3 atoms") {
  RunResult r = run_cli("models top --atoms 3 --json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["count"] == 29);
  CHECK(j["models"].size() == 29);

  RunResult text = run_cli("models top --atoms 3");
  CHECK(text.exit_code == 0);
  CHECK(text.output.find("29 models of top") != std::string::npos);
}

TEST_CASE("apply verb replays an enumerated model") {
  RunResult listing = run_cli("models top --atoms 1");
  REQUIRE(listing.exit_code == 0);
  std::string literal = first_line(listing.output);
  RunResult r = run_cli("apply top_to_nei \"" + literal + "\"");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find(';') != std::string::npos);

  // dropping the empty open set leaves a non-model: input error, not refutation
  RunResult bad = run_cli("apply top_to_nei \"{@1} ; {{@1}}\"");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("error:") != std::string::npos);
}

TEST_CASE("biint verb verifies the top/nei pair") {
  RunResult r = run_cli("biint top-nei --max-atoms 2 --json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["status"] == "verified");
  CHECK(j.contains("witnesses"));
}

TEST_CASE("cb verb reports a bijective chase for identity and complement") {
  RunResult r = run_cli("cb id_subsets compl_subsets --atoms 2 --json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["bijective"] == true);
  CHECK(j["traces"].size() == 4);  // four subset models of a 2-atom domain
  for (const auto& tr : j["traces"]) CHECK(tr["branch"] == "cycle");
}

TEST_CASE("check-theory verb accepts definition files and catalog names") {
  std::string defs = VSTAR_DEFS_DIR;
  RunResult files = run_cli("check-theory " + defs + "/theories.vstar " + defs + "/interps.vstar");
  CHECK(files.exit_code == 0);
  CHECK(files.output.find("theories") != std::string::npos);

  RunResult name = run_cli("check-theory top --max-atoms 2");
  CHECK(name.exit_code == 0);
  CHECK(name.output.find("4 models") != std::string::npos);

  RunResult missing = run_cli("check-theory nosuchtheory");
  CHECK(missing.exit_code == 1);
  CHECK(missing.output.find("error:") != std::string::npos);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("defeq").exit_code == 1);
  CHECK(run_cli("models top --atoms notanumber").exit_code == 1);
}

TEST_CASE("suite output is stable across runs") {
  RunResult a = run_cli("suite --json");
  RunResult b = run_cli("suite --json");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.output == b.output);
  auto j = nlohmann::json::parse(a.output);
  REQUIRE(j.size() == 9);
  for (const auto& c : j) CHECK(c["pass"] == true);
}
