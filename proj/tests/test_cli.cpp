#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "oracles.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::filesystem::path temp_path(const std::string& name) {
  static const auto dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("epicheck-tests-" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void spit(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  file << content;
}

RunResult run_cli(const std::string& args, const std::string& stdin_data = "") {
  const char* bin = std::getenv("EPICHECK_BIN");
  REQUIRE(bin != nullptr);

  auto in = temp_path("stdin.txt");
  auto out = temp_path("stdout.txt");
  auto err = temp_path("stderr.txt");
  spit(in, stdin_data);

  std::string command = std::string("\"") + bin + "\" " + args + " < " +
                        in.string() + " > " + out.string() + " 2> " +
                        err.string();
  int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

std::string m1_path() {
  auto path = temp_path("m1.model");
  spit(path, epi::render_model(oracle::m1()));
  return path.string();
}

std::string m2_path() {
  auto path = temp_path("m2.model");
  spit(path, epi::render_model(oracle::m2()));
  return path.string();
}

}  // namespace

TEST_CASE("eval prints the resulting event") {
  auto r = run_cli("eval " + m1_path() + " --op U --event \"{a}\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{c}\n");
}

TEST_CASE("eval covers all operator spellings and aliases") {
  const std::string m2 = m2_path();
  CHECK(run_cli("eval " + m2 + " --op K --event \"{}\"").out == "{c}\n");
  CHECK(run_cli("eval " + m2 + " --op \"K'\" --event \"{}\"").out == "{}\n");
  CHECK(run_cli("eval " + m2 + " --op \"negK'\" --event \"{a b c d}\"").out ==
        "{c}\n");
  CHECK(run_cli("eval " + m2 + " --op \"U'\" --event \"{a}\"").out == "{c d}\n");

  auto primed = run_cli("eval " + m2 + " --op \"K'\" --event \"{a b c d}\"");
  auto alias = run_cli("eval " + m2 + " --op Krev --event \"{a b c d}\"");
  CHECK(primed.out == "{a b d}\n");
  CHECK(alias.out == primed.out);
  CHECK(run_cli("eval " + m2 + " --op Urev --event \"{a}\"").out ==
        run_cli("eval " + m2 + " --op \"U'\" --event \"{a}\"").out);
}

TEST_CASE("eval --verbose shows the fixpoint terms") {
  auto r = run_cli("eval " + m2_path() + " --op \"U'\" --event \"{a}\" --verbose");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "term 1 = {b c d}\n"
        "term 2 = {a c d}\n"
        "term 3 = {b c d}\n"
        "{c d}\n");
}

TEST_CASE("eval reads a model from stdin") {
  auto r = run_cli("eval - --op K --event \"{a}\"",
                   epi::render_model(oracle::m1()));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{a}\n");
}

TEST_CASE("eval structured output is machine readable") {
  auto r = run_cli("eval " + m1_path() +
                   " --op U --event \"{a}\" --format structured --verbose");
  CHECK(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["format"] == 1);
  CHECK(doc["op"] == "U");
  CHECK(doc["kind"] == "standard");
  CHECK(doc["result"] == nlohmann::json::array({"c"}));
  CHECK(doc["terms"].size() == 3);
}

TEST_CASE("check exits 1 when a property fails and 0 when all hold") {
  auto failing = run_cli("check " + m2_path() + " --kind rev");
  CHECK(failing.exit_code == 1);
  CHECK(failing.out.find("negative_introspection") != std::string::npos);
  CHECK(failing.out.find("FAILS") != std::string::npos);

  auto holding = run_cli("check " + m2_path() +
                         " --kind rev --property r_necessitation "
                         "--property ku_introspection");
  CHECK(holding.exit_code == 0);
  CHECK(holding.out.find("holds") != std::string::npos);
}

TEST_CASE("check structured output parses and carries the verdicts") {
  auto r = run_cli("check " + m2_path() + " --kind rev --format structured");
  CHECK(r.exit_code == 1);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["format"] == 1);
  REQUIRE(doc["reports"].size() == epi::kAllProperties.size());
  for (const auto& entry : doc["reports"]) {
    if (entry["property"] == "ku_introspection") CHECK(entry["holds"] == true);
    if (entry["property"] == "negative_introspection")
      CHECK(entry["holds"] == false);
  }
}

TEST_CASE("check rejects unknown inputs with exit 2") {
  CHECK(run_cli("check " + m2_path() + " --kind rev --property nope")
            .exit_code == 2);
  CHECK(run_cli("check " + m2_path() + " --kind bogus").exit_code == 2);
  CHECK(run_cli("check " + m2_path() + " --kind rev --no-such-flag")
            .exit_code == 2);
}

TEST_CASE("trace subcommand verdicts and exit codes") {
  auto preserved = run_cli("trace " + m2_path() + " --chain rdlr");
  CHECK(preserved.exit_code == 0);
  CHECK(preserved.out.find("verdict: preserved") != std::string::npos);

  auto broken = run_cli("trace " + m1_path() + " --chain dlr --event \"{a}\"");
  CHECK(broken.exit_code == 1);
  CHECK(broken.out.find("broken at step 2") != std::string::npos);

  auto trivial = run_cli("trace " + m1_path() + " --chain rdlr");
  CHECK(trivial.exit_code == 0);
  CHECK(trivial.out.find("trivially consistent") != std::string::npos);

  CHECK(run_cli("trace " + m1_path() + " --chain dlr").exit_code == 2);
  CHECK(run_cli("trace " + m1_path() + " --chain rdlr --event \"{a}\"")
            .exit_code == 2);
  CHECK(run_cli("trace " + m1_path() + " --chain wat --event \"{a}\"")
            .exit_code == 2);
}

TEST_CASE("gen emits a deterministic parseable model") {
  const std::string args = "gen --states 6 --seed 42 --density 0.5 "
                           "--p-empty 0.3 --family general";
  auto first = run_cli(args);
  auto second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);

  epi::ParseResult parsed = epi::parse_model(first.out);
  REQUIRE(parsed.ok());
  CHECK(parsed.model->size() == 6);

  auto partitional = run_cli("gen --states 8 --seed 7 --family partitional");
  epi::ParseResult p = epi::parse_model(partitional.out);
  REQUIRE(p.ok());
  CHECK(epi::classify_correspondence(*p.model).partitional);

  CHECK(run_cli("gen --states 65 --seed 1").exit_code == 2);
  CHECK(run_cli("gen --states 4 --seed 1 --density 2.0").exit_code == 2);
}

TEST_CASE("generated models flow back in through stdin") {
  auto gen = run_cli("gen --states 5 --seed 11 --p-empty 1.0");
  auto eval = run_cli("eval - --op \"U'\" --event \"{s0}\"", gen.out);
  CHECK(eval.exit_code == 0);
  CHECK(eval.out == "{s0 s1 s2 s3 s4}\n");  // everything empty: unaware of all
}

TEST_CASE("fuzz finds a negative-introspection counterexample") {
  auto r = run_cli("fuzz --models 200 --states 3 --seed 5 --kind std "
                   "--property negative_introspection");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("counterexample") != std::string::npos);
  CHECK(r.out.find("states:") != std::string::npos);

  // The reported model must itself be parseable.
  std::size_t states_at = r.out.find("states:");
  epi::ParseResult parsed = epi::parse_model(
      r.out.substr(states_at, r.out.find("property") - states_at));
  CHECK(parsed.ok());
}

TEST_CASE("fuzz reports absence of a collapse counterexample with exit 3") {
  auto r = run_cli("fuzz --models 512 --states 3 --seed 7 --kind std "
                   "--property dlr_collapse --p-empty 0.3");
  CHECK(r.exit_code == 3);
  CHECK(r.out.empty());  // stdout stays data-clean
  CHECK(r.err.find("no counterexample") != std::string::npos);
}

TEST_CASE("parse failures report diagnostics on stderr with exit 2") {
  auto bad = temp_path("bad.model");
  spit(bad, "states: a\nP(a) = {b}\n");
  auto r = run_cli("check " + bad.string() + " --kind std");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find(":2:") != std::string::npos);
  CHECK(r.err.find("unknown state 'b'") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("eval missing.model --op K --event \"{a}\"").exit_code == 2);
  CHECK(run_cli("eval " + m1_path() + " --op Q --event \"{a}\"").exit_code ==
        2);
  CHECK(run_cli("eval " + m1_path() + " --op K --event \"{zz}\"").exit_code ==
        2);
}
