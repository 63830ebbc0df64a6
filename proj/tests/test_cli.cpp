#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "support.hpp"

using namespace pmuller;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(PMULLER_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

std::filesystem::path temp_file(const std::string& name,
                                const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "pmuller_cli_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << content;
  return path;
}

std::string fig2_path() {
  static std::string p =
      temp_file("fig2.json", emit_lts(fixtures::fig2()).dump()).string();
  return p;
}

}  // namespace

TEST_CASE("check emits a verdict document with matching exit codes") {
  std::string fig2 = fig2_path();
  auto r = run_cli("check --mode universal --lts " + fig2 +
                   " --formula \"FPinf A | FPinf B\"");
  CHECK(r.exit_code == 1);
  Json doc = Json::parse(r.out);
  CHECK(doc["holds"] == false);
  CHECK(doc["mode"] == "universal");
  CHECK(doc["fragment"] == "PositivePromptMuller");
  CHECK(doc["bound_threshold"] == 3);
  REQUIRE(doc.contains("witness"));
  CHECK(doc["witness"]["scope"] == "whole");
  CHECK(doc["witness"]["loops"].size() == 3);
  REQUIRE(doc.contains("counterexample"));
  CHECK(doc["counterexample"]["k"] == 3);
  // single-line output by default
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);

  std::string tltl = temp_file("tltl.json",
                               emit_lts(fixtures::fig_tltl()).dump()).string();
  auto ok = run_cli("check --mode universal --lts " + tltl +
                    " --formula \"F(FPinf A | FPinf B)\"");
  CHECK(ok.exit_code == 0);
  CHECK(Json::parse(ok.out)["holds"] == true);
}

TEST_CASE("fair mode reports bad BSCCs") {
  std::string tltl = temp_file("tltl.json",
                               emit_lts(fixtures::fig_tltl()).dump()).string();
  auto r = run_cli("check --mode fair --lts " + tltl +
                   " --formula \"F(FPinf A)\"");
  CHECK(r.exit_code == 1);
  Json doc = Json::parse(r.out);
  CHECK(doc["mode"] == "fair");
  REQUIRE(doc.contains("bad_bsccs"));
  CHECK(doc["bad_bsccs"] == Json::parse(R"([["b"]])"));
}

TEST_CASE("prob mode prints an exact fraction and optional decimals") {
  std::string dia = temp_file("diamond.json",
                              emit_lts(fixtures::diamond()).dump()).string();
  auto r = run_cli("check --mode prob --lts " + dia +
                   " --formula \"F(FPinf p)\"");
  CHECK(r.exit_code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["probability"] == "1/2");
  CHECK_FALSE(doc.contains("decimal"));

  auto d = run_cli("check --mode prob --decimal 3 --lts " + dia +
                   " --formula \"F(FPinf p)\"");
  CHECK(Json::parse(d.out)["decimal"] == "0.500");

  // wrong fragment for prob mode
  auto bad = run_cli("check --mode prob --lts " + dia +
                     " --formula \"FPinf p\"");
  CHECK(bad.exit_code == 2);
  CHECK(Json::parse(bad.out)["error"] == "unsupported");
}

TEST_CASE("eval prints true or false") {
  std::string fig2 = fig2_path();
  std::string run =
      temp_file("a4b4.json",
                R"({"cycle": ["a","a","a","a","b","b","b","b"]})").string();
  auto r3 = run_cli("eval --lts " + fig2 + " --run " + run +
                    " --bound 3 --formula \"FPinf A | FPinf B\"");
  CHECK(r3.exit_code == 0);
  CHECK(r3.out == "false\n");
  auto r4 = run_cli("eval --lts " + fig2 + " --run " + run +
                    " --bound 4 --formula \"FPinf A | FPinf B\"");
  CHECK(r4.exit_code == 0);
  CHECK(r4.out == "true\n");
}

TEST_CASE("witness emits a pumped lasso that re-verifies") {
  std::string fig2 = fig2_path();
  auto r = run_cli("witness --lts " + fig2 +
                   " --formula \"FPinf A | FPinf B\" --bound 3");
  CHECK(r.exit_code == 1);
  Json doc = Json::parse(r.out);
  REQUIRE(doc.contains("cycle"));
  // re-verify through the library
  Lts l = fixtures::fig2();
  LassoRun run = parse_lasso(l, r.out);
  CHECK_FALSE(eval_bounded(l, run, 3, parse_formula("FPinf A | FPinf B")));

  // a holding formula prints the verdict instead
  std::string tltl = temp_file("tltl.json",
                               emit_lts(fixtures::fig_tltl()).dump()).string();
  auto ok = run_cli("witness --lts " + tltl +
                    " --formula \"F(FPinf A | FPinf B)\" --bound 2");
  CHECK(ok.exit_code == 0);
  CHECK(Json::parse(ok.out)["holds"] == true);
}

TEST_CASE("random is deterministic per seed and emits a valid system") {
  auto a = run_cli("random --states 4 --density 0.5 --atoms 2 --seed 7");
  auto b = run_cli("random --states 4 --density 0.5 --atoms 2 --seed 7");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK_NOTHROW(parse_lts(a.out));
  auto c = run_cli("random --states 4 --density 0.5 --atoms 2 --seed 8");
  CHECK(c.out != a.out);
}

TEST_CASE("info prints the component decomposition") {
  std::string tltl = temp_file("tltl.json",
                               emit_lts(fixtures::fig_tltl()).dump()).string();
  auto r = run_cli("info --lts " + tltl);
  CHECK(r.exit_code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["states"] == 2);
  CHECK(doc["components"].size() == 2);
  CHECK(doc["bsccs"] == Json::parse(R"([["b"]])"));
}

TEST_CASE("errors are machine-readable objects with exit code 2") {
  std::string fig2 = fig2_path();
  auto parse_err = run_cli("check --lts " + fig2 + " --formula \"A |\"");
  CHECK(parse_err.exit_code == 2);
  CHECK(Json::parse(parse_err.out)["error"] == "parse-error");

  std::string broken = temp_file("broken.json", R"({"states": []})").string();
  auto val_err = run_cli("check --lts " + broken + " --formula A");
  CHECK(val_err.exit_code == 2);
  CHECK(Json::parse(val_err.out)["error"] == "validation-error");

  auto io_err = run_cli("check --lts /nonexistent.json --formula A");
  CHECK(io_err.exit_code == 2);
  CHECK(Json::parse(io_err.out)["error"] == "io-error");

  auto unsup = run_cli("check --lts " + fig2 + " --formula \"A U B\"");
  CHECK(unsup.exit_code == 2);
  CHECK(Json::parse(unsup.out)["error"] == "unsupported");

  auto usage = run_cli("check --mode nonsense --lts " + fig2 + " --formula A");
  CHECK(usage.exit_code == 2);
  CHECK(Json::parse(usage.out)["error"] == "usage");

  auto frag = run_cli("check --fragment initialized-muller --lts " + fig2 +
                      " --formula \"FPinf A\"");
  CHECK(frag.exit_code == 2);
  CHECK(Json::parse(frag.out)["error"] == "fragment-mismatch");
}

TEST_CASE("--pretty reformats the document") {
  std::string fig2 = fig2_path();
  auto r = run_cli("--pretty info --lts " + fig2);
  CHECK(r.exit_code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') > 1);
  CHECK_NOTHROW(Json::parse(r.out));
}
