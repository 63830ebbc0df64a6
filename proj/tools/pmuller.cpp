// pmuller — model checker for the prompt Muller fragment of prompt-LTL.
//
// Subcommands: check (universal | fair | weak | prob), eval, witness,
// random, info.  All outputs are single-line JSON unless --pretty is given;
// errors are {"error": code, "detail": text} on stdout with exit code 2.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pmuller/fair.hpp"
#include "pmuller/io.hpp"
#include "pmuller/prob.hpp"
#include "pmuller/random_gen.hpp"
#include "pmuller/universal.hpp"

namespace {

using namespace pmuller;

bool g_pretty = false;

void print_doc(const Json& doc) {
  if (g_pretty)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << doc.dump() << "\n";
}

[[noreturn]] void fail(const std::string& code, const std::string& detail) {
  Json doc;
  doc["error"] = code;
  doc["detail"] = detail;
  print_doc(doc);
  std::exit(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("io-error", "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Lts load_lts(const std::string& path) { return parse_lts(read_file(path)); }

FormulaPtr load_formula(const std::string& text) { return parse_formula(text); }

void enforce_fragment(const FormulaPtr& f, const std::string& requested) {
  if (requested.empty()) return;
  std::string actual = fragment_name(classify_fragment(f));
  if (actual != requested)
    fail("fragment-mismatch",
         "formula is classified '" + actual + "', not '" + requested + "'");
}

// Fixed-point decimal expansion of a non-negative rational.
std::string decimal_string(const Rational& r, int digits) {
  using boost::multiprecision::cpp_int;
  cpp_int num = numerator(r), den = denominator(r);
  cpp_int whole = num / den, rem = num % den;
  std::string s = whole.str();
  if (digits > 0) {
    s += ".";
    for (int i = 0; i < digits; ++i) {
      rem *= 10;
      s += cpp_int(rem / den).str();
      rem %= den;
    }
  }
  return s;
}

int cmd_check(const std::string& mode, const std::string& lts_path,
              const std::string& formula_text, const std::string& fragment,
              int decimal_digits) {
  Lts l = load_lts(lts_path);
  FormulaPtr f = load_formula(formula_text);
  enforce_fragment(f, fragment);

  if (mode == "prob") {
    Rational p = satisfaction_probability(l, f);
    Json doc;
    doc["mode"] = "prob";
    doc["probability"] =
        numerator(p).str() + "/" + denominator(p).str();
    if (decimal_digits >= 0) doc["decimal"] = decimal_string(p, decimal_digits);
    print_doc(doc);
    return 0;
  }

  Verdict v;
  if (mode == "universal")
    v = universal_check(l, f);
  else if (mode == "fair")
    v = fair_check(l, f);
  else if (mode == "weak")
    v = weak_check(l, f);
  else
    fail("usage", "unknown mode '" + mode + "'");
  print_doc(emit_verdict(l, v));
  return v.holds ? 0 : 1;
}

int cmd_eval(const std::string& lts_path, const std::string& run_path,
             const std::string& formula_text, int bound) {
  Lts l = load_lts(lts_path);
  LassoRun run = parse_lasso(l, read_file(run_path));
  FormulaPtr f = load_formula(formula_text);
  std::cout << (eval_bounded(l, run, bound, f) ? "true" : "false") << "\n";
  return 0;
}

int cmd_witness(const std::string& lts_path, const std::string& formula_text,
                int bound) {
  Lts l = load_lts(lts_path);
  FormulaPtr f = load_formula(formula_text);
  Verdict v = universal_check(l, f);
  if (v.holds) {
    print_doc(emit_verdict(l, v));
    return 0;
  }
  auto ce = pmuller::detail::assemble_counterexample(l, *v.witness, bound);
  if (eval_bounded(l, ce.lasso, ce.k, f))
    fail("internal-witness-invalid", "pumped lasso does not falsify the formula");
  print_doc(emit_lasso(l, ce.lasso));
  return 1;
}

int cmd_random(int states, double density, int atoms, std::uint64_t seed) {
  Lts l = random_instance(states, density, atoms, seed);
  print_doc(emit_lts(l));
  return 0;
}

int cmd_info(const std::string& lts_path) {
  Lts l = load_lts(lts_path);
  print_doc(emit_info(l));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for the prompt Muller fragment of prompt-LTL"};
  app.require_subcommand(1);
  app.add_flag("--pretty", g_pretty, "pretty-print JSON output");

  std::string mode = "universal", lts_path, run_path, formula_text, fragment;
  int bound = 1, decimal_digits = -1;
  int states = 4, atoms = 1;
  double density = 0.5;
  std::uint64_t seed = 0;

  auto* check = app.add_subcommand("check", "decide a formula on a system");
  check->add_option("--mode", mode, "universal | fair | weak | prob")
      ->check(CLI::IsMember({"universal", "fair", "weak", "prob"}));
  check->add_option("--lts", lts_path, "LTS document path")->required();
  check->add_option("--formula", formula_text, "formula text")->required();
  check->add_option("--fragment", fragment,
                    "expected fragment; errors on mismatch")
      ->check(CLI::IsMember(
          {"muller", "positive-muller", "initialized-muller", "eval-only"}));
  check->add_option("--decimal", decimal_digits,
                    "also print a decimal approximation (prob mode)");

  auto* eval = app.add_subcommand("eval", "evaluate a formula on a lasso run");
  eval->add_option("--lts", lts_path)->required();
  eval->add_option("--run", run_path, "lasso document path")->required();
  eval->add_option("--formula", formula_text)->required();
  eval->add_option("--bound", bound, "prompt bound k")->required()
      ->check(CLI::NonNegativeNumber);

  auto* witness = app.add_subcommand("witness", "emit a k-pumped counterexample");
  witness->add_option("--lts", lts_path)->required();
  witness->add_option("--formula", formula_text)->required();
  witness->add_option("--bound", bound, "pumping bound k >= 1")->required()
      ->check(CLI::PositiveNumber);

  auto* random = app.add_subcommand("random", "generate a random LTS document");
  random->add_option("--states", states)->required()->check(CLI::PositiveNumber);
  random->add_option("--density", density)->required()
      ->check(CLI::Range(0.0, 1.0));
  random->add_option("--atoms", atoms)->required()->check(CLI::NonNegativeNumber);
  random->add_option("--seed", seed)->required();

  auto* info = app.add_subcommand("info", "print the SCC/BSCC decomposition");
  info->add_option("--lts", lts_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::ostringstream msg;
    msg << e.what();
    fail("usage", msg.str());
  }

  try {
    if (check->parsed())
      return cmd_check(mode, lts_path, formula_text, fragment, decimal_digits);
    if (eval->parsed()) return cmd_eval(lts_path, run_path, formula_text, bound);
    if (witness->parsed()) return cmd_witness(lts_path, formula_text, bound);
    if (random->parsed()) return cmd_random(states, density, atoms, seed);
    if (info->parsed()) return cmd_info(lts_path);
  } catch (const ParseError& e) {
    fail("parse-error", e.what());
  } catch (const ValidationError& e) {
    fail("validation-error", e.what());
  } catch (const UnsupportedError& e) {
    fail("unsupported", e.what());
  } catch (const std::logic_error& e) {
    fail("internal-witness-invalid", e.what());
  } catch (const std::exception& e) {
    fail("error", e.what());
  }
  return 2;
}
