// wco: classify weighted composition operators on discrete measure spaces.
//
//   wco jseq     --input FILE [--levels N] [--json]
//   wco classify --input FILE [--m M] [--tol T] [--exact] [--json]
//   wco oracle   --input FILE [--m M] [--tol T] [--cap N] [--json]
//   wco examples a|b|c [--m M] [--grid N] [--json]
//
// Exit codes: 0 success, 1 input error, 2 internal assertion.

#include <iostream>

#include <CLI11.hpp>

#include "wco/cli.hpp"

namespace {

int emit(const wco::cli::RunReport& report, bool as_json) {
  if (as_json) {
    std::cout << wco::cli::to_json(report).dump(2) << "\n";
  } else {
    std::cout.precision(15);
    std::cout << wco::cli::render_text(report);
  }
  return report.all_checks_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify weighted composition operators W = M_u C_phi on discrete measure spaces"};
  app.require_subcommand(1);

  bool as_json = false;
  app.add_flag("--json", as_json, "emit one JSON object instead of text");

  std::string input;
  unsigned levels = 4;
  wco::cli::ClassifyOptions classify_opts;
  wco::cli::OracleOptions oracle_opts;
  wco::cli::ExampleOptions example_opts;
  std::string which;
  unsigned example_m = 0;

  auto* jseq = app.add_subcommand("jseq", "print J_0..J_N from the recursion and the direct formula");
  jseq->add_option("--input", input, "input document")->required();
  jseq->add_option("--levels", levels, "largest level N")->capture_default_str();
  jseq->add_flag("--json", as_json);

  auto* cls = app.add_subcommand("classify", "closed-form verdict from the J_n densities");
  cls->add_option("--input", input, "input document")->required();
  cls->add_option("--m", classify_opts.m, "order m >= 1")->capture_default_str();
  cls->add_option("--tol", classify_opts.tolerance, "absolute tolerance")->capture_default_str();
  cls->add_flag("--exact", classify_opts.exact, "decide zero tests in rational arithmetic");
  cls->add_flag("--json", as_json);

  auto* orc = app.add_subcommand("oracle", "dense-matrix verification");
  orc->add_option("--input", input, "input document")->required();
  orc->add_option("--m", oracle_opts.m, "order m >= 1")->capture_default_str();
  orc->add_option("--tol", oracle_opts.tolerance, "absolute tolerance")->capture_default_str();
  orc->add_option("--cap", oracle_opts.cap, "largest space size for dense matrices")->capture_default_str();
  orc->add_flag("--json", as_json);

  auto* ex = app.add_subcommand("examples", "interval examples on [0,1] with phi(x) = x^2");
  ex->add_option("which", which, "a, b or c")->required();
  auto* ex_m = ex->add_option("--m", example_m, "b: order; c: largest order");
  ex->add_option("--grid", example_opts.grid, "a: number of grid points")->capture_default_str();
  ex->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*jseq) return emit(wco::cli::cmd_jseq(input, levels), as_json);
    if (*cls) return emit(wco::cli::cmd_classify(input, classify_opts), as_json);
    if (*orc) return emit(wco::cli::cmd_oracle(input, oracle_opts), as_json);
    if (*ex) {
      if (*ex_m) example_opts.m = example_m;
      return emit(wco::cli::cmd_examples(which, example_opts), as_json);
    }
  } catch (const wco::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const wco::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
