#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "cfl/error.hpp"
#include "cfl/formula.hpp"
#include "cfl/json_io.hpp"
#include "cfl/model.hpp"
#include "cfl/proof.hpp"
#include "cfl/quantum.hpp"
#include "cfl/semantics.hpp"

namespace cfl::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Options {
  // hardy find
  std::uint64_t seed = 0;
  int grid = SearchParams{}.grid;
  int iterations = SearchParams{}.refine_iterations;
  std::string out_path;
  // hardy verify
  std::string config_path;
  double tol = 1e-9;
  // model build
  double epsilon = Model::kDefaultEpsilon;
  // eval / check-theorem / proof audit
  std::string model_path;
  std::string formula;
  std::string at;
  std::string quantifier = "every";
  bool nested_strict = false;
  bool json = false;
};

CfOptions cf_options(const Options& o) {
  CfOptions cf;
  cf.quantifier = o.quantifier == "some" ? Quantifier::Some : Quantifier::Every;
  cf.allow_nested_strict = o.nested_strict;
  return cf;
}

int cmd_hardy_find(const Options& o, std::ostream& out) {
  SearchParams params;
  params.seed = o.seed;
  params.grid = o.grid;
  params.refine_iterations = o.iterations;
  const HardyConfig cfg = find_hardy(params);
  write_output(o.out_path, write_config_json(cfg), out);
  if (!o.out_path.empty()) out << "wrote " << o.out_path << "\n";
  return kExitPass;
}

int cmd_hardy_verify(const Options& o, std::ostream& out) {
  const HardyConfig cfg = read_config_json(read_file(o.config_path));
  const PredictionReport r = verify_hardy(cfg, o.tol);
  auto line = [&](const char* name, const char* what, double v, bool pass) {
    out << name << " = " << std::setw(20) << std::left << fmt_double(v) << " " << what << "  "
        << (pass ? "ok" : "FAIL") << "\n";
  };
  out << "tolerance " << fmt_double(r.tolerance) << ", positivity floor "
      << fmt_double(r.positivity_floor) << "\n";
  line("c1", "P(L2-,R2+|L2,R2) must vanish", r.c1, r.c1_pass);
  line("c2", "P(L2+,R1+|L2,R1) must vanish", r.c2, r.c2_pass);
  line("c3", "P(L1-,R2-|L1,R2) must vanish", r.c3, r.c3_pass);
  line("c4", "P(L1-,R1+|L1,R1) must be positive", r.c4, r.c4_pass);
  out << "P(L1-|L1,R1) = " << fmt_double(r.marginal_l1_minus) << "\n";
  out << "entangled: " << (cfg.entangled() ? "yes" : "no") << "\n";
  out << "result: " << (r.pass() ? "PASS" : "FAIL") << "\n";
  return r.pass() ? kExitPass : kExitCheckFailed;
}

int cmd_model_build(const Options& o, std::ostream& out) {
  const HardyConfig cfg = read_config_json(read_file(o.config_path));
  const Model m = build_model(export_table(cfg), o.epsilon);
  write_output(o.out_path, write_model_json(m), out);
  if (!o.out_path.empty()) {
    out << "wrote " << o.out_path << " (" << m.possible().size() << " possible worlds)\n";
  }
  return kExitPass;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const Model m = read_model_json(read_file(o.model_path));
  const Formula f = parse(o.formula);
  const CfOptions cf = cf_options(o);
  if (!o.at.empty()) {
    const bool v = eval_at(m, parse_world(o.at), f, cf);
    out << (v ? "true" : "false") << "\n";
    return v ? kExitPass : kExitCheckFailed;
  }
  const GlobalVerdict v = holds_globally(m, f, cf);
  out << (v.holds ? "true" : "false") << "\n";
  if (v.witness) out << "counterexample: " << to_string(*v.witness) << "\n";
  return v.holds ? kExitPass : kExitCheckFailed;
}

int cmd_check_theorem(const Options& o, std::ostream& out) {
  const Model m = read_model_json(read_file(o.model_path));
  const TheoremReport r = check_theorem(m, cf_options(o));
  out << format_theorem_report(r);
  return r.passed() ? kExitPass : kExitCheckFailed;
}

int cmd_proof_audit(const Options& o, std::ostream& out) {
  const Model m = read_model_json(read_file(o.model_path));
  const AuditReport r = audit(m, builtin_script(), cf_options(o));
  out << (o.json ? audit_to_json(r) : format_audit_text(r));
  return r.passed() ? kExitPass : kExitCheckFailed;
}

int cmd_sr_table(std::ostream& out) {
  out << format_sr_table(sr_truth_table());
  return kExitPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counterfactual quantum logic workbench for the Hardy setup", "cfl"};
  app.require_subcommand(1);
  Options o;

  auto* hardy = app.add_subcommand("hardy", "Construct and verify Hardy configurations");
  hardy->require_subcommand(1);
  auto* find = hardy->add_subcommand("find", "Search for an optimal Hardy configuration");
  find->add_option("--seed", o.seed, "Search seed")->capture_default_str();
  find->add_option("--grid", o.grid, "Grid points per search axis")
      ->capture_default_str()
      ->check(CLI::Range(2, 4096));
  find->add_option("--iters", o.iterations, "Refinement iterations per start")
      ->capture_default_str()
      ->check(CLI::Range(0, 1000000));
  find->add_option("--out", o.out_path, "Write the config JSON here instead of stdout");
  auto* verify = hardy->add_subcommand("verify", "Check a config against the four predictions");
  verify->add_option("config", o.config_path, "Config JSON")->required();
  verify->add_option("--tol", o.tol, "Tolerance for vanishing probabilities")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  auto* model = app.add_subcommand("model", "Build possible-worlds models");
  model->require_subcommand(1);
  auto* build = model->add_subcommand("build", "Export a config's table as a model file");
  build->add_option("config", o.config_path, "Config JSON")->required();
  build->add_option("--epsilon", o.epsilon, "Possibility threshold")
      ->capture_default_str()
      ->check(CLI::Range(0.0, Model::kMaxEpsilon));
  build->add_option("--out", o.out_path, "Write the model JSON here instead of stdout");

  auto* eval = app.add_subcommand("eval", "Evaluate a formula globally or at one world");
  eval->add_option("model", o.model_path, "Model JSON")->required();
  eval->add_option("formula", o.formula, "Formula, e.g. \"L1 => L1\"")->required();
  eval->add_option("--at", o.at, "World literal, e.g. L1,R2,-,+");
  eval->add_option("--quantifier", o.quantifier, "Counterfactual quantifier")
      ->capture_default_str()
      ->check(CLI::IsMember({"every", "some"}));
  eval->add_flag("--nested-strict", o.nested_strict,
                 "Evaluate '=>' below the root as a world-independent value");

  auto* theorem = app.add_subcommand("check-theorem", "Check line 5 true and line 6 false");
  theorem->add_option("model", o.model_path, "Model JSON")->required();
  theorem->add_option("--quantifier", o.quantifier, "Counterfactual quantifier")
      ->capture_default_str()
      ->check(CLI::IsMember({"every", "some"}));

  auto* proof = app.add_subcommand("proof", "Proof script tools");
  proof->require_subcommand(1);
  auto* aud = proof->add_subcommand("audit", "Audit the built-in derivation against a model");
  aud->add_option("model", o.model_path, "Model JSON")->required();
  aud->add_flag("--json", o.json, "Emit the report as JSON");

  auto* sr = app.add_subcommand("sr-table", "Print the truth table of SR over its quadruple");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (find->parsed()) return cmd_hardy_find(o, out);
    if (verify->parsed()) return cmd_hardy_verify(o, out);
    if (build->parsed()) return cmd_model_build(o, out);
    if (eval->parsed()) return cmd_eval(o, out);
    if (theorem->parsed()) return cmd_check_theorem(o, out);
    if (aud->parsed()) return cmd_proof_audit(o, out);
    if (sr->parsed()) return cmd_sr_table(out);
  } catch (const cfl::Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  err << app.help();
  return kExitError;
}

}  // namespace cfl::cli
