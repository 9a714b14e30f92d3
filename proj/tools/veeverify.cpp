// veeverify: generate built-in configurations and check the Main Identity,
// the vee-conditions and the WDVV equations.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "veeverify/veeverify.hpp"

namespace {

using namespace veeverify;

struct FamilyArgs {
  std::string family;
  unsigned rank = 0;
  std::string m;
  std::string l;
  std::vector<std::string> mult;

  void add_to(CLI::App& app) {
    app.add_option("--family", family, "A, B, C, D, BC, G2, A_deformed or C_deformed");
    app.add_option("--rank", rank, "rank (n for the deformed families)");
    app.add_option("--m", m, "deformation parameter m (rational)");
    app.add_option("--l", l, "deformation parameter l (rational, C_deformed)");
    app.add_option("--mult", mult, "orbit multiplicity, e.g. --mult short=1 long=1/2");
  }

  FamilySpec spec() const {
    const auto f = parse_family(family);
    if (!f) throw Error(ErrorKind::UnsupportedFamily, "unknown family '" + family + "'");
    FamilySpec s{*f, rank, {}};
    if (*f == Family::A_deformed || *f == Family::C_deformed) {
      if (!m.empty()) s.params["m"] = parse_rat(m);
      if (!l.empty()) s.params["l"] = parse_rat(l);
      return s;
    }
    for (const auto& item : mult) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::InvalidInput, "--mult expects orbit=value, got '" + item + "'");
      s.params[item.substr(0, eq)] = parse_rat(item.substr(eq + 1));
    }
    if (s.params.empty())
      for (const auto& orbit : parameter_names(*f)) s.params[orbit] = Rat(1);
    return s;
  }
};

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return 2;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Main Identity / WDVV verifier for vector configurations"};
  app.require_subcommand(1);

  FamilyArgs gen_family;
  std::string gen_out;
  auto* generate_cmd = app.add_subcommand("generate", "write a built-in configuration as canonical JSON");
  gen_family.add_to(*generate_cmd);
  generate_cmd->add_option("--out", gen_out, "output path (default stdout)");

  FamilyArgs check_family;
  std::string input;
  std::vector<std::string> check_names;
  bool all = false;
  RunPlan plan;
  std::string format = "human";
  std::string check_out;
  auto* check_cmd = app.add_subcommand("check", "run checks on a configuration");
  check_cmd->add_option("input", input, "configuration JSON path, '-' for stdin");
  check_family.add_to(*check_cmd);
  check_cmd->add_option("--checks", check_names, "main-exact main-numeric eigen vee wdvv flat scalar-M lambda-invariance")
      ->delimiter(',');
  check_cmd->add_flag("--all", all, "run every check");
  check_cmd->add_option("--samples", plan.numeric.samples, "numeric sample count")->default_val(200);
  check_cmd->add_option("--tol", plan.numeric.tol, "relative tolerance")->default_val(1e-8);
  check_cmd->add_option("--seed", plan.numeric.seed, "sampling seed")->default_val(0);
  check_cmd->add_option("--precision", plan.numeric.precision_bits, "working precision in bits")->default_val(53);
  check_cmd->add_option("--format", format, "human or json")->default_val("human");
  check_cmd->add_flag("--emit-witness-matrices", plan.emit_witness_matrices, "include matrices in the report");
  check_cmd->add_option("--out", check_out, "output path (default stdout)");

  app.add_subcommand("version", "print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (app.got_subcommand("version")) {
    std::cout << "veeverify " << kVersion << "\n";
    return 0;
  }

  if (generate_cmd->parsed()) {
    try {
      const Configuration cfg = generate(gen_family.spec());
      return emit(canonical_dump(configuration_to_json(cfg)), gen_out);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }

  plan.format = format == "json" ? OutputFormat::json : OutputFormat::human;
  RunResult result;
  try {
    if (format != "json" && format != "human") throw Error(ErrorKind::InvalidInput, "--format must be human or json");
    if (all) {
      plan.checks = all_checks();
    } else {
      // `--checks main-exact input.json`: the greedy list swallowed the input path.
      if (input.empty() && !check_names.empty() && !parse_check(check_names.back())) {
        input = check_names.back();
        check_names.pop_back();
      }
      for (const auto& name : check_names) {
        const auto c = parse_check(name);
        if (!c) throw Error(ErrorKind::InvalidInput, "unknown check '" + name + "'");
        plan.checks.push_back(*c);
      }
    }
    if (!check_family.family.empty()) {
      if (!input.empty()) throw Error(ErrorKind::InvalidInput, "give either an input path or --family, not both");
      plan.input = check_family.spec();
    } else {
      plan.input = input.empty() ? std::string("-") : input;
    }
    result = run(plan);
  } catch (const Error& e) {
    result = error_result(e, plan.format);
  }
  if (const int rc = emit(result.text, check_out); rc != 0) return rc;
  return result.exit_code;
}
