#ifndef VEEVERIFY_RUN_HPP
#define VEEVERIFY_RUN_HPP

// Orchestration behind the `check` subcommand: load or generate a
// configuration, run the selected checks in plan order, and produce the report
// and exit code (0 pass, 1 fail, 2 invalid input, 3 inconclusive).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "veeverify/configuration.hpp"
#include "veeverify/families.hpp"
#include "veeverify/identity.hpp"
#include "veeverify/io.hpp"
#include "veeverify/numeric.hpp"
#include "veeverify/report.hpp"
#include "veeverify/wdvv.hpp"

namespace veeverify {

inline constexpr const char* kVersion = "0.1.0";

enum class CheckKind { main_exact, main_numeric, eigen, vee, wdvv, flat, scalar_M, lambda_invariance };

inline const std::vector<CheckKind>& all_checks() {
  static const std::vector<CheckKind> all = {CheckKind::main_exact, CheckKind::main_numeric, CheckKind::eigen,
                                             CheckKind::vee,        CheckKind::wdvv,         CheckKind::flat,
                                             CheckKind::scalar_M,   CheckKind::lambda_invariance};
  return all;
}

inline std::string to_string(CheckKind c) {
  switch (c) {
    case CheckKind::main_exact: return "main-exact";
    case CheckKind::main_numeric: return "main-numeric";
    case CheckKind::eigen: return "eigen";
    case CheckKind::vee: return "vee";
    case CheckKind::wdvv: return "wdvv";
    case CheckKind::flat: return "flat";
    case CheckKind::scalar_M: return "scalar-M";
    case CheckKind::lambda_invariance: return "lambda-invariance";
  }
  return "?";
}

inline std::optional<CheckKind> parse_check(std::string_view name) {
  for (CheckKind c : all_checks())
    if (to_string(c) == name) return c;
  return std::nullopt;
}

inline bool is_numeric(CheckKind c) {
  return c == CheckKind::main_numeric || c == CheckKind::eigen || c == CheckKind::wdvv || c == CheckKind::flat;
}

enum class OutputFormat { human, json };

struct RunPlan {
  std::variant<std::string, FamilySpec> input = std::string("-");   // path ("-" for stdin) or family
  std::vector<CheckKind> checks;
  NumericOptions numeric;
  OutputFormat format = OutputFormat::human;
  bool emit_witness_matrices = false;
};

struct RunResult {
  int exit_code = 0;
  Json report;
  std::string text;   // what the CLI prints
};

inline constexpr std::size_t kLambdaDirections = 50;

/// Exact lambda under `count` random generic rational directions.
inline CheckReport lambda_invariance(const Configuration& cfg, std::uint64_t seed, std::size_t count = kLambdaDirections) {
  CheckReport report;
  report.check = "lambda-invariance";
  const QElem lambda = lambda_eig(cfg);
  for (std::size_t d = 0; d < count; ++d) {
    Stream rng(seed, 0x1a3bdULL + d);
    std::vector<Rat> dir(cfg.ambient_dim());
    for (;;) {
      for (auto& c : dir) {
        std::int64_t p = 0;
        while (p == 0) p = rng.integer(-1000, 1000);
        c = Rat(p, rng.integer(1, 1000));
      }
      bool generic = true;
      for (const auto& m : cfg.members()) generic = generic && !detail::pair_with_direction(m.vector, dir).is_zero();
      if (generic) break;
    }
    const QElem other = lambda_eig(with_direction(cfg, dir));
    if (!(other == lambda)) {
      report.verdict = Verdict::fail;
      Json jdir = Json::array();
      for (const auto& c : dir) jdir.push_back(rat_to_json(c));
      report.details = Json{{"lambda", qelem_to_json(lambda)}, {"direction", jdir}, {"lambda_other", qelem_to_json(other)}};
      return report;
    }
  }
  report.details = Json{{"directions", count}, {"lambda", qelem_to_json(lambda)}};
  return report;
}

/// Passes when M is scalar on every irreducible component.
inline CheckReport scalar_mass_check(const Configuration& cfg) {
  CheckReport report;
  report.check = "scalar-M";
  Json comps = Json::array();
  const auto indices = component_indices(cfg);
  const auto parts = irreducible_components(cfg);
  for (std::size_t c = 0; c < parts.size(); ++c) {
    const auto mu = is_scalar(parts[c]);
    if (!mu) report.verdict = Verdict::fail;
    comps.push_back(Json{{"members", indices[c]}, {"mu", mu ? qelem_to_json(*mu) : Json(nullptr)}});
  }
  report.details = Json{{"components", comps}};
  return report;
}

namespace detail {

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(in), {});
  std::ifstream file(path);
  if (!file) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(file), {});
}

inline std::string scientific(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline Json real_vector_json(const std::vector<double>& v) { return Json(v); }

inline CheckReport run_check(CheckKind kind, const Configuration& cfg, const RunPlan& plan) {
  const NumericOptions& opts = plan.numeric;
  switch (kind) {
    case CheckKind::main_exact: return main_identity_exact(cfg);
    case CheckKind::main_numeric: return main_identity_numeric(cfg, opts);
    case CheckKind::eigen: return eigen_numeric(cfg, opts);
    case CheckKind::vee: {
      CheckReport r = vee_condition_exact(cfg);
      if (plan.emit_witness_matrices) {
        const GramG g = gram_G(cfg);
        r.details["G"] = matrix_to_json(g.entries);
        r.details["G_inverse"] = matrix_to_json(g.inverse);
      }
      return r;
    }
    case CheckKind::wdvv: {
      CheckReport r = wdvv_numeric(cfg, opts);
      if (plan.emit_witness_matrices) {
        const std::size_t worst = r.details["worst_sample"].get<std::size_t>();
        const auto p = sample_point<double>(cfg, SampleMode::rational, opts.seed, opts.attempt_budget, worst);
        Json mats = Json::array();
        for (const auto& c : wdvv_commutators(cfg, p.coords)) mats.push_back(matrix_to_json(c));
        r.details["worst_point"] = real_vector_json(p.coords);
        r.details["commutators"] = std::move(mats);
      }
      return r;
    }
    case CheckKind::flat: return flat_connection_numeric(cfg, opts);
    case CheckKind::scalar_M: return scalar_mass_check(cfg);
    case CheckKind::lambda_invariance: return lambda_invariance(cfg, opts.seed);
  }
  throw Error(ErrorKind::InvalidInput, "unknown check");
}

inline std::string human_line(const CheckReport& r) {
  std::string mark = r.verdict == Verdict::pass ? "✓" : (r.verdict == Verdict::fail ? "✗" : "?");
  std::string line = mark + " " + r.check;
  line.resize(std::max<std::size_t>(line.size(), 22), ' ');
  line += to_string(r.verdict);
  if (r.numeric) {
    line += "  max residual " + scientific(r.numeric->max_residual) + " (tol " + scientific(r.numeric->tol) + ", " +
            std::to_string(r.numeric->samples) + " samples, " + std::to_string(r.numeric->precision_bits) + " bits)";
    if (r.numeric->escalated_residual)
      line += ", at " + std::to_string(r.numeric->escalated_bits) + " bits " + scientific(*r.numeric->escalated_residual);
  }
  if (r.witness) {
    std::string cls;
    for (std::size_t i : r.witness->members) cls += (cls.empty() ? "" : ",") + std::to_string(i);
    std::ostringstream res;
    res << r.witness->residual;
    line += "  witness: pivot " + std::to_string(r.witness->pivot) + ", plane " + std::to_string(r.witness->plane) +
            ", members {" + cls + "}, residual " + res.str();
  }
  if (r.check == "lambda-invariance" && r.verdict == Verdict::fail) line += "  lambda depends on the direction";
  if (r.check == "scalar-M" && r.verdict == Verdict::fail) line += "  M is not scalar on some component";
  return line;
}

}  // namespace detail

inline RunResult error_result(const Error& e, OutputFormat format) {
  RunResult result;
  result.exit_code = 2;
  result.report = Json{{"error", Json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}, {"indices", e.indices()}}}};
  result.text = format == OutputFormat::json ? canonical_dump(result.report) : std::string("error: ") + e.what() + "\n";
  return result;
}

inline RunResult run(const RunPlan& plan, std::istream& in = std::cin) {
  try {
    if (plan.checks.empty()) throw Error(ErrorKind::InvalidInput, "no checks selected");
    if (!(plan.numeric.tol > 0)) throw Error(ErrorKind::InvalidInput, "--tol must be positive");
    if (plan.numeric.precision_bits < 16) throw Error(ErrorKind::InvalidInput, "--precision must be at least 16 bits");
    for (CheckKind c : plan.checks)
      if (is_numeric(c) && plan.numeric.samples == 0) throw Error(ErrorKind::InvalidInput, "--samples must be >= 1");

    const Configuration cfg = std::holds_alternative<FamilySpec>(plan.input)
                                  ? generate(std::get<FamilySpec>(plan.input))
                                  : configuration_from_string(detail::read_input(std::get<std::string>(plan.input), in));

    Json meta;
    meta["name"] = cfg.name();
    meta["ambient_dim"] = cfg.ambient_dim();
    meta["span_dim"] = cfg.span_dim();
    meta["members"] = cfg.size();
    meta["components"] = component_indices(cfg).size();
    meta["lambda"] = qelem_to_json(lambda_eig(cfg));
    meta["S"] = qelem_to_json(constant_S(cfg));
    const auto mu = is_scalar(cfg);
    meta["mu"] = mu ? qelem_to_json(*mu) : Json(nullptr);

    Json settings;
    settings["samples"] = plan.numeric.samples;
    settings["tol"] = plan.numeric.tol;
    settings["seed"] = plan.numeric.seed;
    settings["precision"] = plan.numeric.precision_bits;

    Json checks = Json::array();
    bool any_fail = false;
    bool any_inconclusive = false;
    std::string human = "veeverify " + std::string(kVersion) + ": " + cfg.name() + " (" + std::to_string(cfg.size()) +
                        " members, span dimension " + std::to_string(cfg.span_dim()) + ")\n";
    for (CheckKind kind : plan.checks) {
      const CheckReport r = detail::run_check(kind, cfg, plan);
      any_fail = any_fail || r.verdict == Verdict::fail;
      any_inconclusive = any_inconclusive || r.verdict == Verdict::inconclusive;
      checks.push_back(to_json(r));
      human += detail::human_line(r) + "\n";
    }

    RunResult result;
    result.exit_code = any_fail ? 1 : (any_inconclusive ? 3 : 0);
    result.report["tool"] = "veeverify";
    result.report["version"] = kVersion;
    result.report["configuration"] = std::move(meta);
    result.report["settings"] = std::move(settings);
    result.report["checks"] = std::move(checks);
    result.report["exit_code"] = result.exit_code;
    result.text = plan.format == OutputFormat::json ? canonical_dump(result.report) : human;
    return result;
  } catch (const Error& e) {
    return error_result(e, plan.format);
  } catch (const std::exception& e) {
    return error_result(Error(ErrorKind::InvalidInput, e.what()), plan.format);
  }
}

}  // namespace veeverify

#endif  // VEEVERIFY_RUN_HPP
