#pragma once

// Subcommand dispatch behind the pfaffcubic executable. run() never throws:
// every outcome is an exit code plus a JSON report.

#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pfaffcubic/io.hpp"
#include "pfaffcubic/suites.hpp"

namespace pfc::cli {

using io::json;

enum class Command { construct, verify, lines_normalize, five_secant, klein, selftest };

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kParseError = 2, kPreconditionError = 3 };

struct JobSpec {
  Command command = Command::construct;
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  RootChoice root_choice = RootChoice::first;
  int trials = 20;
};

struct RunResult {
  int exit_code = kPass;
  json report;
};

inline const char* command_name(Command c) {
  switch (c) {
    case Command::construct: return "construct";
    case Command::verify: return "verify";
    case Command::lines_normalize: return "lines-normalize";
    case Command::five_secant: return "five-secant";
    case Command::klein: return "klein";
    case Command::selftest: return "selftest";
  }
  return "?";
}

inline std::optional<Command> parse_command(const std::string& s) {
  for (Command c : {Command::construct, Command::verify, Command::lines_normalize, Command::five_secant,
                    Command::klein, Command::selftest})
    if (s == command_name(c)) return c;
  return std::nullopt;
}

namespace detail {

/// Named pass/fail checks in insertion order.
class Checks {
 public:
  void add(const std::string& name, bool pass) {
    obj_[name] = pass ? "pass" : "fail";
    if (!pass && !failed_) failed_ = name;
  }

  /// Runs `f`; a PreconditionError from one of `stages` counts as a failure.
  void add(const std::string& name, const std::function<bool()>& f, std::initializer_list<const char*> stages) {
    try {
      add(name, f());
    } catch (const PreconditionError& e) {
      for (const char* s : stages) {
        if (e.stage() == s) {
          add(name, false);
          return;
        }
      }
      throw;
    }
  }

  bool ok() const { return !failed_; }
  const std::optional<std::string>& first_failure() const { return failed_; }
  const json& to_json() const { return obj_; }

 private:
  json obj_ = json::object();
  std::optional<std::string> failed_;
};

inline json read_input(const JobSpec& spec) {
  if (!spec.input_path) throw ParseError("input: --input is required for " + std::string(command_name(spec.command)));
  std::ifstream in(*spec.input_path);
  if (!in) throw ParseError("input: cannot open " + *spec.input_path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("input: ") + e.what());
  }
}

inline json lines_to_json(const std::array<Bivector15, 5>& lines) {
  json out = json::array();
  for (const auto& l : lines) out.push_back(io::to_json(l));
  return out;
}

inline RunResult finish(json report, const Checks& checks) {
  report["checks"] = checks.to_json();
  report["status"] = checks.ok() ? "pass" : "fail";
  if (!checks.ok()) report["failed_check"] = *checks.first_failure();
  return {checks.ok() ? kPass : kCheckFailed, std::move(report)};
}

inline json header(const JobSpec& spec) {
  return {{"format", io::kFormat}, {"command", command_name(spec.command)}, {"seed", spec.seed}};
}

inline RunResult construct(const JobSpec& spec, const std::optional<json>& input) {
  ParamsA9 t;
  std::optional<FieldElement> root;
  TowerPtr tower;
  if (input) {
    tower = io::optional_tower(*input);
    t = io::params_from_json(input->contains("params") ? input->at("params") : *input, tower);
    if (input->contains("u")) root = io::scalar_from_json(input->at("u"), tower);
  }
  const ExplicitInstance inst = build_instance(t, spec.root_choice, root);
  const auto lines = five_lines(inst);
  Checks checks;
  checks.add("pfaffian_identity", pfaffian_identity(inst));
  checks.add("inscription", inscription_check(w_pentahedron(inst)));
  checks.add("lines_independent", rank(bivector_columns(std::vector<Bivector15>(lines.begin(), lines.end()))) == 5);
  json report = header(spec);
  report["instance"] = io::to_json(inst);
  report["pentahedron"] = io::to_json(pentahedron_from_params(inst.params));
  report["w_pentahedron"] = io::to_json(w_pentahedron(inst));
  report["lines"] = lines_to_json(lines);
  return finish(std::move(report), checks);
}

inline RunResult verify(const JobSpec& spec, const json& input) {
  const ExplicitInstance inst = io::instance_from_json(input);
  Checks checks;
  checks.add("pfaffian_identity", pfaffian_identity(inst));
  checks.add("phi1_blocks", verify_phi1(inst).all());
  std::optional<std::array<Bivector15, 5>> lines;
  checks.add(
      "lines_decomposable",
      [&] {
        lines = five_lines(inst);
        return rank(bivector_columns(std::vector<Bivector15>(lines->begin(), lines->end()))) == 5;
      },
      {"five_lines"});
  // the vertices are tested against the pfaffian of the stored matrix
  PentahedronData pd = w_pentahedron(inst);
  pd.cubic = pfaffian(inst.m.matrix());
  checks.add("inscription", !pd.cubic.is_zero() && inscription_check(pd));
  checks.add("vertex_line_incidence", lines && vertex_line_incidence(inst, *lines).all());
  return finish(header(spec), checks);
}

inline RunResult lines_normalize(const JobSpec& spec, const json& input) {
  const LineConfig cfg = io::line_config_from_json(input);
  NormalFormOptions opt;
  opt.seed = spec.seed;
  opt.root_choice = spec.root_choice;
  const NormalFormResult res = normal_form(cfg, opt);
  Checks checks;
  checks.add("pfaffian_identity", pfaffian_identity(res.instance));
  checks.add("roundtrip", roundtrip_check(res));
  json report = header(spec);
  report["result"] = io::to_json(res);
  return finish(std::move(report), checks);
}

inline RunResult five_secant(const JobSpec& spec, const json& input) {
  const TowerPtr t = io::optional_tower(input);
  const SubspaceW w4 = io::subspace_from_json(io::field(input, "w4"), 4, t);
  w4.validate("five_secant");
  const QuadricSpaceH h = restriction_quadrics(w4);
  const SubspaceW w5 = w5_from_w4(w4, h);
  NumericOptions opt;
  opt.tol = spec.tol;
  opt.seed = spec.seed;
  const NumericPoints found = rank2_points_numeric(w5, opt);

  json quadrics = json::array(), equations = json::array(), points = json::array();
  for (const auto& q : h.quadrics()) quadrics.push_back(io::to_json(q));
  for (const auto& e : linear_equations(orthogonal_conditions(w4, h))) equations.push_back(io::to_json(e));
  for (const auto& p : found.points) points.push_back(io::to_json(p));

  Checks checks;
  checks.add("quadric_space_dim_5", h.basis.size() == 5);
  checks.add("w5_dim_5", w5.basis.size() == 5);
  checks.add("numeric_complete", found.complete);
  json report = header(spec);
  report["tol"] = spec.tol;
  report["quadrics"] = quadrics;
  report["w5"] = io::to_json(w5);
  report["linear_equations"] = equations;
  report["numeric"] = {{"points", points}, {"complete", found.complete}, {"starts", found.starts}};
  return finish(std::move(report), checks);
}

inline RunResult klein(const JobSpec& spec) {
  SplitMix64 rng(spec.seed);
  Checks checks;
  for (const auto& [name, pass] : suites::klein_checks(rng, spec.trials)) checks.add(name, pass);
  return finish(header(spec), checks);
}

inline json suite_json(const suites::SuiteResult& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back(f);
  return {{"passed", r.passed}, {"total", r.total}, {"failures", failures}};
}

/// Each suite draws from its own stream split off the job seed, in a fixed
/// order, so a suite's trials do not depend on the others.
inline RunResult selftest(const JobSpec& spec) {
  SplitMix64 root(spec.seed);
  std::vector<SplitMix64> streams;
  for (int k = 0; k < 7; ++k) streams.push_back(root.split());
  const int n = spec.trials;

  const auto insts = suites::random_instances(streams[0], n);
  const auto count = static_cast<std::size_t>(n);
  std::vector<suites::SuiteResult> results{suites::pfaffian_identity(insts),
                                           suites::phi1(insts, count),
                                           suites::phi2_lines(insts, count),
                                           suites::inscription(insts),
                                           suites::worked_example(),
                                           suites::klein(streams[1], n),
                                           suites::chart_roundtrip(streams[2], n),
                                           suites::normal_form_idempotence(streams[3], n)};
  const auto numeric = suites::numeric_oracle(streams[4], n);
  results.push_back(numeric.mismatched);
  results.push_back(suites::pfaffian_determinant(streams[5], n));
  results.push_back(suites::field_axioms(streams[6], n));

  json report = header(spec);
  report["trials"] = n;
  json suites_json = json::object();
  Checks checks;
  for (const auto& r : results) {
    suites_json[r.name] = suite_json(r);
    checks.add(r.name, r.ok());
  }
  // incomplete numeric results are best effort: reported, not failed
  suites_json["numeric_recovery"]["recovered"] = numeric.recovered;
  suites_json["numeric_recovery"]["incomplete"] = numeric.incomplete;
  report["suites"] = suites_json;
  return finish(std::move(report), checks);
}

inline RunResult error_result(const JobSpec& spec, int code, const std::string& stage, const std::string& message) {
  json report = header(spec);
  report["status"] = "error";
  report["error"] = {{"stage", stage}, {"message", message}};
  return {code, std::move(report)};
}

}  // namespace detail

/// Runs a job on already-parsed input (nullopt when no input was given).
inline RunResult run_with_input(const JobSpec& spec, const std::optional<json>& input) {
  try {
    if (spec.trials < 1) throw PreconditionError("options", "--trials must be positive");
    switch (spec.command) {
      case Command::construct: return detail::construct(spec, input);
      case Command::klein: return detail::klein(spec);
      case Command::selftest: return detail::selftest(spec);
      default: break;
    }
    if (!input) throw ParseError("input: missing input for " + std::string(command_name(spec.command)));
    switch (spec.command) {
      case Command::verify: return detail::verify(spec, *input);
      case Command::lines_normalize: return detail::lines_normalize(spec, *input);
      case Command::five_secant: return detail::five_secant(spec, *input);
      default: break;
    }
    throw ParseError("input: unknown command");
  } catch (const PreconditionError& e) {
    return detail::error_result(spec, kPreconditionError, e.stage(), e.what());
  } catch (const ParseError& e) {
    return detail::error_result(spec, kParseError, "parse", e.what());
  } catch (const ShapeError& e) {
    return detail::error_result(spec, kParseError, "parse", e.what());
  } catch (const json::exception& e) {
    return detail::error_result(spec, kParseError, "parse", e.what());
  } catch (const ArithmeticError& e) {
    return detail::error_result(spec, kPreconditionError, "arithmetic", e.what());
  }
}

/// Reads --input if given, runs, and writes the report to --output or `out`.
inline int run(const JobSpec& spec, std::ostream& out) {
  RunResult r;
  std::optional<json> input;
  try {
    if (spec.input_path) input = detail::read_input(spec);
    r = run_with_input(spec, input);
  } catch (const ParseError& e) {
    r = detail::error_result(spec, kParseError, "parse", e.what());
  }
  const std::string text = r.report.dump(2) + "\n";
  if (spec.output_path) {
    std::ofstream f(*spec.output_path);
    if (!f) {
      out << detail::error_result(spec, kParseError, "output", "cannot write " + *spec.output_path).report.dump(2) << "\n";
      return kParseError;
    }
    f << text;
  } else {
    out << text;
  }
  return r.exit_code;
}

}  // namespace pfc::cli
