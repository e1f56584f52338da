#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pfaffcubic/cli.hpp"

using namespace pfc;
using cli::Command;
using cli::JobSpec;
using io::json;

namespace {

cli::RunResult run(Command c, const std::optional<json>& input = std::nullopt, int trials = 20) {
  JobSpec spec;
  spec.command = c;
  spec.trials = trials;
  return cli::run_with_input(spec, input);
}

json reference_w4_json() {
  json basis = json::array();
  for (const auto& b : reference::w4().basis) basis.push_back(io::to_json(b));
  return {{"format", 1}, {"w4", basis}};
}

}  // namespace

TEST(Io, ScalarsAndTowers) {
  const TowerPtr t = klein_tower();
  const FieldElement x = FieldElement(Rational(1, 2)) - FieldElement::generator(t, 1) * FieldElement::generator(t, 3);
  const json tj = io::tower_to_json(t);
  const TowerPtr back = io::tower_from_json(tj);
  EXPECT_EQ(io::tower_to_json(back), tj);
  EXPECT_EQ(io::scalar_from_json(io::to_json(x), back).str(), x.str());
  EXPECT_EQ(io::scalar_from_json(json(7), nullptr), FieldElement(7));
  EXPECT_THROW(io::scalar_from_json(json(true), nullptr), ParseError);
}

TEST(Io, InstanceRoundTrip) {
  SplitMix64 rng(71);
  for (int trial = 0; trial < 3; ++trial) {
    const auto inst = trial == 0 ? klein_instance().instance : random_instance(rng);
    const auto back = io::instance_from_json(io::to_json(inst));
    EXPECT_EQ(back.u, inst.u);
    EXPECT_EQ(back.m, inst.m);
    EXPECT_EQ(back.m4, inst.m4);
    EXPECT_EQ(back.params, inst.params);
  }
}

TEST(Io, ParamsDefaultsAndGauge) {
  const ParamsA9 p = io::params_from_json(json::parse(R"({"a": {"024": 2}, "b": [2, 4, 6, 2, 2]})"), nullptr);
  EXPECT_EQ(p.a024, FieldElement(2));
  EXPECT_EQ(p.a034, FieldElement(1));
  EXPECT_EQ(p.b, (std::array<FieldElement, 5>{1, 2, 3, 1, 1}));
  EXPECT_THROW(io::params_from_json(json::parse(R"({"a": {"012": 2}})"), nullptr), ParseError);
  EXPECT_THROW(io::params_from_json(json::parse(R"({"a": {"999": 2}})"), nullptr), ParseError);
  EXPECT_THROW(io::params_from_json(json::parse(R"({"b": [1, 2]})"), nullptr), ParseError);
}

TEST(Io, LineConfigForms) {
  const LineConfig cfg{reference::lines(), std::nullopt};
  EXPECT_EQ(io::line_config_from_json(io::to_json(cfg)).lines, cfg.lines);
  json pairs = json::array();
  for (const auto& [a, b] : cfg.point_pairs()) pairs.push_back(json::array({io::to_json(a), io::to_json(b)}));
  const json j = {{"point_pairs", pairs}, {"seed", 4}};
  const LineConfig back = io::line_config_from_json(j);
  EXPECT_EQ(back.lines, cfg.lines);
  EXPECT_EQ(back.seed, 4u);
  EXPECT_THROW(io::line_config_from_json(json::object()), ParseError);
}

TEST(Cli, ConstructDefaultPasses) {
  const auto r = run(Command::construct);
  EXPECT_EQ(r.exit_code, cli::kPass);
  EXPECT_EQ(r.report["checks"]["pfaffian_identity"], "pass");
  EXPECT_EQ(r.report["lines"].size(), 5u);
  EXPECT_EQ(r.report["instance"]["format"], 1);
}

TEST(Cli, ConstructThenVerify) {
  const auto built = run(Command::construct, json::parse(R"({"a": {"024": 3, "034": -2, "124": 5}})"));
  ASSERT_EQ(built.exit_code, cli::kPass);
  const auto r = run(Command::verify, built.report["instance"]);
  EXPECT_EQ(r.exit_code, cli::kPass) << r.report.dump(2);
  for (const auto& [name, value] : r.report["checks"].items()) EXPECT_EQ(value, "pass") << name;
  EXPECT_EQ(r.report["checks"].size(), 5u);
}

TEST(Cli, VerifyNamesCorruptedCheck) {
  json inst = run(Command::construct).report["instance"];
  inst["m"][0] = inst["m"][0].get<std::string>() + " + w0";
  const auto r = run(Command::verify, inst);
  EXPECT_EQ(r.exit_code, cli::kCheckFailed);
  EXPECT_EQ(r.report["status"], "fail");
  EXPECT_EQ(r.report["failed_check"], "pfaffian_identity");
  EXPECT_EQ(r.report["checks"]["pfaffian_identity"], "fail");
}

TEST(Cli, KleinSixChecks) {
  const auto r = run(Command::klein);
  EXPECT_EQ(r.exit_code, cli::kPass);
  ASSERT_EQ(r.report["checks"].size(), 6u);
  for (const auto& [name, value] : r.report["checks"].items()) EXPECT_EQ(value, "pass") << name;
}

TEST(Cli, LinesNormalizeReference) {
  json lines = io::to_json(LineConfig{reference::lines(), std::nullopt});
  const auto r = run(Command::lines_normalize, lines);
  EXPECT_EQ(r.exit_code, cli::kPass) << r.report.dump(2);
  EXPECT_EQ(r.report["checks"]["roundtrip"], "pass");
  EXPECT_EQ(r.report["result"]["params"]["a124"], "0");
}

TEST(Cli, FiveSecantReference) {
  const auto r = run(Command::five_secant, reference_w4_json());
  EXPECT_EQ(r.exit_code, cli::kPass) << r.report.dump(2);
  EXPECT_EQ(r.report["quadrics"].size(), 5u);
  EXPECT_EQ(r.report["linear_equations"].size(), 10u);
  EXPECT_EQ(r.report["numeric"]["points"].size(), 5u);
}

TEST(Cli, SelftestIsDeterministic) {
  const auto a = run(Command::selftest, std::nullopt, 3);
  const auto b = run(Command::selftest, std::nullopt, 3);
  EXPECT_EQ(a.exit_code, cli::kPass) << a.report.dump(2);
  EXPECT_EQ(a.report.dump(), b.report.dump());
}

TEST(Cli, ErrorCodes) {
  const auto missing = run(Command::verify);
  EXPECT_EQ(missing.exit_code, cli::kParseError);
  const auto bad_schema = run(Command::verify, json::parse(R"({"params": {"b": "x"}})"));
  EXPECT_EQ(bad_schema.exit_code, cli::kParseError);
  const auto gauge = run(Command::construct, json::parse(R"({"b": [1, 1, 1, 0, 1]})"));
  EXPECT_EQ(gauge.exit_code, cli::kPreconditionError);
  EXPECT_EQ(gauge.report["error"]["stage"], "params");
  json dependent = reference_w4_json();
  dependent["w4"][3] = dependent["w4"][2];
  const auto dep = run(Command::five_secant, dependent);
  EXPECT_EQ(dep.exit_code, cli::kPreconditionError);
  EXPECT_EQ(dep.report["error"]["stage"], "five_secant");
}

TEST(Cli, FileRoundTripAndParseError) {
  const auto dir = std::filesystem::temp_directory_path() / "pfaffcubic_cli_test";
  std::filesystem::create_directories(dir);
  const auto bad = dir / "bad.json";
  std::ofstream(bad) << "{ not json";
  JobSpec spec;
  spec.command = Command::verify;
  spec.input_path = bad.string();
  std::ostringstream out;
  EXPECT_EQ(cli::run(spec, out), cli::kParseError);
  EXPECT_EQ(json::parse(out.str())["error"]["stage"], "parse");

  spec.command = Command::construct;
  spec.input_path.reset();
  spec.output_path = (dir / "report.json").string();
  EXPECT_EQ(cli::run(spec, out), cli::kPass);
  std::ifstream in(*spec.output_path);
  EXPECT_EQ(json::parse(in)["checks"]["pfaffian_identity"], "pass");
  std::filesystem::remove_all(dir);
}
