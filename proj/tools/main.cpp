#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "pfaffcubic/cli.hpp"

int main(int argc, char** argv) {
  using pfc::cli::Command;
  CLI::App app{"Pfaffian representations of cubic surfaces"};
  app.require_subcommand(1);

  pfc::cli::JobSpec spec;
  std::string root = "first";
  const std::map<std::string, Command> commands{
      {"construct", Command::construct}, {"verify", Command::verify},     {"lines-normalize", Command::lines_normalize},
      {"five-secant", Command::five_secant}, {"klein", Command::klein}, {"selftest", Command::selftest}};
  const std::map<std::string, std::string> help{
      {"construct", "chart parameters -> explicit pfaffian instance, pentahedron and five lines"},
      {"verify", "check a stored instance"},
      {"lines-normalize", "five lines -> normal-form parameters"},
      {"five-secant", "W4 -> quadrics, W5 and its numeric rank-2 points"},
      {"klein", "symmetry checks of the Klein cubic"},
      {"selftest", "all seeded property suites"}};

  for (const auto& [name, cmd] : commands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--input", spec.input_path, "input JSON file");
    sub->add_option("--output", spec.output_path, "report file (default stdout)");
    sub->add_option("--seed", spec.seed, "seed of every random choice");
    sub->add_option("--tol", spec.tol, "numeric residual tolerance");
    sub->add_option("--root", root, "root of the u-quadratic")->check(CLI::IsMember({"first", "second"}));
    sub->add_option("--trials", spec.trials, "trials per property suite")->check(CLI::PositiveNumber);
    sub->callback([&spec, cmd = cmd] { spec.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pfc::cli::kParseError;
  }
  spec.root_choice = root == "second" ? pfc::RootChoice::second : pfc::RootChoice::first;
  return pfc::cli::run(spec, std::cout);
}
