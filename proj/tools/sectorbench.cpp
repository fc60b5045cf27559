#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <filesystem>
#include <fstream>
#include <iostream>

#include "sectorbench/sectorbench.hpp"

namespace {

struct Flags {
  std::string out;
  double tol = 0.0;
  std::int64_t seed = -1;
  bool pretty = false;
  bool json = false;
  bool quiet = false;
  std::vector<std::string> checks;
};

void add_common(CLI::App* app, Flags& flags) {
  app->add_option("--out", flags.out, "write the JSON report here instead of stdout");
  app->add_option("--tol", flags.tol, "override the equality tolerance")->check(CLI::PositiveNumber);
  app->add_option("--seed", flags.seed, "override the scenario seed")->check(CLI::NonNegativeNumber);
  app->add_flag("--pretty", flags.pretty, "indent the JSON report");
  app->add_flag("--json", flags.json, "compact JSON report (default)");
  app->add_flag("--quiet", flags.quiet, "suppress the summary on stderr");
  app->add_option("--check", flags.checks, "only report checks with these tags")->delimiter(',');
}

sectorbench::RunOptions options(const Flags& flags) {
  sectorbench::RunOptions opts;
  if (flags.tol > 0.0) opts.tol = flags.tol;
  if (flags.seed >= 0) opts.seed = static_cast<std::uint64_t>(flags.seed);
  opts.checks = flags.checks;
  opts.pretty = flags.pretty && !flags.json;
  return opts;
}

int emit(const sectorbench::RunOutcome& outcome, const Flags& flags) {
  const std::string text = outcome.report.dump(flags.pretty && !flags.json ? 2 : -1);
  if (flags.out.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream file(flags.out);
    if (!file) {
      std::cerr << "cannot write " << flags.out << '\n';
      return sectorbench::kExitSchema;
    }
    file << text << '\n';
  }
  if (!flags.quiet) std::cerr << outcome.summary << '\n';
  return outcome.exit_code;
}

int dump_fixtures(const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& f : sectorbench::fixture_list()) {
    std::ofstream file(std::filesystem::path(dir) / (f.name + ".json"));
    if (!file) {
      std::cerr << "cannot write into " << dir << '\n';
      return sectorbench::kExitSchema;
    }
    file << f.scenario().dump(2) << '\n';
  }
  std::cerr << "wrote " << sectorbench::fixture_list().size() << " fixtures to " << dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constraint and superselection workbench for finite-dimensional C*-systems"};
  app.set_config("--config", "", "TOML or INI file with default flag values");
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  add_common(&app, flags);

  std::string command, path;
  CLI::App* run = app.add_subcommand("run", "run COMMAND on a scenario file");
  run->add_option("command", command, "t-procedure, superselect, pipeline, toy-model, verify or fixtures")
      ->required()
      ->check(CLI::IsMember(sectorbench::commands()));
  run->add_option("scenario", path, "scenario JSON file");

  std::vector<CLI::App*> direct;
  for (const auto& name : sectorbench::commands()) {
    if (name == "fixtures") continue;
    CLI::App* sub = app.add_subcommand(name, "run " + name + " on a scenario file");
    sub->add_option("scenario", path, "scenario JSON file")->required();
    direct.push_back(sub);
  }

  std::string dump_dir, show;
  CLI::App* fixtures = app.add_subcommand("fixtures", "list the bundled scenarios");
  fixtures->add_option("--dump", dump_dir, "write every fixture as NAME.json into this directory");
  fixtures->add_option("--show", show, "print one fixture scenario");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fixtures->parsed()) {
      if (!dump_dir.empty()) return dump_fixtures(dump_dir);
      if (!show.empty()) {
        std::cout << sectorbench::fixture(show).scenario().dump(2) << '\n';
        return 0;
      }
      return emit(sectorbench::run_command("fixtures", sectorbench::Json(), options(flags)), flags);
    }
    if (run->parsed()) {
      if (command != "fixtures" && path.empty()) {
        std::cerr << "run " << command << " needs a scenario file\n";
        return sectorbench::kExitSchema;
      }
      return emit(sectorbench::run_file(command, path, options(flags)), flags);
    }
    for (CLI::App* sub : direct) {
      if (sub->parsed()) return emit(sectorbench::run_file(sub->get_name(), path, options(flags)), flags);
    }
  } catch (const sectorbench::SchemaError& e) {
    std::cerr << e.what() << '\n';
    return sectorbench::kExitSchema;
  }
  return 0;
}
