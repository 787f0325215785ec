// wavehdc: experiment runner for the wave-domain hyperdimensional computing
// stack. Runs registered experiments from key = value configs, emits JSON or
// CSV reports, executes field-engine scenario files, and runs the full
// acceptance suite.
//
// Exit codes: 0 success, 1 acceptance-predicate failure, 2 usage/config error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wavehdc/experiments/acceptance.hpp"
#include "wavehdc/experiments/runners.hpp"
#include "wavehdc/scenario.hpp"

namespace {

void print_experiment_list(std::ostream& out) {
  out << "registered experiments:\n";
  for (const auto& def : wavehdc::experiments::registry())
    out << "  " << def.name << "  ->  " << def.anchor << '\n';
  out << "meta commands:\n"
      << "  acceptance  ->  run every acceptance criterion at desk-scale defaults\n"
      << "  scenario    ->  run a field-engine scenario file (--scenario, --outdir)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wave-domain hyperdimensional computing experiments"};
  app.allow_extras(false);

  std::string experiment;
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  std::string scenario_path;
  std::string scenario_outdir = ".";
  bool list = false;
  std::int64_t seed_override = -1;
  std::int64_t trials_override = -1;

  app.add_option("experiment", experiment,
                 "experiment name, 'acceptance', or 'scenario'");
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--out", out_path, "report output path (default: stdout)");
  app.add_option("--format", format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed_override, "override the master seed");
  app.add_option("--trials", trials_override, "override the trial count");
  app.add_flag("--list", list, "list registered experiments and exit");
  app.add_option("--scenario", scenario_path, "scenario file (scenario command)");
  app.add_option("--outdir", scenario_outdir, "scenario output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (list) {
    print_experiment_list(std::cout);
    return 0;
  }
  if (experiment.empty()) {
    std::cerr << "error: no experiment named (try --list)\n";
    return 2;
  }

  try {
    if (experiment == "acceptance") {
      return wavehdc::experiments::run_acceptance(std::cout) ? 0 : 1;
    }
    if (experiment == "scenario") {
      if (scenario_path.empty()) {
        std::cerr << "error: scenario requires --scenario FILE\n";
        return 2;
      }
      const auto sc = wavehdc::fdtd::load_scenario(scenario_path);
      wavehdc::fdtd::run_scenario(sc, scenario_outdir);
      std::cout << "scenario complete; outputs in " << scenario_outdir << '\n';
      return 0;
    }

    std::string config_text;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot open config " << config_path << '\n';
        return 2;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      config_text = ss.str();
    }
    if (seed_override >= 0)
      config_text += "\nseed = " + std::to_string(seed_override) + "\n";
    if (trials_override >= 0)
      config_text += "\ntrials = " + std::to_string(trials_override) + "\n";

    const auto report = wavehdc::experiments::run_experiment(experiment, config_text);

    if (out_path.empty()) {
      if (format == "json")
        wavehdc::experiments::write_json_report(report, std::cout);
      else
        wavehdc::experiments::write_csv_report(report, std::cout);
    } else {
      if (format == "json")
        wavehdc::experiments::write_json_report(report, out_path);
      else
        wavehdc::experiments::write_csv_report(report, out_path);
    }
    if (!report.acceptance_pass) {
      std::cerr << "acceptance predicate failed: " << report.acceptance_detail << '\n';
      return 1;
    }
    return 0;
  } catch (const wavehdc::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (std::string(e.what()).find("unknown experiment") != std::string::npos)
      print_experiment_list(std::cerr);
    return 2;
  } catch (const wavehdc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
