// condkin: condensate kinetics laboratory, config-driven front end.
//
// Usage:
//   condkin run <config.json>       run an experiment, write its artifacts
//   condkin validate <config.json>  list every violated invariant
//
// Exit codes: 0 success, 1 configuration/validation failure, 2 numerical failure.

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "condkin/config.hpp"
#include "condkin/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"condkin: condensate kinetics laboratory"};
  app.require_subcommand(1);

  std::string run_path;
  auto* run_cmd = app.add_subcommand("run", "run the experiment described by a config file");
  run_cmd->add_option("config", run_path, "path to the JSON config")->required();

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "check a config file without running it");
  validate_cmd->add_option("config", validate_path, "path to the JSON config")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      condkin::cli::run_file(run_path);
      return 0;
    }
    auto diagnostics = condkin::cli::validate_file(validate_path);
    for (const auto& d : diagnostics)
      std::cerr << d.module << ": " << d.message << "\n";
    return diagnostics.empty() ? 0 : 1;
  } catch (const condkin::InvalidConfiguration& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const condkin::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
