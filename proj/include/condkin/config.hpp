#ifndef CONDKIN_CONFIG_HPP
#define CONDKIN_CONFIG_HPP

#include <string>
#include <vector>

namespace condkin::cli {

struct Diagnostic {
  std::string module;
  std::string message;
};

// Parses the config and checks every invariant it can reach without running
// the experiment; returns one diagnostic per violation (empty = valid).
// Unreadable files and JSON syntax errors throw InvalidConfiguration.
std::vector<Diagnostic> validate_file(const std::string& path);

// Runs the experiment described by the config, writing its artifact files
// and a manifest into the configured output directory. Throws
// InvalidConfiguration for config problems and NumericalFailure (or another
// model error) for runtime failures.
void run_file(const std::string& path);

}  // namespace condkin::cli

#endif
