#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dswap/engine.hpp"

namespace dswap::cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown for --help and --version; what() is the text to print.
struct InfoRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Command { run, sweep, baseline, phases };

struct Invocation {
  Command command = Command::run;
  // Resolved settings keyed by flag name (without dashes); reproduces the run.
  nlohmann::json settings;
  ExperimentConfig config;
  std::string out;
  std::vector<std::uint32_t> sizes;
  std::vector<std::string> policies;
};

// Precedence, lowest first: built-in defaults, --config file (a plain settings
// object or a manifest), the --spec file for `phases`, explicit flags, and
// finally the DSWAP_SEED environment variable.
Invocation parse_args(int argc, const char* const* argv);

ExperimentConfig config_from_settings(const nlohmann::json& settings);

// Header plus one row per sample point.
void write_csv(std::ostream& out, const ExperimentResult& result);
void emit_csv(const ExperimentResult& result, const std::string& path);

nlohmann::json manifest(const Invocation& inv, const nlohmann::json& settings, const std::string& started,
                        const std::string& finished, const std::vector<std::string>& outputs);
void write_manifest(const std::string& csv_path, const nlohmann::json& manifest);

// Full command-line entry point; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dswap::cli
