#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace genlevel::cli {

enum ExitCode : int { kSuccess = 0, kValidationFailure = 1, kIoFailure = 2 };

struct RunConfig {
  std::filesystem::path registry_path;
  std::filesystem::path results_dir;
  std::filesystem::path output_dir = "out";
  std::vector<std::string> scopes = {"A"};
  std::vector<std::string> formats = {"json", "csv"};
  std::vector<std::string> synergy_kinds = {"skill", "modality", "compgen"};
  double epsilon = 1e-9;
  int precision = 2;
};

/// Applies a JSON config file over `config`. Relative paths resolve against
/// the file's directory. Throws Error{ConfigError|IoError}.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace genlevel::cli
