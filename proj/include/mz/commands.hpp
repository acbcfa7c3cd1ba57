#ifndef MZ_COMMANDS_HPP
#define MZ_COMMANDS_HPP

#include <string_view>
#include <vector>

#include "mz/json_io.hpp"

namespace mz {

/// Exit code contract shared by the C API and the CLI.
enum ExitCode : int { kExitAffirmative = 0, kExitNegative = 1, kExitError = 2 };

struct CommandResult {
  int exit_code = kExitAffirmative;
  json report;
};

/// Command names accepted by run_command.
const std::vector<std::string_view>& command_names();

/// Dispatches one JSON request. Raises mz::Error for bad input or failed
/// module operations; malformed requests raise ConfigError.
CommandResult run_command(std::string_view command, const json& request);

/// Error report with exit code kExitError.
json error_report(ErrorCode code, std::string_view message);

}  // namespace mz

#endif
