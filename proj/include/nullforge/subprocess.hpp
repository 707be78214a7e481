#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace nullforge {

struct CommandResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string output; // interleaved stdout + stderr
  double wall_seconds = 0.0;
};

/// Runs `sh -c command` with the given working directory and extra
/// environment variables. A non-positive timeout means no limit; on timeout
/// the whole process group is killed.
CommandResult run_command(const std::string& command,
                          const std::filesystem::path& cwd,
                          const std::vector<std::pair<std::string, std::string>>& extra_env,
                          double timeout_seconds);

} // namespace nullforge
