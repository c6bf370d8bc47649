#pragma once

#include <string>
#include <vector>

namespace cfevrp {

struct RunResult {
  int exit_code = -1;        // -1 when killed or not runnable
  bool timed_out = false;
  std::string out;           // captured stdout
  std::string err;           // captured stderr
  double elapsed_seconds = 0.0;
};

// Runs argv[0] with the given arguments, capturing stdout and stderr.
// timeout_seconds <= 0 means no limit. On timeout the whole process group
// is killed so solver worker threads do not linger.
RunResult run_process(const std::vector<std::string>& argv,
                      double timeout_seconds);

// Splits a command string on whitespace (no quoting rules; solver commands
// are plain "program arg arg" strings).
std::vector<std::string> split_command(const std::string& command);

}  // namespace cfevrp
