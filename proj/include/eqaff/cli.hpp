#pragma once

#include <string>
#include <vector>

namespace eqaff::cli {

/// Runs one subcommand (invariants, scalespace, detect, match, register, warp,
/// eval, replay). `args` excludes the program name. Returns the process exit
/// code: 0 on success, 2 I/O, 3 configuration, 4 degenerate data, 5 numerical.
/// Errors are reported on stderr as a one-line JSON object.
int run(const std::vector<std::string>& args);

int run(int argc, const char* const* argv);

}  // namespace eqaff::cli
