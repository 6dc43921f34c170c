#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace qbi::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,      ///< bad flags, unreadable or invalid model, unknown names
  kInferenceError = 2,  ///< impossible evidence
  kInternalError = 3,   ///< numerical invariant violated
};

/// Prints `e` to `err` and returns the exit code it maps to.
int report_error(const std::exception& e, std::ostream& err);

/// Runs one command line (args[0] is the program name) and returns its exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qbi::cli
