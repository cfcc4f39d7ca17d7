#pragma once

#include <ostream>

#include "intraday/oracle.hpp"

namespace intraday {

enum ExitCode : int { kOk = 0, kValidationError = 1, kVerificationFailure = 2, kIoFailure = 3 };

// Seams for tests: replaces pieces the verify command checks against.
struct CliHooks {
    CoefficientProvider coefficients = closed_form_coefficients;
};

// Entry point of the command-line tool; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const CliHooks& hooks);

} // namespace intraday
