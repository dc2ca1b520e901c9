#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "uavcoop/params.hpp"

namespace uavcoop {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitGateFailure = 1,
    kExitInputError = 2,
    kExitNumericalFailure = 3,
};

/// VAR:START:STOP:STEPS[:log]
struct SweepSpec {
    std::string variable;
    double start = 0.0;
    double stop = 0.0;
    int steps = 2;
    bool log_scale = false;
};

/// Parses and checks a sweep string; throws ConfigError.
[[nodiscard]] SweepSpec parse_sweep(std::string_view text);

[[nodiscard]] std::vector<double> sweep_grid(const SweepSpec& spec);

/// Applies one sweep value. `r0` receives the value when the variable is r0.
/// epsilon_db is converted to a linear threshold here.
void apply_sweep_value(SystemParams& params, double& r0, const std::string& variable, double value);

/// Runs the tool with argv-style arguments (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace uavcoop
