#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace flowscope {

enum class VerdictStatus { flow_found, no_flow, undecided, property_holds, property_fails };

/// The final machine-readable line of every command, e.g.
/// "VERDICT: no-flow reason=edge-bound".
struct Verdict {
    VerdictStatus status = VerdictStatus::undecided;
    std::optional<std::string> reason;  // edge-bound | no-cover | cyclic-D | oracle | certificate

    [[nodiscard]] std::string line() const;
};

const char* to_string(VerdictStatus status);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int negative = 1;
inline constexpr int input_error = 2;
inline constexpr int undecided = 3;
}  // namespace exit_code

/// Runs the command line `args` (without the program name) and returns the
/// process exit code. FLOWSCOPE_ORACLE_BOUND, when set, overrides the oracle
/// vertex cap.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flowscope
