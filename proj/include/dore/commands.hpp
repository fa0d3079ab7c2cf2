#ifndef DORE_COMMANDS_HPP
#define DORE_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dore {

// Exit codes: 0 all directed checks pass, 1 a check failed, 2 spec or usage
// error, 3 an internal cap tripped.
constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_spec_error = 2;
constexpr int exit_internal_cap = 3;

// Dispatches one CLI invocation: argv without the program name. Reports are
// written to out, diagnostics to err.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

} // namespace dore

#endif
