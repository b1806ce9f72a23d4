#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wellfn::cli {

/// Exit codes: 0 success, 1 domain/evaluation error, 2 usage error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_usage = 2;

/// Runs the command line args (without the program name). CSV goes to out
/// unless --out is given; diagnostics and run metadata go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wellfn::cli
