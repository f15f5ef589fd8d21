#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "solgeom/sol_core.hpp"

namespace solgeom::cli {

inline constexpr std::string_view kVersion = "1.0.0";

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDegenerate = 2;
inline constexpr int kExitViolation = 3;

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a real such as "-1.5", "2e-3" or a fraction "3/4". Throws InvalidInput.
double parse_real(std::string_view text);

/// Parses "x,y,z". Throws InvalidInput.
SolPoint parse_triple(std::string_view text);

/// Comma-separated list of reals. Throws InvalidInput.
std::vector<double> parse_list(std::string_view text);

}  // namespace solgeom::cli
