#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "epe/sampler.hpp"

namespace epe::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitInvariant = 4;
inline constexpr int kExitDomain = 5;
inline constexpr int kExitTruncation = 6;

/// Runs `epe <args...>`; data goes to `out` when no --out is given,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 17 significant digits, '.' separator.
std::string format_number(double x);
/// Header row plus one line per row, LF endings.
std::string to_csv(const sampler::Table& table);

}  // namespace epe::cli
