#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace pdspace::cli {

// Exit codes.
inline constexpr int kWitnessed = 0;
inline constexpr int kRefuted = 1;
inline constexpr int kBadInput = 2;
inline constexpr int kSpaceMismatch = 3;
inline constexpr int kTooLarge = 4;
inline constexpr int kNoGeodesic = 5;
inline constexpr int kInconclusive = 6;

/// Runs the command line `args` (program name excluded) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest round-trip decimal, capped at 12 significant digits.
std::string format_number(double value);

/// Copy of `j` with every floating-point number rounded to 12 significant digits.
nlohmann::json round_numbers(const nlohmann::json& j);

}  // namespace pdspace::cli
