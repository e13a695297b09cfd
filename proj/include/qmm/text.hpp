#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qmm {

// Nine significant digits, shortest form (trailing zeros dropped):
// 1.5 -> "1.5", 1.0/3 -> "0.333333333", 1e-12 -> "1e-12".
std::string format_real(double value);

// Strict parsers: the whole (trimmed) field must be consumed. They throw
// ValidationError mentioning `what` on failure.
double parse_real(std::string_view text, std::string_view what);
std::uint64_t parse_u64(std::string_view text, std::string_view what);

std::string_view trim(std::string_view text) noexcept;
std::vector<std::string_view> split(std::string_view text, char sep);

}  // namespace qmm
