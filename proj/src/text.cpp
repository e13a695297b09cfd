#include "qmm/text.hpp"

#include <array>
#include <charconv>
#include <string>

#include "qmm/errors.hpp"

namespace qmm {

std::string format_real(double value) {
    std::array<char, 64> buf{};
    const auto [end, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 9);
    if (ec != std::errc{}) {
        throw ValidationError("cannot format real value");
    }
    return std::string(buf.data(), end);
}

std::string_view trim(std::string_view text) noexcept {
    constexpr std::string_view ws = " \t\r\n";
    const auto first = text.find_first_not_of(ws);
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(ws);
    return text.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_real(std::string_view text, std::string_view what) {
    text = trim(text);
    // from_chars does not accept a leading '+'.
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ValidationError(std::string(what) + ": not a real number: '" + std::string(text) +
                              "'");
    }
    return value;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
    text = trim(text);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ValidationError(std::string(what) + ": not a nonnegative integer: '" +
                              std::string(text) + "'");
    }
    return value;
}

}  // namespace qmm
