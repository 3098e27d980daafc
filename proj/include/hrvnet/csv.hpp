#pragma once

// Minimal CSV handling for the plain, unquoted files this project reads and
// writes. Numeric formatting uses shortest round-trip representation so that
// emitted files are deterministic and re-parse to the same doubles.

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hrvnet/error.hpp"

namespace hrvnet::csv {

inline std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

// Reads one line, strips a trailing '\r', bumps the line counter.
inline bool getline(std::istream& in, std::string& line, std::size_t& line_no) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    return true;
}

inline double parse_double(std::string_view field, std::size_t line_no, const char* what) {
    double value = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty())
        throw ParseError(std::string("expected a number for ") + what + ", got '" +
                             std::string(field) + "'",
                         line_no);
    return value;
}

inline long parse_long(std::string_view field, std::size_t line_no, const char* what) {
    long value = 0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty())
        throw ParseError(std::string("expected an integer for ") + what + ", got '" +
                             std::string(field) + "'",
                         line_no);
    return value;
}

inline std::string format(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::string format(std::optional<double> value) {
    return value ? format(*value) : std::string();
}

inline void expect_header(const std::string& line, std::string_view expected,
                          std::size_t line_no) {
    if (line != expected)
        throw ParseError("malformed header: expected '" + std::string(expected) + "', got '" +
                             line + "'",
                         line_no);
}

}  // namespace hrvnet::csv
