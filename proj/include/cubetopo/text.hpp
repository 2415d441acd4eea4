#pragma once

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cubetopo/error.hpp"

namespace cubetopo::text {

struct Line {
    std::size_t number;  // 1-based
    std::vector<std::string_view> tokens;
};

/// Splits `input` into lines of whitespace-separated tokens. Everything after
/// `comment` on a line is ignored. Blank lines are kept (empty token list)
/// since several formats use them as block terminators.
inline std::vector<Line> tokenize(std::string_view input, char comment = '#') {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= input.size()) {
        std::size_t end = input.find('\n', pos);
        if (end == std::string_view::npos) end = input.size();
        std::string_view raw = input.substr(pos, end - pos);
        ++number;
        if (std::size_t c = raw.find(comment); c != std::string_view::npos) raw = raw.substr(0, c);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
            if (j > i) line.tokens.push_back(raw.substr(i, j - i));
            i = j;
        }
        lines.push_back(std::move(line));
        if (end == input.size()) break;
        pos = end + 1;
    }
    return lines;
}

inline long long parse_int(std::string_view token, std::size_t line) {
    long long value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (!token.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last)
        throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
    return value;
}

}  // namespace cubetopo::text
