#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace drowsy::detail {

struct Line {
    int number = 0;                  // 1-based source line
    std::vector<std::string> tokens; // whitespace-split fields
    std::string rest;                // everything after the first token
};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

// Splits text into non-empty lines, dropping '#' comments.
inline std::vector<Line> scan_lines(std::string_view text) {
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                              : eol - pos);
        ++number;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        if (const std::size_t hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        raw = trim(raw);
        if (raw.empty())
            continue;

        Line line;
        line.number = number;
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t'))
                ++i;
            std::size_t j = i;
            while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t')
                ++j;
            if (j > i)
                line.tokens.emplace_back(raw.substr(i, j - i));
            if (line.tokens.size() == 1)
                line.rest = std::string(trim(raw.substr(j)));
            i = j;
        }
        out.push_back(std::move(line));
    }
    return out;
}

} // namespace drowsy::detail
