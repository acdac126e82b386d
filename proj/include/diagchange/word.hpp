#pragma once

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "datum.hpp"
#include "errors.hpp"

namespace dc {

// Name of a wedge side: (i, l) or (i, r).
struct Label {
    int index = 0;
    Side side = Side::Left;

    friend bool operator==(const Label&, const Label&) = default;
    friend auto operator<=>(const Label& a, const Label& b) {
        if (a.index != b.index) return a.index <=> b.index;
        return static_cast<int>(a.side) <=> static_cast<int>(b.side);
    }
    std::string str() const { return std::to_string(index) + side_char(side); }
};

using Word = std::vector<Label>;

inline Word operator+(Word a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// "1l 2r 3l"; the empty word prints as "".
inline std::string format_word(const Word& w) {
    std::string out;
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (j) out += ' ';
        out += w[j].str();
    }
    return out;
}

inline Word parse_word(const std::string& text) {
    Word w;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        if (tok.size() < 2 || (tok.back() != 'l' && tok.back() != 'r')) throw SyntaxError("bad letter '" + tok + "'");
        std::string num = tok.substr(0, tok.size() - 1);
        if (num.find_first_not_of("0123456789") != std::string::npos || num[0] == '0') {
            throw SyntaxError("bad letter '" + tok + "'");
        }
        w.push_back({std::stoi(num), tok.back() == 'l' ? Side::Left : Side::Right});
    }
    return w;
}

inline std::ostream& operator<<(std::ostream& os, const Label& l) { return os << l.str(); }

// True when needle occurs in hay starting at position pos.
inline bool occurs_at(const Word& hay, const Word& needle, std::size_t pos) {
    if (pos + needle.size() > hay.size()) return false;
    for (std::size_t j = 0; j < needle.size(); ++j) {
        if (hay[pos + j] != needle[j]) return false;
    }
    return true;
}

}  // namespace dc
