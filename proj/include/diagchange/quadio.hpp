#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "quad.hpp"

namespace dc {

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c != ' ' && c != '\t' && c != '\r') out += c;
    }
    return out;
}

inline std::vector<int> parse_int_list(const std::string& s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw SyntaxError("expected [..] list: " + s);
    std::vector<int> out;
    std::string body = s.substr(1, s.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
            throw SyntaxError("bad permutation entry '" + item + "'");
        }
        out.push_back(std::stoi(item));
    }
    return out;
}

inline Datum parse_datum_line(const std::string& line) {
    std::string s = strip_spaces(line);
    int k = -1;
    std::vector<int> left, right;
    bool has_l = false, has_r = false;
    std::stringstream ss(s);
    std::string field;
    while (std::getline(ss, field, ';')) {
        auto eq = field.find('=');
        if (eq == std::string::npos) throw SyntaxError("expected key=value in '" + line + "'");
        std::string key = field.substr(0, eq);
        std::string value = field.substr(eq + 1);
        if (key == "k") {
            if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
                throw SyntaxError("bad k in '" + line + "'");
            }
            k = std::stoi(value);
        } else if (key == "perm_l") {
            left = parse_int_list(value);
            has_l = true;
        } else if (key == "perm_r") {
            right = parse_int_list(value);
            has_r = true;
        } else {
            throw SyntaxError("unknown datum field '" + key + "'");
        }
    }
    if (k < 1 || !has_l || !has_r) throw SyntaxError("datum needs k, perm_l and perm_r: '" + line + "'");
    if (static_cast<int>(left.size()) != k || static_cast<int>(right.size()) != k) {
        throw SyntaxError("permutation length differs from k=" + std::to_string(k));
    }
    return {Perm(left), Perm(right)};
}

inline Wedge parse_wedge_body(const std::string& text) {
    std::string s = strip_spaces(text);
    if (s.size() < 4 || s.substr(0, 2) != "[[" || s.substr(s.size() - 2) != "]]") {
        throw SyntaxError("wedge must look like [[xl,yl],[xr,yr]]: " + text);
    }
    std::string body = s.substr(2, s.size() - 4);
    auto mid = body.find("],[");
    if (mid == std::string::npos) throw SyntaxError("wedge must look like [[xl,yl],[xr,yr]]: " + text);
    auto pair = [&](const std::string& p) {
        auto comma = p.find(',');
        if (comma == std::string::npos || p.find(',', comma + 1) != std::string::npos) {
            throw SyntaxError("expected two coordinates in '" + p + "'");
        }
        return Vec2{Scalar::parse(p.substr(0, comma)), Scalar::parse(p.substr(comma + 1))};
    };
    return {pair(body.substr(0, mid)), pair(body.substr(mid + 3))};
}

}  // namespace detail

struct QuadFile {
    Quadrangulation quad;
    std::int64_t discriminant = 0;
    std::vector<std::string> comments;
};

// Reads the text format without checking the geometric invariants.
inline QuadFile parse_quad_file(const std::string& text) {
    std::stringstream ss(text);
    std::string raw;
    QuadFile f;
    bool header = false, has_d = false, has_datum = false;
    std::vector<Wedge> wedges;
    int line_no = 0;
    while (std::getline(ss, raw)) {
        ++line_no;
        std::string line = detail::trim(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            f.comments.push_back(detail::trim(line.substr(1)));
            continue;
        }
        const std::string where = " (line " + std::to_string(line_no) + ")";
        if (!header) {
            if (line != "quadfmt 1") throw SyntaxError("missing 'quadfmt 1' header" + where);
            header = true;
            continue;
        }
        if (line.rfind("D ", 0) == 0) {
            std::string v = detail::trim(line.substr(2));
            if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
                throw SyntaxError("bad discriminant" + where);
            }
            f.discriminant = std::stoll(v);
            if (f.discriminant != 0 && !is_square_free(f.discriminant)) throw NonSquareFreeD(v);
            has_d = true;
        } else if (line.rfind("k=", 0) == 0 || line.rfind("k =", 0) == 0) {
            f.quad.datum = detail::parse_datum_line(line);
            has_datum = true;
        } else if (line.rfind("wedge ", 0) == 0) {
            std::string rest = detail::trim(line.substr(6));
            auto sp = rest.find(' ');
            if (sp == std::string::npos) throw SyntaxError("wedge needs an index and a body" + where);
            std::string idx = rest.substr(0, sp);
            if (idx.find_first_not_of("0123456789") != std::string::npos ||
                std::stoi(idx) != static_cast<int>(wedges.size()) + 1) {
                throw SyntaxError("wedges must be numbered 1..k in order" + where);
            }
            wedges.push_back(detail::parse_wedge_body(rest.substr(sp + 1)));
        } else {
            throw SyntaxError("unrecognised line '" + line + "'" + where);
        }
    }
    if (!header) throw SyntaxError("empty input");
    if (!has_d || !has_datum) throw SyntaxError("file needs a D line and a datum line");
    if (static_cast<int>(wedges.size()) != f.quad.datum.k()) {
        throw SyntaxError("expected " + std::to_string(f.quad.datum.k()) + " wedges, got " +
                          std::to_string(wedges.size()));
    }
    for (const Wedge& w : wedges) {
        for (const Scalar* s : {&w.left.x, &w.left.y, &w.right.x, &w.right.y}) {
            if (s->discriminant() != 0 && s->discriminant() != f.discriminant) {
                throw MixedDiscriminant("scalar " + s->str() + " in a D=" + std::to_string(f.discriminant) + " file");
            }
        }
    }
    f.quad.wedges = std::move(wedges);
    return f;
}

inline Quadrangulation deserialize(const std::string& text) {
    QuadFile f = parse_quad_file(text);
    auto v = validate(f.quad);
    if (!v.empty()) {
        std::string msg;
        for (auto& s : v) msg += (msg.empty() ? "" : "; ") + s;
        throw ValidationFailed(msg);
    }
    return f.quad;
}

inline std::int64_t discriminant_of(const Quadrangulation& q) {
    for (const Wedge& w : q.wedges) {
        for (const Scalar* s : {&w.left.x, &w.left.y, &w.right.x, &w.right.y}) {
            if (s->discriminant() != 0) return s->discriminant();
        }
    }
    return 0;
}

inline std::string serialize(const Quadrangulation& q, const std::vector<std::string>& comments = {}) {
    std::ostringstream os;
    os << "quadfmt 1\n";
    for (const auto& c : comments) os << "# " << c << "\n";
    os << "D " << discriminant_of(q) << "\n";
    os << q.datum.str() << "\n";
    for (int i = 1; i <= q.k(); ++i) {
        const Wedge& w = q.wedge(i);
        os << "wedge " << i << " [[" << w.left.x << "," << w.left.y << "],[" << w.right.x << "," << w.right.y
           << "]]\n";
    }
    return os.str();
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline QuadFile load_quad_file(const std::string& path) { return parse_quad_file(read_text_file(path)); }

}  // namespace dc
