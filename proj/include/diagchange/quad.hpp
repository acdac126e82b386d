#pragma once

#include <string>
#include <vector>

#include "datum.hpp"
#include "vec2.hpp"

namespace dc {

struct Wedge {
    Vec2 left;
    Vec2 right;

    const Vec2& side(Side s) const { return s == Side::Left ? left : right; }
    Vec2& side(Side s) { return s == Side::Left ? left : right; }

    friend bool operator==(const Wedge& a, const Wedge& b) { return a.left == b.left && a.right == b.right; }
    friend bool operator!=(const Wedge& a, const Wedge& b) { return !(a == b); }
};

struct Quadrangulation {
    Datum datum;
    std::vector<Wedge> wedges;  // wedges[i-1] is the wedge of quadrilateral i

    int k() const { return datum.k(); }
    const Wedge& wedge(int i) const { return wedges[i - 1]; }
    Wedge& wedge(int i) { return wedges[i - 1]; }
    const Vec2& side(int i, Side s) const { return wedge(i).side(s); }

    friend bool operator==(const Quadrangulation& a, const Quadrangulation& b) {
        return a.datum == b.datum && a.wedges == b.wedges;
    }
    friend bool operator!=(const Quadrangulation& a, const Quadrangulation& b) { return !(a == b); }
};

enum class Slant { LeftSlanted, RightSlanted, VerticalDiagonal };

inline const char* slant_name(Slant s) {
    switch (s) {
        case Slant::LeftSlanted: return "left-slanted";
        case Slant::RightSlanted: return "right-slanted";
        default: return "vertical-diagonal";
    }
}

// Every violated constraint, or nothing when q is a valid quadrangulation.
inline std::vector<std::string> validate(const Quadrangulation& q) {
    std::vector<std::string> out;
    if (static_cast<int>(q.wedges.size()) != q.k()) {
        out.push_back("expected " + std::to_string(q.k()) + " wedges, got " + std::to_string(q.wedges.size()));
        return out;
    }
    for (int i = 1; i <= q.k(); ++i) {
        const Wedge& w = q.wedge(i);
        const std::string at = " at i=" + std::to_string(i);
        if (w.left.x.sign() >= 0) out.push_back("left side needs x<0" + at);
        if (w.left.y.sign() <= 0) out.push_back("left side needs y>0" + at);
        if (w.right.x.sign() <= 0) out.push_back("right side needs x>0" + at);
        if (w.right.y.sign() <= 0) out.push_back("right side needs y>0" + at);
        Vec2 via_left = w.left + q.side(q.datum.left()(i), Side::Right);
        Vec2 via_right = w.right + q.side(q.datum.right()(i), Side::Left);
        if (via_left != via_right) {
            out.push_back("train-track violated" + at + ": " + via_left.str() + " != " + via_right.str());
        }
    }
    if (!q.datum.is_transitive()) out.push_back("datum is not transitive");
    return out;
}

inline bool is_valid(const Quadrangulation& q) { return validate(q).empty(); }

inline Vec2 diagonal(const Quadrangulation& q, int i) {
    return q.side(i, Side::Left) + q.side(q.datum.left()(i), Side::Right);
}

inline Vec2 backward_diagonal(const Quadrangulation& q, int i) {
    return q.side(i, Side::Right) - q.side(i, Side::Left);
}

inline Slant slant(const Quadrangulation& q, int i) {
    int s = diagonal(q, i).x.sign();
    if (s > 0) return Slant::LeftSlanted;
    if (s < 0) return Slant::RightSlanted;
    return Slant::VerticalDiagonal;
}

inline Scalar quad_area(const Quadrangulation& q, int i) {
    const Vec2& r = q.side(i, Side::Right);
    const Vec2& l = q.side(i, Side::Left);
    Vec2 d = diagonal(q, i);
    return Scalar::rational(1, 2) * (cross(r, d) + cross(d, l));
}

inline Scalar area(const Quadrangulation& q) {
    Scalar total;
    for (int i = 1; i <= q.k(); ++i) total += quad_area(q, i);
    return total;
}

}  // namespace dc
