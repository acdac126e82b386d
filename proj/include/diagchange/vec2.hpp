#pragma once

#include <ostream>
#include <string>

#include "scalar.hpp"

namespace dc {

struct Vec2 {
    Scalar x;
    Scalar y;

    Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    Vec2& operator-=(const Vec2& o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend Vec2 operator*(const Scalar& s, const Vec2& v) { return {s * v.x, s * v.y}; }
    friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Vec2& a, const Vec2& b) { return !(a == b); }

    std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }
};

// z -> sqrt(-1) z, i.e. counter-clockwise quarter turn.
inline Vec2 quarter_turn(const Vec2& v) { return {-v.y, v.x}; }

inline Scalar cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

struct Vec2Less {
    bool operator()(const Vec2& a, const Vec2& b) const {
        if (structural_less(a.x, b.x)) return true;
        if (structural_less(b.x, a.x)) return false;
        return structural_less(a.y, b.y);
    }
};

inline std::ostream& operator<<(std::ostream& os, const Vec2& v) { return os << v.str(); }

}  // namespace dc
