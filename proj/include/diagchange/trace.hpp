#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "quad.hpp"
#include "word.hpp"

namespace dc {

// A quadrilateral developed into the plane with its bottom vertex at base.
struct Chart {
    int quad = 1;
    Vec2 base;
};

// Corners B, R, T, L in counter-clockwise order.
inline std::array<Vec2, 4> chart_corners(const Quadrangulation& q, const Chart& c) {
    const Vec2& r = q.side(c.quad, Side::Right);
    const Vec2& l = q.side(c.quad, Side::Left);
    return {c.base, c.base + r, c.base + diagonal(q, c.quad), c.base + l};
}

// Edge e runs from corner e to corner e+1: BR, RT, TL, LB.
inline Label edge_label(const Quadrangulation& q, int quad, int e) {
    switch (e) {
        case 0: return {quad, Side::Right};
        case 1: return {q.datum.right()(quad), Side::Left};
        case 2: return {q.datum.left()(quad), Side::Right};
        default: return {quad, Side::Left};
    }
}

// The chart glued to c across edge e.
inline Chart neighbour(const Quadrangulation& q, const Chart& c, int e) {
    const int i = c.quad;
    switch (e) {
        case 0: {
            int j = q.datum.left().inverse()(i);
            return {j, c.base - q.side(j, Side::Left)};
        }
        case 1: return {q.datum.right()(i), c.base + q.side(i, Side::Right)};
        case 2: return {q.datum.left()(i), c.base + q.side(i, Side::Left)};
        default: {
            int m = q.datum.right().inverse()(i);
            return {m, c.base - q.side(m, Side::Right)};
        }
    }
}

namespace detail {

// The exit edge when doubles leave no doubt: a unique smallest exit time,
// well before t_end. Anything close to a tie goes to the exact code.
inline std::optional<int> clear_exit(const std::array<Vec2, 4>& v, double dx, double dy, double fx, double fy,
                                     double t_end) {
    double px[4], py[4];
    for (int e = 0; e < 4; ++e) {
        px[e] = v[e].x.to_double();
        py[e] = v[e].y.to_double();
    }
    double best = 0, runner = 0;
    int first = -1;
    bool two = false;
    for (int e = 0; e < 4; ++e) {
        const int f = (e + 1) % 4;
        const double ex = px[f] - px[e], ey = py[f] - py[e];
        const double p = ex * dy, r = ey * dx;
        const double c = p - r;
        if (std::fabs(c) <= 1e-9 * (std::fabs(p) + std::fabs(r))) return std::nullopt;
        if (c > 0) continue;
        const double t = (ex * (py[e] - fy) - ey * (px[e] - fx)) / c;
        if (first < 0 || t < best) {
            if (first >= 0) {
                runner = best;
                two = true;
            }
            best = t;
            first = e;
        } else if (!two || t < runner) {
            runner = t;
            two = true;
        }
    }
    if (first < 0) return std::nullopt;
    const double tol = 1e-9 * (1 + std::fabs(best));
    if (two && runner - best <= tol) return std::nullopt;
    if (best >= t_end - tol) return std::nullopt;
    return first;
}

}  // namespace detail

struct Walk {
    Word crossed;
    Chart last;
    bool reached_vertex = false;  // the walk ended on a corner of last
};

// Follows from + t*dir, t > 0, starting inside (or on the boundary of) start
// and heading into it. Stops at t_end, at a singularity, or after
// max_crossings edge crossings.
inline Walk walk(const Quadrangulation& q, Chart start, const Vec2& from, const Vec2& dir,
                 const std::optional<Scalar>& t_end, std::size_t max_crossings = static_cast<std::size_t>(-1)) {
    Walk w;
    w.last = start;
    const double fdx = dir.x.to_double(), fdy = dir.y.to_double();
    const double ffx = from.x.to_double(), ffy = from.y.to_double();
    const double fend = t_end ? t_end->to_double() : HUGE_VAL;
    for (;;) {
        if (w.crossed.size() >= max_crossings) return w;
        auto v = chart_corners(q, w.last);
        if (auto e = detail::clear_exit(v, fdx, fdy, ffx, ffy, fend); e) {
            w.crossed.push_back(edge_label(q, w.last.quad, *e));
            w.last = neighbour(q, w.last, *e);
            continue;
        }
        std::optional<Scalar> best;
        int first = -1, second = -1;
        for (int e = 0; e < 4; ++e) {
            Vec2 edge = v[(e + 1) % 4] - v[e];
            Scalar c = cross(edge, dir);
            if (c.sign() >= 0) continue;
            Scalar t = cross(edge, v[e] - from) / c;
            if (!best || t < *best) {
                best = t;
                first = e;
                second = -1;
            } else if (t == *best) {
                second = e;
            }
        }
        if (!best) throw std::logic_error("segment does not leave a convex quadrilateral");
        const bool corner = second >= 0;
        if (t_end) {
            int cmp = compare(*best, *t_end);
            if (cmp > 0) throw NotASaddleConnection("endpoint inside quadrilateral " + std::to_string(w.last.quad));
            if (cmp == 0) {
                if (!corner) throw NotASaddleConnection("endpoint inside a side of quadrilateral " + std::to_string(w.last.quad));
                w.reached_vertex = true;
                return w;
            }
        }
        if (corner) {
            if (t_end) throw HitsSingularityEarly("passes through a vertex after " + std::to_string(w.crossed.size()) + " crossings");
            throw HitsSingularity("vertical leaf meets a vertex", static_cast<long>(w.crossed.size()));
        }
        w.crossed.push_back(edge_label(q, w.last.quad, first));
        w.last = neighbour(q, w.last, first);
    }
}

// The chart of the upper half-plane at the wedge vertex of q_i containing
// direction v, or OnEdge when v runs along a wedge side.
inline Chart starting_chart(const Quadrangulation& q, int i, const Vec2& v) {
    if (v.y.sign() <= 0) throw NotASaddleConnection("direction must point upwards");
    const Vec2& wr = q.side(i, Side::Right);
    const Vec2& wl = q.side(i, Side::Left);
    int against_r = cross(wr, v).sign();
    int against_l = cross(v, wl).sign();
    if (against_r == 0 || against_l == 0) throw OnEdge("direction " + v.str() + " runs along a wedge side");
    if (against_r < 0) {
        int j = q.datum.left().inverse()(i);
        return {j, -q.side(j, Side::Left)};
    }
    if (against_l > 0) return {i, {}};
    int m = q.datum.right().inverse()(i);
    return {m, -q.side(m, Side::Right)};
}

// Word of wedge sides crossed by the segment from the wedge vertex of q_i with
// displacement v; succeeds only if it is a saddle connection.
inline Word trace_segment(const Quadrangulation& q, int i, const Vec2& v) {
    Chart c = starting_chart(q, i, v);
    return walk(q, c, Vec2{}, v, Scalar(1)).crossed;
}

// Sides crossed by the upward vertical leaf through the point of wedge side
// (i, side) with horizontal coordinate x; the first letter is that side itself.
inline Word vertical_crossings(const Quadrangulation& q, int i, const Scalar& x, std::size_t n) {
    if (n == 0) return {};
    int s = x.sign();
    if (s == 0) throw HitsSingularity("point at the wedge vertex", 0);
    const Side side = s < 0 ? Side::Left : Side::Right;
    const Vec2& w = q.side(i, side);
    Vec2 start = (x / w.x) * w;
    Walk r = walk(q, Chart{i, {}}, start, Vec2{Scalar(0), Scalar(1)}, std::nullopt, n - 1);
    Word out{Label{i, side}};
    return out + r.crossed;
}

}  // namespace dc
