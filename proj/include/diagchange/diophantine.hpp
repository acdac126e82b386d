#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "run.hpp"
#include "trace.hpp"

namespace dc {

enum class Role { WedgeLeft, WedgeRight, Diagonal };

inline const char* role_name(Role r) {
    switch (r) {
        case Role::WedgeLeft: return "wedge-left";
        case Role::WedgeRight: return "wedge-right";
        default: return "diagonal";
    }
}

struct SaddleConnection {
    int bundle = 1;
    Vec2 disp;
    Role role = Role::Diagonal;
    int step = 0;  // first appearance; negative for backward moves

    Side side() const { return disp.x.sign() < 0 ? Side::Left : Side::Right; }
};

inline Role role_of(const Vec2& v) {
    int s = v.x.sign();
    return s < 0 ? Role::WedgeLeft : (s > 0 ? Role::WedgeRight : Role::Diagonal);
}

struct SearchBox {
    Scalar rx;  // |x| <= rx
    Scalar ty;  // 0 < y <= ty

    bool contains(const Vec2& v) const { return v.y.sign() > 0 && v.y <= ty && v.x.abs() <= rx; }
};

namespace detail {

struct Approx {
    double x, y;
    explicit Approx(const Vec2& v) : x(v.x.to_double()), y(v.y.to_double()) {}
};

// Sign of cross(a, b); doubles decide unless the result is within rounding of zero.
inline int cross_sign(const Vec2& a, const Approx& fa, const Vec2& b, const Approx& fb) {
    const double p = fa.x * fb.y, q = fa.y * fb.x;
    const double tol = 1e-9 * (std::fabs(p) + std::fabs(q));
    if (p - q > tol) return 1;
    if (q - p > tol) return -1;
    return cross(a, b).sign();
}

struct Cone {
    Vec2 lo;  // clockwise boundary
    Vec2 hi;  // counter-clockwise boundary
    Approx flo{lo}, fhi{hi};
};

inline bool strictly_inside(const Cone& c, const Vec2& p, const Approx& fp) {
    return cross_sign(c.lo, c.flo, p, fp) > 0 && cross_sign(p, fp, c.hi, c.fhi) > 0;
}

// Shrinks [s0, s1] to the parameters s where alpha + beta*s >= -slack.
inline bool clip(double alpha, double beta, double& s0, double& s1) {
    const double slack = 1e-9 * (std::fabs(alpha) + std::fabs(beta));
    alpha += slack;
    if (beta == 0) return alpha >= 0;
    const double root = -alpha / beta;
    if (beta > 0) {
        s0 = std::max(s0, root);
    } else {
        s1 = std::min(s1, root);
    }
    return s0 <= s1 + 1e-12;
}

// Could the part of segment a-b seen through cone c meet the closed box?
// Decided in doubles with slack, so it only ever errs towards yes.
inline bool visible_part_meets_box(const Approx& a, const Approx& b, const Cone& c, double rx, double ty) {
    const double ex = b.x - a.x, ey = b.y - a.y;
    auto cr = [](double ux, double uy, double vx, double vy) { return ux * vy - uy * vx; };
    double s0 = 0, s1 = 1;
    if (!clip(cr(c.flo.x, c.flo.y, a.x, a.y), cr(c.flo.x, c.flo.y, ex, ey), s0, s1)) return false;
    if (!clip(cr(a.x, a.y, c.fhi.x, c.fhi.y), cr(ex, ey, c.fhi.x, c.fhi.y), s0, s1)) return false;
    if (!clip(rx - a.x, -ex, s0, s1)) return false;
    if (!clip(rx + a.x, ex, s0, s1)) return false;
    if (!clip(ty - a.y, -ey, s0, s1)) return false;
    return true;
}

struct Piece {
    Chart chart;
    Cone cone;
};

}  // namespace detail

struct UnfoldOptions {
    std::size_t chart_budget = 2000000;
    bool confirm_by_trace = true;
};

// Every saddle connection of the bundle inside the box, by developing charts
// along rays from the wedge vertex. Sorted by y.
inline std::vector<SaddleConnection> unfold_enumerate(const Quadrangulation& q, int bundle, const SearchBox& box,
                                                      const UnfoldOptions& opt = {}) {
    std::set<Vec2, Vec2Less> found;
    const Vec2& wr = q.side(bundle, Side::Right);
    const Vec2& wl = q.side(bundle, Side::Left);
    if (box.contains(wr)) found.insert(wr);
    if (box.contains(wl)) found.insert(wl);

    const Vec2 east{Scalar(1), Scalar(0)}, west{Scalar(-1), Scalar(0)};
    const int j = q.datum.left().inverse()(bundle);
    const int m = q.datum.right().inverse()(bundle);
    std::deque<detail::Piece> todo{
        {{j, -q.side(j, Side::Left)}, {east, wr}},
        {{bundle, {}}, {wr, wl}},
        {{m, -q.side(m, Side::Right)}, {wl, west}},
    };
    const double frx = box.rx.to_double(), fty = box.ty.to_double();
    std::size_t used = 0;
    while (!todo.empty()) {
        if (++used > opt.chart_budget) throw ChartBudgetExceeded(std::to_string(opt.chart_budget) + " charts");
        detail::Piece p = std::move(todo.front());
        todo.pop_front();
        auto v = chart_corners(q, p.chart);
        const std::array<detail::Approx, 4> fv{detail::Approx(v[0]), detail::Approx(v[1]), detail::Approx(v[2]),
                                               detail::Approx(v[3])};
        for (int e = 0; e < 4; ++e) {
            if (box.contains(v[e]) && detail::strictly_inside(p.cone, v[e], fv[e])) found.insert(v[e]);
        }
        for (int e = 0; e < 4; ++e) {
            const int f = (e + 1) % 4;
            const Vec2& a = v[e];
            const Vec2& b = v[f];
            if (detail::cross_sign(a, fv[e], b, fv[f]) <= 0) continue;  // not an exit edge as seen from the origin
            const bool lo_a = detail::cross_sign(p.cone.lo, p.cone.flo, a, fv[e]) > 0;
            const bool hi_b = detail::cross_sign(b, fv[f], p.cone.hi, p.cone.fhi) > 0;
            detail::Cone nc{lo_a ? a : p.cone.lo, hi_b ? b : p.cone.hi, lo_a ? fv[e] : p.cone.flo,
                            hi_b ? fv[f] : p.cone.fhi};
            if (detail::cross_sign(nc.lo, nc.flo, nc.hi, nc.fhi) <= 0) continue;
            if (!detail::visible_part_meets_box(fv[e], fv[f], nc, frx, fty)) continue;
            todo.push_back({neighbour(q, p.chart, e), std::move(nc)});
        }
    }
    std::vector<SaddleConnection> out;
    for (const Vec2& v : found) {
        if (opt.confirm_by_trace && v != wr && v != wl) {
            try {
                trace_segment(q, bundle, v);
            } catch (const Error& e) {
                throw std::logic_error("oracle candidate " + v.str() + " failed tracing: " + e.what());
            }
        }
        out.push_back({bundle, v, role_of(v), 0});
    }
    std::stable_sort(out.begin(), out.end(), [](const SaddleConnection& a, const SaddleConnection& b) {
        return a.disp.y < b.disp.y;
    });
    return out;
}

// Definition check against a list that contains every connection of the
// bundle in the box |x| <= |v.x|, y <= v.y.
inline bool is_best_approximation_among(const Vec2& v, const std::vector<SaddleConnection>& pool) {
    const int s = v.x.sign();
    if (s == 0) return false;
    for (const SaddleConnection& u : pool) {
        if (u.disp.x.sign() != s || u.disp == v) continue;
        if (u.disp.y < v.y && u.disp.x.abs() <= v.x.abs()) return false;
    }
    return true;
}

// Immersed-rectangle form: no connection strictly inside the rectangle spanned by v.
inline bool empty_rectangle_among(const Vec2& v, const std::vector<SaddleConnection>& pool) {
    for (const SaddleConnection& u : pool) {
        if (u.disp == v) continue;
        if (u.disp.y.sign() <= 0 || !(u.disp.y < v.y)) continue;
        if (v.x.sign() > 0 && u.disp.x.sign() > 0 && u.disp.x < v.x) return false;
        if (v.x.sign() < 0 && u.disp.x.sign() < 0 && v.x < u.disp.x) return false;
    }
    return true;
}

inline bool is_best_approximation(const Quadrangulation& q, const SaddleConnection& sc) {
    if (sc.disp != q.side(sc.bundle, Side::Left) && sc.disp != q.side(sc.bundle, Side::Right)) {
        trace_segment(q, sc.bundle, sc.disp);
    }
    auto pool = unfold_enumerate(q, sc.bundle, {sc.disp.x.abs(), sc.disp.y});
    bool def = is_best_approximation_among(sc.disp, pool);
    if (def != empty_rectangle_among(sc.disp, pool)) {
        throw std::logic_error("best-approximation criteria disagree at " + sc.disp.str());
    }
    return def;
}

struct StreamLimit {
    std::optional<std::size_t> count = std::nullopt;
    std::optional<Scalar> ty = std::nullopt;
};

namespace detail {

// Runs the policy with a doubling step budget until done(result) holds.
template <class Done>
RunResult run_until(const Quadrangulation& q, const Policy& policy, Done done, int max_steps = 1 << 14) {
    for (int n = 16;; n *= 2) {
        RunResult r = run(q, policy, RunLimits{.steps = n});
        if (done(r)) return r;
        if (r.keane) throw KeaneStopBeforeLimit("vertical diagonal at step " + std::to_string(r.keane->step));
        if (policy.kind == PolicyKind::Script && r.steps_done() < n) throw KeaneStopBeforeLimit("script exhausted");
        if (n >= max_steps) throw KeaneStopBeforeLimit("limit not reached within " + std::to_string(n) + " steps");
    }
}

inline std::vector<SaddleConnection> distinct_sides(const RunResult& r, int bundle, Side side) {
    std::vector<SaddleConnection> out;
    for (const RunState& st : r.states) {
        const Vec2& v = st.quad.side(bundle, side);
        if (!out.empty() && out.back().disp == v) continue;
        out.push_back({bundle, v, side == Side::Left ? Role::WedgeLeft : Role::WedgeRight, st.step});
    }
    return out;
}

}  // namespace detail

// Successive values of w_{bundle,side} along a forward run.
inline std::vector<SaddleConnection> best_approx_stream(const Quadrangulation& q, const Policy& policy, int bundle, Side side,
                                                        const StreamLimit& limit) {
    auto enough = [&](const std::vector<SaddleConnection>& s) {
        if (limit.count && s.size() >= *limit.count) return true;
        if (limit.ty && !s.empty() && *limit.ty < s.back().disp.y) return true;
        return false;
    };
    RunResult r = detail::run_until(q, policy, [&](const RunResult& rr) { return enough(detail::distinct_sides(rr, bundle, side)); });
    auto s = detail::distinct_sides(r, bundle, side);
    if (limit.count && s.size() > *limit.count) s.resize(*limit.count);
    if (limit.ty) {
        while (!s.empty() && *limit.ty < s.back().disp.y) s.pop_back();
    }
    return s;
}

// Wedge sides seen in bundle along n_back backward and n_fwd greedy forward steps.
inline std::vector<SaddleConnection> produced_wedge_sides(const Quadrangulation& q, int n_back, int n_fwd,
                                                          const Policy& policy = Policy::greedy()) {
    std::vector<SaddleConnection> out;
    std::set<std::pair<int, Vec2>, bool (*)(const std::pair<int, Vec2>&, const std::pair<int, Vec2>&)> seen(
        [](const std::pair<int, Vec2>& a, const std::pair<int, Vec2>& b) {
            if (a.first != b.first) return a.first < b.first;
            return Vec2Less{}(a.second, b.second);
        });
    auto take = [&](const RunResult& r) {
        for (const RunState& st : r.states) {
            for (int i = 1; i <= st.quad.k(); ++i) {
                for (Side s : {Side::Left, Side::Right}) {
                    const Vec2& v = st.quad.side(i, s);
                    if (seen.insert({i, v}).second) out.push_back({i, v, role_of(v), st.step});
                }
            }
        }
    };
    if (n_back > 0) {
        RunResult b = run_backward(q, n_back);
        if (b.keane) throw KeaneStopBeforeLimit("backward run stopped at step " + std::to_string(b.keane->step));
        take(b);
    }
    RunResult f = run(q, policy, RunLimits{.steps = n_fwd});
    if (f.keane) throw KeaneStopBeforeLimit("forward run stopped at step " + std::to_string(f.keane->step));
    take(f);
    return out;
}

struct AreaBoundReport {
    bool holds = false;
    Scalar bound;                  // Area / r
    std::optional<Vec2> witness[2];  // smallest-y approximation with |x| < r, per side
};

// Checks min{Im v : v best approximation in the bundle, |Re v| < r} < Area/r;
// the minimum runs over both sides, only one of them needs to be short.
inline AreaBoundReport area_bound_report(const Quadrangulation& q, int bundle, const Scalar& r) {
    if (r.sign() <= 0) throw std::invalid_argument("r must be positive");
    AreaBoundReport rep;
    rep.bound = area(q) / r;
    for (Side side : {Side::Left, Side::Right}) {
        auto narrow = [&](const Vec2& v) { return v.x.abs() < r; };
        std::optional<Vec2> best;
        if (narrow(q.side(bundle, side))) {
            // walk backwards while still narrower than r: those have smaller y
            best = q.side(bundle, side);
            Quadrangulation cur = q;
            for (int n = 0; n < 4096; ++n) {
                RunResult b = run_backward(cur, 1);
                if (b.keane) break;
                cur = b.final_quad();
                const Vec2& v = cur.side(bundle, side);
                if (!narrow(v)) break;
                best = v;
            }
        }
        if (!best) {
            RunResult f = detail::run_until(q, Policy::greedy(), [&](const RunResult& rr) {
                return narrow(rr.final_quad().side(bundle, side));
            });
            for (const RunState& st : f.states) {
                if (narrow(st.quad.side(bundle, side))) {
                    best = st.quad.side(bundle, side);
                    break;
                }
            }
        }
        rep.witness[side == Side::Left ? 0 : 1] = best;
        if (best->y < rep.bound) rep.holds = true;
    }
    return rep;
}

inline bool area_bound_check(const Quadrangulation& q, int bundle, const Scalar& r) {
    return area_bound_report(q, bundle, r).holds;
}

// The wedge whose quadrilateral has diagonal d, rebuilt by widening the
// rectangle of d sideways until it meets a singularity on each side.
inline std::optional<Wedge> wedge_from_diagonal(const Quadrangulation& q, int bundle, const Vec2& d) {
    Scalar rx = d.x.abs() + Scalar(1);
    for (int attempt = 0; attempt < 12; ++attempt, rx = rx * Scalar(2)) {
        auto pool = unfold_enumerate(q, bundle, {rx, d.y});
        std::optional<Vec2> left, right;
        const Scalar lo = d.x.sign() < 0 ? d.x : Scalar(0);
        const Scalar hi = d.x.sign() > 0 ? d.x : Scalar(0);
        for (const SaddleConnection& u : pool) {
            if (!(u.disp.y < d.y)) continue;
            if (u.disp.x < lo && (!left || left->x < u.disp.x)) left = u.disp;
            if (hi < u.disp.x && (!right || u.disp.x < right->x)) right = u.disp;
        }
        // anything strictly between would sit inside the rectangle of d
        if (left && right) return Wedge{*left, *right};
    }
    return std::nullopt;
}

}  // namespace dc
