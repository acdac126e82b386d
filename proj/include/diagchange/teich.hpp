#pragma once

#include <optional>
#include <sstream>

#include "diophantine.hpp"

namespace dc {

// Along g_t with q = e^{4t}: |g_t v|^2 = sqrt(q) x^2 + y^2 / sqrt(q). Scaling by
// sqrt(q) gives the line q x^2 + y^2, which orders connections the same way.
inline Scalar scaled_sq_length(const Vec2& v, const Scalar& q) { return q * v.x * v.x + v.y * v.y; }

struct MinPoint {
    Scalar qstar;
    Scalar min_sq_len;
};

inline MinPoint min_point(const Vec2& v) {
    if (v.x.is_zero() || v.y.is_zero()) throw OnAxis(v.str());
    return {(v.y * v.y) / (v.x * v.x), Scalar(2) * (v.x * v.y).abs()};
}

struct EnvelopeSegment {
    Scalar q_from;
    std::optional<Scalar> q_to;  // empty: unbounded
    SaddleConnection realizer;
};

// Lower envelope of the lines q -> q x^2 + y^2 over [q_lo, q_hi].
inline std::vector<EnvelopeSegment> systole_envelope(const std::vector<SaddleConnection>& candidates, const Scalar& q_lo,
                                                     const std::optional<Scalar>& q_hi) {
    if (candidates.empty()) throw std::invalid_argument("no candidates");
    if (q_lo.sign() <= 0) throw std::invalid_argument("q range must be positive");
    if (q_hi && *q_hi < q_lo) throw std::invalid_argument("empty q range");
    for (const auto& c : candidates) {
        if (c.disp.x.is_zero() || c.disp.y.is_zero()) throw OnAxis(c.disp.str());
    }
    auto slope = [](const SaddleConnection& c) { return c.disp.x * c.disp.x; };
    auto icept = [](const SaddleConnection& c) { return c.disp.y * c.disp.y; };

    // minimiser at q_lo, ties broken towards the flatter line
    std::size_t cur = 0;
    for (std::size_t j = 1; j < candidates.size(); ++j) {
        int c = compare(scaled_sq_length(candidates[j].disp, q_lo), scaled_sq_length(candidates[cur].disp, q_lo));
        if (c < 0 || (c == 0 && slope(candidates[j]) < slope(candidates[cur]))) cur = j;
    }
    std::vector<EnvelopeSegment> out;
    Scalar from = q_lo;
    for (;;) {
        std::optional<std::size_t> next;
        Scalar at;
        for (std::size_t j = 0; j < candidates.size(); ++j) {
            if (!(slope(candidates[j]) < slope(candidates[cur]))) continue;
            Scalar cross_q = (icept(candidates[j]) - icept(candidates[cur])) / (slope(candidates[cur]) - slope(candidates[j]));
            if (!(from < cross_q)) continue;
            if (!next || cross_q < at || (cross_q == at && slope(candidates[j]) < slope(candidates[*next]))) {
                next = j;
                at = cross_q;
            }
        }
        if (!next || (q_hi && !(at < *q_hi))) {
            out.push_back({from, q_hi, candidates[cur]});
            return out;
        }
        out.push_back({from, at, candidates[cur]});
        from = at;
        cur = *next;
    }
}

inline const SaddleConnection& envelope_at(const std::vector<EnvelopeSegment>& env, const Scalar& q) {
    for (const auto& s : env) {
        if (!s.q_to || q <= *s.q_to) return s.realizer;
    }
    return env.back().realizer;
}

// Shortest saddle connection, squared, found by the unfolding oracle.
inline Scalar systole_sq(const Quadrangulation& q) {
    Scalar bound;
    bool first = true;
    for (const Wedge& w : q.wedges) {
        for (const Vec2* v : {&w.left, &w.right}) {
            Scalar b = v->x.abs() + v->y.abs();
            if (first || b < bound) bound = b;
            first = false;
        }
    }
    std::optional<Scalar> best;
    for (int i = 1; i <= q.k(); ++i) {
        for (const auto& c : unfold_enumerate(q, i, {bound, bound}, {.confirm_by_trace = false})) {
            Scalar l = c.disp.x * c.disp.x + c.disp.y * c.disp.y;
            if (!best || l < *best) best = l;
        }
    }
    return *best;
}

// Every side of q is wider than the systole.
inline bool ray_precondition_holds(const Quadrangulation& q) {
    const Scalar sys = systole_sq(q);
    for (const Wedge& w : q.wedges) {
        if (!(sys < w.left.x * w.left.x) || !(sys < w.right.x * w.right.x)) return false;
    }
    return true;
}

struct SystoleReport {
    std::vector<EnvelopeSegment> segments;
    std::vector<SaddleConnection> candidates;
    bool covered = false;             // produced range brackets the window on both ends
    bool corollary_unmet = false;     // forward-only run without the width condition
    std::vector<std::string> warnings;

    std::string tsv() const {
        std::ostringstream os;
        for (const auto& s : segments) {
            os << s.q_from.str() << '\t' << (s.q_to ? s.q_to->str() : std::string("inf")) << '\t' << s.realizer.bundle
               << '\t' << side_char(s.realizer.side()) << '\t' << s.realizer.step << '\t' << s.realizer.disp.x.str()
               << '\t' << s.realizer.disp.y.str() << '\n';
        }
        return os.str();
    }
};

inline SystoleReport systole_realizers(const Quadrangulation& q, const Policy& policy, int n_back, int n_fwd,
                                       const Scalar& q_lo, const std::optional<Scalar>& q_hi) {
    SystoleReport rep;
    rep.candidates = produced_wedge_sides(q, n_back, n_fwd, policy);
    rep.segments = systole_envelope(rep.candidates, q_lo, q_hi);
    std::optional<Scalar> lo, hi;
    for (const auto& c : rep.candidates) {
        Scalar s = min_point(c.disp).qstar;
        if (!lo || s < *lo) lo = s;
        if (!hi || *hi < s) hi = s;
    }
    bool low_ok = n_back > 0 ? *lo < q_lo : true;
    rep.covered = low_ok && q_hi && *q_hi < *hi;
    if (n_back == 0 && !ray_precondition_holds(q)) {
        rep.corollary_unmet = true;
        rep.warnings.push_back("CorollaryPreconditionUnmet: a side of the start is not wider than the systole");
    }
    if (!rep.covered) rep.warnings.push_back("produced connections do not bracket the q window");
    return rep;
}

struct LagrangeReport {
    std::vector<Scalar> per_step;
    std::vector<Scalar> running_min;

    std::string tsv() const {
        std::ostringstream os;
        for (std::size_t j = 0; j < per_step.size(); ++j) {
            os << j << '\t' << per_step[j].str() << '\t' << running_min[j].str() << '\n';
        }
        return os.str();
    }
};

// min over wedge sides of |x y|, normalised by the area.
inline Scalar wedge_area_min(const Quadrangulation& q, const Scalar& total) {
    std::optional<Scalar> m;
    for (const Wedge& w : q.wedges) {
        for (const Vec2* v : {&w.left, &w.right}) {
            Scalar a = (v->x * v->y).abs();
            if (!m || a < *m) m = a;
        }
    }
    return *m / total;
}

inline LagrangeReport lagrange_estimate(const Quadrangulation& q, const Policy& policy, int n) {
    RunResult r = run(q, policy, RunLimits{.steps = n});
    if (r.keane && r.steps_done() < n) {
        throw KeaneStopBeforeLimit("vertical diagonal at step " + std::to_string(r.keane->step));
    }
    const Scalar total = area(q);
    LagrangeReport rep;
    for (const RunState& st : r.states) {
        rep.per_step.push_back(wedge_area_min(st.quad, total));
        rep.running_min.push_back(rep.running_min.empty() ? rep.per_step.back()
                                                          : std::min(rep.running_min.back(), rep.per_step.back()));
    }
    return rep;
}

}  // namespace dc
