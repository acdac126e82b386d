#pragma once

#include <map>
#include <set>

#include "run.hpp"

namespace dc {

// Geometric objects met along a run: wedges and well-slanted staircases,
// keyed by their vectors so that runs of different policies compare.
struct WedgeKey {
    int bundle;
    Vec2 left, right;

    Scalar top() const { return std::max(left.y, right.y); }

    friend bool operator<(const WedgeKey& a, const WedgeKey& b) {
        if (a.bundle != b.bundle) return a.bundle < b.bundle;
        if (a.left != b.left) return Vec2Less{}(a.left, b.left);
        return Vec2Less{}(a.right, b.right);
    }
    friend bool operator==(const WedgeKey& a, const WedgeKey& b) {
        return a.bundle == b.bundle && a.left == b.left && a.right == b.right;
    }
};

struct StaircaseKey {
    Side side;
    std::vector<WedgeKey> wedges;  // sorted

    friend bool operator<(const StaircaseKey& a, const StaircaseKey& b) {
        if (a.side != b.side) return a.side < b.side;
        return a.wedges < b.wedges;
    }
    friend bool operator==(const StaircaseKey& a, const StaircaseKey& b) {
        return a.side == b.side && a.wedges == b.wedges;
    }
};

struct RunObjects {
    std::set<WedgeKey> wedges;
    std::set<StaircaseKey> staircases;
    std::vector<Scalar> final_tops;  // per bundle, top of the last wedge
};

inline WedgeKey wedge_key(const Quadrangulation& q, int i) { return {i, q.side(i, Side::Left), q.side(i, Side::Right)}; }

namespace detail {

inline void gather(RunObjects& o, const Quadrangulation& q) {
    for (int i = 1; i <= q.k(); ++i) o.wedges.insert(wedge_key(q, i));
    for (const CycleRef& c : well_slanted_staircases(q)) {
        StaircaseKey s{c.side, {}};
        for (int i : c.indices) s.wedges.push_back(wedge_key(q, i));
        std::sort(s.wedges.begin(), s.wedges.end());
        o.staircases.insert(std::move(s));
    }
}

}  // namespace detail

// Forward moves are replayed one at a time: a step with several moves (or one
// staircase moved repeatedly) passes through quadrangulations that the per-step
// states skip, and those belong to the sequence too.
inline RunObjects collect_objects(const RunResult& r) {
    RunObjects o;
    const bool forward = std::all_of(r.log.records.begin(), r.log.records.end(),
                                     [](const MoveRecord& m) { return m.step > 0; });
    if (forward) {
        Quadrangulation cur = r.log.initial;
        detail::gather(o, cur);
        for (const MoveRecord& m : r.log.records) {
            cur = apply_move(cur, m.cycle);
            detail::gather(o, cur);
        }
    } else {
        for (const RunState& st : r.states) detail::gather(o, st.quad);
    }
    for (int i = 1; i <= r.final_quad().k(); ++i) o.final_tops.push_back(wedge_key(r.final_quad(), i).top());
    return o;
}

// Keeps what lies at or below the per-bundle caps. A wedge beyond the last one
// of a run always has a side above that wedge's top, so below the cap every run
// has seen the same initial segment of each bundle.
inline RunObjects window(const RunObjects& o, const std::vector<Scalar>& caps) {
    auto below = [&](const WedgeKey& w) { return w.top() <= caps[w.bundle - 1]; };
    RunObjects out;
    for (const WedgeKey& w : o.wedges) {
        if (below(w)) out.wedges.insert(w);
    }
    for (const StaircaseKey& s : o.staircases) {
        if (std::all_of(s.wedges.begin(), s.wedges.end(), below)) out.staircases.insert(s);
    }
    out.final_tops = caps;
    return out;
}

inline std::vector<Scalar> common_caps(const std::vector<RunObjects>& runs) {
    std::vector<Scalar> caps = runs.front().final_tops;
    for (const RunObjects& o : runs) {
        for (std::size_t i = 0; i < caps.size(); ++i) caps[i] = std::min(caps[i], o.final_tops[i]);
    }
    return caps;
}

}  // namespace dc
