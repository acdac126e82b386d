#pragma once

#include <array>
#include <map>
#include <set>
#include <sstream>

#include "iet.hpp"
#include "run.hpp"
#include "trace.hpp"

namespace dc {

// Extended side words L_i, R_i and diagonal words D_i, all over the labels
// of the starting quadrangulation.
struct LRDState {
    std::vector<Word> L, R, D;
    int step = 0;
    Datum datum;

    int k() const { return datum.k(); }
    const Word& l(int i) const { return L[i - 1]; }
    const Word& r(int i) const { return R[i - 1]; }
    const Word& d(int i) const { return D[i - 1]; }
};

inline LRDState lrd_init(const Datum& d) {
    LRDState s;
    s.datum = d;
    const Perm li = d.left().inverse(), ri = d.right().inverse();
    for (int i = 1; i <= d.k(); ++i) {
        s.L.push_back({{ri(i), Side::Right}});
        s.R.push_back({{li(i), Side::Left}});
        s.D.emplace_back();
    }
    return s;
}

inline LRDState lrd_step(const LRDState& s, const CycleRef& cyc) {
    CycleRef c = canonical_cycle(s.datum, cyc);
    LRDState out = s;
    const Perm& pl = s.datum.left();
    const Perm& pr = s.datum.right();
    for (int i : c.indices) {
        if (c.side == Side::Right) {
            out.L[i - 1] = s.l(i) + s.r(pl(i));
            out.D[i - 1] = s.d(i) + s.r(pl(pr(i)));
        } else {
            out.R[i - 1] = s.r(i) + s.l(pr(i));
            out.D[i - 1] = s.d(i) + s.l(pr(pl(i)));
        }
    }
    out.datum = act_move(s.datum, c);
    out.step = s.step + 1;
    return out;
}

// D_i from side words via the four-case rule, reading the right triangle
// (from_left = false) or the left one.
struct SideWords {
    std::vector<std::array<Word, 2>> w;      // [i-1][0]=left side, [1]=right side
    std::vector<std::array<bool, 2>> moved;  // side differs from the starting one

    const Word& word(int i, Side s) const { return w[i - 1][s == Side::Left ? 0 : 1]; }
    bool changed(int i, Side s) const { return moved[i - 1][s == Side::Left ? 0 : 1]; }
};

inline Word substitution_word(const SideWords& sw, const Datum& now, const Datum& start, int i, Side through) {
    Word out;
    if (through == Side::Right) {
        const int t = now.right()(i);
        const int j = start.right().inverse()(t);
        bool a = sw.changed(i, Side::Right), b = sw.changed(t, Side::Left);
        if (a) out = out + sw.word(i, Side::Right) + Word{{j, Side::Right}};
        if (b) out = out + Word{{t, Side::Left}} + sw.word(t, Side::Left);
    } else {
        const int t = now.left()(i);
        const int j = start.left().inverse()(t);
        bool a = sw.changed(i, Side::Left), b = sw.changed(t, Side::Right);
        if (a) out = out + sw.word(i, Side::Left) + Word{{j, Side::Left}};
        if (b) out = out + Word{{t, Side::Right}} + sw.word(t, Side::Right);
    }
    return out;
}

// Replays the forward records of a log and returns D_i of the final state,
// keeping side words up to date with the four-case rule alone.
inline Word diagonal_word_via_substitution(const Quadrangulation& q0, const std::vector<MoveRecord>& records, int i,
                                           Side through = Side::Right) {
    SideWords sw;
    sw.w.assign(q0.k(), {});
    sw.moved.assign(q0.k(), {false, false});
    Quadrangulation cur = q0;
    for (const MoveRecord& rec : records) {
        if (rec.direction != Direction::Forward) throw std::invalid_argument("substitution replay needs forward records");
        CycleRef c = canonical_cycle(cur.datum, rec.cycle);
        Quadrangulation next = apply_move(cur, c);
        const Side replaced = opposite(c.side);
        std::vector<std::pair<int, Word>> fresh;
        for (int m : c.indices) fresh.emplace_back(m, substitution_word(sw, cur.datum, q0.datum, m, through));
        for (auto& [m, w] : fresh) {
            sw.w[m - 1][replaced == Side::Left ? 0 : 1] = std::move(w);
            sw.moved[m - 1][replaced == Side::Left ? 0 : 1] = true;
        }
        cur = std::move(next);
    }
    return substitution_word(sw, cur.datum, q0.datum, i, through);
}

struct BispecialEntry {
    Word word;
    std::vector<std::pair<int, int>> seen_at;  // (step, bundle)
};

struct BispecialReport {
    std::vector<BispecialEntry> entries;  // first-appearance order
    std::vector<LRDState> states;         // one per completed step, states[0] initial

    std::string dump() const {
        std::ostringstream os;
        for (const auto& e : entries) {
            for (auto [step, bundle] : e.seen_at) os << step << '\t' << bundle << '\t' << format_word(e.word) << '\n';
        }
        return os.str();
    }
};

// LRD evolution along a run, one state per run step.
inline std::vector<LRDState> lrd_along(const RunResult& r) {
    std::vector<LRDState> out{lrd_init(r.log.initial.datum)};
    LRDState cur = out.front();
    std::size_t j = 0;
    for (std::size_t s = 1; s < r.states.size(); ++s) {
        const int step = r.states[s].step;
        while (j < r.log.records.size() && r.log.records[j].step == step) {
            cur = lrd_step(cur, r.log.records[j].cycle);
            ++j;
        }
        LRDState snap = cur;
        snap.step = step;
        out.push_back(std::move(snap));
    }
    return out;
}

inline BispecialReport bispecials(const Quadrangulation& q, const Policy& policy, int n) {
    RunResult r = run(q, policy, RunLimits{.steps = n});
    if (r.keane && r.steps_done() < n) {
        throw KeaneStopBeforeLimit("vertical diagonal at step " + std::to_string(r.keane->step));
    }
    BispecialReport rep;
    rep.states = lrd_along(r);
    std::map<Word, std::size_t> index;
    for (const LRDState& s : rep.states) {
        for (int i = 1; i <= s.k(); ++i) {
            auto [it, fresh] = index.try_emplace(s.d(i), rep.entries.size());
            if (fresh) rep.entries.push_back({s.d(i), {}});
            rep.entries[it->second].seen_at.emplace_back(s.step, i);
        }
    }
    return rep;
}

enum class BispecialStatus { Pass, Fail, InsufficientSample };

inline const char* status_name(BispecialStatus s) {
    switch (s) {
        case BispecialStatus::Pass: return "pass";
        case BispecialStatus::Fail: return "fail";
        default: return "insufficient-sample";
    }
}

struct BispecialCheck {
    BispecialStatus status = BispecialStatus::InsufficientSample;
    std::size_t occurrences = 0;
    std::set<Label> left_seen, right_seen;
    std::set<std::pair<Label, Label>> pairs_seen;
    std::set<Label> left_expected, right_expected;
    std::string reason;
};

struct SampleOptions {
    std::size_t length = 20000;
    std::size_t min_occurrences = 40;  // below this a missing extension is inconclusive
    int component = 1;
    Scalar start_fraction = Scalar::rational(1, 3);  // start at this fraction of l_component
};

inline Word sample_sequence(const Quadrangulation& q, const SampleOptions& opt) {
    return cutting_sequence(q, {opt.component, opt.start_fraction * q.side(opt.component, Side::Left).x}, opt.length);
}

// Left letters that may precede a and right letters that may follow b.
inline std::set<Label> possible_left(const Datum& d, const Label& a) {
    int i = a.side == Side::Left ? d.right().inverse()(a.index) : d.left().inverse()(a.index);
    return {{i, Side::Left}, {i, Side::Right}};
}

inline std::set<Label> possible_right(const Datum& d, const Label& b) {
    return {{d.left()(b.index), Side::Right}, {d.right()(b.index), Side::Left}};
}

inline BispecialCheck verify_bispecial_in(const Datum& d, const Word& w, const Word& sample,
                                          std::size_t min_occurrences = 40) {
    BispecialCheck c;
    if (w.empty()) {
        c.status = BispecialStatus::Pass;
        c.reason = "empty word";
        return c;
    }
    c.left_expected = possible_left(d, w.front());
    c.right_expected = possible_right(d, w.back());
    for (std::size_t p = 1; p + w.size() < sample.size(); ++p) {
        if (!occurs_at(sample, w, p)) continue;
        ++c.occurrences;
        const Label& a = sample[p - 1];
        const Label& b = sample[p + w.size()];
        c.left_seen.insert(a);
        c.right_seen.insert(b);
        c.pairs_seen.insert({a, b});
    }
    auto outside = [](const std::set<Label>& seen, const std::set<Label>& allowed) {
        for (const Label& l : seen) {
            if (!allowed.count(l)) return true;
        }
        return false;
    };
    if (outside(c.left_seen, c.left_expected) || outside(c.right_seen, c.right_expected)) {
        c.status = BispecialStatus::Fail;
        c.reason = "extension letter outside the predicted set";
    } else if (c.pairs_seen.size() == 4) {
        c.status = BispecialStatus::Fail;
        c.reason = "all four two-sided extensions occur";
    } else if (c.left_seen.size() == 2 && c.right_seen.size() == 2 && c.pairs_seen.size() == 3) {
        c.status = BispecialStatus::Pass;
    } else if (c.occurrences < min_occurrences) {
        c.status = BispecialStatus::InsufficientSample;
        c.reason = std::to_string(c.occurrences) + " occurrences";
    } else {
        c.status = BispecialStatus::Fail;
        c.reason = "missing extension after " + std::to_string(c.occurrences) + " occurrences";
    }
    return c;
}

inline BispecialCheck verify_bispecial(const Quadrangulation& q, const Word& w, const SampleOptions& opt = {}) {
    return verify_bispecial_in(q.datum, w, sample_sequence(q, opt), opt.min_occurrences);
}

}  // namespace dc
