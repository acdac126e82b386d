#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "moves.hpp"

namespace dc {

enum class Direction { Forward, Backward };

struct MoveRecord {
    int step = 0;  // negative for backward steps
    CycleRef cycle;
    Direction direction = Direction::Forward;
    Datum before;
    Datum after;
};

struct MoveLog {
    Quadrangulation initial;
    std::vector<MoveRecord> records;

    std::string str() const {
        std::ostringstream os;
        for (const MoveRecord& r : records) {
            os << "step=" << r.step << " side=" << side_letter(r.cycle.side) << " cycle=";
            for (std::size_t j = 0; j < r.cycle.indices.size(); ++j) {
                os << (j ? "," : "") << r.cycle.indices[j];
            }
            os << "\n";
        }
        return os.str();
    }
};

inline std::vector<MoveRecord> parse_move_log(const std::string& text) {
    std::vector<MoveRecord> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        MoveRecord r;
        std::stringstream ls(line);
        std::string tok;
        bool has_step = false, has_side = false, has_cycle = false;
        while (ls >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw SyntaxError("bad move log token '" + tok + "'");
            std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            try {
                if (key == "step") {
                    r.step = std::stoi(val);
                    has_step = true;
                } else if (key == "side") {
                    if (val != "L" && val != "R") throw SyntaxError("side must be L or R");
                    r.cycle.side = val == "L" ? Side::Left : Side::Right;
                    has_side = true;
                } else if (key == "cycle") {
                    std::stringstream cs(val);
                    std::string item;
                    while (std::getline(cs, item, ',')) r.cycle.indices.push_back(std::stoi(item));
                    has_cycle = true;
                } else {
                    throw SyntaxError("unknown move log key '" + key + "'");
                }
            } catch (const std::logic_error&) {
                throw SyntaxError("bad move log value in '" + line + "'");
            }
        }
        if (!has_step || !has_side || !has_cycle || r.step == 0) throw SyntaxError("incomplete move record '" + line + "'");
        r.direction = r.step > 0 ? Direction::Forward : Direction::Backward;
        out.push_back(std::move(r));
    }
    return out;
}

enum class PolicyKind { Greedy, LeftRight, Script, RandomSlow };

struct Policy {
    PolicyKind kind = PolicyKind::Greedy;
    std::vector<CycleRef> script;  // Script only
    std::uint64_t seed = 0;        // RandomSlow only

    static Policy greedy() { return {PolicyKind::Greedy, {}, 0}; }
    static Policy left_right() { return {PolicyKind::LeftRight, {}, 0}; }
    static Policy scripted(std::vector<CycleRef> s) { return {PolicyKind::Script, std::move(s), 0}; }
    static Policy random_slow(std::uint64_t seed) { return {PolicyKind::RandomSlow, {}, seed}; }
};

struct KeaneStop {
    int step = 0;   // the step that could not be performed
    int index = 0;  // a quadrilateral with vertical diagonal
};

struct RunState {
    int step = 0;
    Quadrangulation quad;
};

struct RunResult {
    std::vector<RunState> states;  // states[0] is the start; one entry per completed step
    MoveLog log;
    std::optional<KeaneStop> keane;

    const Quadrangulation& final_quad() const { return states.back().quad; }
    int steps_done() const { return static_cast<int>(states.size()) - 1; }
};

struct RunLimits {
    int steps = 0;
    std::optional<Scalar> width_target = std::nullopt;  // stop once every |x| is below this
    int max_multiplicity = 1000000;
};

inline Scalar max_width(const Quadrangulation& q) {
    Scalar w;
    for (const Wedge& x : q.wedges) {
        for (const Scalar* s : {&x.left.x, &x.right.x}) {
            Scalar a = s->abs();
            if (a > w) w = a;
        }
    }
    return w;
}

namespace detail {

inline void record(RunResult& res, int step, const CycleRef& c, Direction dir, const Datum& before,
                   const Datum& after) {
    res.log.records.push_back({step, c, dir, before, after});
}

}  // namespace detail

// Forward run from q. A vertical diagonal blocking every move ends the run
// with a KeaneStop marker rather than an error.
inline RunResult run(const Quadrangulation& q, const Policy& policy, const RunLimits& limits) {
    RunResult res;
    res.log.initial = q;
    res.states.push_back({0, q});
    std::mt19937_64 rng(policy.seed);
    Quadrangulation cur = q;
    bool left_phase = true;
    for (int step = 1; step <= limits.steps; ++step) {
        if (limits.width_target && max_width(cur) < *limits.width_target) break;
        StaircaseReport rep = staircase_report(cur);
        const Datum before = cur.datum;
        switch (policy.kind) {
            case PolicyKind::Script: {
                if (step > static_cast<int>(policy.script.size())) return res;
                CycleRef c = canonical_cycle(cur.datum, policy.script[step - 1]);
                for (int i : c.indices) {
                    if (slant(cur, i) == Slant::VerticalDiagonal) {
                        res.keane = KeaneStop{step, i};
                        return res;
                    }
                }
                cur = apply_move(cur, c);
                detail::record(res, step, c, Direction::Forward, before, cur.datum);
                break;
            }
            case PolicyKind::Greedy:
            case PolicyKind::RandomSlow: {
                if (rep.well_slanted.empty()) {
                    if (!rep.vertical.empty()) {
                        res.keane = KeaneStop{step, rep.vertical.front()};
                        return res;
                    }
                    throw EmptyMoveSet("no well-slanted staircase in " + cur.datum.str());
                }
                std::vector<CycleRef> chosen;
                if (policy.kind == PolicyKind::Greedy) {
                    chosen = rep.well_slanted;
                } else {
                    std::bernoulli_distribution coin(0.5);
                    while (chosen.empty()) {
                        for (const CycleRef& c : rep.well_slanted) {
                            if (coin(rng)) chosen.push_back(c);
                        }
                    }
                }
                for (const CycleRef& c : chosen) {
                    Datum b = cur.datum;
                    cur = apply_move(cur, c);
                    detail::record(res, step, c, Direction::Forward, b, cur.datum);
                }
                break;
            }
            case PolicyKind::LeftRight: {
                if (rep.well_slanted.empty()) {
                    if (!rep.vertical.empty()) {
                        res.keane = KeaneStop{step, rep.vertical.front()};
                        return res;
                    }
                    throw EmptyMoveSet("no well-slanted staircase in " + cur.datum.str());
                }
                Side side = left_phase ? Side::Left : Side::Right;
                bool any = false;
                for (const CycleRef& c : rep.well_slanted) any = any || c.side == side;
                if (!any) side = opposite(side);
                for (const CycleRef& c : rep.well_slanted) {
                    if (c.side != side) continue;
                    int count = 0;
                    while (is_well_slanted(cur, c)) {
                        if (++count > limits.max_multiplicity) throw EmptyMoveSet("unbounded multiplicity");
                        Datum b = cur.datum;
                        cur = apply_move(cur, c);
                        detail::record(res, step, c, Direction::Forward, b, cur.datum);
                    }
                }
                left_phase = side == Side::Right;
                break;
            }
        }
        res.states.push_back({step, cur});
    }
    return res;
}

// Backward greedy run: every backward staircase is undone at each step.
inline RunResult run_backward(const Quadrangulation& q, int steps) {
    RunResult res;
    res.log.initial = q;
    res.states.push_back({0, q});
    Quadrangulation cur = q;
    for (int step = 1; step <= steps; ++step) {
        Quadrangulation rot = rotate(cur);
        StaircaseReport rep = staircase_report(rot);
        if (rep.well_slanted.empty()) {
            if (!rep.vertical.empty()) {
                res.keane = KeaneStop{-step, rep.vertical.front()};
                return res;
            }
            throw EmptyMoveSet("no backward staircase in " + cur.datum.str());
        }
        std::vector<CycleRef> cycles;
        for (const CycleRef& c : rep.well_slanted) cycles.push_back(cycle_prime_inverse(cur.datum, c));
        Quadrangulation next = backward_simultaneous(cur, cycles);
        for (const CycleRef& c : cycles) {
            detail::record(res, -step, c, Direction::Backward, cur.datum, next.datum);
        }
        cur = next;
        res.states.push_back({-step, cur});
    }
    return res;
}

// Replays records in order; records sharing a step are applied together.
inline Quadrangulation replay(const Quadrangulation& q, const std::vector<MoveRecord>& records) {
    Quadrangulation cur = q;
    std::size_t i = 0;
    while (i < records.size()) {
        std::size_t j = i;
        std::vector<CycleRef> group;
        while (j < records.size() && records[j].step == records[i].step) group.push_back(records[j++].cycle);
        if (records[i].step > 0) {
            cur = apply_simultaneous(cur, group);
        } else {
            cur = backward_simultaneous(cur, group);
        }
        i = j;
    }
    return cur;
}

}  // namespace dc
