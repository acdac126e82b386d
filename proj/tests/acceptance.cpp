// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>

#include <diagchange/diophantine.hpp>
#include <diagchange/graph.hpp>
#include <diagchange/language.hpp>
#include <diagchange/objects.hpp>
#include <diagchange/quadio.hpp>
#include <diagchange/sampling.hpp>
#include <diagchange/teich.hpp>

using namespace dc;

namespace {

Quadrangulation fixture(const std::string& name) {
    return deserialize(read_text_file(std::string(DC_FIXTURES) + "/" + name));
}

Scalar Q(long p, long d = 1) { return Scalar::rational(p, d); }

struct Verdict {
    bool ok;
    std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& title, double budget_s, const std::function<Verdict()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && secs > budget_s) {
        v.ok = false;
        v.detail += " [over the " + std::to_string(budget_s).substr(0, 3) + " s budget]";
    }
    if (!v.ok) ++failures;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", secs);
    std::cout << (v.ok ? "PASS" : "FAIL") << " " << n << " " << title << ": " << v.detail << " (" << buf << ")"
              << std::endl;
}

Verdict torus_best_approximations() {
    auto t = fixture("root2_torus.quad");
    auto produced = produced_wedge_sides(t, 10, 15);
    Scalar ylim;
    for (const auto& c : produced) ylim = std::max(ylim, c.disp.y);
    SearchBox box{Q(1), ylim};
    auto pool = unfold_enumerate(t, 1, box);
    std::set<Vec2, Vec2Less> want, got;
    for (const auto& c : pool) {
        if (c.disp.x.sign() != 0 && is_best_approximation_among(c.disp, pool)) {
            if (!empty_rectangle_among(c.disp, pool)) return {false, "criteria disagree at " + c.disp.str()};
            want.insert(c.disp);
        }
    }
    for (const auto& c : produced) {
        if (box.contains(c.disp)) got.insert(c.disp);
    }
    bool ok = got == want && !want.empty();
    return {ok, std::to_string(got.size()) + " produced vs " + std::to_string(want.size()) + " oracle best approximations, " +
                    std::to_string(pool.size()) + " connections up to y=" + std::to_string(ylim.to_double())};
}

Verdict policy_independence() {
    auto h = fixture("h2_irrational.quad");
    std::vector<Policy> policies{Policy::greedy(), Policy::left_right()};
    for (std::uint64_t s = 1; s <= 5; ++s) policies.push_back(Policy::random_slow(s));
    std::vector<RunObjects> runs;
    for (const auto& p : policies) {
        RunResult r = run(h, p, RunLimits{.steps = 30});
        if (r.keane) return {false, "KeaneStop"};
        runs.push_back(collect_objects(r));
    }
    auto caps = common_caps(runs);
    RunObjects ref = window(runs.front(), caps);
    for (std::size_t j = 1; j < runs.size(); ++j) {
        RunObjects w = window(runs[j], caps);
        if (w.wedges != ref.wedges) return {false, "wedge sets differ for policy " + std::to_string(j)};
        if (w.staircases != ref.staircases) return {false, "staircase sets differ for policy " + std::to_string(j)};
    }
    return {ref.wedges.size() > 10, std::to_string(ref.wedges.size()) + " wedges and " +
                                        std::to_string(ref.staircases.size()) + " staircases agree across 7 policies"};
}

std::vector<Quadrangulation> random_surfaces(std::mt19937_64& rng, int n) {
    std::vector<Quadrangulation> out;
    for (int t = 0; t < n; ++t) {
        auto d = datum_from_tree(random_tree(1 + static_cast<int>(rng() % 7), rng));
        out.push_back(random_quadrangulation(d, rng, t % 2 == 0 ? 0 : 2));
    }
    return out;
}

Verdict self_duality() {
    std::mt19937_64 rng(303);
    int done = 0;
    while (done < 200) {
        auto q = random_surfaces(rng, 1).front();
        // wander a little so that the start is a reachable state
        for (int m = static_cast<int>(rng() % 4); m > 0; --m) {
            auto c = well_slanted_staircases(q);
            if (c.empty()) break;
            q = apply_move(q, c[rng() % c.size()]);
        }
        auto cs = well_slanted_staircases(q);
        if (cs.empty()) continue;
        CycleRef c = canonical_cycle(q.datum, cs[rng() % cs.size()]);
        Quadrangulation moved = apply_move(q, c);
        Quadrangulation back = rotate_inverse(apply_move(rotate(moved), cycle_prime(moved.datum, c)));
        if (back.datum != q.datum || flatten_sides(back) != flatten_sides(q)) {
            return {false, "round trip differs on " + q.datum.str() + " " + c.str()};
        }
        ++done;
    }
    return {true, "200 moves undone exactly by the rotated move"};
}

Verdict invariants() {
    std::mt19937_64 rng(404);
    int moves = 0;
    while (moves < 1000) {
        auto q = random_surfaces(rng, 1).front();
        const Scalar a0 = area(q);
        for (int m = 0; m < 12 && moves < 1000; ++m) {
            auto cs = well_slanted_staircases(q);
            if (cs.empty()) break;
            CycleRef c = cs[rng() % cs.size()];
            MoveMatrix mat = move_matrix(q.datum, c);
            mpz_class det = determinant(mat);
            if (det != 1 && det != -1) return {false, "determinant " + det.get_str()};
            Quadrangulation next = apply_move(q, c);
            if (apply_matrix(mat, flatten_sides(q)) != flatten_sides(next)) return {false, "matrix action mismatch"};
            if (auto v = validate(next); !v.empty()) return {false, v.front()};
            if (!next.datum.is_transitive()) return {false, "lost transitivity"};
            if (area(next) != a0) return {false, "area changed"};
            q = next;
            ++moves;
        }
    }
    return {true, "1000 moves kept train-tracks, signs, transitivity and area; all determinants +-1"};
}

Verdict stuck_fixtures() {
    auto h000 = fixture("h000_corrected.quad");
    auto h4 = fixture("h4_corrected.quad");
    auto printed = parse_quad_file(read_text_file(std::string(DC_FIXTURES) + "/h4_printed.quad")).quad;
    std::size_t a = well_slanted_staircases(h000).size(), b = well_slanted_staircases(h4).size();
    auto v = validate(printed);
    bool ok = a == 0 && b == 0 && !v.empty();
    return {ok, std::to_string(a) + " and " + std::to_string(b) + " staircases; printed H(4): " +
                    (v.empty() ? std::string("valid") : v.front())};
}

Verdict existence() {
    std::mt19937_64 rng(505);
    auto qs = random_surfaces(rng, 100);
    for (const auto& q : qs) {
        if (well_slanted_staircases(q).empty()) return {false, "no staircase on " + q.datum.str()};
    }
    return {true, "100 random surfaces, each with a well-slanted staircase"};
}

Verdict bispecial_agreement() {
    auto h = fixture("h2_irrational.quad");
    RunResult r = run(h, Policy::greedy(), RunLimits{.steps = 25});
    if (r.keane) return {false, "KeaneStop"};
    auto lrd = lrd_along(r);
    std::set<Word> words;
    for (std::size_t s = 0; s < r.states.size(); ++s) {
        std::vector<MoveRecord> prefix;
        for (const auto& rec : r.log.records) {
            if (rec.step <= r.states[s].step) prefix.push_back(rec);
        }
        for (int i = 1; i <= h.k(); ++i) {
            Word traced = trace_segment(h, i, diagonal(r.states[s].quad, i));
            if (lrd[s].d(i) != traced || diagonal_word_via_substitution(h, prefix, i) != traced) {
                return {false, "disagreement at step " + std::to_string(s) + " i=" + std::to_string(i)};
            }
            words.insert(traced);
        }
    }
    SampleOptions opt;
    opt.length = 100000;
    Word sample = sample_sequence(h, opt);
    std::size_t pass = 0, nonempty = 0, inconclusive = 0;
    std::string first_bad;
    for (const Word& w : words) {
        if (w.empty()) continue;
        ++nonempty;
        auto c = verify_bispecial_in(h.datum, w, sample, opt.min_occurrences);
        if (c.status == BispecialStatus::Pass && c.left_seen == c.left_expected && c.right_seen == c.right_expected) {
            ++pass;
        } else {
            inconclusive += c.status == BispecialStatus::InsufficientSample;
            if (first_bad.empty()) {
                first_bad = "; first miss |w|=" + std::to_string(w.size()) + " " + status_name(c.status) + " with " +
                            std::to_string(c.occurrences) + " occurrences";
            }
        }
    }
    return {pass == nonempty, std::to_string(words.size()) + " words agree three ways; " + std::to_string(pass) + "/" +
                                  std::to_string(nonempty) + " verified on a 1e5 orbit (" + std::to_string(inconclusive) +
                                  " inconclusive)" + first_bad};
}

Verdict width_decay() {
    std::string detail;
    bool ok = true;
    for (const char* name : {"root2_torus.quad", "h2_irrational.quad"}) {
        RunResult r = run(fixture(name), Policy::greedy(), RunLimits{.steps = 40});
        Scalar w = max_width(r.final_quad());
        ok = ok && !r.keane && w < Q(1, 1000);
        detail += std::string(name) + " width " + std::to_string(w.to_double()) + "; ";
    }
    RunResult sq = run(fixture("square_torus.quad"), Policy::greedy(), RunLimits{.steps = 40});
    ok = ok && sq.keane && sq.keane->step == 1;
    detail += "square torus KeaneStop at step " + (sq.keane ? std::to_string(sq.keane->step) : std::string("none"));
    return {ok, detail};
}

Verdict systole() {
    auto t = fixture("root2_torus.quad");
    auto rep = systole_realizers(t, Policy::greedy(), 10, 10, Q(1), Q(100));
    for (const auto& s : rep.segments) {
        bool listed = false;
        for (const auto& c : rep.candidates) listed = listed || c.disp == s.realizer.disp;
        if (!listed) return {false, "realizer " + s.realizer.disp.str() + " not produced"};
    }
    // for q >= 1 a systole in the window is no longer than the envelope at q_hi
    Scalar worst;
    for (const auto& s : rep.segments) worst = std::max(worst, scaled_sq_length(s.realizer.disp, *s.q_to));
    Scalar l = Q(static_cast<long>(std::ceil(std::sqrt(worst.to_double()))) + 1);
    auto pool = unfold_enumerate(t, 1, {l, l * Q(4)});
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<long> pick(10, 1000);
    for (int k = 0; k < 50; ++k) {
        Scalar at = Q(pick(rng), 10);
        Scalar brute = scaled_sq_length(pool.front().disp, at);
        for (const auto& c : pool) brute = std::min(brute, scaled_sq_length(c.disp, at));
        if (scaled_sq_length(envelope_at(rep.segments, at).disp, at) != brute) return {false, "mismatch at q=" + at.str()};
    }
    return {rep.covered, std::to_string(rep.segments.size()) + " segments; 50 samples equal the minimum over " +
                             std::to_string(pool.size()) + " oracle connections"};
}

Verdict area_bound() {
    int checks = 0;
    for (const char* name : {"root2_torus.quad", "h2_irrational.quad"}) {
        auto q = fixture(name);
        for (int i = 1; i <= q.k(); ++i) {
            for (const Scalar& r : {Q(1, 4), Q(1, 2), Q(1)}) {
                if (!area_bound_check(q, i, r)) return {false, std::string(name) + " bundle " + std::to_string(i) + " r=" + r.str()};
                ++checks;
            }
        }
    }
    return {true, std::to_string(checks) + " (fixture, bundle, r) cases below Area/r"};
}

Verdict graph_regression() {
    Datum d(Perm({3, 2, 1}), Perm({2, 1, 3}));
    auto g = enumerate_graph(d, 1000);
    auto iota = find_involution(d);
    if (!iota) return {false, "no involution"};
    Perm inv = invariant_cycle(d, *iota);
    if (inv.cycles().size() != 1) return {false, "invariant is not a 3-cycle"};
    for (const Datum& v : g.vertices) {
        auto j = find_involution(v);
        if (!j || invariant_cycle(v, *j) != inv) return {false, "invariant changes at " + v.str()};
    }
    bool ok = g.vertices.size() == 9 && g.edges.size() == 30;
    return {ok, std::to_string(g.vertices.size()) + " vertices, " + std::to_string(g.edges.size()) +
                    " edges, invariant " + inv.cycle_string(" ")};
}

}  // namespace

int main() {
    criterion(1, "torus best approximations", 5, torus_best_approximations);
    criterion(2, "policy independence", 5, policy_independence);
    criterion(3, "self-duality", 0, self_duality);
    criterion(4, "invariant preservation", 0, invariants);
    criterion(5, "stuck fixtures", 0, stuck_fixtures);
    criterion(6, "existence of staircases", 0, existence);
    criterion(7, "bispecial triple agreement", 0, bispecial_agreement);
    criterion(8, "width decay", 0, width_decay);
    criterion(9, "systole envelope", 0, systole);
    criterion(10, "area bound", 0, area_bound);
    criterion(11, "graph regression", 0, graph_regression);
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
