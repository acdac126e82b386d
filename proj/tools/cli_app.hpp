#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>

#include <diagchange/diophantine.hpp>
#include <diagchange/graph.hpp>
#include <diagchange/language.hpp>
#include <diagchange/quadio.hpp>
#include <diagchange/render.hpp>
#include <diagchange/teich.hpp>

namespace dccli {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

// "L{1,2,3} R{2}" -> cycles
inline std::vector<dc::CycleRef> parse_script(const std::string& text) {
    static const std::regex item(R"(([LR])\{([0-9,\s]+)\})");
    std::vector<dc::CycleRef> out;
    std::string rest = text;
    std::smatch m;
    while (std::regex_search(rest, m, item)) {
        if (!dc::detail::trim(m.prefix().str()).empty() && dc::detail::trim(m.prefix().str()) != ",") {
            throw dc::SyntaxError("bad script near '" + m.prefix().str() + "'");
        }
        dc::CycleRef c;
        c.side = m[1] == "L" ? dc::Side::Left : dc::Side::Right;
        c.indices = dc::detail::parse_int_list("[" + dc::detail::strip_spaces(m[2].str()) + "]");
        out.push_back(std::move(c));
        rest = m.suffix().str();
    }
    if (!dc::detail::trim(rest).empty()) throw dc::SyntaxError("bad script tail '" + rest + "'");
    return out;
}

// "[3,2,1]" one-line, or "(1,3)(2 4)" cycles of a permutation of 1..k
inline dc::Perm parse_perm(const std::string& text, int k) {
    std::string s = dc::detail::trim(text);
    if (!s.empty() && s.front() == '[') return dc::Perm(dc::detail::parse_int_list(dc::detail::strip_spaces(s)));
    static const std::regex cyc(R"(\(([0-9,\s]*)\))");
    std::vector<std::vector<int>> cycles;
    std::string rest = s;
    std::smatch m;
    while (std::regex_search(rest, m, cyc)) {
        if (!dc::detail::trim(m.prefix().str()).empty()) throw dc::SyntaxError("bad permutation '" + text + "'");
        std::string body = std::regex_replace(m[1].str(), std::regex(R"([\s,]+)"), ",");
        if (!body.empty() && body.front() == ',') body.erase(0, 1);
        if (!body.empty() && body.back() == ',') body.pop_back();
        cycles.push_back(body.empty() ? std::vector<int>{} : dc::detail::parse_int_list("[" + body + "]"));
        rest = m.suffix().str();
    }
    if (!dc::detail::trim(rest).empty()) throw dc::SyntaxError("bad permutation '" + text + "'");
    if (k < 1) throw dc::SyntaxError("cycle notation needs --k");
    for (const auto& c : cycles) {
        for (int v : c) {
            if (v < 1 || v > k) throw dc::SyntaxError("entry " + std::to_string(v) + " outside 1.." + std::to_string(k));
        }
    }
    return dc::Perm::from_cycles(k, cycles);
}

struct PolicyOpts {
    std::string name = "greedy";
    std::uint64_t seed = 1;
    std::string script;

    void attach(CLI::App* sub) {
        sub->add_option("--policy", name, "greedy | leftright | random | script")
            ->check(CLI::IsMember({"greedy", "leftright", "random", "script"}));
        sub->add_option("--seed", seed, "seed of the random slow policy");
        sub->add_option("--script", script, "cycles for the script policy, e.g. \"L{1,2,3} R{2}\"");
    }

    dc::Policy policy() const {
        if (name == "leftright") return dc::Policy::left_right();
        if (name == "random") return dc::Policy::random_slow(seed);
        if (name == "script") return dc::Policy::scripted(parse_script(script));
        return dc::Policy::greedy();
    }
};

inline std::string floats(const dc::Vec2& v) {
    std::ostringstream os;
    os.precision(12);
    os << '\t' << v.x.to_double() << '\t' << v.y.to_double();
    return os.str();
}

inline std::string floats(const dc::Scalar& s) {
    std::ostringstream os;
    os.precision(12);
    os << '\t' << s.to_double();
    return os.str();
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Staircase moves on quadrangulations of translation surfaces"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_float = false;
    app.add_flag("--float", as_float, "append floating-point columns to numeric output");

    std::string input;
    auto need_input = [&](CLI::App* sub) { sub->add_option("input", input, ".quad file")->required(); };

    auto* validate = app.add_subcommand("validate", "check a .quad file and report the involution");
    need_input(validate);

    auto* runc = app.add_subcommand("run", "apply staircase moves");
    need_input(runc);
    PolicyOpts run_policy;
    run_policy.attach(runc);
    int steps = 10;
    int back_steps = 0;
    std::string width_target, out_quad, out_log, replay_log;
    runc->add_option("--steps", steps, "forward steps");
    runc->add_option("--backward", back_steps, "backward greedy steps instead of forward ones");
    runc->add_option("--width", width_target, "stop once every |x| is below this scalar");
    runc->add_option("--out", out_quad, "final .quad file");
    runc->add_option("--log", out_log, "move log file (defaults next to --out)");
    runc->add_option("--replay", replay_log, "replay this move log instead of running a policy");

    auto* best = app.add_subcommand("best-approx", "stream of wedge sides of one bundle");
    need_input(best);
    PolicyOpts best_policy;
    best_policy.attach(best);
    int bundle = 1;
    std::string side_name = "r", ty_limit;
    std::size_t count = 5;
    bool oracle_check = false;
    best->add_option("--bundle", bundle, "bundle index");
    best->add_option("--side", side_name, "l or r")->check(CLI::IsMember({"l", "r"}));
    best->add_option("--count", count, "number of entries");
    best->add_option("--ty", ty_limit, "stop above this height instead of after --count entries");
    best->add_flag("--oracle-check", oracle_check, "confirm each entry with the unfolding oracle");

    auto* bisp = app.add_subcommand("bispecial", "diagonal words along a run");
    need_input(bisp);
    PolicyOpts bisp_policy;
    bisp_policy.attach(bisp);
    int bisp_steps = 10;
    bool verify = false;
    std::size_t sample_len = 100000;
    bisp->add_option("--steps", bisp_steps, "forward steps");
    bisp->add_flag("--verify", verify, "check extensions on a sampled orbit");
    bisp->add_option("--sample-len", sample_len, "length of the sampled cutting sequence");

    auto* sys = app.add_subcommand("systole", "systole envelope over produced wedge sides");
    need_input(sys);
    PolicyOpts sys_policy;
    sys_policy.attach(sys);
    int n_back = 10, n_fwd = 10;
    std::string q_lo = "1", q_hi = "100";
    sys->add_option("--back", n_back, "backward steps");
    sys->add_option("--fwd", n_fwd, "forward steps");
    sys->add_option("--qlo", q_lo, "window start (q = e^{4t})");
    sys->add_option("--qhi", q_hi, "window end, or inf");

    auto* lag = app.add_subcommand("lagrange", "per-step minimum wedge area over the area");
    need_input(lag);
    PolicyOpts lag_policy;
    lag_policy.attach(lag);
    int lag_steps = 40;
    lag->add_option("--steps", lag_steps, "forward steps");

    auto* graph = app.add_subcommand("graph", "graph of combinatorial data reachable by staircase moves");
    std::string datum_file, perm_l, perm_r, dot_out;
    int k = 0;
    std::size_t max_vertices = 1000;
    graph->add_option("--datum-file", datum_file, "file with k=..; perm_l=[..]; perm_r=[..]");
    graph->add_option("--perm-l", perm_l, "one-line [..] or cycles (..)");
    graph->add_option("--perm-r", perm_r, "one-line [..] or cycles (..)");
    graph->add_option("--k", k, "size, needed with cycle notation");
    graph->add_option("--max-vertices", max_vertices, "vertex budget");
    graph->add_option("--out", dot_out, "DOT file (stdout otherwise)");

    auto* render = app.add_subcommand("render", "SVG picture of the quadrilaterals");
    need_input(render);
    std::string svg_out;
    render->add_option("--out", svg_out, "SVG file (stdout otherwise)");

    auto* oracle = app.add_subcommand("oracle", "saddle connections of a bundle inside a box");
    need_input(oracle);
    std::string rx = "2", ty = "10";
    bool best_only = false;
    oracle->add_option("--bundle", bundle, "bundle index");
    oracle->add_option("--rx", rx, "|x| bound");
    oracle->add_option("--ty", ty, "y bound");
    oracle->add_flag("--best-only", best_only, "keep best approximations only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kUsage;
    }

    auto load = [&]() { return dc::deserialize(slurp(input)); };
    auto side_of = [](const std::string& s) { return s == "l" ? dc::Side::Left : dc::Side::Right; };

    try {
        if (validate->parsed()) {
            dc::QuadFile f = dc::parse_quad_file(slurp(input));
            auto problems = dc::validate(f.quad);
            if (!problems.empty()) {
                for (const auto& p : problems) out << "invalid: " << p << "\n";
                return kDomain;
            }
            out << "valid, k=" << f.quad.k() << ", area " << dc::area(f.quad).str() << "\n";
            if (auto iota = dc::find_involution(f.quad.datum)) {
                out << "hyperelliptic, ι=" << iota->cycle_string(" ", false) << "\n";
            } else {
                out << "not hyperelliptic\n";
            }
            return kOk;
        }
        if (runc->parsed()) {
            dc::Quadrangulation q = load();
            dc::RunResult r;
            if (!replay_log.empty()) {
                auto records = dc::parse_move_log(slurp(replay_log));
                dc::Quadrangulation fin = dc::replay(q, records);
                r.states.push_back({0, q});
                r.states.push_back({records.empty() ? 0 : records.back().step, fin});
                r.log.initial = q;
                r.log.records = records;
            } else if (back_steps > 0) {
                r = dc::run_backward(q, back_steps);
            } else {
                dc::RunLimits lim{.steps = steps};
                if (!width_target.empty()) lim.width_target = dc::Scalar::parse(width_target);
                r = dc::run(q, run_policy.policy(), lim);
            }
            const dc::Quadrangulation& fin = r.final_quad();
            out << "steps " << r.steps_done() << ", moves " << r.log.records.size() << ", max width "
                << dc::max_width(fin).str() << (as_float ? floats(dc::max_width(fin)) : "") << "\n";
            if (r.keane) out << "KeaneStop at step " << r.keane->step << " (vertical diagonal " << r.keane->index << ")\n";
            if (out_quad.empty()) {
                out << dc::serialize(fin);
            } else {
                spill(out_quad, dc::serialize(fin));
                if (replay_log.empty()) spill(out_log.empty() ? out_quad + ".moves" : out_log, r.log.str());
            }
            return r.keane ? kDomain : kOk;
        }
        if (best->parsed()) {
            dc::Quadrangulation q = load();
            dc::StreamLimit lim;
            if (ty_limit.empty()) {
                lim.count = count;
            } else {
                lim.ty = dc::Scalar::parse(ty_limit);
            }
            auto s = dc::best_approx_stream(q, best_policy.policy(), bundle, side_of(side_name), lim);
            bool agree = true;
            out << "# n\tstep\tx\ty" << (oracle_check ? "\toracle" : "") << "\n";
            for (std::size_t j = 0; j < s.size(); ++j) {
                out << j << '\t' << s[j].step << '\t' << s[j].disp.x.str() << '\t' << s[j].disp.y.str();
                if (oracle_check) {
                    bool ok = dc::is_best_approximation(q, s[j]);
                    agree = agree && ok;
                    out << '\t' << (ok ? "best" : "NOT-BEST");
                }
                if (as_float) out << floats(s[j].disp);
                out << "\n";
            }
            if (oracle_check) out << "# oracle agreement: " << (agree ? "yes" : "no") << "\n";
            return agree ? kOk : kDomain;
        }
        if (bisp->parsed()) {
            dc::Quadrangulation q = load();
            auto rep = dc::bispecials(q, bisp_policy.policy(), bisp_steps);
            if (!verify) {
                out << rep.dump();
                return kOk;
            }
            dc::SampleOptions opt;
            opt.length = sample_len;
            dc::Word sample = dc::sample_sequence(q, opt);
            bool all = true;
            for (const auto& e : rep.entries) {
                auto c = dc::verify_bispecial_in(q.datum, e.word, sample, opt.min_occurrences);
                all = all && c.status == dc::BispecialStatus::Pass;
                auto [step, bnd] = e.seen_at.front();
                out << step << '\t' << bnd << '\t' << dc::format_word(e.word) << '\t' << dc::status_name(c.status) << '\t'
                    << c.occurrences << "\n";
            }
            return all ? kOk : kDomain;
        }
        if (sys->parsed()) {
            dc::Quadrangulation q = load();
            std::optional<dc::Scalar> hi;
            if (q_hi != "inf") hi = dc::Scalar::parse(q_hi);
            auto rep = dc::systole_realizers(q, sys_policy.policy(), n_back, n_fwd, dc::Scalar::parse(q_lo), hi);
            for (const auto& w : rep.warnings) err << "warning: " << w << "\n";
            out << "# q_from\tq_to\tbundle\tside\tstep\tx\ty\n";
            if (!as_float) {
                out << rep.tsv();
            } else {
                for (const auto& s : rep.segments) {
                    out << s.q_from.str() << '\t' << (s.q_to ? s.q_to->str() : "inf") << '\t' << s.realizer.bundle << '\t'
                        << dc::side_char(s.realizer.side()) << '\t' << s.realizer.step << '\t' << s.realizer.disp.x.str()
                        << '\t' << s.realizer.disp.y.str() << floats(s.q_from) << floats(s.realizer.disp) << "\n";
                }
            }
            return kOk;
        }
        if (lag->parsed()) {
            auto rep = dc::lagrange_estimate(load(), lag_policy.policy(), lag_steps);
            out << "# step\ta\trunning_min\n";
            for (std::size_t j = 0; j < rep.per_step.size(); ++j) {
                out << j << '\t' << rep.per_step[j].str() << '\t' << rep.running_min[j].str();
                if (as_float) out << floats(rep.per_step[j]) << floats(rep.running_min[j]);
                out << "\n";
            }
            return kOk;
        }
        if (graph->parsed()) {
            std::optional<dc::Datum> d;
            if (!datum_file.empty()) {
                std::stringstream ss(slurp(datum_file));
                std::string text;
                for (std::string line; std::getline(ss, line);) {
                    if (!dc::detail::trim(line).empty() && dc::detail::trim(line)[0] != '#') text = line;
                }
                d = dc::detail::parse_datum_line(text);
            } else if (!perm_l.empty() && !perm_r.empty()) {
                d = dc::Datum(parse_perm(perm_l, k), parse_perm(perm_r, k));
            } else {
                err << "graph needs --datum-file or both --perm-l and --perm-r\n";
                return kUsage;
            }
            auto g = dc::enumerate_graph(*d, max_vertices);
            std::string dot = dc::graph_to_dot(g);
            if (dot_out.empty()) {
                out << dot;
            } else {
                spill(dot_out, dot);
            }
            auto iota = dc::find_involution(*d);
            err << g.vertices.size() << " vertices, " << g.edges.size() << " edges";
            if (iota) err << ", invariant " << dc::invariant_cycle(*d, *iota).cycle_string(" ", false);
            err << "\n";
            return kOk;
        }
        if (render->parsed()) {
            std::string svg = dc::render_svg(load());
            if (svg_out.empty()) {
                out << svg;
            } else {
                spill(svg_out, svg);
            }
            return kOk;
        }
        if (oracle->parsed()) {
            dc::Quadrangulation q = load();
            auto pool = dc::unfold_enumerate(q, bundle, {dc::Scalar::parse(rx), dc::Scalar::parse(ty)});
            out << "# x\ty\tbest\n";
            for (const auto& c : pool) {
                bool b = dc::is_best_approximation_among(c.disp, pool);
                if (best_only && !b) continue;
                out << c.disp.x.str() << '\t' << c.disp.y.str() << '\t' << (b ? "yes" : "no");
                if (as_float) out << floats(c.disp);
                out << "\n";
            }
            return kOk;
        }
    } catch (const IoError& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const std::ios_base::failure& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const dc::Error& e) {
        err << e.what() << "\n";
        return kDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDomain;
    }
    return kUsage;
}

}  // namespace dccli
