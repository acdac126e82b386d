#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include <diagchange/teich.hpp>

#include "support.hpp"

using dc::SaddleConnection;
using dc::Scalar;
using dc::Side;
using dctest::load_fixture;
using dctest::q;
using dctest::sqrt2;
using dctest::V;

namespace {

SaddleConnection sc(const dc::Vec2& v) { return {1, v, dc::role_of(v), 0}; }

Scalar brute_min(const std::vector<SaddleConnection>& c, const Scalar& at) {
    Scalar m = dc::scaled_sq_length(c.front().disp, at);
    for (const auto& s : c) m = std::min(m, dc::scaled_sq_length(s.disp, at));
    return m;
}

}  // namespace

TEST(Teich, MinPoint) {
    auto a = dc::min_point(V(q(1, 2), q(3)));
    EXPECT_EQ(a.qstar, q(36));
    EXPECT_EQ(a.min_sq_len, q(3));
    auto b = dc::min_point(V(q(1), q(1)));
    EXPECT_EQ(b.qstar, q(1));
    EXPECT_EQ(b.min_sq_len, q(2));
    EXPECT_THROW(dc::min_point(V(q(0), q(2))), dc::OnAxis);
    EXPECT_THROW(dc::min_point(V(q(2), q(0))), dc::OnAxis);
}

TEST(Teich, TwoCandidateCrossing) {
    auto env = dc::systole_envelope({sc(V(q(1), q(1))), sc(V(q(1, 2), q(3)))}, q(1, 100), std::nullopt);
    ASSERT_EQ(env.size(), 2u);
    EXPECT_EQ(env[0].realizer.disp, V(q(1), q(1)));
    ASSERT_TRUE(env[0].q_to);
    EXPECT_EQ(*env[0].q_to, q(32, 3));
    EXPECT_EQ(env[1].realizer.disp, V(q(1, 2), q(3)));
    EXPECT_FALSE(env[1].q_to);
}

TEST(Teich, DegenerateRanges) {
    auto one = dc::systole_envelope({sc(V(q(-2), q(1)))}, q(1), q(50));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].q_from, q(1));
    EXPECT_EQ(*one[0].q_to, q(50));

    std::vector<SaddleConnection> c{sc(V(q(1), q(1))), sc(V(q(1, 2), q(3))), sc(V(q(-3), q(1, 5)))};
    auto pt = dc::systole_envelope(c, q(7), q(7));
    ASSERT_EQ(pt.size(), 1u);
    EXPECT_EQ(dc::scaled_sq_length(pt[0].realizer.disp, q(7)), brute_min(c, q(7)));

    EXPECT_THROW(dc::systole_envelope(c, q(2), q(1)), std::invalid_argument);
    EXPECT_THROW(dc::systole_envelope({sc(V(q(0), q(1)))}, q(1), q(2)), dc::OnAxis);
}

TEST(Teich, EnvelopeMatchesPointwiseMinimum) {
    std::mt19937_64 rng(211);
    std::uniform_int_distribution<long> num(-40, 40), den(1, 12), qn(1, 4000);
    for (int t = 0; t < 20; ++t) {
        std::vector<SaddleConnection> c;
        for (int j = 0; j < 12; ++j) {
            long a = num(rng), b = std::abs(num(rng));
            if (a == 0) a = 1;
            if (b == 0) b = 3;
            c.push_back(sc(V(Scalar::rational(a, den(rng)) + Scalar::rational(a % 3, 7) * sqrt2(), q(b, den(rng)))));
        }
        auto env = dc::systole_envelope(c, q(1, 20), q(400));
        for (std::size_t s = 1; s < env.size(); ++s) {
            // breakpoints are exact ties
            EXPECT_EQ(dc::scaled_sq_length(env[s - 1].realizer.disp, env[s].q_from),
                      dc::scaled_sq_length(env[s].realizer.disp, env[s].q_from));
            EXPECT_EQ(*env[s - 1].q_to, env[s].q_from);
            EXPECT_LT(env[s].realizer.disp.x.abs(), env[s - 1].realizer.disp.x.abs());
        }
        for (int k = 0; k < 50; ++k) {
            Scalar at = q(qn(rng), 10);
            EXPECT_EQ(dc::scaled_sq_length(dc::envelope_at(env, at).disp, at), brute_min(c, at));
        }
    }
}

TEST(Teich, OwnSegmentMinimum) {
    std::vector<SaddleConnection> c{sc(V(q(3), q(1, 3))), sc(V(q(1), q(1))), sc(V(q(1, 4), q(5))),
                                    sc(V(q(1, 40), q(30)))};
    auto env = dc::systole_envelope(c, q(1, 1000), q(10000000));
    for (const auto& s : env) {
        auto mp = dc::min_point(s.realizer.disp);
        bool inside = s.q_from <= mp.qstar && mp.qstar <= *s.q_to;
        double lo = std::log(s.q_from.to_double()), hi = std::log(s.q_to->to_double());
        double best = 1e300;
        double x = s.realizer.disp.x.to_double(), y = s.realizer.disp.y.to_double();
        for (int j = 0; j <= 4000; ++j) {
            double sq = std::sqrt(std::exp(lo + (hi - lo) * j / 4000.0));
            best = std::min(best, sq * x * x + y * y / sq);
        }
        double target = mp.min_sq_len.to_double();
        EXPECT_GE(best, target * (1 - 1e-12));
        EXPECT_EQ(best < target * (1 + 1e-4), inside);
    }
}

TEST(Teich, RealizersMatchOracleOnTorus) {
    auto t = load_fixture("root2_torus.quad");
    auto rep = dc::systole_realizers(t, dc::Policy::greedy(), 10, 10, q(1), q(100));
    EXPECT_TRUE(rep.covered);
    ASSERT_FALSE(rep.segments.empty());
    // for q >= 1 the true squared length is at most the scaled one, so any
    // systole in the window has |x| <= L and y <= L * 100^(1/4)
    Scalar worst = dc::scaled_sq_length(rep.segments.front().realizer.disp, q(1));
    for (const auto& s : rep.segments) {
        for (const Scalar* at : {&s.q_from, &*s.q_to}) {
            worst = std::max(worst, dc::scaled_sq_length(s.realizer.disp, *at));
        }
    }
    Scalar l = q(static_cast<long>(std::ceil(std::sqrt(worst.to_double()))) + 1);
    auto pool = dc::unfold_enumerate(t, 1, {l, l * q(4)});
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> pick(10, 1000);
    for (int k = 0; k < 50; ++k) {
        Scalar at = q(pick(rng), 10);
        EXPECT_EQ(dc::scaled_sq_length(dc::envelope_at(rep.segments, at).disp, at), brute_min(pool, at)) << at;
    }
}

TEST(Teich, RealizersAreProducedSides) {
    auto h = load_fixture("h2_irrational.quad");
    auto rep = dc::systole_realizers(h, dc::Policy::greedy(), 8, 12, q(1, 10), q(10));
    EXPECT_TRUE(rep.covered) << rep.tsv();
    for (const auto& s : rep.segments) {
        bool listed = false;
        for (const auto& c : rep.candidates) listed = listed || (c.bundle == s.realizer.bundle && c.disp == s.realizer.disp);
        EXPECT_TRUE(listed);
    }
    EXPECT_FALSE(rep.corollary_unmet);
}

TEST(Teich, RayPrecondition) {
    auto t = load_fixture("root2_torus.quad");
    // the shortest vector is (-1,1) itself, whose width 1 is below sqrt 2
    EXPECT_EQ(dc::systole_sq(t), q(2));
    EXPECT_FALSE(dc::ray_precondition_holds(t));
    auto rep = dc::systole_realizers(t, dc::Policy::greedy(), 0, 10, q(1), q(100));
    EXPECT_TRUE(rep.corollary_unmet);
    EXPECT_FALSE(rep.warnings.empty());
}

TEST(Lagrange, TorusStartValue) {
    auto t = load_fixture("root2_torus.quad");
    auto rep = dc::lagrange_estimate(t, dc::Policy::greedy(), 0);
    ASSERT_EQ(rep.per_step.size(), 1u);
    EXPECT_EQ(rep.per_step[0], (q(2) - sqrt2()) / (q(2) * sqrt2() - q(1)));
}

TEST(Lagrange, RunningMinimum) {
    auto h = load_fixture("h2_irrational.quad");
    auto rep = dc::lagrange_estimate(h, dc::Policy::greedy(), 40);
    ASSERT_EQ(rep.per_step.size(), 41u);
    for (std::size_t j = 1; j < rep.running_min.size(); ++j) {
        EXPECT_LE(rep.running_min[j], rep.running_min[j - 1]);
        EXPECT_LE(rep.running_min[j], rep.per_step[j]);
        EXPECT_GT(rep.per_step[j].sign(), 0);
    }
    EXPECT_THROW(dc::lagrange_estimate(load_fixture("h2.quad"), dc::Policy::greedy(), 40), dc::KeaneStopBeforeLimit);
}

TEST(Lagrange, TorusApproachesMarkovConstant) {
    // slope sqrt 2 has Lagrange value sqrt 8, so |x y| / Area tends to 1/sqrt 8 along the run
    auto t = load_fixture("root2_torus.quad");
    auto rep = dc::lagrange_estimate(t, dc::Policy::greedy(), 60);
    const double target = 1.0 / std::sqrt(8.0);
    for (std::size_t j = 30; j < rep.per_step.size(); ++j) EXPECT_NEAR(rep.per_step[j].to_double(), target, 1e-9);
    EXPECT_LT(rep.per_step[0].to_double(), target);
}

TEST(Lagrange, GenusTwoRegression) {
    auto rep = dc::lagrange_estimate(load_fixture("h2_irrational.quad"), dc::Policy::greedy(), 40);
    EXPECT_EQ(rep.running_min.back(), q(21, 409) - q(4, 409) * sqrt2());
}
