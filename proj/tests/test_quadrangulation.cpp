#include <gtest/gtest.h>

#include <random>

#include <diagchange/sampling.hpp>

#include "support.hpp"

using dc::Quadrangulation;
using dc::Side;
using dc::Slant;
using dctest::load_fixture;
using dctest::q;
using dctest::sqrt2;
using dctest::V;

namespace {

// Shoelace over explicitly listed corners B, R, T, L.
dc::Scalar shoelace(const std::vector<dc::Vec2>& pts) {
    dc::Scalar twice;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const auto& a = pts[j];
        const auto& b = pts[(j + 1) % pts.size()];
        twice += a.x * b.y - b.x * a.y;
    }
    return q(1, 2) * twice;
}

}  // namespace

TEST(Quadrangulation, ValidateFixtures) {
    EXPECT_TRUE(load_fixture("h2.quad").datum.is_transitive());
    EXPECT_TRUE(dc::is_valid(load_fixture("h2.quad")));
    EXPECT_TRUE(dc::is_valid(load_fixture("root2_torus.quad")));
    EXPECT_TRUE(dc::is_valid(load_fixture("h2_irrational.quad")));
    EXPECT_TRUE(dc::is_valid(load_fixture("h4_corrected.quad")));
    EXPECT_TRUE(dc::is_valid(load_fixture("h000_corrected.quad")));

    auto printed = dctest::load_fixture_raw("h4_printed.quad").quad;
    auto v = dc::validate(printed);
    ASSERT_FALSE(v.empty());
    EXPECT_NE(v.front().find("train-track violated at i=1"), std::string::npos) << v.front();
    EXPECT_THROW(load_fixture("h4_printed.quad"), dc::ValidationFailed);

    auto h000 = dctest::load_fixture_raw("h000_printed.quad").quad;
    auto v0 = dc::validate(h000);
    ASSERT_EQ(v0.size(), 2u);
    EXPECT_NE(v0[0].find("i=1"), std::string::npos);
    EXPECT_NE(v0[1].find("i=3"), std::string::npos);
}

TEST(Quadrangulation, StrictSigns) {
    Quadrangulation sq = load_fixture("square_torus.quad");
    sq.wedge(1).left.x = q(0);
    EXPECT_FALSE(dc::is_valid(sq));
    EXPECT_THROW(dc::deserialize(dc::serialize(sq)), dc::ValidationFailed);

    Quadrangulation flat = load_fixture("square_torus.quad");
    flat.wedge(1).right.y = q(0);
    EXPECT_FALSE(dc::is_valid(flat));
}

TEST(Quadrangulation, Diagonals) {
    auto h4 = load_fixture("h4_corrected.quad");
    EXPECT_EQ(dc::diagonal(h4, 1), V(q(-1, 2), q(3)));
    const dc::Vec2 printed[] = {V(q(-1, 2), q(3)), V(q(1), q(3)), V(q(1), q(3)), V(q(1, 2), q(3)), V(q(-1, 2), q(3))};
    for (int i = 1; i <= 5; ++i) EXPECT_EQ(dc::diagonal(h4, i), printed[i - 1]);

    auto h000 = load_fixture("h000_corrected.quad");
    EXPECT_EQ(dc::diagonal(h000, 1), V(q(-3, 10), q(3)));
    EXPECT_EQ(dc::diagonal(h000, 2), V(q(2, 5), q(3)));
    EXPECT_EQ(dc::diagonal(h000, 3), V(q(-3, 10), q(3)));

    auto t = load_fixture("root2_torus.quad");
    EXPECT_EQ(dc::diagonal(t, 1), V(sqrt2() - q(1), sqrt2()));
    EXPECT_EQ(dc::diagonal(load_fixture("h2.quad"), 2), V(q(1, 2), q(3)));
}

TEST(Quadrangulation, BothDiagonalFormulasAgree) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 100; ++t) {
        auto d = dc::datum_from_tree(dc::random_tree(1 + t % 6, rng));
        auto qd = dc::random_quadrangulation(d, rng, t % 3 == 0 ? 2 : 0);
        for (int i = 1; i <= qd.k(); ++i) {
            dc::Vec2 other = qd.side(i, Side::Right) + qd.side(qd.datum.right()(i), Side::Left);
            EXPECT_EQ(dc::diagonal(qd, i), other);
            EXPECT_EQ(dc::slant(qd, i) == Slant::VerticalDiagonal, dc::diagonal(qd, i).x.sign() == 0);
        }
    }
}

TEST(Quadrangulation, BackwardDiagonal) {
    EXPECT_EQ(dc::backward_diagonal(load_fixture("root2_torus.quad"), 1), V(sqrt2() + q(1), sqrt2() - q(2)));
    EXPECT_EQ(dc::backward_diagonal(load_fixture("h2.quad"), 1), V(q(5, 2), q(0)));
    EXPECT_EQ(dc::backward_diagonal(load_fixture("square_torus.quad"), 1), V(q(2), q(0)));
}

TEST(Quadrangulation, Slant) {
    EXPECT_EQ(dc::slant(load_fixture("h4_corrected.quad"), 1), Slant::RightSlanted);
    EXPECT_EQ(dc::slant(load_fixture("square_torus.quad"), 1), Slant::VerticalDiagonal);
    EXPECT_EQ(dc::slant(load_fixture("h2.quad"), 1), Slant::LeftSlanted);
}

TEST(Quadrangulation, Area) {
    EXPECT_EQ(dc::area(load_fixture("square_torus.quad")), q(2));
    EXPECT_EQ(dc::area(load_fixture("root2_torus.quad")), q(2) * sqrt2() - q(1));
    // corners written out by hand
    dc::Scalar h2 = shoelace({V(q(0), q(0)), V(q(3, 2), q(1)), V(q(1, 2), q(2)), V(q(-1), q(1))}) +
                    shoelace({V(q(0), q(0)), V(q(3, 2), q(1)), V(q(1, 2), q(3)), V(q(-3, 2), q(2))}) +
                    shoelace({V(q(0), q(0)), V(q(2), q(1)), V(q(1, 2), q(3)), V(q(-1), q(2))});
    EXPECT_EQ(h2, q(12));
    EXPECT_EQ(dc::area(load_fixture("h2.quad")), h2);
}

TEST(Quadrangulation, SerializeRoundTrip) {
    for (const char* name : {"h2.quad", "root2_torus.quad", "h2_irrational.quad", "h4_corrected.quad"}) {
        auto qd = load_fixture(name);
        std::string text = dc::serialize(qd);
        auto back = dc::deserialize(text);
        EXPECT_EQ(back.datum, qd.datum);
        EXPECT_EQ(dc::serialize(back), text);
        for (int i = 1; i <= qd.k(); ++i) {
            EXPECT_EQ(back.side(i, Side::Left), qd.side(i, Side::Left));
            EXPECT_EQ(back.side(i, Side::Right), qd.side(i, Side::Right));
        }
    }
    auto f = dctest::load_fixture_raw("root2_torus.quad");
    EXPECT_EQ(f.discriminant, 2);
    EXPECT_FALSE(f.comments.empty());
}

TEST(Quadrangulation, SyntaxErrors) {
    const std::string good = dc::serialize(load_fixture("h2.quad"));
    std::string bad_perm = good;
    bad_perm.replace(bad_perm.find("perm_l=[2,3,1]"), 14, "perm_l=[2,1]");
    EXPECT_THROW(dc::deserialize(bad_perm), dc::SyntaxError);
    EXPECT_THROW(dc::deserialize("quadfmt 2\nD 0\n"), dc::SyntaxError);
    std::string bad_d = dc::serialize(load_fixture("root2_torus.quad"));
    bad_d.replace(bad_d.find("D 2"), 3, "D 0");
    EXPECT_THROW(dc::deserialize(bad_d), dc::MixedDiscriminant);
    std::string bad_scalar = good;
    bad_scalar.replace(bad_scalar.find("3/2"), 3, "1.5");
    EXPECT_THROW(dc::deserialize(bad_scalar), dc::SyntaxError);
}
