#include <gtest/gtest.h>

#include <random>

#include "contour/homology.hpp"
#include "contour/smith.hpp"
#include "support.hpp"

using namespace contour;

namespace {

IntMatrix m(std::initializer_list<std::initializer_list<int>> rows) {
    IntMatrix out;
    for (auto r : rows) {
        out.emplace_back();
        for (int x : r) out.back().push_back(x);
    }
    return out;
}

}  // namespace

TEST(Smith, KnownDiagonal) {
    auto a = m({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    auto s = smith_normal_form(a, 3);
    EXPECT_EQ(s.diagonal, (std::vector<Int>{2, 6, 12}));
    EXPECT_EQ(multiply(multiply(s.u, a), s.v), m({{2, 0, 0}, {0, 6, 0}, {0, 0, 12}}));
    EXPECT_EQ(abs(determinant(s.u)), 1);
    EXPECT_EQ(abs(determinant(s.v)), 1);
    EXPECT_EQ(multiply(s.v, s.v_inv), identity_matrix(3));
}

TEST(Smith, RandomMatricesFactor) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> e(-9, 9), dim(1, 4);
    for (int t = 0; t < 200; ++t) {
        std::size_t r = dim(rng), c = dim(rng);
        IntMatrix a(r, std::vector<Int>(c));
        for (auto& row : a)
            for (auto& x : row) x = e(rng);
        auto s = smith_normal_form(a, c);
        auto d = multiply(multiply(s.u, a), s.v);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) EXPECT_EQ(d[i][j], i == j ? s.diagonal[i] : 0);
        for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
            EXPECT_GE(s.diagonal[i], 0);
            if (s.diagonal[i] != 0) EXPECT_EQ(s.diagonal[i + 1] % s.diagonal[i], 0);
            else EXPECT_EQ(s.diagonal[i + 1], 0);
        }
    }
}

TEST(Smith, BigEntriesStayExact) {
    IntMatrix a = {{Int("123456789012345678901234567890"), 1}, {0, Int("98765432109876543210")}};
    auto s = smith_normal_form(a, 2);
    EXPECT_EQ(s.diagonal[0], 1);
    EXPECT_EQ(s.diagonal[1], a[0][0] * a[1][1]);
}

TEST(Group, DescribesTorsionAndFree) {
    AbelianGroup g(2, m({{2, 0}}));
    EXPECT_EQ(g.invariant_factors(), (std::vector<Int>{2, 0}));
    EXPECT_EQ(g.describe(), "Z/2 + Z");
    EXPECT_TRUE(g.equal({3, 1}, {1, 1}));
    EXPECT_FALSE(g.equal({1, 1}, {0, 1}));
    EXPECT_TRUE(g.is_zero({4, 0}));
    EXPECT_EQ(AbelianGroup(1, {}).describe(), "Z");
}

TEST(Homology, PlanReplaysToTarget) {
    OrientedLinkClass l{AbelianGroup(2, m({{2, 0}})), {{1, 0}, {1, 3}, {0, -3}}};
    OrientedLinkClass t{l.group, {{0, 0}, {0, 0}}};
    auto r = plan(l, t);
    ASSERT_TRUE(r.plan.has_value());
    EXPECT_TRUE(replays_to(l, *r.plan, t));
    auto text = plan_to_json(r).dump();
    auto back = parse_plan(text, 2);
    ASSERT_TRUE(back.plan.has_value());
    EXPECT_TRUE(replays_to(l, *back.plan, t));
}

TEST(Homology, NoPlanAcrossClasses) {
    OrientedLinkClass l{AbelianGroup(1, {}), {{2}, {1}}};
    OrientedLinkClass t{l.group, {{1}}};
    auto r = plan(l, t);
    EXPECT_FALSE(r.plan.has_value());
    EXPECT_EQ(r.witness, ClassVector{2});
}

TEST(Homology, BandMovesPreserveClass) {
    OrientedLinkClass l{AbelianGroup(1, m({{5}})), {{2}, {4}}};
    auto merged = apply_band(l, BandMove{BandMove::Kind::Merge, 0, 1, {}});
    ASSERT_EQ(merged.components.size(), 1u);
    EXPECT_TRUE(l.group.equal(class_of(merged), class_of(l)));
    auto split = apply_band(merged, BandMove{BandMove::Kind::SelfSplit, 0, 0, {3}});
    EXPECT_EQ(split.components.size(), 2u);
    EXPECT_TRUE(l.group.equal(class_of(split), class_of(l)));
}

TEST(Homology, RandomPlansIffClassesAgree) {
    std::mt19937 rng(5);
    int agree = 0;
    for (int t = 0; t < 200; ++t) {
        auto g = contour::testing::random_group(rng);
        OrientedLinkClass a{g, contour::testing::random_components(g.generators(), rng)};
        OrientedLinkClass b{g, contour::testing::random_components(g.generators(), rng)};
        if (rng() % 2) b.components.push_back(sub(class_of(a), class_of(b)));
        bool same = g.equal(class_of(a), class_of(b));
        agree += same;
        auto r = plan(a, b);
        EXPECT_EQ(r.plan.has_value(), same);
        if (r.plan) EXPECT_TRUE(replays_to(a, *r.plan, b));
    }
    EXPECT_GT(agree, 50);
}

TEST(Homology, LinksFileRoundTrip) {
    auto f = parse_links(R"({"format": "contour-links/1", "generators": 2, "relations": [[2, 0]],
                             "components": [[1, 0]], "target": [[3, 0]]})");
    EXPECT_EQ(f.group.describe(), "Z/2 + Z");
    auto back = parse_links(print_links(f));
    EXPECT_EQ(back.components, f.components);
    EXPECT_EQ(back.target, f.target);
    EXPECT_THROW(parse_links(R"({"format": "contour-links/1", "generators": 1, "components": [[1, 2]]})"), Error);
}
