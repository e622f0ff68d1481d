#include <gtest/gtest.h>

#include <random>

#include "contour/canonical.hpp"
#include "contour/diagram_io.hpp"
#include "contour/moves.hpp"

using namespace contour;

namespace {

std::size_t count_kind(const std::vector<MoveSite>& sites, MoveKind k) {
    return std::count_if(sites.begin(), sites.end(), [&](const MoveSite& s) { return s.kind == k; });
}

SingularDiagram lips_on_standard() {
    auto d = standard_s3_diagram();
    return apply(d, MoveSite{MoveKind::LipsCreate, {"R1", "c1"}, "lips"});
}

}  // namespace

TEST(Moves, StandardSwallowtailSitesOnePerArc) {
    auto d = standard_s3_diagram();
    auto sites = enumerate_sites(d, MoveKind::SwallowtailCreate);
    ASSERT_EQ(sites.size(), d.arcs.size());
    for (const auto& s : sites) EXPECT_EQ(s.variant, "III^b");
}

TEST(Moves, StandardHasNoBeaksMergeSite) {
    EXPECT_TRUE(enumerate_sites(standard_s3_diagram(), MoveKind::BeaksMerge).empty());
}

TEST(Moves, StandardHasLipsSites) {
    EXPECT_FALSE(enumerate_sites(standard_s3_diagram(), MoveKind::LipsCreate).empty());
}

TEST(Moves, SwallowtailOnStandard) {
    auto d = apply(standard_s3_diagram(), MoveSite{MoveKind::SwallowtailCreate, {"a1"}, "III^b"});
    EXPECT_TRUE(validate(d).valid());
    EXPECT_EQ(d.cusps.size(), 2u);
    EXPECT_EQ(d.crossings.size(), 1u);
    EXPECT_EQ(d.regions.size(), 3u);
    std::vector<std::size_t> counts;
    for (const auto& [id, r] : d.regions) counts.push_back(r.circles.size());
    std::sort(counts.begin(), counts.end());
    EXPECT_EQ(counts, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(strand_components(d).size(), 1u);
}

TEST(Moves, LipsCreateAddsRegionWithOneMoreCircle) {
    auto d = lips_on_standard();
    EXPECT_TRUE(validate(d).valid());
    EXPECT_EQ(d.regions.size(), 3u);
    EXPECT_EQ(d.cusps.size(), 2u);
    std::size_t twos = 0;
    for (const auto& [id, r] : d.regions) twos += r.circles.size() == 2;
    EXPECT_EQ(twos, 1u);
}

TEST(Moves, LipsRoundTrip) {
    auto d0 = standard_s3_diagram();
    auto d1 = lips_on_standard();
    Id lens;
    for (const auto& [id, r] : d1.regions)
        if (r.circles.size() == 2) lens = id;
    auto d2 = apply(d1, MoveSite{MoveKind::LipsRemove, {lens}, "lips"});
    EXPECT_TRUE(isomorphic(d0, d2));
}

TEST(Moves, SwallowtailRoundTrip) {
    auto d0 = standard_s3_diagram();
    auto d1 = apply(d0, MoveSite{MoveKind::SwallowtailCreate, {"a1"}, "III^b"});
    auto sites = enumerate_sites(d1, MoveKind::SwallowtailRemove);
    ASSERT_EQ(sites.size(), 1u);
    EXPECT_EQ(sites[0].variant, "III^b");
    EXPECT_TRUE(isomorphic(d0, apply(d1, sites[0])));
}

TEST(Moves, IndefiniteSwallowtailsRoundTrip) {
    auto d0 = lips_on_standard();
    for (const auto& [id, a] : d0.arcs) {
        if (a.type != FoldType::Indefinite) continue;
        for (const char* v : {"III^c", "III^d"}) {
            auto d1 = apply(d0, MoveSite{MoveKind::SwallowtailCreate, {id}, v});
            EXPECT_TRUE(validate(d1).valid());
            auto sites = enumerate_sites(d1, MoveKind::SwallowtailRemove);
            ASSERT_EQ(sites.size(), 1u) << v;
            EXPECT_EQ(sites[0].variant, v);
            EXPECT_TRUE(isomorphic(d0, apply(d1, sites[0])));
        }
    }
}

TEST(Moves, BeaksSplitThenMergeRoundTrip) {
    auto d0 = lips_on_standard();
    auto merges = enumerate_sites(d0, MoveKind::BeaksMerge);
    ASSERT_FALSE(merges.empty());
    for (const auto& m : merges) {
        SingularDiagram d1;
        try {
            d1 = apply(d0, m);
        } catch (const WouldViolateInvariant&) {
            continue;
        }
        auto splits = enumerate_sites(d1, MoveKind::BeaksSplit);
        bool back = false;
        for (const auto& s : splits) {
            if (s.variant != m.variant) continue;
            try {
                back = back || isomorphic(d0, apply(d1, s));
            } catch (const Error&) {
            }
        }
        EXPECT_TRUE(back) << print_site(m);
    }
}

TEST(Moves, SwallowtailThenCuspCross) {
    auto d1 = apply(standard_s3_diagram(), MoveSite{MoveKind::SwallowtailCreate, {"a1"}, "III^b"});
    auto sites = enumerate_sites(d1, MoveKind::CuspFoldCross);
    ASSERT_FALSE(sites.empty());
    for (const auto& s : sites) {
        auto d2 = apply(d1, s);
        EXPECT_TRUE(validate(d2).valid());
        EXPECT_EQ(d2.crossings.size(), 3u);
    }
}

TEST(Moves, ScriptMismatchReportsIndex) {
    MoveScript s{MoveSite{MoveKind::SwallowtailCreate, {"a1"}, "III^b"},
                 MoveSite{MoveKind::LipsRemove, {"nowhere"}, "lips"}};
    try {
        apply_script(standard_s3_diagram(), s);
        FAIL();
    } catch (const ScriptError& e) {
        EXPECT_EQ(e.index, 1u);
    }
}

TEST(Moves, EmptyScriptIsIdentity) {
    auto d = standard_s3_diagram();
    EXPECT_EQ(apply_script(d, {}), d);
}

TEST(Moves, RandomWalksStayValid) {
    std::mt19937 rng(7);
    for (int walk = 0; walk < 30; ++walk) {
        auto d = standard_s3_diagram();
        for (int step = 0; step < 5; ++step) {
            auto sites = enumerate_all_sites(d);
            ASSERT_FALSE(sites.empty());
            const auto& s = sites[rng() % sites.size()];
            try {
                d = apply(d, s);
            } catch (const WouldViolateInvariant& e) {
                ADD_FAILURE() << print_site(s) << ": " << e.what() << "\n" << print_diagram(d);
                break;
            }
            ASSERT_TRUE(validate(d).valid());
        }
    }
}
