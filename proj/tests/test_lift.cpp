#include <gtest/gtest.h>

#include <random>

#include "contour/diagram_io.hpp"
#include "contour/lift.hpp"
#include "support.hpp"

using namespace contour;

TEST(Lift, StandardCertificateHasUnitRotation) {
    auto d = standard_s3_diagram();
    auto r = solve(d);
    ASSERT_TRUE(r.feasible());
    const auto& c = *r.certificate;
    ASSERT_EQ(c.rotations.size(), 1u);
    EXPECT_EQ(abs(c.rotations.begin()->second), 1);
    EXPECT_TRUE(verify_certificate(d, c));
    EXPECT_TRUE(verify_certificate(d, flipped(c)));
}

TEST(Lift, CertificateRoundTrips) {
    auto d = load_diagram("samples/s3-lips.diagram");
    auto r = solve(d);
    ASSERT_TRUE(r.feasible());
    auto back = parse_certificate(print_certificate(*r.certificate));
    EXPECT_EQ(back.component_signs, r.certificate->component_signs);
    EXPECT_EQ(back.rotations, r.certificate->rotations);
    EXPECT_TRUE(verify_certificate(d, back));
}

TEST(Lift, TamperedCertificateRejected) {
    auto d = standard_s3_diagram();
    auto c = *solve(d).certificate;
    c.rotations.begin()->second += 1;
    std::string why;
    EXPECT_FALSE(verify_certificate(d, c, &why));
    EXPECT_FALSE(why.empty());
}

TEST(Lift, OrientedDiagramIsRespected) {
    auto d = standard_s3_diagram();
    auto c = *solve(d).certificate;
    auto oriented = with_orientation(d, flipped(c));
    auto again = solve(oriented);
    ASSERT_TRUE(again.feasible());
    EXPECT_EQ(again.certificate->component_signs, flipped(c).component_signs);
    EXPECT_FALSE(verify_certificate(oriented, c));
}

TEST(Lift, PrescribedOrientationSampleIsInfeasible) {
    auto d = load_diagram("samples/infeasible.diagram");
    ASSERT_TRUE(validate(d).valid());
    auto r = solve(d);
    EXPECT_FALSE(r.feasible());
    ASSERT_FALSE(r.witnesses.empty());
    for (const auto& w : r.witnesses) EXPECT_TRUE(verify_witness(d, w));
    EXPECT_TRUE(verify_infeasibility(d, r.witnesses));
    auto parsed = parse_witnesses(print_witnesses(d, r.witnesses));
    EXPECT_TRUE(verify_infeasibility(d, parsed));
    // Same map with the orientation freed is liftable.
    EXPECT_TRUE(solve(without_orientation(d)).feasible());
}

TEST(Lift, PartialWitnessSetIsNotAProof) {
    auto d = without_orientation(load_diagram("samples/infeasible.diagram"));
    auto pinned = load_diagram("samples/infeasible.diagram");
    auto r = solve(pinned);
    ASSERT_FALSE(r.feasible());
    std::string why;
    EXPECT_FALSE(verify_infeasibility(d, r.witnesses, &why));
}

TEST(Lift, WitnessForFeasibleDiagramFails) {
    auto pinned = load_diagram("samples/infeasible.diagram");
    auto w = solve(pinned).witnesses.front();
    auto free = without_orientation(pinned);
    auto ok = solve(free);
    ASSERT_TRUE(ok.feasible());
    w.component_signs = ok.certificate->component_signs;
    EXPECT_FALSE(verify_witness(free, w));
}

// Without prescribed orientations every valid diagram admits a certificate,
// so the bounded search runs to exhaustion without a hit.
TEST(Lift, UnorientedSearchFindsNothingSmall) {
    InfeasibilitySearch opts;
    opts.max_arcs = 3;
    opts.max_depth = 2;
    opts.max_circles = 2;
    auto r = search_infeasible(opts);
    EXPECT_FALSE(r.diagram.has_value());
    EXPECT_TRUE(r.exhausted);
    EXPECT_GT(r.labellings, 0u);
}

TEST(Lift, PrescribedSearchFindsSmallest) {
    InfeasibilitySearch opts;
    opts.prescribe_orientations = true;
    auto r = search_infeasible(opts);
    ASSERT_TRUE(r.diagram.has_value());
    EXPECT_EQ(r.diagram->arcs.size(), 3u);
    auto s = solve(*r.diagram);
    EXPECT_FALSE(s.feasible());
    EXPECT_TRUE(verify_infeasibility(*r.diagram, s.witnesses));
}

TEST(Lift, PropagationAgreesOnDefiniteDiagrams) {
    for (const char* f : {"samples/s3-standard.diagram", "samples/infeasible.diagram"}) {
        auto d = load_diagram(f);
        auto p = propagation_feasible(d);
        ASSERT_TRUE(p.has_value()) << f;
        EXPECT_EQ(*p, solve(d).feasible()) << f;
    }
}

TEST(Lift, CoherentScriptsPreserveFeasibility) {
    std::mt19937 rng(11);
    auto d = standard_s3_diagram();
    for (int i = 0; i < 20; ++i) {
        auto script = contour::testing::random_coherent_script(d, 1 + rng() % 6, rng);
        auto rep = check_preservation(d, script);
        EXPECT_TRUE(rep.initially_feasible);
        EXPECT_FALSE(rep.first_loss().has_value()) << print_script(script);
        EXPECT_FALSE(rep.any_out_of_contract());
    }
}

TEST(Lift, ConsequenceFlagsInconsistentFixture) {
    auto d = load_diagram("samples/s3-standard.diagram");
    auto good = parse_links(read_file("samples/standard-consistent.links"));
    auto bad = parse_links(read_file("samples/standard-inconsistent.links"));
    auto g = homology_consequence(d, good.group, good.strands);
    EXPECT_TRUE(g.feasible);
    EXPECT_TRUE(g.consistent);
    auto b = homology_consequence(d, bad.group, bad.strands);
    EXPECT_TRUE(b.feasible);
    EXPECT_FALSE(b.consistent);
}
