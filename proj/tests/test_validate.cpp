#include <gtest/gtest.h>

#include "contour/canonical.hpp"
#include "contour/diagram_io.hpp"
#include "contour/moves.hpp"

using namespace contour;

namespace {

// Three nested definite loops with circle counts 0,1,0,1.
SingularDiagram nested() { return load_diagram("samples/infeasible.diagram"); }

}  // namespace

TEST(Validate, StandardIsValid) {
    auto r = validate(standard_s3_diagram());
    EXPECT_TRUE(r.valid());
    EXPECT_TRUE(euler_fiber_check(standard_s3_diagram()));
}

TEST(Validate, SamplesAreValid) {
    for (const char* f : {"samples/s3-standard.diagram", "samples/infeasible.diagram", "samples/s3-lips.diagram"})
        EXPECT_TRUE(validate(load_diagram(f)).valid()) << f;
}

TEST(Validate, NonemptyOuterRegion) {
    auto d = standard_s3_diagram();
    d.region("R0").circles.push_back("c9");
    EXPECT_TRUE(validate(d).has("outer region nonempty"));
}

TEST(Validate, UncoveredTransition) {
    auto d = nested();
    // a2 separates R1{c1} from R2{}: vanishing a circle the high side lacks.
    std::get<Vanish>(d.arc("a2").transition.special).circle = "c7";
    EXPECT_TRUE(validate(d).has("transition not a cover"));
}

TEST(Validate, CountJumpOfTwo) {
    auto d = standard_s3_diagram();
    d.region("R1").circles.push_back("c2");
    auto r = validate(d);
    EXPECT_TRUE(r.has("count jump"));
    EXPECT_FALSE(r.valid());
}

TEST(Validate, OrientationMustBeUnit) {
    auto d = standard_s3_diagram();
    d.arc("a1").orientation = 2;
    EXPECT_TRUE(validate(d).has("orientation"));
}

TEST(Validate, OrientationConsistentAlongStrand) {
    auto d = apply(standard_s3_diagram(), MoveSite{MoveKind::SwallowtailCreate, {"a1"}, "III^b"});
    ASSERT_TRUE(validate(d).valid());
    auto member = strand_membership(d);
    bool first = true;
    for (auto& [id, a] : d.arcs) {
        a.orientation = member.at(id).second * (first ? -1 : 1);
        first = false;
    }
    EXPECT_TRUE(validate(d).has("orientation"));
    for (auto& [id, a] : d.arcs) a.orientation = member.at(id).second;
    EXPECT_TRUE(validate(d).valid());
}

TEST(Validate, MissingOuterRegion) {
    auto d = standard_s3_diagram();
    d.region("R0").outer = false;
    EXPECT_TRUE(validate(d).has("no outer region"));
}

TEST(DiagramIo, RoundTripIsByteStable) {
    auto d = load_diagram("samples/s3-lips.diagram");
    auto text = print_diagram(d);
    EXPECT_EQ(print_diagram(parse_diagram(text)), text);
    EXPECT_EQ(parse_diagram(text), d);
}

TEST(DiagramIo, MovedDiagramsRoundTrip) {
    auto d = apply(standard_s3_diagram(), MoveSite{MoveKind::SwallowtailCreate, {"a1"}, "III^b"});
    auto back = parse_diagram(print_diagram(d));
    EXPECT_TRUE(isomorphic(d, back));
    EXPECT_EQ(canonical_form(d), canonical_form(back));
}

TEST(DiagramIo, RejectsWrongFormat) {
    EXPECT_THROW(parse_diagram(R"({"format": "other/1", "arcs": []})"), Error);
    EXPECT_THROW(parse_diagram("{not json"), Error);
}

TEST(Canonical, IgnoresIds) {
    auto d = standard_s3_diagram();
    auto text = print_diagram(d);
    for (auto [from, to] : {std::pair{"\"a1\"", "\"zz\""}, {"\"R1\"", "\"Q\""}, {"\"c1\"", "\"k\""}}) {
        for (auto p = text.find(from); p != std::string::npos; p = text.find(from)) text.replace(p, 4, to);
    }
    EXPECT_TRUE(isomorphic(d, parse_diagram(text)));
    EXPECT_FALSE(isomorphic(d, nested()));
}

TEST(Script, ParsesCommentsAndBlankLines) {
    auto s = parse_script("# header\n\nSwallowtailCreate variant=III^b anchors=a1\n");
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].kind, MoveKind::SwallowtailCreate);
    EXPECT_EQ(s[0].anchors, std::vector<Id>{"a1"});
}

TEST(Script, BracedVariantRoundTrips) {
    MoveScript s{MoveSite{MoveKind::CuspFoldCross, {"k1", "a4"}, "III_1^{0,a}"},
                 MoveSite{MoveKind::BeaksMerge, {"a2", "a3_1", "R2"}, "III^a(b)"}};
    EXPECT_EQ(parse_script(print_script(s)), s);
}

TEST(Script, SyntaxErrorCarriesPosition) {
    try {
        parse_script("LipsCreate variant=lips anchors=R1,c1\nNoSuchMove variant=x anchors=a\n");
        FAIL();
    } catch (const ScriptSyntaxError& e) {
        EXPECT_EQ(e.line, 2u);
        EXPECT_GE(e.column, 1u);
    }
}

TEST(Script, SampleScriptsApply) {
    auto d = load_diagram("samples/s3-standard.diagram");
    auto out = apply_script(d, parse_script(read_file("samples/coherent.script")));
    EXPECT_TRUE(validate(out).valid());
    EXPECT_THROW(apply_script(d, parse_script(read_file("samples/mismatch.script"))), ScriptError);
}
