#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "contour/diagram_io.hpp"
#include "contour/moves.hpp"
#include "contour/render.hpp"
#include "json.hpp"

using namespace contour;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t count(const std::string& s, const std::string& what) {
    std::size_t n = 0;
    for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
    return n;
}

}  // namespace

TEST(Render, StandardIsOneSolidCircle) {
    auto svg = render_svg(standard_s3_diagram());
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_EQ(count(svg, "<circle"), 1u);
    EXPECT_EQ(count(svg, "stroke-dasharray"), 0u);
}

TEST(Render, IndefiniteArcsAreDotted) {
    auto d = apply(standard_s3_diagram(), MoveSite{MoveKind::LipsCreate, {"R1", "c1"}, "lips"});
    auto svg = render_svg(d);
    EXPECT_GE(count(svg, "stroke-dasharray=\"2,4\""), 1u);
    EXPECT_EQ(count(svg, "class=\"cusp\""), 2u);
}

TEST(Render, SizeAndLabelOptions) {
    auto d = apply(standard_s3_diagram(), MoveSite{MoveKind::SwallowtailCreate, {"a1"}, "III^b"});
    auto svg = render_svg(d, {320, false, 4});
    EXPECT_NE(svg.find("width=\"320.00\""), std::string::npos);
    EXPECT_EQ(count(svg, "class=\"label\""), 0u);
    EXPECT_GT(count(render_svg(d), "class=\"label\""), 0u);
}

TEST(Render, ShadedCrossingIsFilled) {
    auto d = apply(standard_s3_diagram(), MoveSite{MoveKind::LipsCreate, {"R1", "c1"}, "lips"});
    Id indefinite;
    for (const auto& [id, a] : d.arcs)
        if (a.type == FoldType::Indefinite) indefinite = id;
    d = apply(d, MoveSite{MoveKind::SwallowtailCreate, {indefinite}, "III^d"});
    EXPECT_EQ(count(render_svg(d), "class=\"crossing shaded\""), 1u);
}

TEST(Cli, ValidateExitCodes) {
    EXPECT_EQ(run({"validate", "samples/s3-standard.diagram"}).code, 0);
    EXPECT_EQ(run({"validate", "samples/does-not-exist.diagram"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, ValidateReportsViolation) {
    auto d = standard_s3_diagram();
    d.region("R0").circles.push_back("c5");
    auto path = ::testing::TempDir() + "bad.diagram";
    save_diagram(d, path);
    auto r = run({"validate", path});
    EXPECT_EQ(r.code, 1);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_FALSE(j.at("valid").get<bool>());
    EXPECT_NE(r.out.find("outer region nonempty"), std::string::npos);
}

TEST(Cli, ApplyScriptAndMismatch) {
    auto ok = run({"apply", "samples/s3-standard.diagram", "samples/coherent.script"});
    EXPECT_EQ(ok.code, 0) << ok.err;
    EXPECT_TRUE(validate(parse_diagram(ok.out)).valid());
    auto bad = run({"apply", "samples/s3-standard.diagram", "samples/mismatch.script"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("move 0"), std::string::npos);
}

TEST(Cli, RandomApplyIsSeeded) {
    auto a = run({"apply", "samples/s3-standard.diagram", "--random", "4", "--seed", "9"});
    auto b = run({"apply", "samples/s3-standard.diagram", "--random", "4", "--seed", "9"});
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, LiftAndVerify) {
    auto cert = ::testing::TempDir() + "standard.cert";
    auto r = run({"lift", "samples/s3-standard.diagram", "--out", cert});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(run({"lift-verify", "samples/s3-standard.diagram", cert}).code, 0);

    auto wit = ::testing::TempDir() + "infeasible.wit";
    EXPECT_EQ(run({"lift", "samples/infeasible.diagram", "--out", wit}).code, 1);
    auto v = run({"lift-verify", "samples/infeasible.diagram", wit});
    EXPECT_EQ(v.code, 0) << v.out << v.err;
    // The certificate of one diagram is no proof for the other.
    EXPECT_EQ(run({"lift-verify", "samples/infeasible.diagram", cert}).code, 1);
}

TEST(Cli, LinksClassAndPlan) {
    EXPECT_EQ(run({"links-class", "samples/standard-consistent.links", "--diagram", "samples/s3-standard.diagram"}).code,
              0);
    EXPECT_EQ(
        run({"links-class", "samples/standard-inconsistent.links", "--diagram", "samples/s3-standard.diagram"}).code, 1);
    auto plan = ::testing::TempDir() + "plan.json";
    EXPECT_EQ(run({"links-plan", "samples/lips-torsion.links", "--out", plan}).code, 0);
    EXPECT_EQ(run({"links-plan", "samples/lips-torsion.links", "--replay", plan}).code, 0);
    EXPECT_EQ(run({"links-plan", "samples/standard-inconsistent.links"}).code, 1);
}

TEST(Cli, SitesListsSwallowtails) {
    auto r = run({"sites", "samples/s3-standard.diagram", "--kind", "SwallowtailCreate"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("variant=III^b"), std::string::npos);
}

TEST(Cli, RenderWritesSvg) {
    auto r = run({"render", "samples/s3-lips.diagram", "--size", "200"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("<svg", 0), 0u);
}

TEST(Cli, VerifyImmersionAndControl) {
    EXPECT_EQ(run({"verify-imm", "builtin:round-s3", "--resolution", "16"}).code, 0);
    EXPECT_EQ(run({"verify-imm", "samples/round-s3-broken.imm", "--resolution", "16"}).code, 1);
    EXPECT_EQ(run({"verify-imm", "builtin:no-such-thing"}).code, 2);
}
