#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "contour/diagram_io.hpp"
#include "contour/expr.hpp"
#include "contour/immersion.hpp"

using namespace contour;

TEST(Expr, EvaluatesWithPrecedence) {
    auto e = Expr::parse("1 + 2*u - v/4 + -w");
    EXPECT_DOUBLE_EQ(e.eval({1, 2, 3}), 1 + 2 - 0.5 - 3);
    EXPECT_DOUBLE_EQ(Expr::parse("pow(u, 3)").eval({2, 0, 0}), 8);
    EXPECT_DOUBLE_EQ(Expr::parse("(u+v)*(u-v)").eval({3, 1, 0}), 8);
}

TEST(Expr, GradientMatchesHandDerivative) {
    auto e = Expr::parse("sin(u*v) + cos(w)*u + pow(v, 2)/ (1 + w*w)");
    Vec3 p{0.3, -0.7, 1.2};
    auto d = e.eval_grad(p);
    double u = p[0], v = p[1], w = p[2];
    EXPECT_NEAR(d.grad[0], v * std::cos(u * v) + std::cos(w), 1e-14);
    EXPECT_NEAR(d.grad[1], u * std::cos(u * v) + 2 * v / (1 + w * w), 1e-14);
    EXPECT_NEAR(d.grad[2], -std::sin(w) * u - v * v * 2 * w / ((1 + w * w) * (1 + w * w)), 1e-14);
}

TEST(Expr, DefinitionsChain) {
    auto e = Expr::parse("b*b", {{"a", "u+1"}, {"b", "2*a"}});
    EXPECT_DOUBLE_EQ(e.eval({0.5, 0, 0}), 9);
    EXPECT_DOUBLE_EQ(e.eval_grad({0.5, 0, 0}).grad[0], 12);
}

TEST(Expr, SyntaxErrorsCarryOffset) {
    try {
        Expr::parse("u + * v");
        FAIL();
    } catch (const ExprSyntaxError& e) {
        EXPECT_EQ(e.position, 4u);
    }
    EXPECT_THROW(Expr::parse("sin(u"), ExprSyntaxError);
    EXPECT_THROW(Expr::parse("q + 1"), ExprSyntaxError);
    EXPECT_THROW(Expr::parse("u", {{"sin", "v"}}), ExprSyntaxError);
}

TEST(Immersion, GIsTheSixCoordinateConstruction) {
    auto s = builtin_immersion("round-s3", 16);
    const auto& c = s.charts[0];
    Vec3 p{0.2, -0.4, 0.1};
    Eigen::Vector4d f;
    Mat43 j;
    eval_f(c, p, f, j);
    auto g = eval_G(s, c, p);
    EXPECT_DOUBLE_EQ(g[0], f[0]);
    EXPECT_DOUBLE_EQ(g[3], f[3]);
    EXPECT_DOUBLE_EQ(g[4], f[0]);
    EXPECT_DOUBLE_EQ(g[5], -f[1]);
    // The chart sends the origin to a pole of the sphere.
    eval_f(c, {0, 0, 0}, f, j);
    EXPECT_NEAR(std::abs(f[3]), 1, 1e-15);
    EXPECT_NEAR(f.head<3>().norm(), 0, 1e-15);
}

TEST(Immersion, IndicatorsVanishOnTheEquatorOnly) {
    auto s = builtin_immersion("round-s3", 16);
    const auto& c = s.charts[0];
    // w = 0 in the chart is x3 = 0, where g1 = (x1, x2) folds.
    Vec3 on{0.6, 0.8, 0.0};
    Vec3 off{0.3, 0.2, 0.4};
    EXPECT_LT(tangency_indicator(eval_dG(s, c, on)), 1e-12);
    EXPECT_LT(fold_indicator(jacobian_analytic(c, on)), 1e-12);
    EXPECT_GT(tangency_indicator(eval_dG(s, c, off)), 1e-3);
    EXPECT_GT(fold_indicator(jacobian_analytic(c, off)), 1e-3);
}

TEST(Immersion, AnalyticAndFiniteDifferenceAgree) {
    for (const auto& name : builtin_immersion_names()) {
        auto s = builtin_immersion(name, 16);
        auto j = check_jacobians(s);
        EXPECT_TRUE(j.pass) << name;
        EXPECT_LT(j.worst_relative, 1e-6) << name;
    }
}

TEST(Immersion, RefineLandsOnLocus) {
    auto s = builtin_immersion("round-s3", 16);
    const auto& c = s.charts[0];
    auto t = refine_tangent(s, c, {0.5, 0.5, 0.05});
    ASSERT_TRUE(t.has_value());
    EXPECT_NEAR((*t)[2], 0, 1e-7);
    auto f = refine_fold(s, c, {0.5, 0.5, -0.05});
    ASSERT_TRUE(f.has_value());
    EXPECT_NEAR((*f)[2], 0, 1e-7);
}

TEST(Immersion, RoundSphereLociCoincide) {
    auto s = builtin_immersion("round-s3", 24);
    auto r = verify_theorem_imm(s);
    EXPECT_TRUE(r.pass) << r.message;
    EXPECT_FALSE(r.vacuous);
    EXPECT_LE(r.scan.coincidence, 1e-5);
    EXPECT_GT(r.scan.margin, 0);
    EXPECT_GT(r.scan.tangent.points.size(), 0u);
}

TEST(Immersion, PerturbedSphereStillCoincides) {
    auto r = verify_theorem_imm(builtin_immersion("round-s3-perturbed", 24));
    EXPECT_TRUE(r.pass) << r.message;
}

TEST(Immersion, ReparametrizationKeepsVerdict) {
    auto s = builtin_immersion("round-s3", 24);
    auto r = verify_theorem_imm(reparametrized(s, 0.05));
    EXPECT_TRUE(r.pass) << r.message;
}

TEST(Immersion, WrongSignFailsCoincidence) {
    auto s = builtin_immersion("round-s3", 24);
    s.lift_sign = +1;
    auto r = verify_theorem_imm(s);
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.scan.coincidence, 1e-5);
}

TEST(Immersion, SerialAndParallelAgree) {
    auto s = builtin_immersion("round-s3", 16);
    auto a = scan(s, Parallelism::Serial);
    auto b = scan(s, Parallelism::OpenMP);
    EXPECT_EQ(a.tangent.points.size(), b.tangent.points.size());
    EXPECT_EQ(a.fold.points.size(), b.fold.points.size());
    EXPECT_DOUBLE_EQ(a.margin, b.margin);
}

TEST(Immersion, DegenerateMapIsRejected) {
    auto s = builtin_immersion("round-s3", 8);
    for (auto& c : s.charts) {
        c.sources = {"u", "v", "0", "0"};
        c.compile();
    }
    EXPECT_THROW(scan(s), ImmersionViolation);
}

TEST(Immersion, SpecFileRoundTrip) {
    auto s = parse_immersion(read_file("samples/round-s3.imm"));
    EXPECT_EQ(s.charts.size(), 2u);
    EXPECT_EQ(s.lift_sign, -1);
    auto back = parse_immersion(print_immersion(s));
    EXPECT_EQ(back.charts[1].sources, s.charts[1].sources);
    EXPECT_EQ(parse_immersion(read_file("samples/round-s3-broken.imm")).lift_sign, 1);
    EXPECT_THROW(parse_immersion(R"({"format": "contour-immersion/1", "charts": [{"f": ["u", "v"]}]})"),
                 ImmersionSpecError);
}

TEST(Immersion, EnvironmentOverridesTolerance) {
    ::setenv("CONTOUR_TOL_COINCIDENCE", "0.25", 1);
    auto t = tolerances_from_env();
    ::unsetenv("CONTOUR_TOL_COINCIDENCE");
    EXPECT_DOUBLE_EQ(t.coincidence, 0.25);
    EXPECT_DOUBLE_EQ(tolerances_from_env().coincidence, 1e-5);
}
