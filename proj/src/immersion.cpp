#include "contour/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>

namespace contour {

void Chart::compile() {
    for (int i = 0; i < 4; ++i) f[i] = Expr::parse(sources[i], defs);
}

double Chart::spacing() const {
    double h = 0;
    for (int k = 0; k < 3; ++k) h = std::max(h, (hi[k] - lo[k]) / std::max(1, resolution[k] - 1));
    return h;
}

Vec3 Chart::grid_point(int i, int j, int k) const {
    const int idx[3] = {i, j, k};
    Vec3 p{};
    for (int a = 0; a < 3; ++a)
        p[a] = resolution[a] > 1 ? lo[a] + (hi[a] - lo[a]) * idx[a] / (resolution[a] - 1) : 0.5 * (lo[a] + hi[a]);
    return p;
}

Tolerances tolerances_from_env(Tolerances base) {
    auto read = [](const char* name, double& slot) {
        if (const char* v = std::getenv(name)) {
            char* end = nullptr;
            double x = std::strtod(v, &end);
            if (end != v && x > 0) slot = x;
        }
    };
    read("CONTOUR_TOL_REFINE", base.refine);
    read("CONTOUR_TOL_COINCIDENCE", base.coincidence);
    read("CONTOUR_TOL_GRADIENT", base.gradient);
    return base;
}

Mat43 jacobian_analytic(const Chart& c, const Vec3& p) {
    Mat43 j;
    for (int i = 0; i < 4; ++i) {
        Dual d = c.f[i].eval_grad(p);
        for (int k = 0; k < 3; ++k) j(i, k) = d.grad[k];
    }
    return j;
}

Mat43 jacobian_fd(const Chart& c, const Vec3& p, double fd_step) {
    Mat43 j;
    for (int k = 0; k < 3; ++k) {
        double h = fd_step * std::max(1.0, std::abs(p[k]));
        Vec3 a = p, b = p;
        a[k] += h;
        b[k] -= h;
        for (int i = 0; i < 4; ++i) j(i, k) = (c.f[i].eval(a) - c.f[i].eval(b)) / (2 * h);
    }
    return j;
}

void eval_f(const Chart& c, const Vec3& p, Eigen::Vector4d& value, Mat43& jac, double fd_step) {
    for (int i = 0; i < 4; ++i) value[i] = c.f[i].eval(p);
    jac = c.analytic ? jacobian_analytic(c, p) : jacobian_fd(c, p, fd_step);
}

Vec6 eval_G(const SampledImmersion& s, const Chart& c, const Vec3& p) {
    Vec6 g;
    for (int i = 0; i < 4; ++i) g[i] = c.f[i].eval(p);
    g[4] = g[0];
    g[5] = s.lift_sign * g[1];
    return g;
}

namespace {

Mat63 lift_jacobian(const SampledImmersion& s, const Mat43& df) {
    Mat63 a;
    a.topRows<4>() = df;
    a.row(4) = df.row(0);
    a.row(5) = s.lift_sign * df.row(1);
    return a;
}

Mat43 chart_jacobian(const SampledImmersion& s, const Chart& c, const Vec3& p) {
    return c.analytic ? jacobian_analytic(c, p) : jacobian_fd(c, p, s.tol.fd_step);
}

// Complex determinant of the 3x3 matrix whose rows are the complex
// coordinates z_j = G_{2j} + i G_{2j+1} of the columns of A. The real
// determinant of [A | JA] is its squared modulus.
std::complex<double> complex_det(const Mat63& a) {
    using C = std::complex<double>;
    C m[3][3];
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) m[j][k] = C(a(2 * j, k), a(2 * j + 1, k));
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

template <int R, class Residual, class Indicator>
std::optional<Vec3> gauss_newton(const Chart& c, Vec3 p, double tol, Residual residual, Indicator indicator) {
    using VecR = Eigen::Matrix<double, R, 1>;
    const double fd = 1e-7;
    const double slack = 0.1 * c.spacing() + 1e-12;
    for (int it = 0; it < 60; ++it) {
        if (indicator(p) < tol) return p;
        VecR r = residual(p);
        Eigen::Matrix<double, R, 3> jac;
        for (int k = 0; k < 3; ++k) {
            double h = fd * std::max(1.0, std::abs(p[k]));
            Vec3 a = p, b = p;
            a[k] += h;
            b[k] -= h;
            jac.col(k) = (residual(a) - residual(b)) / (2 * h);
        }
        Eigen::JacobiSVD<Eigen::Matrix<double, R, 3>> svd(jac, Eigen::ComputeFullU | Eigen::ComputeFullV);
        svd.setThreshold(1e-10);
        Eigen::Vector3d step = -svd.solve(r);
        if (!step.allFinite()) return std::nullopt;
        double base = r.norm();
        bool moved = false;
        for (double t = 1; t > 1e-6; t *= 0.5) {
            Vec3 q{p[0] + t * step[0], p[1] + t * step[1], p[2] + t * step[2]};
            if (residual(q).norm() < base || t < 2e-6) {
                p = q;
                moved = true;
                break;
            }
        }
        if (!moved) return std::nullopt;
        for (int k = 0; k < 3; ++k)
            if (p[k] < c.lo[k] - slack || p[k] > c.hi[k] + slack) return std::nullopt;
    }
    return indicator(p) < tol ? std::optional<Vec3>(p) : std::nullopt;
}

}  // namespace

Mat63 eval_dG(const SampledImmersion& s, const Chart& c, const Vec3& p) {
    return lift_jacobian(s, chart_jacobian(s, c, p));
}

double tangency_indicator(const Mat63& a) {
    Eigen::Matrix<double, 6, 6> m;
    m.leftCols<3>() = a;
    for (int j = 0; j < 3; ++j) {
        m.block<1, 3>(2 * j, 3) = -a.row(2 * j + 1);
        m.block<1, 3>(2 * j + 1, 3) = a.row(2 * j);
    }
    return Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>>(m).singularValues().minCoeff();
}

double fold_indicator(const Mat43& df) {
    Eigen::Matrix<double, 2, 3> g = df.topRows<2>();
    return Eigen::JacobiSVD<Eigen::Matrix<double, 2, 3>>(g).singularValues()[1];
}

std::optional<Vec3> refine_tangent(const SampledImmersion& s, const Chart& c, Vec3 p) {
    auto residual = [&](const Vec3& q) {
        auto d = complex_det(eval_dG(s, c, q));
        return Eigen::Vector2d(d.real(), d.imag());
    };
    auto indicator = [&](const Vec3& q) { return tangency_indicator(eval_dG(s, c, q)); };
    return gauss_newton<2>(c, p, s.tol.refine, residual, indicator);
}

std::optional<Vec3> refine_fold(const SampledImmersion& s, const Chart& c, Vec3 p) {
    auto residual = [&](const Vec3& q) {
        Mat43 df = chart_jacobian(s, c, q);
        Eigen::Vector3d a = df.row(0).transpose(), b = df.row(1).transpose();
        return Eigen::Vector3d(a.cross(b));
    };
    auto indicator = [&](const Vec3& q) { return fold_indicator(chart_jacobian(s, c, q)); };
    return gauss_newton<3>(c, p, s.tol.refine, residual, indicator);
}

}  // namespace contour
