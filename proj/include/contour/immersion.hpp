#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "contour/expr.hpp"

namespace contour {

class ImmersionViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ImmersionSpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Chart {
    std::string name;
    Vec3 lo{-1, -1, -1};
    Vec3 hi{1, 1, 1};
    std::array<int, 3> resolution{64, 64, 64};
    std::vector<std::pair<std::string, std::string>> defs;  // named subexpressions
    std::array<std::string, 4> sources;                     // f1..f4 in u, v, w
    std::array<Expr, 4> f;                                  // compiled from sources
    bool analytic = true;  // use the expression derivatives; else central differences

    /// Compiles `sources` against `defs` into `f`.
    void compile();
    double spacing() const;
    Vec3 grid_point(int i, int j, int k) const;
};

struct Tolerances {
    double refine = 1e-8;       // indicator value a refined point must reach
    double coincidence = 1e-5;  // Hausdorff bound between the two loci
    double gradient = 1e-6;     // finite-difference vs analytic Jacobian (relative)
    double overlap = 1e-9;      // image-space matching of points from different charts
    double candidate = 1.0;     // grid points with indicator < candidate * spacing are refined
    double tube = 0.1;          // radius excluded when measuring the totally-real margin
    double fd_step = 1e-5;      // relative central-difference step
    double immersion = 1e-9;    // smallest admissible third singular value of d(f1..f4)
    std::size_t max_candidates = 4000;  // per chart and indicator
};

/// Sampled map of a closed 3-manifold into R^4, given chart by chart.
/// The sixth coordinate of G is lift_sign * f2; -1 is the actual construction.
struct SampledImmersion {
    std::string name;
    std::vector<Chart> charts;
    int lift_sign = -1;
    Tolerances tol;
};

/// Tolerance overrides from CONTOUR_TOL_REFINE, CONTOUR_TOL_COINCIDENCE and
/// CONTOUR_TOL_GRADIENT, when set.
Tolerances tolerances_from_env(Tolerances base = {});

// ---- evaluation -----------------------------------------------------------

using Mat43 = Eigen::Matrix<double, 4, 3>;
using Mat63 = Eigen::Matrix<double, 6, 3>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

/// f1..f4 and their Jacobian (analytic or central differences per chart).
void eval_f(const Chart& c, const Vec3& p, Eigen::Vector4d& value, Mat43& jac, double fd_step = 1e-5);
Mat43 jacobian_fd(const Chart& c, const Vec3& p, double fd_step = 1e-5);
Mat43 jacobian_analytic(const Chart& c, const Vec3& p);

Vec6 eval_G(const SampledImmersion& s, const Chart& c, const Vec3& p);
Mat63 eval_dG(const SampledImmersion& s, const Chart& c, const Vec3& p);

/// Smallest singular value of [A | JA], A = dG(p), J the complex structure of C^3.
double tangency_indicator(const Mat63& a);
/// Second singular value of the Jacobian of g1 = (f1, f2).
double fold_indicator(const Mat43& df);

// ---- scan -----------------------------------------------------------------

struct LocusPoint {
    std::size_t chart = 0;
    Vec3 param{};
    double indicator = 0;
    std::size_t component = 0;  // global cluster id
};

struct LocusSummary {
    std::vector<LocusPoint> points;
    std::size_t components = 0;
    std::size_t candidates = 0;
    std::size_t unrefined = 0;  // candidates whose refinement did not reach tolerance
};

struct TangentScanResult {
    LocusSummary tangent;
    LocusSummary fold;
    double coincidence = 0;           // symmetric Hausdorff distance in parameter space
    std::optional<LocusPoint> worst;  // point realising it
    double margin = 0;                // min tangency indicator outside the tube around the tangent locus
    std::optional<LocusPoint> margin_point;
    double min_immersion_sigma = 0;   // smallest third singular value of d(f1..f4) on the grid
    std::size_t samples = 0;
};

enum class Parallelism { Serial, OpenMP };

/// Grid scan of both indicators, refinement of the candidates onto each
/// locus, clustering and the coincidence measure.
/// Throws ImmersionViolation when d(f1..f4) drops rank at a sample.
TangentScanResult scan(const SampledImmersion& s, Parallelism par = Parallelism::OpenMP);

/// Refines p onto the tangent locus (which == true) or fold locus of chart c.
std::optional<Vec3> refine_tangent(const SampledImmersion& s, const Chart& c, Vec3 p);
std::optional<Vec3> refine_fold(const SampledImmersion& s, const Chart& c, Vec3 p);

struct JacobianCheck {
    double worst_relative = 0;
    Vec3 worst_point{};
    std::size_t samples = 0;
    bool pass = false;
};

/// Central differences vs analytic derivatives on a coarse grid of every chart.
JacobianCheck check_jacobians(const SampledImmersion& s, int per_axis = 9);

struct ImmersionReport {
    bool pass = false;
    bool vacuous = false;
    TangentScanResult scan;
    JacobianCheck jacobians;
    std::string message;
};

ImmersionReport verify_theorem_imm(const SampledImmersion& s, Parallelism par = Parallelism::OpenMP);

// ---- spec files and builtins ---------------------------------------------

inline constexpr const char* kImmersionFormat = "contour-immersion/1";
inline constexpr const char* kScanFormat = "contour-scan/1";

/// Builtins: "round-s3", "round-s3-perturbed", "beaks-s3". `resolution` is per axis.
SampledImmersion builtin_immersion(const std::string& name, int resolution = 64);
std::vector<std::string> builtin_immersion_names();

SampledImmersion parse_immersion(const std::string& text);
std::string print_immersion(const SampledImmersion& s);

std::string print_scan(const SampledImmersion& s, const TangentScanResult& r);
std::string print_report(const SampledImmersion& s, const ImmersionReport& r);

/// One panel per chart: refined tangent points (red) and fold points (blue)
/// projected to the (u, v) plane of the chart box.
std::string render_scan_svg(const SampledImmersion& s, const TangentScanResult& r);

/// Reparametrised copy: chart parameters p are replaced by phi(p) where
/// phi(u, v, w) = (u + a v^2, v + a w^2, w + a u^2), a small.
SampledImmersion reparametrized(const SampledImmersion& s, double a);

}  // namespace contour
