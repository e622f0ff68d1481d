#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "contour/immersion.hpp"

namespace contour {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dist(const Vec3& a, const Vec3& b) {
    return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

struct Dsu {
    std::vector<std::size_t> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Buckets parameter points into cubes of side `cell` for neighbourhood queries.
class PointIndex {
public:
    PointIndex(const std::vector<Vec3>& pts, double cell) : pts_(pts), cell_(cell) {
        for (std::size_t i = 0; i < pts.size(); ++i) buckets_[key(cell_of(pts[i]))].push_back(i);
    }
    template <class F>
    void near(const Vec3& p, F&& f) const {
        auto c = cell_of(p);
        for (long dx = -1; dx <= 1; ++dx)
            for (long dy = -1; dy <= 1; ++dy)
                for (long dz = -1; dz <= 1; ++dz) {
                    auto it = buckets_.find(key({c[0] + dx, c[1] + dy, c[2] + dz}));
                    if (it == buckets_.end()) continue;
                    for (auto i : it->second) f(i);
                }
    }
    double nearest(const Vec3& p) const {
        double best = kInf;
        near(p, [&](std::size_t i) { best = std::min(best, dist(p, pts_[i])); });
        return best;
    }

private:
    std::array<long, 3> cell_of(const Vec3& p) const {
        return {static_cast<long>(std::floor(p[0] / cell_)), static_cast<long>(std::floor(p[1] / cell_)),
                static_cast<long>(std::floor(p[2] / cell_))};
    }
    static long long key(const std::array<long, 3>& c) {
        return ((static_cast<long long>(c[0]) * 1000003LL) + c[1]) * 1000033LL + c[2];
    }
    const std::vector<Vec3>& pts_;
    double cell_;
    std::unordered_map<long long, std::vector<std::size_t>> buckets_;
};

struct ChartGrid {
    std::vector<double> tangency, fold;
    double min_sigma = kInf;
    std::size_t min_sigma_index = 0;
};

ChartGrid sample_chart(const SampledImmersion& s, const Chart& c, Parallelism par) {
    const int n0 = c.resolution[0], n1 = c.resolution[1], n2 = c.resolution[2];
    const long total = static_cast<long>(n0) * n1 * n2;
    ChartGrid g;
    g.tangency.resize(total);
    g.fold.resize(total);
    std::vector<double> sigma(total);
#pragma omp parallel for schedule(static) if (par == Parallelism::OpenMP)
    for (long idx = 0; idx < total; ++idx) {
        int i = static_cast<int>(idx / (static_cast<long>(n1) * n2));
        int j = static_cast<int>((idx / n2) % n1);
        int k = static_cast<int>(idx % n2);
        Vec3 p = c.grid_point(i, j, k);
        Mat43 df = c.analytic ? jacobian_analytic(c, p) : jacobian_fd(c, p, s.tol.fd_step);
        sigma[idx] = Eigen::JacobiSVD<Mat43>(df).singularValues()[2];
        Mat63 a;
        a.topRows<4>() = df;
        a.row(4) = df.row(0);
        a.row(5) = s.lift_sign * df.row(1);
        g.tangency[idx] = tangency_indicator(a);
        g.fold[idx] = fold_indicator(df);
    }
    for (long idx = 0; idx < total; ++idx)
        if (sigma[idx] < g.min_sigma) {
            g.min_sigma = sigma[idx];
            g.min_sigma_index = static_cast<std::size_t>(idx);
        }
    return g;
}

Vec3 point_of(const Chart& c, std::size_t idx) {
    const std::size_t n1 = c.resolution[1], n2 = c.resolution[2];
    return c.grid_point(static_cast<int>(idx / (n1 * n2)), static_cast<int>((idx / n2) % n1),
                        static_cast<int>(idx % n2));
}

template <class Refine, class Indicator>
std::vector<LocusPoint> refine_candidates(const SampledImmersion& s, std::size_t ci, const std::vector<double>& values,
                                          Parallelism par, Refine refine, Indicator indicator,
                                          std::size_t& candidates, std::size_t& unrefined) {
    const Chart& c = s.charts[ci];
    const double threshold = s.tol.candidate * c.spacing();
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] < threshold) cand.push_back(i);
    std::stable_sort(cand.begin(), cand.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    if (cand.size() > s.tol.max_candidates) cand.resize(s.tol.max_candidates);
    candidates += cand.size();

    std::vector<std::optional<Vec3>> out(cand.size());
#pragma omp parallel for schedule(dynamic, 16) if (par == Parallelism::OpenMP)
    for (long i = 0; i < static_cast<long>(cand.size()); ++i) out[i] = refine(c, point_of(c, cand[i]));

    std::vector<LocusPoint> pts;
    for (const auto& o : out) {
        if (!o) {
            ++unrefined;
            continue;
        }
        pts.push_back({ci, *o, indicator(c, *o), 0});
    }
    // Deterministic order and removal of repeated limits.
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.param < b.param; });
    std::vector<LocusPoint> uniq;
    for (const auto& p : pts)
        if (uniq.empty() || dist(uniq.back().param, p.param) > 1e-9) uniq.push_back(p);
    return uniq;
}

// Single linkage: within a chart by parameter distance, across charts by
// image distance scaled with the local stretch of the parametrisation.
void cluster(const SampledImmersion& s, LocusSummary& locus) {
    auto& pts = locus.points;
    Dsu dsu(pts.size());
    std::vector<Eigen::Vector4d> image(pts.size());
    std::vector<double> stretch(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Chart& c = s.charts[pts[i].chart];
        Mat43 df;
        eval_f(c, pts[i].param, image[i], df, s.tol.fd_step);
        stretch[i] = Eigen::JacobiSVD<Mat43>(df).singularValues()[0];
    }
    for (std::size_t ci = 0; ci < s.charts.size(); ++ci) {
        double radius = 3 * s.charts[ci].spacing();
        std::vector<std::size_t> ids;
        std::vector<Vec3> params;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (pts[i].chart == ci) {
                ids.push_back(i);
                params.push_back(pts[i].param);
            }
        PointIndex index(params, radius);
        for (std::size_t a = 0; a < ids.size(); ++a)
            index.near(params[a], [&](std::size_t b) {
                if (dist(params[a], params[b]) <= radius) dsu.unite(ids[a], ids[b]);
            });
    }
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            if (pts[a].chart == pts[b].chart) continue;
            double r = 3 * std::max(s.charts[pts[a].chart].spacing() * stretch[a],
                                    s.charts[pts[b].chart].spacing() * stretch[b]);
            if ((image[a] - image[b]).norm() <= r) dsu.unite(a, b);
        }
    std::map<std::size_t, std::size_t> ids;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto root = dsu.find(i);
        auto it = ids.emplace(root, ids.size()).first;
        pts[i].component = it->second;
    }
    locus.components = ids.size();
}

// Points of later charts whose image repeats an earlier chart's point.
void drop_overlap_duplicates(const SampledImmersion& s, LocusSummary& locus) {
    std::vector<Eigen::Vector4d> image;
    std::vector<LocusPoint> kept;
    for (const auto& p : locus.points) {
        Eigen::Vector4d v;
        Mat43 df;
        eval_f(s.charts[p.chart], p.param, v, df, s.tol.fd_step);
        bool dup = false;
        for (std::size_t i = 0; i < kept.size() && !dup; ++i)
            dup = kept[i].chart != p.chart && (image[i] - v).norm() <= s.tol.overlap;
        if (!dup) {
            kept.push_back(p);
            image.push_back(v);
        }
    }
    locus.points = std::move(kept);
}

// One direction of the Hausdorff measure: each point of `from` is projected
// onto the other locus; the distance moved (or the distance to the nearest
// refined point of the other locus, if smaller) bounds its distance to it.
template <class Project>
void directed(const SampledImmersion& s, const LocusSummary& from, const LocusSummary& to, Parallelism par,
              Project project, double& worst, std::optional<LocusPoint>& witness) {
    std::vector<std::vector<Vec3>> to_params(s.charts.size());
    for (const auto& p : to.points) to_params[p.chart].push_back(p.param);
    std::vector<double> d(from.points.size(), kInf);
#pragma omp parallel for schedule(dynamic, 16) if (par == Parallelism::OpenMP)
    for (long i = 0; i < static_cast<long>(from.points.size()); ++i) {
        const auto& p = from.points[i];
        double best = kInf;
        if (auto q = project(s.charts[p.chart], p.param)) best = dist(*q, p.param);
        for (const auto& t : to_params[p.chart]) best = std::min(best, dist(t, p.param));
        d[i] = best;
    }
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!witness || d[i] > worst) {
            worst = d[i];
            witness = from.points[i];
        }
}

}  // namespace

TangentScanResult scan(const SampledImmersion& s, Parallelism par) {
    TangentScanResult res;
    std::vector<ChartGrid> grids;
    for (std::size_t ci = 0; ci < s.charts.size(); ++ci) {
        const Chart& c = s.charts[ci];
        grids.push_back(sample_chart(s, c, par));
        const auto& g = grids.back();
        res.samples += g.tangency.size();
        if (ci == 0 || g.min_sigma < res.min_immersion_sigma) res.min_immersion_sigma = g.min_sigma;
        if (g.min_sigma < s.tol.immersion) {
            Vec3 p = point_of(c, g.min_sigma_index);
            throw ImmersionViolation("d(f1..f4) has rank < 3 in chart '" + c.name + "' at (" + std::to_string(p[0]) +
                                     ", " + std::to_string(p[1]) + ", " + std::to_string(p[2]) + ")");
        }
    }

    auto tangent_refine = [&](const Chart& c, const Vec3& p) { return refine_tangent(s, c, p); };
    auto fold_refine = [&](const Chart& c, const Vec3& p) { return refine_fold(s, c, p); };
    auto tangent_value = [&](const Chart& c, const Vec3& p) { return tangency_indicator(eval_dG(s, c, p)); };
    auto fold_value = [&](const Chart& c, const Vec3& p) {
        return fold_indicator(c.analytic ? jacobian_analytic(c, p) : jacobian_fd(c, p, s.tol.fd_step));
    };
    for (std::size_t ci = 0; ci < s.charts.size(); ++ci) {
        auto t = refine_candidates(s, ci, grids[ci].tangency, par, tangent_refine, tangent_value,
                                   res.tangent.candidates, res.tangent.unrefined);
        res.tangent.points.insert(res.tangent.points.end(), t.begin(), t.end());
        auto f = refine_candidates(s, ci, grids[ci].fold, par, fold_refine, fold_value, res.fold.candidates,
                                   res.fold.unrefined);
        res.fold.points.insert(res.fold.points.end(), f.begin(), f.end());
    }
    drop_overlap_duplicates(s, res.tangent);
    drop_overlap_duplicates(s, res.fold);
    cluster(s, res.tangent);
    cluster(s, res.fold);

    if (res.tangent.points.empty() != res.fold.points.empty()) {
        res.coincidence = kInf;
        const auto& nonempty = res.tangent.points.empty() ? res.fold.points : res.tangent.points;
        res.worst = nonempty.front();
    } else {
        directed(s, res.tangent, res.fold, par, fold_refine, res.coincidence, res.worst);
        directed(s, res.fold, res.tangent, par, tangent_refine, res.coincidence, res.worst);
    }

    // Totally-real margin: smallest tangency value on grid points farther
    // than the tube radius from every refined tangent point of their chart.
    res.margin = kInf;
    for (std::size_t ci = 0; ci < s.charts.size(); ++ci) {
        const Chart& c = s.charts[ci];
        std::vector<Vec3> locus;
        for (const auto& p : res.tangent.points)
            if (p.chart == ci) locus.push_back(p.param);
        PointIndex index(locus, s.tol.tube);
        const auto& values = grids[ci].tangency;
        double best = kInf;
        std::size_t best_idx = 0;
#pragma omp parallel if (par == Parallelism::OpenMP)
        {
            double lb = kInf;
            std::size_t li = 0;
#pragma omp for schedule(static) nowait
            for (long idx = 0; idx < static_cast<long>(values.size()); ++idx) {
                if (values[idx] >= lb) continue;
                if (index.nearest(point_of(c, idx)) <= s.tol.tube) continue;
                lb = values[idx];
                li = static_cast<std::size_t>(idx);
            }
#pragma omp critical
            if (lb < best || (lb == best && li < best_idx)) {
                best = lb;
                best_idx = li;
            }
        }
        if (best < res.margin) {
            res.margin = best;
            res.margin_point = LocusPoint{ci, point_of(c, best_idx), best, 0};
        }
    }
    return res;
}

JacobianCheck check_jacobians(const SampledImmersion& s, int per_axis) {
    JacobianCheck out;
    out.pass = true;
    for (const auto& c : s.charts) {
        if (!c.analytic) continue;
        Chart coarse = c;
        coarse.resolution = {per_axis, per_axis, per_axis};
        for (int i = 0; i < per_axis; ++i)
            for (int j = 0; j < per_axis; ++j)
                for (int k = 0; k < per_axis; ++k) {
                    Vec3 p = coarse.grid_point(i, j, k);
                    Mat43 an = jacobian_analytic(c, p);
                    Mat43 fd = jacobian_fd(c, p, s.tol.fd_step);
                    double scale = std::max(an.cwiseAbs().maxCoeff(), 1e-300);
                    double rel = (fd - an).cwiseAbs().maxCoeff() / scale;
                    ++out.samples;
                    if (rel > out.worst_relative) {
                        out.worst_relative = rel;
                        out.worst_point = p;
                    }
                }
    }
    out.pass = out.worst_relative <= s.tol.gradient;
    return out;
}

ImmersionReport verify_theorem_imm(const SampledImmersion& s, Parallelism par) {
    ImmersionReport r;
    r.scan = scan(s, par);
    r.jacobians = check_jacobians(s);
    if (r.scan.tangent.points.empty() && r.scan.fold.points.empty()) {
        r.pass = true;
        r.vacuous = true;
        r.message = "both loci empty: vacuous pass";
        return r;
    }
    r.pass = r.scan.coincidence <= s.tol.coincidence;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: Hausdorff %.3g vs tolerance %.3g", r.pass ? "loci coincide" : "loci differ",
                  r.scan.coincidence, s.tol.coincidence);
    r.message = buf;
    return r;
}

}  // namespace contour
