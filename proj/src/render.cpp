#include "contour/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <Eigen/Dense>

namespace contour {

namespace {

struct P {
    double x = 0, y = 0;
};

P operator+(P a, P b) { return {a.x + b.x, a.y + b.y}; }
P operator-(P a, P b) { return {a.x - b.x, a.y - b.y}; }
P operator*(double k, P a) { return {k * a.x, k * a.y}; }
double norm(P a) { return std::hypot(a.x, a.y); }

double seg_dist(P p, P a, P b) {
    P ab = b - a, ap = p - a;
    double t = std::clamp((ap.x * ab.x + ap.y * ab.y) / std::max(1e-300, ab.x * ab.x + ab.y * ab.y), 0.0, 1.0);
    return norm(p - (a + t * ab));
}

bool inside(P p, const std::vector<P>& poly) {
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++)
        if ((poly[i].y > p.y) != (poly[j].y > p.y) &&
            p.x < (poly[j].x - poly[i].x) * (p.y - poly[i].y) / (poly[j].y - poly[i].y) + poly[i].x)
            in = !in;
    return in;
}

double edge_dist(P p, const std::vector<P>& poly) {
    double r = 1e300;
    for (std::size_t i = 0; i < poly.size(); ++i) r = std::min(r, seg_dist(p, poly[i], poly[(i + 1) % poly.size()]));
    return r;
}

// Sampled interior point farthest from the boundary, with that distance.
std::pair<P, double> roomiest(const std::vector<P>& poly) {
    P lo = poly.front(), hi = poly.front();
    P mean{0, 0};
    for (const auto& p : poly) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
        mean = mean + p;
    }
    mean = (1.0 / poly.size()) * mean;
    std::pair<P, double> best{mean, inside(mean, poly) ? edge_dist(mean, poly) : 0.0};
    const int n = 40;
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            P q{lo.x + (hi.x - lo.x) * i / n, lo.y + (hi.y - lo.y) * j / n};
            if (!inside(q, poly)) continue;
            double r = edge_dist(q, poly);
            if (r > best.second) best = {q, r};
        }
    return best;
}

struct Disk {
    P c;
    double r;
};

std::vector<Disk> pack(Disk outer, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {{outer.c, 0.78 * outer.r}};
    const double pi = std::acos(-1.0);
    double s = std::sin(pi / n);
    double rho = 0.9 * outer.r * s / (1 + s);
    std::vector<Disk> out;
    for (std::size_t k = 0; k < n; ++k) {
        double a = pi / 2 - 2 * pi * k / n;
        out.push_back({outer.c + (outer.r - rho / 0.9) * P{std::cos(a), std::sin(a)}, rho});
    }
    return out;
}

class Layout {
public:
    Layout(const SingularDiagram& d, const RenderOptions& o) : d_(d), o_(o) {
        find_components();
        for (const auto& cyc : boundary_cycles(d_)) {
            std::size_t k = comp_of_arc_.at(cyc.front().arc);
            Id r = d_.left_of(cyc.front());
            cycles_.push_back({cyc, k, r});
        }
        // Nesting tree: regions and components joined by boundary cycles.
        std::set<Id> seen_r;
        std::vector<bool> seen_k(ncomp_, false);
        std::vector<Id> queue{d_.outer_region()};
        seen_r.insert(queue.front());
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const Id r = queue[qi];
            for (std::size_t ci = 0; ci < cycles_.size(); ++ci) {
                const auto& cy = cycles_[ci];
                if (cy.region != r || seen_k[cy.comp]) continue;
                seen_k[cy.comp] = true;
                children_[r].push_back(cy.comp);
                outer_cycle_[cy.comp] = ci;
                for (std::size_t cj = 0; cj < cycles_.size(); ++cj) {
                    const auto& other = cycles_[cj];
                    if (other.comp != cy.comp || cj == ci) continue;
                    inner_cycles_[cy.comp].push_back(cj);
                    if (seen_r.insert(other.region).second) queue.push_back(other.region);
                }
            }
        }
    }

    void place(Disk disk) { place_region(d_.outer_region(), disk); }

    std::string svg() const;

private:
    struct Cycle {
        std::vector<HalfEdge> edges;
        std::size_t comp;
        Id region;
    };

    const SingularDiagram& d_;
    const RenderOptions& o_;
    std::size_t ncomp_ = 0;
    std::map<Id, std::size_t> comp_of_arc_;
    std::vector<Cycle> cycles_;
    std::map<Id, std::vector<std::size_t>> children_;
    std::map<std::size_t, std::size_t> outer_cycle_;
    std::map<std::size_t, std::vector<std::size_t>> inner_cycles_;

    std::map<std::string, P> pos_;                 // vertex and subdivision positions
    std::map<Id, Disk> loops_;                     // arcs drawn as circles
    std::vector<std::pair<Id, std::vector<P>>> faces_;  // region faces in nesting order
    std::map<Id, P> label_at_;

    std::optional<Id> vertex_at(const ArcEnd& e) const {
        auto a = d_.attachment(e);
        if (!a) return std::nullopt;
        return a->vertex;
    }

    void find_components() {
        std::map<Id, Id> parent;
        std::function<Id(const Id&)> find = [&](const Id& x) -> Id {
            auto it = parent.find(x);
            if (it == parent.end() || it->second == x) return x;
            return it->second = find(it->second);
        };
        auto unite = [&](const Id& a, const Id& b) { parent[find(a)] = find(b); };
        for (const auto& [id, a] : d_.arcs) {
            parent.emplace("A:" + id, "A:" + id);
            for (End e : {End::Tail, End::Head})
                if (auto v = vertex_at({id, e})) unite("A:" + id, "V:" + *v);
        }
        std::map<Id, std::size_t> root_index;
        for (const auto& [id, a] : d_.arcs) {
            auto r = find("A:" + id);
            auto it = root_index.emplace(r, root_index.size()).first;
            comp_of_arc_[id] = it->second;
        }
        ncomp_ = root_index.size();
    }

    // Point keys along a half-edge from its start vertex, excluding the end vertex.
    std::vector<std::string> keys_along(const HalfEdge& h) const {
        const int m = o_.subdivisions;
        std::vector<std::string> out;
        auto start = vertex_at({h.arc, h.dir > 0 ? End::Tail : End::Head});
        if (start) out.push_back("V:" + *start);
        for (int i = 1; i < m; ++i) {
            int k = h.dir > 0 ? i : m - i;
            out.push_back("A:" + h.arc + ":" + std::to_string(k));
        }
        return out;
    }

    std::vector<P> polygon(std::size_t cycle) const {
        std::vector<P> pts;
        for (const auto& h : cycles_[cycle].edges) {
            if (loops_.count(h.arc)) {
                const Disk& c = loops_.at(h.arc);
                for (int i = 0; i < 48; ++i) {
                    double a = 2 * std::acos(-1.0) * i / 48;
                    pts.push_back(c.c + c.r * P{std::cos(a), std::sin(a)});
                }
                continue;
            }
            for (const auto& k : keys_along(h)) pts.push_back(pos_.at(k));
        }
        return pts;
    }

    void place_region(const Id& region, Disk disk) {
        const auto& kids = children_[region];
        auto disks = pack(disk, kids.size());
        for (std::size_t i = 0; i < kids.size(); ++i) place_component(kids[i], disks[i]);
    }

    void place_component(std::size_t k, Disk disk) {
        const Cycle& outer = cycles_[outer_cycle_.at(k)];
        if (outer.edges.size() == 1 && !vertex_at({outer.edges[0].arc, End::Tail})) {
            loops_[outer.edges[0].arc] = disk;
        } else {
            barycentric(k, outer, disk);
        }
        for (auto ci : inner_cycles_[k]) {
            auto poly = polygon(ci);
            const Id& r = cycles_[ci].region;
            faces_.push_back({r, poly});
            auto [c, rad] = roomiest(poly);
            label_at_[r] = children_[r].empty() ? c : c + P{0, 0.7 * rad};
            if (!children_[r].empty()) {
                // Leave room for the label above the nested pieces.
                place_region(r, {c + P{0, -0.12 * rad}, 0.8 * rad});
            }
        }
    }

    void barycentric(std::size_t k, const Cycle& outer, Disk disk) {
        std::vector<std::string> ring;
        std::set<std::string> fixed;
        for (const auto& h : outer.edges)
            for (const auto& key : keys_along(h))
                if (fixed.insert(key).second) ring.push_back(key);
        // The outer face lies left of its cycle, so the cycle runs clockwise.
        const double pi = std::acos(-1.0);
        for (std::size_t i = 0; i < ring.size(); ++i) {
            double a = pi / 2 - 2 * pi * i / ring.size();
            pos_[ring[i]] = disk.c + disk.r * P{std::cos(a), std::sin(a)};
        }
        std::map<std::string, std::size_t> index;
        std::vector<std::pair<std::string, std::string>> edges;
        const int m = o_.subdivisions;
        for (const auto& [id, a] : d_.arcs) {
            if (comp_of_arc_.at(id) != k) continue;
            std::vector<std::string> chain{"V:" + *vertex_at({id, End::Tail})};
            for (int i = 1; i < m; ++i) chain.push_back("A:" + id + ":" + std::to_string(i));
            chain.push_back("V:" + *vertex_at({id, End::Head}));
            for (std::size_t i = 0; i + 1 < chain.size(); ++i) edges.emplace_back(chain[i], chain[i + 1]);
            for (const auto& key : chain)
                if (!fixed.count(key) && !index.count(key)) index.emplace(key, index.size());
        }
        if (index.empty()) return;
        const auto n = static_cast<Eigen::Index>(index.size());
        Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
        Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, 2);
        for (const auto& [a, b] : edges)
            for (const auto& [u, v] : {std::pair{a, b}, std::pair{b, a}}) {
                auto iu = index.find(u);
                if (iu == index.end()) continue;
                lap(iu->second, iu->second) += 1;
                if (auto iv = index.find(v); iv != index.end()) {
                    lap(iu->second, iv->second) -= 1;
                } else {
                    rhs(iu->second, 0) += pos_.at(v).x;
                    rhs(iu->second, 1) += pos_.at(v).y;
                }
            }
        Eigen::MatrixXd xy = lap.fullPivLu().solve(rhs);
        for (const auto& [key, i] : index) pos_[key] = {xy(i, 0), xy(i, 1)};
        separate_parallel(k, fixed, disk);
    }

    // Cusps have degree two, so maximal cusp chains between crossings act as
    // single edges. Chains with the same end crossings would share one chord;
    // bow them apart in the rotation order of their first crossing. Chains
    // returning to their crossing become teardrops pointing away from the centre.
    void separate_parallel(std::size_t k, const std::set<std::string>& fixed, Disk disk) {
        struct Chain {
            Id from, to;
            int slot = 0;
            std::vector<std::string> keys;  // free points between the two crossings
        };
        std::map<std::pair<Id, Id>, std::vector<Chain>> groups;
        std::set<HalfEdge> used;
        for (const auto& [xid, x] : d_.crossings) {
            if (comp_of_arc_.at(x.ends[0].arc) != k) continue;
            for (int slot = 0; slot < 4; ++slot) {
                const ArcEnd& e = x.ends[slot];
                HalfEdge h{e.arc, e.end == End::Tail ? 1 : -1};
                if (used.count(h)) continue;
                Chain c{xid, "", slot, {}};
                bool free = true;
                for (;;) {
                    used.insert(h);
                    auto keys = keys_along(h);
                    for (std::size_t i = c.keys.empty() && keys.size() && keys[0] == "V:" + xid ? 1 : 0; i < keys.size(); ++i)
                        c.keys.push_back(keys[i]);
                    ArcEnd arrive{h.arc, h.dir > 0 ? End::Head : End::Tail};
                    used.insert(HalfEdge{h.arc, -h.dir});
                    auto at = d_.attachment(arrive);
                    if (!at->is_cusp) {
                        c.to = at->vertex;
                        break;
                    }
                    const auto& cusp = d_.cusps.at(at->vertex);
                    const ArcEnd& out = cusp.ends[1 - at->slot];
                    h = HalfEdge{out.arc, out.end == End::Tail ? 1 : -1};
                }
                for (const auto& key : c.keys) free = free && !fixed.count(key);
                if (!free) continue;
                if (c.to < c.from) {
                    std::swap(c.from, c.to);
                    std::reverse(c.keys.begin(), c.keys.end());
                    c.slot = 4 + slot;  // ordered after chains leaving the smaller crossing
                }
                groups[{c.from, c.to}].push_back(std::move(c));
            }
        }
        for (auto& [key, chains] : groups) {
            std::sort(chains.begin(), chains.end(), [](const Chain& x, const Chain& y) { return x.slot < y.slot; });
            P u = pos_.at("V:" + key.first), v = pos_.at("V:" + key.second);
            for (std::size_t n = 0; n < chains.size(); ++n) {
                const auto& keys = chains[n].keys;
                const double cnt = static_cast<double>(keys.size() + 1);
                if (key.first == key.second) {
                    P away = u - disk.c;
                    if (norm(away) < 1e-9) away = {0, 1};
                    away = (1 / norm(away)) * away;
                    double rho = 0.12 * disk.r * (1 + 0.5 * n);
                    P c = u + rho * away;
                    double a0 = std::atan2(-away.y, -away.x);
                    for (std::size_t i = 0; i < keys.size(); ++i) {
                        double a = a0 + 2 * std::acos(-1.0) * (i + 1) / cnt;
                        pos_[keys[i]] = c + rho * P{std::cos(a), std::sin(a)};
                    }
                    continue;
                }
                if (chains.size() < 2) continue;
                P dir = v - u;
                double len = norm(dir);
                P left{-dir.y / len, dir.x / len};
                double off = (n - 0.5 * (chains.size() - 1)) * 0.3 * len;
                for (std::size_t i = 0; i < keys.size(); ++i) {
                    double t = (i + 1) / cnt;
                    pos_[keys[i]] = u + t * dir + (off * 4 * t * (1 - t)) * left;
                }
            }
        }
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string Layout::svg() const {
    const double s = o_.size;
    auto X = [&](P p) { return fmt(p.x); };
    auto Y = [&](P p) { return fmt(s - p.y); };  // flip: layout uses y up
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(s) << "\" height=\"" << fmt(s)
        << "\" viewBox=\"0 0 " << fmt(s) << ' ' << fmt(s) << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"" << (d_.region(d_.outer_region()).shaded.empty() ? "#ffffff" : "#d9d9d9")
        << "\"/>\n";

    auto fill_of = [&](const Id& r) { return d_.region(r).shaded.empty() ? "#ffffff" : "#d9d9d9"; };
    for (const auto& [r, poly] : faces_) {
        out << "  <polygon class=\"region\" data-region=\"" << r << "\" fill=\"" << fill_of(r) << "\" stroke=\"none\" points=\"";
        for (const auto& p : poly) out << X(p) << ',' << Y(p) << ' ';
        out << "\"/>\n";
    }

    auto stroke = [&](const FoldArc& a) {
        std::string st = "stroke=\"#000000\" stroke-width=\"2\" fill=\"none\"";
        if (a.type == FoldType::Indefinite) st += " stroke-dasharray=\"2,4\" stroke-linecap=\"round\"";
        return st;
    };
    auto arrow = [&](P at, P dir) {
        double l = norm(dir);
        if (l < 1e-12) return;
        dir = (1 / l) * dir;
        P nrm{-dir.y, dir.x};
        P tip = at + 7.0 * dir, b1 = at - 5.0 * dir + 5.0 * nrm, b2 = at - 5.0 * dir - 5.0 * nrm;
        out << "  <polygon class=\"arrow\" fill=\"#000000\" points=\"" << X(tip) << ',' << Y(tip) << ' ' << X(b1) << ','
            << Y(b1) << ' ' << X(b2) << ',' << Y(b2) << "\"/>\n";
    };

    for (const auto& [id, a] : d_.arcs) {
        const char* type = a.type == FoldType::Definite ? "definite" : "indefinite";
        if (auto it = loops_.find(id); it != loops_.end()) {
            const Disk& c = it->second;
            out << "  <circle class=\"fold " << type << "\" data-arc=\"" << id << "\" cx=\"" << X(c.c) << "\" cy=\""
                << Y(c.c) << "\" r=\"" << fmt(c.r) << "\" " << stroke(a) << "/>\n";
            if (a.orientation) {
                // Stored direction is counter-clockwise when the left region is the inside.
                auto kids = children_.find(a.left);
                bool inside_left = kids == children_.end() ||
                                   std::find(kids->second.begin(), kids->second.end(), comp_of_arc_.at(id)) ==
                                       kids->second.end();
                int ccw = (inside_left ? 1 : -1) * *a.orientation;
                arrow(c.c + P{0, c.r}, P{-static_cast<double>(ccw), 0});
            }
            continue;
        }
        const int m = o_.subdivisions;
        std::vector<P> pts{pos_.at("V:" + *vertex_at({id, End::Tail}))};
        for (int i = 1; i < m; ++i) pts.push_back(pos_.at("A:" + id + ":" + std::to_string(i)));
        pts.push_back(pos_.at("V:" + *vertex_at({id, End::Head})));
        out << "  <path class=\"fold " << type << "\" data-arc=\"" << id << "\" d=\"M";
        for (std::size_t i = 0; i < pts.size(); ++i) out << (i ? " L" : "") << X(pts[i]) << ',' << Y(pts[i]);
        out << "\" " << stroke(a) << "/>\n";
        if (a.orientation) {
            std::size_t mid = pts.size() / 2;
            P dir = pts[mid] - pts[mid - 1];
            arrow(0.5 * (pts[mid] + pts[mid - 1]), *a.orientation * dir);
        }
    }
    for (const auto& [id, k] : d_.cusps) {
        P p = pos_.at("V:" + id);
        out << "  <circle class=\"cusp\" data-cusp=\"" << id << "\" cx=\"" << X(p) << "\" cy=\"" << Y(p)
            << "\" r=\"3\" fill=\"#ffffff\" stroke=\"#000000\"/>\n";
    }
    for (const auto& [id, x] : d_.crossings) {
        if (!x.shaded) continue;
        P p = pos_.at("V:" + id);
        out << "  <circle class=\"crossing shaded\" data-crossing=\"" << id << "\" cx=\"" << X(p) << "\" cy=\"" << Y(p)
            << "\" r=\"4\" fill=\"#808080\"/>\n";
    }
    if (o_.labels) {
        auto label = [&](const Id& r, P p) {
            out << "  <text class=\"label\" x=\"" << X(p) << "\" y=\"" << Y(p)
                << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << r << ": "
                << d_.count(r) << "</text>\n";
        };
        label(d_.outer_region(), P{30, s - 16});
        for (const auto& [r, p] : label_at_) label(r, p);
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace

std::string render_svg(const SingularDiagram& d, const RenderOptions& opts) {
    Layout layout(d, opts);
    layout.place({{opts.size / 2, opts.size / 2}, 0.46 * opts.size});
    return layout.svg();
}

}  // namespace contour
