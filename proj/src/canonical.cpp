#include "contour/canonical.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace contour {

namespace {

constexpr std::size_t kMaxLeaves = 200000;

struct Graph {
    int n = 0;
    std::vector<int> node_label;
    // adjacency: (edge label, neighbour), split by direction
    std::vector<std::vector<std::pair<int, int>>> out, in;
};

Graph compile(const LabeledGraph& g) {
    std::vector<std::string> names = g.labels;
    for (const auto& e : g.edges) names.push_back(e.label);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    auto code = [&](const std::string& s) {
        return static_cast<int>(std::lower_bound(names.begin(), names.end(), s) - names.begin());
    };
    Graph c;
    c.n = static_cast<int>(g.labels.size());
    c.out.resize(c.n);
    c.in.resize(c.n);
    for (const auto& l : g.labels) c.node_label.push_back(code(l));
    for (const auto& e : g.edges) {
        c.out[e.from].emplace_back(code(e.label), e.to);
        c.in[e.to].emplace_back(code(e.label), e.from);
    }
    return c;
}

using Signature = std::tuple<int, std::vector<std::pair<int, int>>, std::vector<std::pair<int, int>>>;

// Colour refinement to a stable partition; colours are ranks of sorted signatures,
// so the result depends only on the isomorphism class of (graph, initial colouring).
std::vector<int> refine(const Graph& g, std::vector<int> colour) {
    std::size_t classes = std::set<int>(colour.begin(), colour.end()).size();
    for (;;) {
        std::vector<Signature> sig(g.n);
        for (int v = 0; v < g.n; ++v) {
            std::vector<std::pair<int, int>> o, i;
            for (auto [lab, w] : g.out[v]) o.emplace_back(lab, colour[w]);
            for (auto [lab, w] : g.in[v]) i.emplace_back(lab, colour[w]);
            std::sort(o.begin(), o.end());
            std::sort(i.begin(), i.end());
            sig[v] = {colour[v], std::move(o), std::move(i)};
        }
        std::vector<Signature> distinct = sig;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (int v = 0; v < g.n; ++v)
            colour[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
        if (distinct.size() == classes) return colour;
        classes = distinct.size();
    }
}

std::string certificate_of(const Graph& g, const std::vector<int>& colour) {
    std::vector<std::tuple<int, int, int>> edges;
    std::vector<int> labels(g.n);
    for (int v = 0; v < g.n; ++v) {
        labels[colour[v]] = g.node_label[v];
        for (auto [lab, w] : g.out[v]) edges.emplace_back(colour[v], colour[w], lab);
    }
    std::sort(edges.begin(), edges.end());
    std::ostringstream ss;
    for (int l : labels) ss << l << ',';
    ss << '|';
    for (auto [a, b, l] : edges) ss << a << '>' << b << ':' << l << ';';
    return ss.str();
}

struct Search {
    const Graph& g;
    std::size_t leaves = 0;
    std::optional<std::string> best;

    void run(const std::vector<int>& colour) {
        // first non-singleton cell in colour order
        std::map<int, std::vector<int>> cells;
        for (int v = 0; v < g.n; ++v) cells[colour[v]].push_back(v);
        const std::vector<int>* target = nullptr;
        for (const auto& [c, members] : cells)
            if (members.size() > 1) {
                target = &members;
                break;
            }
        if (!target) {
            if (++leaves > kMaxLeaves) throw Error("canonical labelling exceeded its search budget");
            auto cert = certificate_of(g, colour);
            if (!best || cert < *best) best = std::move(cert);
            return;
        }
        for (int v : *target) {
            std::vector<int> c2(g.n);
            // individualise v: it sorts before the rest of its cell
            for (int w = 0; w < g.n; ++w) c2[w] = 2 * colour[w] + (w == v ? 0 : 1);
            run(refine(g, std::move(c2)));
        }
    }
};

}  // namespace

std::string canonical_certificate(const LabeledGraph& lg) {
    Graph g = compile(lg);
    Search s{g, 0, std::nullopt};
    s.run(refine(g, g.node_label));
    return s.best.value_or("");
}

LabeledGraph diagram_graph(const SingularDiagram& d) {
    LabeledGraph g;
    std::map<Id, int> region_node;
    std::map<CircleRef, int> circle_node;
    for (const auto& [rid, r] : d.regions) {
        int n = g.add_node("region outer=" + std::to_string(r.outer) + " n=" + std::to_string(r.circles.size()));
        region_node[rid] = n;
        for (const auto& c : r.circles) {
            bool shaded = std::find(r.shaded.begin(), r.shaded.end(), c) != r.shaded.end();
            int cn = g.add_node(shaded ? "circle shaded" : "circle");
            circle_node[{rid, c}] = cn;
            g.add_edge(n, cn, "has");
        }
    }
    auto circle = [&](const Id& region, const Id& c) {
        auto it = circle_node.find({region, c});
        if (it == circle_node.end()) throw Error("circle '" + c + "' missing from region '" + region + "'");
        return it->second;
    };
    std::map<ArcEnd, int> end_node;
    for (const auto& [aid, a] : d.arcs) {
        int an = g.add_node("arc " + to_string(a.type));
        int tail = g.add_node("end");
        int head = g.add_node("end");
        end_node[{aid, End::Tail}] = tail;
        end_node[{aid, End::Head}] = head;
        int fwd = g.add_node(a.orientation && *a.orientation > 0 ? "half oriented" : "half");
        int bwd = g.add_node(a.orientation && *a.orientation < 0 ? "half oriented" : "half");
        g.add_edge(an, fwd, "half");
        g.add_edge(an, bwd, "half");
        g.add_edge(fwd, tail, "from");
        g.add_edge(fwd, head, "to");
        g.add_edge(bwd, head, "from");
        g.add_edge(bwd, tail, "to");
        g.add_edge(fwd, region_node.at(a.left), "left");
        g.add_edge(bwd, region_node.at(a.right), "left");
        for (const auto& [l, r] : a.transition.bijection) {
            int b = g.add_node("match");
            g.add_edge(b, an, "of");
            g.add_edge(b, circle(a.left, l), "m");
            g.add_edge(b, circle(a.right, r), "m");
        }
        if (const auto* v = std::get_if<Vanish>(&a.transition.special)) {
            auto high = high_side(d, a).value_or(a.left);
            g.add_edge(an, circle(high, v->circle), "vanish");
        } else {
            const auto& s = std::get<Split>(a.transition.special);
            auto high = high_side(d, a).value_or(a.left);
            auto low = high == a.left ? a.right : a.left;
            g.add_edge(an, circle(low, s.low), "low");
            g.add_edge(an, circle(high, s.high_a), "high");
            g.add_edge(an, circle(high, s.high_b), "high");
        }
    }
    auto ring = [&](int vn, const auto& ends) {
        const std::size_t k = ends.size();
        for (std::size_t i = 0; i < k; ++i) {
            g.add_edge(vn, end_node.at(ends[i]), "at");
            g.add_edge(end_node.at(ends[i]), end_node.at(ends[(i + 1) % k]), "ccw");
        }
    };
    for (const auto& [id, c] : d.cusps) ring(g.add_node("cusp"), c.ends);
    for (const auto& [id, x] : d.crossings) ring(g.add_node(x.shaded ? "crossing shaded" : "crossing"), x.ends);
    return g;
}

std::string canonical_form(const SingularDiagram& d) { return canonical_certificate(diagram_graph(d)); }

bool isomorphic(const SingularDiagram& a, const SingularDiagram& b) {
    if (a.arcs.size() != b.arcs.size() || a.regions.size() != b.regions.size() || a.cusps.size() != b.cusps.size() ||
        a.crossings.size() != b.crossings.size())
        return false;
    return canonical_form(a) == canonical_form(b);
}

}  // namespace contour
