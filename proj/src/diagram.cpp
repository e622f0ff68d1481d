#include "contour/diagram.hpp"

#include <algorithm>
#include <numeric>

namespace contour {

namespace {

// Small union-find keyed by dense indices.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

bool contains(const std::vector<Id>& v, const Id& x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

bool ValidationReport::has(const std::string& code) const {
    return std::any_of(issues.begin(), issues.end(), [&](const ValidationIssue& i) { return i.code == code; });
}

std::string to_string(FoldType t) { return t == FoldType::Definite ? "definite" : "indefinite"; }
std::string to_string(End e) { return e == End::Tail ? "tail" : "head"; }

const FoldArc& SingularDiagram::arc(const Id& id) const {
    auto it = arcs.find(id);
    if (it == arcs.end()) throw Error("unknown arc '" + id + "'");
    return it->second;
}

FoldArc& SingularDiagram::arc(const Id& id) {
    auto it = arcs.find(id);
    if (it == arcs.end()) throw Error("unknown arc '" + id + "'");
    return it->second;
}

const Region& SingularDiagram::region(const Id& id) const {
    auto it = regions.find(id);
    if (it == regions.end()) throw Error("unknown region '" + id + "'");
    return it->second;
}

Region& SingularDiagram::region(const Id& id) {
    auto it = regions.find(id);
    if (it == regions.end()) throw Error("unknown region '" + id + "'");
    return it->second;
}

Id SingularDiagram::outer_region() const {
    for (const auto& [id, r] : regions)
        if (r.outer) return id;
    throw Error("diagram has no outer region");
}

std::optional<SingularDiagram::Attachment> SingularDiagram::attachment(const ArcEnd& e) const {
    for (const auto& [id, c] : cusps)
        for (int i = 0; i < 2; ++i)
            if (c.ends[i] == e) return Attachment{id, true, i};
    for (const auto& [id, x] : crossings)
        for (int i = 0; i < 4; ++i)
            if (x.ends[i] == e) return Attachment{id, false, i};
    return std::nullopt;
}

std::optional<ArcEnd> SingularDiagram::through(const ArcEnd& e) const {
    auto at = attachment(e);
    if (!at) return std::nullopt;
    if (at->is_cusp) return cusps.at(at->vertex).ends[1 - at->slot];
    return crossings.at(at->vertex).ends[(at->slot + 2) % 4];
}

Id SingularDiagram::fresh_id(const std::string& prefix) const {
    for (std::size_t n = 1;; ++n) {
        Id candidate = prefix + std::to_string(n);
        if (!arcs.count(candidate) && !cusps.count(candidate) && !crossings.count(candidate) &&
            !regions.count(candidate))
            return candidate;
    }
}

Id SingularDiagram::fresh_circle(const Id& region_id, const std::string& prefix) const {
    const auto& circles = region(region_id).circles;
    for (std::size_t n = 1;; ++n) {
        Id candidate = prefix + std::to_string(n);
        if (!contains(circles, candidate)) return candidate;
    }
}

Id SingularDiagram::left_of(const HalfEdge& h) const {
    const auto& a = arc(h.arc);
    return h.dir > 0 ? a.left : a.right;
}

Id SingularDiagram::right_of(const HalfEdge& h) const {
    const auto& a = arc(h.arc);
    return h.dir > 0 ? a.right : a.left;
}

HalfEdge SingularDiagram::next_on_face(const HalfEdge& h) const {
    ArcEnd arriving{h.arc, h.dir > 0 ? End::Head : End::Tail};
    auto at = attachment(arriving);
    if (!at) return h;
    std::vector<ArcEnd> ring;
    if (at->is_cusp) {
        const auto& c = cusps.at(at->vertex);
        ring.assign(c.ends.begin(), c.ends.end());
    } else {
        const auto& x = crossings.at(at->vertex);
        ring.assign(x.ends.begin(), x.ends.end());
    }
    const int deg = static_cast<int>(ring.size());
    const ArcEnd& out = ring[(at->slot + deg - 1) % deg];
    return HalfEdge{out.arc, out.end == End::Tail ? 1 : -1};
}

void SingularDiagram::reattach(const ArcEnd& from, const ArcEnd& to) {
    for (auto& [id, c] : cusps)
        for (auto& e : c.ends)
            if (e == from) e = to;
    for (auto& [id, x] : crossings)
        for (auto& e : x.ends)
            if (e == from) e = to;
}

std::optional<Id> high_side(const SingularDiagram& d, const FoldArc& a) {
    auto l = d.count(a.left), r = d.count(a.right);
    if (l == r) return std::nullopt;
    return l > r ? a.left : a.right;
}

std::optional<Id> low_side(const SingularDiagram& d, const FoldArc& a) {
    auto l = d.count(a.left), r = d.count(a.right);
    if (l == r) return std::nullopt;
    return l < r ? a.left : a.right;
}

CircleRelation relation_across(const SingularDiagram& d, const Id& arc_id, const Id& from_region) {
    const auto& a = d.arc(arc_id);
    // pairs oriented left -> right first
    CircleRelation lr(a.transition.bijection.begin(), a.transition.bijection.end());
    if (const auto* s = std::get_if<Split>(&a.transition.special)) {
        bool low_is_left = low_side(d, a).value_or(a.left) == a.left;
        if (low_is_left) {
            lr.emplace(s->low, s->high_a);
            lr.emplace(s->low, s->high_b);
        } else {
            lr.emplace(s->high_a, s->low);
            lr.emplace(s->high_b, s->low);
        }
    }
    if (from_region == a.left) return lr;
    CircleRelation rl;
    for (const auto& [x, y] : lr) rl.emplace(y, x);
    return rl;
}

CircleRelation compose(const CircleRelation& a, const CircleRelation& b) {
    CircleRelation out;
    for (const auto& [x, y] : a)
        for (auto it = b.lower_bound({y, Id{}}); it != b.end() && it->first == y; ++it) out.emplace(x, it->second);
    return out;
}

std::vector<StrandComponent> strand_components(const SingularDiagram& d) {
    std::vector<StrandComponent> out;
    std::set<Id> seen;
    for (const auto& [id, a] : d.arcs) {
        if (seen.count(id)) continue;
        StrandComponent comp;
        HalfEdge start{id, 1};
        HalfEdge cur = start;
        for (std::size_t guard = 0;; ++guard) {
            if (guard > d.arcs.size()) throw Error("malformed strand pairing through arc '" + id + "'");
            if (seen.count(cur.arc)) throw Error("malformed strand pairing at arc '" + cur.arc + "'");
            seen.insert(cur.arc);
            comp.arcs.push_back(cur);
            auto nxt = d.through(ArcEnd{cur.arc, cur.dir > 0 ? End::Head : End::Tail});
            if (!nxt) {
                if (d.attachment(ArcEnd{cur.arc, cur.dir > 0 ? End::Tail : End::Head}))
                    throw Error("arc '" + cur.arc + "' has one free end");
                break;  // closed loop without vertices
            }
            cur = HalfEdge{nxt->arc, nxt->end == End::Tail ? 1 : -1};
            if (cur == start) break;
        }
        out.push_back(std::move(comp));
    }
    return out;
}

std::map<Id, std::pair<std::size_t, int>> strand_membership(const SingularDiagram& d) {
    std::map<Id, std::pair<std::size_t, int>> out;
    auto comps = strand_components(d);
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (const auto& h : comps[i].arcs) out[h.arc] = {i, h.dir};
    return out;
}

std::vector<CircleTrack> circle_tracks(const SingularDiagram& d) {
    std::vector<CircleRef> refs;
    for (const auto& [rid, r] : d.regions)
        for (const auto& c : r.circles) refs.push_back({rid, c});
    std::sort(refs.begin(), refs.end());
    auto index_of = [&](const CircleRef& ref) -> std::optional<std::size_t> {
        auto it = std::lower_bound(refs.begin(), refs.end(), ref);
        if (it == refs.end() || !(*it == ref)) return std::nullopt;
        return static_cast<std::size_t>(it - refs.begin());
    };
    DisjointSets sets(refs.size());
    for (const auto& [aid, a] : d.arcs)
        for (const auto& [l, r] : a.transition.bijection) {
            auto i = index_of({a.left, l});
            auto j = index_of({a.right, r});
            if (i && j) sets.unite(*i, *j);
        }
    std::map<std::size_t, std::vector<CircleRef>> groups;
    for (std::size_t i = 0; i < refs.size(); ++i) groups[sets.find(i)].push_back(refs[i]);
    std::vector<CircleTrack> out;
    for (auto& [root, members] : groups) {
        const auto& first = members.front();  // refs are sorted, so this is the smallest
        out.push_back(CircleTrack{first.region + ":" + first.circle, std::move(members)});
    }
    std::sort(out.begin(), out.end(), [](const CircleTrack& a, const CircleTrack& b) { return a.id < b.id; });
    return out;
}

std::map<CircleRef, std::size_t> track_index(const std::vector<CircleTrack>& tracks) {
    std::map<CircleRef, std::size_t> out;
    for (std::size_t i = 0; i < tracks.size(); ++i)
        for (const auto& m : tracks[i].members) out[m] = i;
    return out;
}

std::vector<std::vector<HalfEdge>> boundary_cycles(const SingularDiagram& d) {
    std::vector<std::vector<HalfEdge>> out;
    std::set<HalfEdge> seen;
    for (const auto& [id, a] : d.arcs) {
        for (int dir : {1, -1}) {
            HalfEdge start{id, dir};
            if (seen.count(start)) continue;
            std::vector<HalfEdge> cycle;
            HalfEdge cur = start;
            do {
                if (!seen.insert(cur).second) throw Error("face tracing revisited a half-edge");
                cycle.push_back(cur);
                cur = d.next_on_face(cur);
            } while (!(cur == start));
            out.push_back(std::move(cycle));
        }
    }
    return out;
}

std::size_t graph_components(const SingularDiagram& d) {
    std::vector<Id> ids;
    for (const auto& [id, a] : d.arcs) ids.push_back(id);
    auto idx = [&](const Id& id) {
        return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    DisjointSets sets(ids.size());
    for (const auto& [id, c] : d.cusps) sets.unite(idx(c.ends[0].arc), idx(c.ends[1].arc));
    for (const auto& [id, x] : d.crossings)
        for (int i = 1; i < 4; ++i) sets.unite(idx(x.ends[0].arc), idx(x.ends[i].arc));
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < ids.size(); ++i) roots.insert(sets.find(i));
    return roots.size();
}

SingularDiagram standard_s3_diagram() {
    SingularDiagram d;
    d.regions["R0"] = Region{"R0", {}, true, {}};
    d.regions["R1"] = Region{"R1", {"c1"}, false, {}};
    d.arcs["a1"] = FoldArc{"a1", FoldType::Definite, "R1", "R0", FiberTransition{{}, Vanish{"c1"}}, std::nullopt};
    return d;
}

}  // namespace contour
