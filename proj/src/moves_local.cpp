#include "moves_local.hpp"

#include <algorithm>

namespace contour::detail {

namespace {

template <typename F>
void for_each_end(SingularDiagram& d, F&& f) {
    for (auto& [id, c] : d.cusps)
        for (auto& e : c.ends) f(e);
    for (auto& [id, x] : d.crossings)
        for (auto& e : x.ends) f(e);
}

void rename_in(Id& c, const std::map<Id, Id>& rename) {
    auto it = rename.find(c);
    if (it != rename.end()) c = it->second;
}

}  // namespace

void reverse_arc(SingularDiagram& d, const Id& id) {
    auto& a = d.arc(id);
    std::swap(a.left, a.right);
    for (auto& [l, r] : a.transition.bijection) std::swap(l, r);
    if (a.orientation) a.orientation = -*a.orientation;
    for_each_end(d, [&](ArcEnd& e) {
        if (e.arc == id) e.end = opposite(e.end);
    });
}

SplitResult split_arc(SingularDiagram& d, const Id& id, int cuts) {
    const FoldArc original = d.arc(id);
    const bool loop = !d.attachment({id, End::Tail}) && !d.attachment({id, End::Head});
    const int n = loop ? cuts : cuts + 1;
    SplitResult out;
    out.pieces.push_back(id);
    for (int i = 1; i < n; ++i) {
        Id pid = d.fresh_id(id + "_");
        FoldArc piece = original;
        piece.id = pid;
        d.arcs[pid] = piece;
        out.pieces.push_back(pid);
    }
    if (!loop && n > 1) d.reattach({id, End::Head}, {out.pieces.back(), End::Head});
    for (int j = 0; j < cuts; ++j) {
        const Id& before = out.pieces[j];
        const Id& after = out.pieces[(j + 1) % n];
        out.joints.emplace_back(ArcEnd{before, End::Head}, ArcEnd{after, End::Tail});
    }
    return out;
}

void glue_arcs(SingularDiagram& d, const Id& first, const Id& second) {
    if (d.attachment({first, End::Head}) || d.attachment({second, End::Tail}))
        throw WouldViolateInvariant("glued arc ends are still attached");
    if (first == second) return;
    d.reattach({second, End::Head}, {first, End::Head});
    d.arcs.erase(second);
}

void erase_vertex(SingularDiagram& d, const Id& vertex) {
    if (!d.cusps.erase(vertex) && !d.crossings.erase(vertex))
        throw PatternMismatch("unknown vertex '" + vertex + "'");
}

std::vector<HalfEdge> face_cycle(const SingularDiagram& d, const HalfEdge& h) {
    std::vector<HalfEdge> out;
    HalfEdge cur = h;
    do {
        out.push_back(cur);
        if (out.size() > 2 * d.arcs.size() + 2) throw WouldViolateInvariant("face cycle does not close");
        cur = d.next_on_face(cur);
    } while (!(cur == h));
    return out;
}

void relabel_cycle(SingularDiagram& d, const HalfEdge& h, const Id& from, const Id& to) {
    for (const auto& e : face_cycle(d, h)) {
        auto& a = d.arc(e.arc);
        Id& side = e.dir > 0 ? a.left : a.right;
        if (side == from) side = to;
    }
}

void split_region_if_cut(SingularDiagram& d, const Id& region, const HalfEdge& a, const HalfEdge& b) {
    auto cyc = face_cycle(d, a);
    if (std::find(cyc.begin(), cyc.end(), b) != cyc.end()) return;
    const Id twin = d.fresh_id("R");
    Region r = d.region(region);
    r.id = twin;
    r.outer = false;
    d.regions[twin] = r;
    relabel_cycle(d, b, region, twin);
}

void merge_regions(SingularDiagram& d, const Id& kept, const Id& gone, const std::map<Id, Id>& rename) {
    for (auto& [id, a] : d.arcs) {
        if (a.left != gone && a.right != gone) continue;
        const bool gone_high = high_side(d, a) == std::optional<Id>(gone);
        const bool left = a.left == gone;
        for (auto& [l, r] : a.transition.bijection) rename_in(left ? l : r, rename);
        if (auto* v = std::get_if<Vanish>(&a.transition.special)) {
            if (gone_high) rename_in(v->circle, rename);
        } else {
            auto& s = std::get<Split>(a.transition.special);
            if (gone_high) {
                rename_in(s.high_a, rename);
                rename_in(s.high_b, rename);
            } else {
                rename_in(s.low, rename);
            }
        }
        (left ? a.left : a.right) = kept;
    }
    Region g = d.region(gone);
    Region& k = d.region(kept);
    k.outer = k.outer || g.outer;
    for (auto c : g.shaded) {
        rename_in(c, rename);
        if (std::find(k.shaded.begin(), k.shaded.end(), c) == k.shaded.end()) k.shaded.push_back(c);
    }
    d.regions.erase(gone);
}

std::vector<std::pair<Id, Id>> identity_pairs(const std::vector<Id>& circles, const std::vector<Id>& except) {
    std::vector<std::pair<Id, Id>> out;
    for (const auto& c : circles)
        if (std::find(except.begin(), except.end(), c) == except.end()) out.emplace_back(c, c);
    return out;
}

std::optional<Id> bijected(const FoldArc& a, const Id& from_region, const Id& c) {
    const bool from_left = from_region == a.left;
    for (const auto& [l, r] : a.transition.bijection) {
        if (from_left && l == c) return r;
        if (!from_left && r == c) return l;
    }
    return std::nullopt;
}

Id other_side(const FoldArc& a, const Id& region) { return a.left == region ? a.right : a.left; }

std::vector<Id> special_on(const SingularDiagram& d, const FoldArc& a, const Id& side) {
    const bool high = high_side(d, a) == std::optional<Id>(side);
    if (const auto* v = std::get_if<Vanish>(&a.transition.special)) return high ? std::vector<Id>{v->circle} : std::vector<Id>{};
    const auto& s = std::get<Split>(a.transition.special);
    return high ? std::vector<Id>{s.high_a, s.high_b} : std::vector<Id>{s.low};
}

std::vector<FiberTransition> transition_options(const std::vector<Id>& left, const std::vector<Id>& right,
                                                FoldType type) {
    std::vector<FiberTransition> out;
    if (left.size() + 1 != right.size() && right.size() + 1 != left.size()) return out;
    const bool left_high = left.size() > right.size();
    const auto& high = left_high ? left : right;
    const auto& low = left_high ? right : left;
    auto emit = [&](std::vector<Id> h, const std::vector<Id>& l, const std::variant<Vanish, Split>& special) {
        std::sort(h.begin(), h.end());
        do {
            FiberTransition t;
            for (std::size_t i = 0; i < h.size(); ++i)
                t.bijection.emplace_back(left_high ? h[i] : l[i], left_high ? l[i] : h[i]);
            std::sort(t.bijection.begin(), t.bijection.end());
            t.special = special;
            out.push_back(std::move(t));
        } while (std::next_permutation(h.begin(), h.end()));
    };
    if (type == FoldType::Definite) {
        for (const auto& v : high) {
            std::vector<Id> h;
            for (const auto& c : high)
                if (c != v) h.push_back(c);
            emit(h, low, Vanish{v});
        }
        return out;
    }
    for (const auto& c : low)
        for (std::size_t i = 0; i < high.size(); ++i)
            for (std::size_t j = i + 1; j < high.size(); ++j) {
                std::vector<Id> h, l;
                for (std::size_t t = 0; t < high.size(); ++t)
                    if (t != i && t != j) h.push_back(high[t]);
                for (const auto& x : low)
                    if (x != c) l.push_back(x);
                emit(h, l, Split{c, std::min(high[i], high[j]), std::max(high[i], high[j])});
            }
    return out;
}

void propagate_orientations(SingularDiagram& d) {
    for (const auto& comp : strand_components(d)) {
        std::set<int> eps;
        for (const auto& h : comp.arcs) {
            const auto& o = d.arc(h.arc).orientation;
            if (o) eps.insert(*o * h.dir);
        }
        if (eps.empty()) continue;
        for (const auto& h : comp.arcs) {
            auto& a = d.arc(h.arc);
            if (eps.size() == 1)
                a.orientation = *eps.begin() * h.dir;
            else
                a.orientation.reset();
        }
    }
}

void shade_vanishing(SingularDiagram& d, const Id& region) {
    std::vector<Id> add;
    for (const auto& [id, a] : d.arcs) {
        if (a.type != FoldType::Definite || (a.left != region && a.right != region)) continue;
        if (high_side(d, a) != std::optional<Id>(region)) continue;
        if (const auto* v = std::get_if<Vanish>(&a.transition.special)) add.push_back(v->circle);
    }
    auto& r = d.region(region);
    for (const auto& c : add)
        if (std::find(r.shaded.begin(), r.shaded.end(), c) == r.shaded.end()) r.shaded.push_back(c);
}

}  // namespace contour::detail

namespace contour::detail {

Change view(const SingularDiagram& d, const FoldArc& a, const Id& from) {
    Change c;
    c.type = a.type;
    const Id to = other_side(a, from);
    for (const auto& [l, r] : a.transition.bijection) {
        if (from == a.left)
            c.bij[l] = r;
        else
            c.bij[r] = l;
    }
    c.from_special = special_on(d, a, from);
    c.to_special = special_on(d, a, to);
    c.from_high = high_side(d, a) == std::optional<Id>(from);
    return c;
}

FiberTransition to_transition(const Change& c, bool from_is_left) {
    FiberTransition t;
    for (const auto& [f, to] : c.bij) t.bijection.emplace_back(from_is_left ? f : to, from_is_left ? to : f);
    const auto& high = c.from_high ? c.from_special : c.to_special;
    const auto& low = c.from_high ? c.to_special : c.from_special;
    if (c.type == FoldType::Definite) {
        if (high.size() != 1 || !low.empty()) throw WouldViolateInvariant("definite change needs one vanishing circle");
        t.special = Vanish{high[0]};
    } else {
        if (high.size() != 2 || low.size() != 1) throw WouldViolateInvariant("indefinite change needs a 1-to-2 split");
        t.special = Split{low[0], std::min(high[0], high[1]), std::max(high[0], high[1])};
    }
    std::sort(t.bijection.begin(), t.bijection.end());
    return t;
}

Square make_square(const std::vector<Id>& x, const Change& a, const Change& b) {
    auto in = [](const std::vector<Id>& v, const Id& c) { return std::find(v.begin(), v.end(), c) != v.end(); };
    for (const auto& c : a.from_special)
        if (in(b.from_special, c)) throw PatternMismatch("the two fold changes share circle '" + c + "'");
    Square sq;
    std::set<Id> used;
    for (const auto& c : x)
        if (!in(a.from_special, c) && !in(b.from_special, c)) {
            sq.w.push_back(c);
            used.insert(c);
        }
    auto fresh = [&](const Id& want) {
        Id id = want;
        for (std::size_t n = 1; used.count(id); ++n) id = "c" + std::to_string(n);
        used.insert(id);
        return id;
    };
    std::map<Id, Id> za, zb;
    for (const auto& s : a.to_special) sq.w.push_back(za[s] = fresh(s));
    for (const auto& s : b.to_special) sq.w.push_back(zb[s] = fresh(s));

    auto parallel = [&](const Change& c, const Change& other, const std::map<Id, Id>& zc, const std::map<Id, Id>& zo) {
        Change p;
        p.type = c.type;
        p.from_high = c.from_high;
        for (const auto& [xc, img] : c.bij)
            if (!in(other.from_special, xc)) p.bij[other.bij.at(xc)] = xc;
        for (const auto& s : other.to_special) p.bij[s] = zo.at(s);
        for (const auto& xc : c.from_special) {
            auto it = other.bij.find(xc);
            if (it == other.bij.end()) throw PatternMismatch("circle '" + xc + "' is not carried across the other fold");
            p.from_special.push_back(it->second);
        }
        for (const auto& s : c.to_special) p.to_special.push_back(zc.at(s));
        return p;
    };
    sq.a_par = parallel(a, b, za, zb);
    sq.b_par = parallel(b, a, zb, za);
    return sq;
}

}  // namespace contour::detail
