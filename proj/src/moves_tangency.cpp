// Fold tangency (a bigon between two folds) and triple fold (inverting a
// triangle of three crossing folds).

#include <algorithm>

#include "moves_local.hpp"

namespace contour::detail {

namespace {

void need(bool ok, const std::string& what) {
    if (!ok) throw PatternMismatch(what);
}

ArcEnd leaving_end(const HalfEdge& h) { return {h.arc, h.dir > 0 ? End::Tail : End::Head}; }
ArcEnd arriving_end(const HalfEdge& h) { return {h.arc, h.dir > 0 ? End::Head : End::Tail}; }
HalfEdge arrival_along(const ArcEnd& e) { return {e.arc, e.end == End::Head ? 1 : -1}; }

}  // namespace

std::string fold_tangency(SingularDiagram& d, const MoveSite& s) {
    need(s.anchors.size() >= 3, "FoldTangency needs two arcs and a region");
    const Id a1 = s.anchors[0], a2 = s.anchors[1], m = s.anchors[2];
    need(a1 != a2, "fold tangency needs two distinct arcs");
    for (const Id& id : {a1, a2}) {
        const auto& a = d.arc(id);
        need(a.left == m || a.right == m, "arc '" + id + "' does not bound '" + m + "'");
    }
    if (d.arc(a1).right != m) reverse_arc(d, a1);
    if (d.arc(a2).left != m) reverse_arc(d, a2);
    const Id s1 = d.arc(a1).left, s2 = d.arc(a2).right;
    const Change c1 = view(d, d.arc(a1), m);
    const Change c2 = view(d, d.arc(a2), m);
    const Square sq = make_square(d.region(m).circles, c1, c2);

    const Id z = d.fresh_id("R");
    d.regions[z] = Region{z, sq.w, false, {}};
    auto p1 = split_arc(d, a1, 2);
    auto p2 = split_arc(d, a2, 2);
    const Id a1b = p1.pieces[1], a2b = p2.pieces[1];
    const Id y1 = d.fresh_id("x");
    d.crossings[y1] = CrossingVertex{y1, {p2.joints[0].second, p1.joints[0].first, p2.joints[0].first, p1.joints[0].second}, false};
    const Id y2 = d.fresh_id("x");
    d.crossings[y2] = CrossingVertex{y2, {p2.joints[1].second, p1.joints[1].second, p2.joints[1].first, p1.joints[1].first}, false};
    {
        auto& b = d.arc(a1b);
        b.left = z;
        b.right = s2;
        b.transition = to_transition(sq.a_par, false);
    }
    {
        auto& b = d.arc(a2b);
        b.left = s1;
        b.right = z;
        b.transition = to_transition(sq.b_par, true);
    }
    // a closed loop keeps one outer piece on both sides of the bigon
    const Id a1c = p1.pieces.size() == 3 ? p1.pieces[2] : p1.pieces[0];
    split_region_if_cut(d, m, HalfEdge{p1.pieces.front(), -1}, HalfEdge{a1c, -1});
    shade_vanishing(d, z);
    return "fold-tangency";
}


std::string triple_fold(SingularDiagram& d, const MoveSite& s) {
    need(!s.anchors.empty(), "TripleFold needs a triangle region");
    const Id tri = s.anchors[0];
    need(!d.region(tri).outer, "the outer region is not a triangle");
    std::vector<HalfEdge> cycle;
    for (const auto& [id, a] : d.arcs) {
        if (a.left == tri) cycle = face_cycle(d, {id, 1});
        if (a.right == tri) cycle = face_cycle(d, {id, -1});
        if (!cycle.empty()) break;
    }
    need(cycle.size() == 3, "triangle must have three sides");
    std::size_t sides = 0;
    for (const auto& [id, a] : d.arcs) sides += (a.left == tri) + (a.right == tri);
    need(sides == 3, "triangle must be bounded by a single cycle");
    need(cycle[0].arc != cycle[1].arc && cycle[1].arc != cycle[2].arc && cycle[0].arc != cycle[2].arc,
         "triangle sides must be distinct arcs");
    const HalfEdge ha = cycle[0], hb = cycle[1], hc = cycle[2];
    auto vertex = [&](const ArcEnd& e) {
        auto at = d.attachment(e);
        need(at && !at->is_cusp, "triangle corners must be crossings");
        return at->vertex;
    };
    // arms, named by strand (1 along ha, 3 along hb, 2 against hc) and direction
    const ArcEnd l1f_12 = leaving_end(ha), l2f_12 = arriving_end(hc);
    const ArcEnd l1b_13 = arriving_end(ha), l3f_13 = leaving_end(hb);
    const ArcEnd l3b_23 = arriving_end(hb), l2b_23 = leaving_end(hc);
    const Id v12 = vertex(l1f_12), v13 = vertex(l1b_13), v23 = vertex(l3b_23);
    need(v12 != v13 && v13 != v23 && v12 != v23, "triangle corners must be distinct");
    const ArcEnd l1b_12 = *d.through(l1f_12), l2b_12 = *d.through(l2f_12);
    const ArcEnd l1f_13 = *d.through(l1b_13), l3b_13 = *d.through(l3f_13);
    const ArcEnd l3f_23 = *d.through(l3b_23), l2f_23 = *d.through(l2b_23);
    auto ring_is = [&](const Id& v, std::array<ArcEnd, 4> want) {
        auto ring = d.crossings.at(v).ends;
        for (int r = 0; r < 4; ++r) {
            if (ring == want) return true;
            std::rotate(ring.begin(), ring.begin() + 1, ring.end());
        }
        return false;
    };
    need(ring_is(v12, {l1f_12, l2f_12, l1b_12, l2b_12}) && ring_is(v13, {l1f_13, l3f_13, l1b_13, l3b_13}) &&
             ring_is(v23, {l2f_23, l3f_23, l2b_23, l3b_23}),
         "triangle corners are not in general position");

    auto left_arr = [&](const ArcEnd& e) { return d.left_of(arrival_along(e)); };
    const Id r_ppp = left_arr(l1b_12), r_mpp = left_arr(l2b_12), r_mmm = left_arr(l1f_13);
    const Id r_ppm = left_arr(l3f_23);
    // the two folds leaving r_ppp: strand 1 (outer piece before v12) and strand 3 (outer piece after v23)
    const Change c1 = view(d, d.arc(l1b_12.arc), r_ppp);
    const Change c3 = view(d, d.arc(l3f_23.arc), r_ppp);
    need(other_side(d.arc(l1b_12.arc), r_ppp) == r_mpp && other_side(d.arc(l3f_23.arc), r_ppp) == r_ppm,
         "triangle neighbourhood is inconsistent");
    const Square sq = make_square(d.region(r_ppp).circles, c1, c3);

    const Id m1 = ha.arc, m2 = hc.arc, m3 = hb.arc;
    const FoldType t1 = d.arc(m1).type, t2 = d.arc(m2).type, t3 = d.arc(m3).type;
    const Id flipped = d.fresh_id("R");
    d.regions[flipped] = Region{flipped, sq.w, false, {}};
    for (const Id& id : {m1, m2, m3}) d.arcs.erase(id);
    d.regions.erase(tri);
    d.arcs[m1] = FoldArc{m1, t1, r_ppm, flipped, to_transition(sq.a_par, true), std::nullopt};
    d.arcs[m3] = FoldArc{m3, t3, r_mpp, flipped, to_transition(sq.b_par, true), std::nullopt};
    d.arcs[m2] = FoldArc{m2, t2, flipped, r_mmm, {}, std::nullopt};
    d.crossings.at(v12).ends = {l1f_13, l2f_23, ArcEnd{m1, End::Head}, ArcEnd{m2, End::Head}};
    d.crossings.at(v13).ends = {ArcEnd{m1, End::Tail}, l3f_23, l1b_12, ArcEnd{m3, End::Head}};
    d.crossings.at(v23).ends = {ArcEnd{m2, End::Tail}, ArcEnd{m3, End::Tail}, l2b_12, l3b_13};

    // the third side is fixed by coherence at its two crossings
    std::size_t tried = 0;
    bool found = false;
    for (const auto& t : transition_options(sq.w, d.region(r_mmm).circles, t2)) {
        if (++tried > 200000) throw PatternMismatch("triple fold search exceeded its budget");
        d.arc(m2).transition = t;
        if ((found = validate(d).valid())) break;
    }
    if (!found) throw WouldViolateInvariant("no coherent fibre data for the inverted triangle");
    shade_vanishing(d, flipped);
    return "triple-fold";
}

}  // namespace contour::detail
