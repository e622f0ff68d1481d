// Swallowtail: a fold arc grows a triangle (two cusps and a self-crossing)
// protruding into its high side.

#include <algorithm>

#include "moves_local.hpp"

namespace contour::detail {

namespace {

void need(bool ok, const std::string& what) {
    if (!ok) throw PatternMismatch(what);
}

std::vector<std::pair<Id, Id>> with_pair(std::vector<std::pair<Id, Id>> v, const Id& l, const Id& r) {
    v.emplace_back(l, r);
    return v;
}

}  // namespace

std::string swallowtail_create(SingularDiagram& d, const MoveSite& s) {
    need(!s.anchors.empty(), "SwallowtailCreate needs an arc anchor");
    const Id A = s.anchors[0];
    const FoldType type = d.arc(A).type;
    if (type == FoldType::Definite)
        need(s.variant == "III^b", "a definite arc admits only the III^b swallowtail");
    else
        need(s.variant == "III^c" || s.variant == "III^d", "an indefinite arc admits III^c or III^d");
    auto near_opt = high_side(d, d.arc(A));
    need(near_opt.has_value(), "arc has equal counts on both sides");
    const Id near = *near_opt;
    if (d.arc(A).right != near) reverse_arc(d, A);
    const FoldArc a = d.arc(A);
    const auto circles = d.region(near).circles;

    const Id tri = d.fresh_id("R");
    const Id z = d.fresh_circle(near, "c");
    Region r{tri, circles, false, {}};
    r.circles.push_back(z);
    d.regions[tri] = r;

    const FoldType side_type = type;
    const FoldType mid_type = type == FoldType::Definite ? FoldType::Indefinite : FoldType::Definite;
    FiberTransition tq, ts, tb;
    if (type == FoldType::Definite) {
        const Id v = std::get<Vanish>(a.transition.special).circle;
        tq = {with_pair(identity_pairs(circles, {v}), v, z), Vanish{v}};
        ts = {identity_pairs(circles), Vanish{z}};
        tb = {identity_pairs(circles, {v}), Split{v, v, z}};
    } else {
        const auto sp = std::get<Split>(a.transition.special);
        const Id h1 = std::min(sp.high_a, sp.high_b), h2 = std::max(sp.high_a, sp.high_b);
        const Id hs = s.variant == "III^c" ? h1 : h2;
        tq = {identity_pairs(circles, {h1}), Split{h1, h1, z}};
        ts = {identity_pairs(circles, {hs}), Split{hs, hs, z}};
        tb = {identity_pairs(circles), Vanish{z}};
    }

    auto sa = split_arc(d, A, 1);
    const auto [p_head, t_tail] = sa.joints[0];
    const Id q = d.fresh_id("a");
    d.arcs[q] = FoldArc{q, side_type, near, tri, tq, std::nullopt};
    const Id b = d.fresh_id("a");
    d.arcs[b] = FoldArc{b, mid_type, near, tri, tb, std::nullopt};
    const Id sid = d.fresh_id("a");
    d.arcs[sid] = FoldArc{sid, side_type, near, tri, ts, std::nullopt};
    const Id k1 = d.fresh_id("k");
    d.cusps[k1] = CuspVertex{k1, {ArcEnd{q, End::Head}, ArcEnd{b, End::Tail}}};
    const Id k2 = d.fresh_id("k");
    d.cusps[k2] = CuspVertex{k2, {ArcEnd{b, End::Head}, ArcEnd{sid, End::Tail}}};
    const Id x = d.fresh_id("x");
    d.crossings[x] = CrossingVertex{x, {t_tail, p_head, ArcEnd{sid, End::Head}, ArcEnd{q, End::Tail}},
                                    s.variant == "III^d"};
    shade_vanishing(d, tri);
    return s.variant;
}

std::string swallowtail_remove(SingularDiagram& d, const MoveSite& s) {
    need(!s.anchors.empty(), "SwallowtailRemove needs a region anchor");
    const Id tri = s.anchors[0];
    need(!d.region(tri).outer, "the outer region is not a swallowtail triangle");
    std::vector<Id> sides;
    for (const auto& [id, a] : d.arcs)
        if (a.left == tri || a.right == tri) sides.push_back(id);
    need(sides.size() == 3, "a swallowtail triangle has three sides");

    auto vertex_of = [&](const Id& arc, End e) { return d.attachment({arc, e}); };
    Id b, q, sarc;
    for (const auto& id : sides) {
        auto t = vertex_of(id, End::Tail), h = vertex_of(id, End::Head);
        if (t && h && t->is_cusp && h->is_cusp && t->vertex != h->vertex) b = id;
    }
    need(!b.empty(), "no side joins two cusps");
    for (const auto& id : sides) {
        if (id == b) continue;
        auto t = vertex_of(id, End::Tail), h = vertex_of(id, End::Head);
        need(t && h && t->is_cusp != h->is_cusp, "triangle side must join a cusp to a crossing");
        (q.empty() ? q : sarc) = id;
    }
    auto x_end = [&](const Id& id) {
        return vertex_of(id, End::Tail)->is_cusp ? ArcEnd{id, End::Head} : ArcEnd{id, End::Tail};
    };
    const ArcEnd qx = x_end(q), sx = x_end(sarc);
    const auto qa = *vertex_of(qx.arc, qx.end), sa = *vertex_of(sx.arc, sx.end);
    need(qa.vertex == sa.vertex, "triangle sides must meet at one crossing");
    need((qa.slot - sa.slot + 4) % 4 != 2, "triangle sides must lie on different strands");
    for (const auto& id : {q, sarc}) {
        auto c = vertex_of(id, opposite(x_end(id).end));
        const auto& cusp = d.cusps.at(c->vertex);
        need(cusp.ends[0].arc == b || cusp.ends[1].arc == b, "triangle cusp must join the middle side");
    }
    const Id x = qa.vertex;
    const Id near = other_side(d.arc(b), tri);
    need(other_side(d.arc(q), tri) == near && other_side(d.arc(sarc), tri) == near,
         "triangle sides must all face one region");
    need(d.count(tri) == d.count(near) + 1, "triangle must be the high side of its sides");

    std::string variant;
    if (d.arc(b).type == FoldType::Indefinite) {
        variant = "III^b";
    } else {
        const auto& sq = std::get<Split>(d.arc(q).transition.special);
        const auto& ss = std::get<Split>(d.arc(sarc).transition.special);
        variant = sq.low == ss.low ? "III^c" : "III^d";
    }
    need(s.variant.empty() || s.variant == variant, "triangle is a " + variant + " swallowtail, not " + s.variant);

    ArcEnd pe = *d.through(qx), te = *d.through(sx);
    const Id p = pe.arc, t = te.arc;
    if (pe.end != End::Head) reverse_arc(d, p);
    te = *d.through(sx);
    if (te.end != End::Tail) reverse_arc(d, t);
    pe = *d.through(qx);
    te = *d.through(sx);
    need(pe.end == End::Head && te.end == End::Tail, "outer pieces cannot be oriented consistently");
    if (p != t) {
        const auto &P = d.arc(p), &T = d.arc(t);
        FiberTransition tp = P.transition, tt = T.transition;
        std::sort(tp.bijection.begin(), tp.bijection.end());
        std::sort(tt.bijection.begin(), tt.bijection.end());
        need(P.type == T.type && P.left == T.left && P.right == T.right && tp == tt,
             "outer pieces carry different fibre data");
    }
    const Id kq = vertex_of(q, opposite(qx.end))->vertex;
    const Id ks = vertex_of(sarc, opposite(sx.end))->vertex;
    d.crossings.erase(x);
    d.cusps.erase(kq);
    d.cusps.erase(ks);
    d.arcs.erase(q);
    d.arcs.erase(sarc);
    d.arcs.erase(b);
    d.regions.erase(tri);
    glue_arcs(d, p, t);
    return variant;
}

}  // namespace contour::detail
