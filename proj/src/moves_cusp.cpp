// A cusp tip pushed across a fold arc: two new crossings and a tip region.

#include <algorithm>

#include "moves_local.hpp"

namespace contour::detail {

namespace {

void need(bool ok, const std::string& what) {
    if (!ok) throw PatternMismatch(what);
}

struct CuspCross {
    std::string key;
    Id wedge, outside, beyond;
    Id pinched;         // circle of the outside region that the cusp pinches
    Id pinched_beyond;  // its partner beyond the fold
};

CuspCross classify(const SingularDiagram& d, const Id& k, const Id& f) {
    need(d.cusps.count(k) > 0, "'" + k + "' is not a cusp");
    const auto& c = d.cusps.at(k);
    Id cd = c.ends[0].arc, ci = c.ends[1].arc;
    if (d.arc(cd).type != FoldType::Definite) std::swap(cd, ci);
    need(f != cd && f != ci, "the crossed fold must not be one of the cusp's own arcs");
    const auto& D = d.arc(cd);
    const auto& I = d.arc(ci);
    const auto& F = d.arc(f);
    CuspCross cc;
    auto hi = high_side(d, D);
    need(hi.has_value(), "cusp arc has equal counts");
    cc.wedge = *hi;
    cc.outside = other_side(D, cc.wedge);
    need(F.left == cc.outside || F.right == cc.outside, "fold does not bound the region outside the cusp");
    cc.beyond = other_side(F, cc.outside);
    cc.pinched = std::get<Split>(I.transition.special).low;

    const bool low = d.count(cc.outside) < d.count(cc.beyond);
    const bool definite = F.type == FoldType::Definite;
    auto rel = relation_across(d, f, cc.outside);
    std::vector<Id> images;
    for (const auto& [x, y] : rel)
        if (x == cc.pinched) images.push_back(y);
    need(!images.empty(), "the pinched circle vanishes on the fold; no tabulated variant");
    std::sort(images.begin(), images.end());
    cc.pinched_beyond = images.front();

    const auto from_o = special_on(d, F, cc.outside);
    const bool involved = std::find(from_o.begin(), from_o.end(), cc.pinched) != from_o.end();
    if (definite)
        cc.key = low ? "III_1^{0,a}" : "III_2^{0,a}";
    else if (!involved)
        cc.key = low ? "III_1^{1,a}" : "III_2^{1,a}";
    else
        cc.key = low ? "III_1^e" : "III_2^e";
    return cc;
}

}  // namespace

std::string cusp_fold_cross(SingularDiagram& d, const MoveSite& s) {
    need(s.anchors.size() >= 2, "CuspFoldCross needs a cusp and an arc");
    const Id k = s.anchors[0];
    const Id f = s.anchors[1];
    const CuspCross cc = classify(d, k, f);
    need(s.variant == cc.key, "site is a " + cc.key + " crossing, not " + s.variant);

    const auto& cusp = d.cusps.at(k);
    Id cdef = cusp.ends[0].arc;
    if (d.arc(cdef).type != FoldType::Definite) cdef = cusp.ends[1].arc;

    if (d.arc(f).right != cc.outside) reverse_arc(d, f);
    // c1 arrives at the cusp with the wedge on its right, c2 with the wedge on its left
    Id c1, c2;
    for (const auto& e : d.cusps.at(k).ends) {
        HalfEdge arrive{e.arc, e.end == End::Head ? 1 : -1};
        (d.right_of(arrive) == cc.wedge ? c1 : c2) = e.arc;
    }
    need(!c1.empty() && !c2.empty(), "cusp sides are inconsistent");
    const auto ends = d.cusps.at(k).ends;
    for (const auto& e : ends) {
        if (e.arc == c1 && e.end != End::Head) reverse_arc(d, c1);
        if (e.arc == c2 && e.end != End::Tail) reverse_arc(d, c2);
    }
    const Change o_to_wedge = view(d, d.arc(cdef), cc.outside);
    const Id n_wedge = o_to_wedge.to_special.at(0);
    const FoldArc F = d.arc(f);
    const Id beyond = cc.beyond;
    const auto beyond_circles = d.region(beyond).circles;

    const Id tip = d.fresh_id("R");
    const Id n_tip = d.fresh_circle(beyond, "c");
    Region t{tip, beyond_circles, false, {}};
    t.circles.push_back(n_tip);
    d.regions[tip] = t;

    auto s1 = split_arc(d, c1, 1);  // far piece keeps the id, near piece ends at the cusp
    auto s2 = split_arc(d, c2, 1);  // near piece keeps the id
    auto sf = split_arc(d, f, 2);
    const Id c1b = s1.pieces.back();
    const Id c2b = s2.pieces.front();
    const Id f2 = sf.pieces[1];

    const Id x1 = d.fresh_id("x");
    d.crossings[x1] = CrossingVertex{x1, {sf.joints[0].second, s1.joints[0].second, sf.joints[0].first, s1.joints[0].first}, false};
    const Id x2 = d.fresh_id("x");
    d.crossings[x2] = CrossingVertex{x2, {sf.joints[1].second, s2.joints[0].first, sf.joints[1].first, s2.joints[0].second}, false};

    // the near pieces now separate the beyond region from the tip
    const Id near_def = cdef == c1 ? c1b : c2b;
    const Id near_ind = cdef == c1 ? c2b : c1b;
    for (const Id& id : {c1b, c2b}) {
        auto& a = d.arc(id);
        a.left = beyond;
        a.right = tip;
    }
    d.arc(near_def).transition = {identity_pairs(beyond_circles), Vanish{n_tip}};
    d.arc(near_ind).transition = {identity_pairs(beyond_circles, {cc.pinched_beyond}),
                                  Split{cc.pinched_beyond, std::min(cc.pinched_beyond, n_tip),
                                        std::max(cc.pinched_beyond, n_tip)}};

    // middle piece of the fold: the fold's change conjugated into (tip | wedge)
    Change mid = view(d, F, beyond);
    Change conj;
    conj.type = mid.type;
    conj.from_high = mid.from_high;
    for (const auto& [b, o] : mid.bij) conj.bij[b] = o_to_wedge.bij.at(o);
    conj.bij[n_tip] = n_wedge;
    conj.from_special = mid.from_special;
    for (const auto& o : mid.to_special) conj.to_special.push_back(o_to_wedge.bij.at(o));
    auto& m = d.arc(f2);
    m.left = tip;
    m.right = cc.wedge;
    m.transition = to_transition(conj, true);

    // the cusp body now reaches across the fold and may cut the outside region
    split_region_if_cut(d, cc.outside, HalfEdge{s1.pieces.front(), 1}, HalfEdge{s2.pieces.back(), 1});
    shade_vanishing(d, tip);
    return cc.key;
}

std::vector<std::string> cusp_fold_variants(const SingularDiagram& d, const Id& k, const Id& f) {
    try {
        return {classify(d, k, f).key};
    } catch (const PatternMismatch&) {
        return {};
    }
}

}  // namespace contour::detail
