// Lips and beaks: the two moves that create or destroy a pair of cusps
// without crossings.

#include <algorithm>

#include "moves_local.hpp"

namespace contour::detail {

namespace {

bool has(const std::vector<Id>& v, const Id& x) { return std::find(v.begin(), v.end(), x) != v.end(); }

void need(bool ok, const std::string& what) {
    if (!ok) throw PatternMismatch(what);
}

const Id& anchor(const MoveSite& s, std::size_t i) {
    need(s.anchors.size() > i, to_string(s.kind) + " needs at least " + std::to_string(i + 1) + " anchors");
    return s.anchors[i];
}

const std::string kCoherent = "III^a(b)";
const std::string kIncoherent = "III^a(b)-incoherent";

void check_beaks_label(const std::string& variant, bool coherent_ok, bool incoherent_ok) {
    if (variant == kCoherent) need(coherent_ok, "beaks site is not coherent");
    else if (variant == kIncoherent) need(incoherent_ok, "beaks site is coherent");
    else throw PatternMismatch("variant '" + variant + "' is not a beaks variant");
}

// Transition of `a` with circles on `side` renamed.
FiberTransition renamed(const SingularDiagram& d, const FoldArc& a, const Id& side, const std::map<Id, Id>& rename) {
    auto r = [&](const Id& c) {
        auto it = rename.find(c);
        return it == rename.end() ? c : it->second;
    };
    FiberTransition t = a.transition;
    const bool left = a.left == side;
    for (auto& [l, rr] : t.bijection) (left ? l : rr) = r(left ? l : rr);
    const bool high = high_side(d, a) == std::optional<Id>(side);
    if (auto* v = std::get_if<Vanish>(&t.special)) {
        if (high) v->circle = r(v->circle);
    } else {
        auto& s = std::get<Split>(t.special);
        if (high) {
            s.high_a = r(s.high_a);
            s.high_b = r(s.high_b);
            if (s.high_b < s.high_a) std::swap(s.high_a, s.high_b);
        } else {
            s.low = r(s.low);
        }
    }
    std::sort(t.bijection.begin(), t.bijection.end());
    return t;
}

FiberTransition sorted(FiberTransition t) {
    std::sort(t.bijection.begin(), t.bijection.end());
    if (auto* s = std::get_if<Split>(&t.special))
        if (s->high_b < s->high_a) std::swap(s->high_a, s->high_b);
    return t;
}

}  // namespace

std::string lips_create(SingularDiagram& d, const MoveSite& s) {
    const Id host = anchor(s, 0);
    const Id pinched = anchor(s, 1);
    const Region r = d.region(host);
    need(!r.outer, "lips cannot be created in the outer region");
    need(has(r.circles, pinched), "circle '" + pinched + "' is not in region '" + host + "'");

    const Id lens = d.fresh_id("R");
    const Id born = d.fresh_circle(host, "c");
    Region w{lens, r.circles, false, {}};
    w.circles.push_back(born);
    d.regions[lens] = w;

    const Id def = d.fresh_id("a");
    d.arcs[def] = FoldArc{def, FoldType::Definite, lens, host, {identity_pairs(r.circles), Vanish{born}}, std::nullopt};
    const Id ind = d.fresh_id("a");
    d.arcs[ind] = FoldArc{ind, FoldType::Indefinite, lens, host,
                          {identity_pairs(r.circles, {pinched}), Split{pinched, pinched, born}}, std::nullopt};
    const Id k1 = d.fresh_id("k");
    d.cusps[k1] = CuspVertex{k1, {ArcEnd{def, End::Tail}, ArcEnd{ind, End::Head}}};
    const Id k2 = d.fresh_id("k");
    d.cusps[k2] = CuspVertex{k2, {ArcEnd{def, End::Head}, ArcEnd{ind, End::Tail}}};
    shade_vanishing(d, lens);
    return "lips";
}

std::string lips_remove(SingularDiagram& d, const MoveSite& s) {
    const Id lens = anchor(s, 0);
    need(!d.region(lens).outer, "the outer region is not a lens");
    std::vector<Id> sides;
    for (const auto& [id, a] : d.arcs)
        if (a.left == lens || a.right == lens) sides.push_back(id);
    need(sides.size() == 2, "a lens is bounded by exactly two arcs");
    const FoldArc& a = d.arc(sides[0]);
    const FoldArc& b = d.arc(sides[1]);
    need(a.type != b.type, "a lens has one definite and one indefinite side");
    const Id host = other_side(a, lens);
    need(other_side(b, lens) == host, "both lens sides must face the same region");
    need(d.count(lens) == d.count(host) + 1, "the lens must be the high side");
    std::vector<Id> corners;
    for (const auto& [id, c] : d.cusps) {
        bool ja = c.ends[0].arc == a.id || c.ends[1].arc == a.id;
        bool jb = c.ends[0].arc == b.id || c.ends[1].arc == b.id;
        if (ja && jb) corners.push_back(id);
    }
    need(corners.size() == 2, "a lens has two cusps joining its sides");
    for (const auto& e : {ArcEnd{a.id, End::Tail}, ArcEnd{a.id, End::Head}, ArcEnd{b.id, End::Tail},
                          ArcEnd{b.id, End::Head}}) {
        auto at = d.attachment(e);
        need(at && at->is_cusp && (at->vertex == corners[0] || at->vertex == corners[1]),
             "lens sides must end at the lens cusps");
    }
    for (const auto& k : corners) d.cusps.erase(k);
    d.arcs.erase(sides[0]);
    d.arcs.erase(sides[1]);
    d.regions.erase(lens);
    return "lips";
}

std::string beaks_merge(SingularDiagram& d, const MoveSite& s) {
    const Id def = anchor(s, 0);
    const Id ind = anchor(s, 1);
    const Id mid = anchor(s, 2);
    need(d.arc(def).type == FoldType::Definite, "first beaks anchor must be a definite arc");
    need(d.arc(ind).type == FoldType::Indefinite, "second beaks anchor must be an indefinite arc");
    {
        const auto& D = d.arc(def);
        const auto& I = d.arc(ind);
        need(D.left == mid || D.right == mid, "definite arc does not bound '" + mid + "'");
        need(I.left == mid || I.right == mid, "indefinite arc does not bound '" + mid + "'");
    }
    if (d.arc(def).right != mid) reverse_arc(d, def);
    if (d.arc(ind).left != mid) reverse_arc(d, ind);
    const FoldArc D = d.arc(def);
    const FoldArc I = d.arc(ind);
    const Id top = D.left;
    const Id bottom = I.right;
    need(d.count(mid) == d.count(top) + 1 && d.count(mid) == d.count(bottom) + 1,
         "the region between beaks arcs must be their common high side");
    const Id v = std::get<Vanish>(D.transition.special).circle;
    const Split sp = std::get<Split>(I.transition.special);
    need(v == sp.high_a || v == sp.high_b, "the vanishing circle must be one of the split pair");
    const Id other_high = v == sp.high_a ? sp.high_b : sp.high_a;

    // identify bottom circles with top circles through the strip
    std::map<Id, Id> iota;
    for (const auto& x : d.region(bottom).circles) {
        std::optional<Id> m = x == sp.low ? std::optional<Id>(other_high) : bijected(I, bottom, x);
        need(m.has_value(), "indefinite arc does not cover '" + x + "'");
        auto t = bijected(D, mid, *m);
        need(t.has_value(), "definite arc does not cover '" + *m + "'");
        iota[x] = *t;
    }
    if (top == bottom)
        for (const auto& [x, t] : iota) need(x == t, "beaks across one region must not permute its circles");

    // coherence: the facing arcs (now parallel as stored) must be anti-parallel
    bool coherent_ok = true, incoherent_ok = true;
    if (D.orientation && I.orientation) {
        coherent_ok = *D.orientation == -*I.orientation;
        incoherent_ok = !coherent_ok;
    } else {
        auto memb = strand_membership(d);
        auto [cd, dd] = memb.at(def);
        auto [ci, di] = memb.at(ind);
        if (cd == ci) {
            coherent_ok = dd == -di;
            incoherent_ok = !coherent_ok;
        }
    }
    check_beaks_label(s.variant, coherent_ok, incoherent_ok);

    auto sd = split_arc(d, def, 1);
    auto si = split_arc(d, ind, 1);
    const Id d1 = sd.pieces.front(), d2 = sd.pieces.back();
    const Id kl = d.fresh_id("k");
    d.cusps[kl] = CuspVertex{kl, {sd.joints[0].first, si.joints[0].first}};
    const Id kr = d.fresh_id("k");
    d.cusps[kr] = CuspVertex{kr, {sd.joints[0].second, si.joints[0].second}};

    if (top != bottom) merge_regions(d, top, bottom, iota);

    const HalfEdge h1{d1, -1}, h2{d2, -1};
    auto cyc = face_cycle(d, h1);
    if (std::find(cyc.begin(), cyc.end(), h2) == cyc.end()) {
        const Id twin = d.fresh_id("R");
        Region r = d.region(mid);
        r.id = twin;
        r.outer = false;
        d.regions[twin] = r;
        relabel_cycle(d, h2, mid, twin);
        shade_vanishing(d, twin);
    }
    shade_vanishing(d, mid);
    return s.variant;
}

namespace {

struct BeaksPair {
    Id dl, il, dr, ir;  // arcs at the two cusps
    Id neck, wl, wr;    // outside region, wedges
};

std::optional<BeaksPair> normalize_pair(SingularDiagram& d, const Id& kl, const Id& kr) {
    auto arcs_at = [&](const Id& k) {
        const auto& c = d.cusps.at(k);
        ArcEnd e0 = c.ends[0], e1 = c.ends[1];
        if (d.arc(e0.arc).type != FoldType::Definite) std::swap(e0, e1);
        return std::pair{e0, e1};
    };
    auto [del, iel] = arcs_at(kl);
    auto [der, ier] = arcs_at(kr);
    if (del.end != End::Head) reverse_arc(d, del.arc);
    if (iel.end != End::Head) reverse_arc(d, iel.arc);
    // re-read after reversal (shared arcs may have flipped)
    auto [del2, iel2] = arcs_at(kl);
    auto [der2, ier2] = arcs_at(kr);
    if (del2.end != End::Head || iel2.end != End::Head) return std::nullopt;
    if (der2.end != End::Tail) reverse_arc(d, der2.arc);
    if (ier2.end != End::Tail) reverse_arc(d, ier2.arc);
    auto [del3, iel3] = arcs_at(kl);
    auto [der3, ier3] = arcs_at(kr);
    if (del3.end != End::Head || iel3.end != End::Head || der3.end != End::Tail || ier3.end != End::Tail)
        return std::nullopt;
    BeaksPair p{del3.arc, iel3.arc, der3.arc, ier3.arc, d.arc(del3.arc).left, d.arc(del3.arc).right,
                d.arc(der3.arc).right};
    const auto &IL = d.arc(p.il), &DR = d.arc(p.dr), &IR = d.arc(p.ir);
    if (DR.left != p.neck || IL.left != p.wl || IL.right != p.neck || IR.left != p.wr || IR.right != p.neck)
        return std::nullopt;
    if (d.count(p.wl) != d.count(p.neck) + 1 || d.count(p.wr) != d.count(p.neck) + 1) return std::nullopt;
    return p;
}

}  // namespace

std::string beaks_split(SingularDiagram& d, const MoveSite& s) {
    const Id ka = anchor(s, 0);
    const Id kb = anchor(s, 1);
    need(ka != kb, "beaks split needs two distinct cusps");
    need(d.cusps.count(ka) && d.cusps.count(kb), "beaks split anchors must be cusps");
    std::optional<BeaksPair> pair;
    Id kl = ka, kr = kb;
    {
        SingularDiagram trial = d;
        pair = normalize_pair(trial, ka, kb);
        if (pair) d = std::move(trial);
    }
    if (!pair) {
        SingularDiagram trial = d;
        pair = normalize_pair(trial, kb, ka);
        need(pair.has_value(), "cusps do not form a facing beaks pair");
        d = std::move(trial);
        std::swap(kl, kr);
    }
    const BeaksPair p = *pair;
    const FoldArc DL = d.arc(p.dl), IL = d.arc(p.il), DR = d.arc(p.dr), IR = d.arc(p.ir);

    std::map<Id, Id> iota;  // right wedge -> left wedge
    const Id vr = std::get<Vanish>(DR.transition.special).circle;
    const Id vl = std::get<Vanish>(DL.transition.special).circle;
    for (const auto& x : d.region(p.wr).circles) {
        if (x == vr) {
            iota[x] = vl;
            continue;
        }
        auto n = bijected(DR, p.wr, x);
        need(n.has_value(), "definite arc does not cover '" + x + "'");
        auto m = bijected(DL, p.neck, *n);
        need(m.has_value(), "definite arc does not cover '" + *n + "'");
        iota[x] = *m;
    }
    if (p.wl == p.wr)
        for (const auto& [x, y] : iota) need(x == y, "wedge circles must match across the band");
    if (p.dl != p.dr)
        need(renamed(d, DR, p.wr, iota) == sorted(DL.transition), "definite halves carry different fibre data");
    if (p.il != p.ir)
        need(renamed(d, IR, p.wr, iota) == sorted(IL.transition), "indefinite halves carry different fibre data");

    bool coherent_ok = true, incoherent_ok = true;
    if (DL.orientation && DR.orientation) {
        coherent_ok = *DL.orientation == *DR.orientation;
        incoherent_ok = !coherent_ok;
    } else {
        auto memb = strand_membership(d);
        auto [cl, dl] = memb.at(p.dl);
        auto [cr, dr] = memb.at(p.dr);
        if (cl == cr) {
            coherent_ok = dl == dr;
            incoherent_ok = !coherent_ok;
        }
    }
    check_beaks_label(s.variant, coherent_ok, incoherent_ok);

    auto cyc = face_cycle(d, HalfEdge{p.dl, 1});
    const bool neck_splits = std::find(cyc.begin(), cyc.end(), HalfEdge{p.dr, 1}) != cyc.end();

    d.cusps.erase(kl);
    d.cusps.erase(kr);
    if (p.wl != p.wr) merge_regions(d, p.wl, p.wr, iota);
    glue_arcs(d, p.dl, p.dr);
    glue_arcs(d, p.il, p.ir);

    if (neck_splits) {
        const HalfEdge top{p.dl, 1}, bottom{p.il, -1};
        auto c = face_cycle(d, top);
        if (std::find(c.begin(), c.end(), bottom) != c.end())
            throw WouldViolateInvariant("beaks split left the neck connected");
        const Id lower = d.fresh_id("R");
        Region r = d.region(p.neck);
        r.id = lower;
        r.outer = false;
        d.regions[lower] = r;
        relabel_cycle(d, bottom, p.neck, lower);
    }
    return s.variant;
}

}  // namespace contour::detail
