#include <algorithm>

#include "contour/diagram_io.hpp"
#include "moves_local.hpp"

namespace contour {

namespace {

using Rewrite = std::string (*)(SingularDiagram&, const MoveSite&);

Rewrite rewrite_for(MoveKind k) {
    switch (k) {
        case MoveKind::LipsCreate: return detail::lips_create;
        case MoveKind::LipsRemove: return detail::lips_remove;
        case MoveKind::BeaksMerge: return detail::beaks_merge;
        case MoveKind::BeaksSplit: return detail::beaks_split;
        case MoveKind::SwallowtailCreate: return detail::swallowtail_create;
        case MoveKind::SwallowtailRemove: return detail::swallowtail_remove;
        case MoveKind::CuspFoldCross: return detail::cusp_fold_cross;
        case MoveKind::FoldTangency: return detail::fold_tangency;
        case MoveKind::TripleFold: return detail::triple_fold;
    }
    throw PatternMismatch("unknown move kind");
}

// removal moves may leave the variant to be read off the diagram
bool variant_optional(MoveKind k) { return k == MoveKind::SwallowtailRemove || k == MoveKind::LipsRemove; }

bool is_site(const SingularDiagram& d, const MoveSite& s) {
    try {
        (void)apply(d, s);
        return true;
    } catch (const PatternMismatch&) {
        return false;
    } catch (const WouldViolateInvariant&) {
        // a structural match that breaks an invariant is still reported as a site
        return true;
    } catch (const std::out_of_range&) {
        return false;
    }
}

std::vector<Id> non_outer_regions(const SingularDiagram& d) {
    std::vector<Id> out;
    for (const auto& [id, r] : d.regions)
        if (!r.outer) out.push_back(id);
    return out;
}

std::vector<MoveSite> candidates(const SingularDiagram& d, MoveKind kind) {
    std::vector<MoveSite> out;
    auto add = [&](std::vector<Id> anchors, const std::string& variant) {
        out.push_back(MoveSite{kind, std::move(anchors), variant});
    };
    switch (kind) {
        case MoveKind::LipsCreate:
            for (const auto& r : non_outer_regions(d))
                for (const auto& c : d.region(r).circles) add({r, c}, "lips");
            break;
        case MoveKind::LipsRemove:
            for (const auto& r : non_outer_regions(d)) add({r}, "lips");
            break;
        case MoveKind::BeaksMerge:
            for (const auto& [di, da] : d.arcs) {
                if (da.type != FoldType::Definite) continue;
                for (const auto& [ii, ia] : d.arcs) {
                    if (ia.type != FoldType::Indefinite) continue;
                    for (const Id& m : {da.left, da.right}) {
                        if (ia.left != m && ia.right != m) continue;
                        if (high_side(d, da) != std::optional<Id>(m) || high_side(d, ia) != std::optional<Id>(m))
                            continue;
                        add({di, ii, m}, "III^a(b)");
                        add({di, ii, m}, "III^a(b)-incoherent");
                    }
                }
            }
            break;
        case MoveKind::BeaksSplit:
            for (auto a = d.cusps.begin(); a != d.cusps.end(); ++a)
                for (auto b = std::next(a); b != d.cusps.end(); ++b) {
                    add({a->first, b->first}, "III^a(b)");
                    add({a->first, b->first}, "III^a(b)-incoherent");
                }
            break;
        case MoveKind::SwallowtailCreate:
            for (const auto& [id, a] : d.arcs) {
                if (a.type == FoldType::Definite) {
                    add({id}, "III^b");
                } else {
                    add({id}, "III^c");
                    add({id}, "III^d");
                }
            }
            break;
        case MoveKind::SwallowtailRemove:
            for (const auto& r : non_outer_regions(d)) {
                MoveSite probe{kind, {r}, ""};
                try {
                    SingularDiagram copy = d;
                    add({r}, detail::swallowtail_remove(copy, probe));
                } catch (const Error&) {
                } catch (const std::out_of_range&) {
                }
            }
            break;
        case MoveKind::CuspFoldCross:
            for (const auto& [k, c] : d.cusps)
                for (const auto& [f, a] : d.arcs)
                    for (const auto& v : detail::cusp_fold_variants(d, k, f)) add({k, f}, v);
            break;
        case MoveKind::FoldTangency:
            for (auto a = d.arcs.begin(); a != d.arcs.end(); ++a)
                for (auto b = std::next(a); b != d.arcs.end(); ++b)
                    for (const Id& m : {a->second.left, a->second.right}) {
                        if (b->second.left != m && b->second.right != m) continue;
                        if (a->second.left == a->second.right || b->second.left == b->second.right) continue;
                        // both orders give mirror-image bigons
                        add({a->first, b->first, m}, "fold-tangency");
                        add({b->first, a->first, m}, "fold-tangency");
                    }
            break;
        case MoveKind::TripleFold:
            for (const auto& r : non_outer_regions(d)) add({r}, "triple-fold");
            break;
    }
    return out;
}

}  // namespace

SingularDiagram apply(const SingularDiagram& d, const MoveSite& site) {
    if (!(site.variant.empty() && variant_optional(site.kind)) && !variant_allows(site.variant, site.kind))
        throw PatternMismatch("variant '" + site.variant + "' does not belong to " + to_string(site.kind));
    for (const auto& a : site.anchors)
        if (a.empty()) throw PatternMismatch("empty anchor");
    SingularDiagram out = d;
    try {
        rewrite_for(site.kind)(out, site);
    } catch (const std::out_of_range&) {
        throw PatternMismatch("anchor does not name an element of the right type");
    }
    normalize(out);
    detail::propagate_orientations(out);
    auto report = validate(out);
    if (!report.valid()) {
        std::string codes;
        for (const auto& i : report.issues) {
            if (codes.find(i.code) != std::string::npos) continue;
            codes += (codes.empty() ? "" : ", ") + i.code;
        }
        throw WouldViolateInvariant(to_string(site.kind) + " would produce an invalid diagram (" + codes + ")");
    }
    return out;
}

SingularDiagram apply_script(const SingularDiagram& d, const MoveScript& script) {
    SingularDiagram cur = d;
    for (std::size_t i = 0; i < script.size(); ++i) {
        try {
            cur = apply(cur, script[i]);
        } catch (const Error& e) {
            throw ScriptError(i, e.what());
        }
    }
    return cur;
}

std::vector<MoveSite> enumerate_sites(const SingularDiagram& d, MoveKind kind) {
    std::vector<MoveSite> out;
    for (auto& s : candidates(d, kind))
        if (is_site(d, s)) out.push_back(std::move(s));
    return out;
}

std::vector<MoveSite> enumerate_all_sites(const SingularDiagram& d) {
    std::vector<MoveSite> out;
    for (MoveKind k : kAllMoveKinds) {
        auto sites = enumerate_sites(d, k);
        out.insert(out.end(), sites.begin(), sites.end());
    }
    return out;
}

}  // namespace contour
