#include "contour/lift.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "contour/canonical.hpp"
#include "contour/diagram_io.hpp"
#include "moves_local.hpp"

namespace contour {

namespace {

struct Layout {
    std::vector<StrandComponent> comps;
    std::map<Id, std::pair<std::size_t, int>> membership;
    std::vector<CircleTrack> tracks;
    std::map<CircleRef, std::size_t> index;
};

Layout layout_of(const SingularDiagram& d) {
    Layout l;
    l.comps = strand_components(d);
    l.membership = strand_membership(d);
    l.tracks = circle_tracks(d);
    l.index = track_index(l.tracks);
    return l;
}

std::size_t track_of(const Layout& l, const Id& region, const Id& circle) {
    auto it = l.index.find({region, circle});
    if (it == l.index.end()) throw Error("circle '" + circle + "' of region '" + region + "' has no track");
    return it->second;
}

ConstraintSystem build(const SingularDiagram& d, const Layout& l, const std::vector<int>& signs) {
    if (signs.size() != l.comps.size())
        throw Error("expected " + std::to_string(l.comps.size()) + " component signs, got " +
                    std::to_string(signs.size()));
    ConstraintSystem s;
    for (const auto& t : l.tracks) s.variables.push_back(t.id);
    for (const auto& [id, a] : d.arcs) {
        const auto hi = high_side(d, a);
        if (!hi) throw Error("arc '" + id + "' has equal counts on both sides");
        const Id lo = a.left == *hi ? a.right : a.left;
        std::map<std::size_t, int> coeff;
        if (const auto* v = std::get_if<Vanish>(&a.transition.special)) {
            coeff[track_of(l, *hi, v->circle)] += 1;
        } else {
            const auto& sp = std::get<Split>(a.transition.special);
            coeff[track_of(l, *hi, sp.high_a)] += 1;
            coeff[track_of(l, *hi, sp.high_b)] += 1;
            coeff[track_of(l, lo, sp.low)] -= 1;
        }
        Equation e;
        e.arc = id;
        for (const auto& [v, c] : coeff)
            if (c != 0) e.terms.emplace_back(v, c);
        const auto& [comp, dir] = l.membership.at(id);
        e.rhs = signs[comp] * dir * stored_sign(d, a);
        s.equations.push_back(std::move(e));
    }
    return s;
}

std::vector<int> signs_of(std::size_t mask, std::size_t k) {
    std::vector<int> s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = (mask >> i) & 1 ? -1 : 1;
    return s;
}

struct Outcome {
    bool feasible = false;
    std::vector<Int> x;        // solution when feasible
    std::size_t failing = 0;   // SNF row that fails otherwise
};

Outcome solve_one(const SmithForm& f, std::size_t rank, const std::vector<int>& b) {
    Outcome o;
    std::vector<Int> c(f.rows, 0);
    for (std::size_t i = 0; i < f.rows; ++i)
        for (std::size_t j = 0; j < f.rows; ++j)
            if (f.u[i][j] != 0) c[i] += f.u[i][j] * b[j];
    for (std::size_t i = 0; i < f.rows; ++i) {
        const bool ok = i < rank ? c[i] % f.diagonal[i] == 0 : c[i] == 0;
        if (!ok) {
            o.failing = i;
            return o;
        }
    }
    std::vector<Int> y(f.cols, 0);
    for (std::size_t i = 0; i < rank; ++i) y[i] = c[i] / f.diagonal[i];
    o.x.assign(f.cols, 0);
    for (std::size_t i = 0; i < f.cols; ++i)
        for (std::size_t j = 0; j < rank; ++j) o.x[i] += f.v[i][j] * y[j];
    o.feasible = true;
    return o;
}

// stored orientations pin component signs; nullopt where no arc carries one
std::vector<std::optional<int>> pinned_signs(const SingularDiagram& d, const Layout& l) {
    std::vector<std::optional<int>> out(l.comps.size());
    for (const auto& [id, a] : d.arcs)
        if (a.orientation) {
            const auto& [comp, dir] = l.membership.at(id);
            out[comp] = *a.orientation * dir;
        }
    return out;
}

SolveResult solve_impl(const SingularDiagram& d, bool respect_stored) {
    const Layout l = layout_of(d);
    const std::size_t k = l.comps.size();
    if (k > kMaxOrientationComponents)
        throw Error("diagram has " + std::to_string(k) + " strand components; orientation enumeration is capped at " +
                    std::to_string(kMaxOrientationComponents));
    const ConstraintSystem base = build(d, l, std::vector<int>(k, 1));
    const std::size_t m = base.equations.size(), n = base.variables.size();
    IntMatrix a(m, std::vector<Int>(n, 0));
    std::vector<int> unit_rhs(m), comp_of(m);
    for (std::size_t e = 0; e < m; ++e) {
        for (const auto& [v, c] : base.equations[e].terms) a[e][v] = c;
        unit_rhs[e] = base.equations[e].rhs;
        comp_of[e] = static_cast<int>(l.membership.at(base.equations[e].arc).first);
    }
    const SmithForm f = smith_normal_form(a, n);
    std::size_t rank = 0;
    while (rank < f.diagonal.size() && f.diagonal[rank] != 0) ++rank;

    const auto pins = pinned_signs(d, l);
    const std::size_t total = std::size_t{1} << k;
    std::vector<Outcome> outcomes(total);
    std::vector<char> skipped(total, 0);
#pragma omp parallel for schedule(dynamic)
    for (long long mask = 0; mask < static_cast<long long>(total); ++mask) {
        const auto signs = signs_of(static_cast<std::size_t>(mask), k);
        if (respect_stored) {
            bool ok = true;
            for (std::size_t c = 0; c < k; ++c)
                if (pins[c] && *pins[c] != signs[c]) ok = false;
            if (!ok) {
                skipped[mask] = 1;
                continue;
            }
        }
        std::vector<int> b(m);
        for (std::size_t e = 0; e < m; ++e) b[e] = signs[comp_of[e]] * unit_rhs[e];
        outcomes[mask] = solve_one(f, rank, b);
    }

    SolveResult r;
    r.components = k;
    for (std::size_t mask = 0; mask < total; ++mask) {
        if (skipped[mask] || !outcomes[mask].feasible) continue;
        LiftCertificate c;
        c.component_signs = signs_of(mask, k);
        for (const auto& [id, arc] : d.arcs) {
            const auto& [comp, dir] = l.membership.at(id);
            c.arc_orientation[id] = c.component_signs[comp] * dir;
        }
        for (std::size_t v = 0; v < n; ++v) c.rotations[base.variables[v]] = outcomes[mask].x[v];
        r.certificate = std::move(c);
        return r;
    }
    for (std::size_t mask = 0; mask < total; ++mask) {
        if (skipped[mask]) continue;
        const std::size_t i = outcomes[mask].failing;
        InfeasibilityWitness w;
        w.component_signs = signs_of(mask, k);
        w.multipliers = f.u[i];
        w.rational = i >= rank;
        w.denominator = w.rational ? Int(1) : f.diagonal[i];
        r.witnesses.push_back(std::move(w));
    }
    return r;
}

// component sign implied by per-arc orientations; nullopt if inconsistent
std::optional<std::vector<int>> signs_from_arcs(const Layout& l, const std::map<Id, int>& orient, std::string* why) {
    std::vector<int> signs(l.comps.size(), 0);
    for (const auto& [id, md] : l.membership) {
        auto it = orient.find(id);
        if (it == orient.end() || (it->second != 1 && it->second != -1)) {
            if (why) *why = "arc '" + id + "' has no orientation";
            return std::nullopt;
        }
        const int s = it->second * md.second;
        if (signs[md.first] != 0 && signs[md.first] != s) {
            if (why) *why = "orientation flips along the strand through arc '" + id + "'";
            return std::nullopt;
        }
        signs[md.first] = s;
    }
    return signs;
}

}  // namespace

int stored_sign(const SingularDiagram& d, const FoldArc& a) {
    const auto hi = high_side(d, a);
    if (!hi) throw Error("arc '" + a.id + "' has equal counts on both sides");
    return *hi == a.left ? 1 : -1;
}

ConstraintSystem build_constraints(const SingularDiagram& d, const std::vector<int>& component_signs) {
    return build(d, layout_of(d), component_signs);
}

SolveResult solve(const SingularDiagram& d) {
    auto report = validate(d);
    if (!report.valid()) throw Error("cannot solve an invalid diagram: " + report.issues.front().message);
    return solve_impl(d, true);
}

bool verify_certificate(const SingularDiagram& d, const LiftCertificate& c, std::string* why) {
    const Layout l = layout_of(d);
    auto signs = signs_from_arcs(l, c.arc_orientation, why);
    if (!signs) return false;
    for (const auto& [id, a] : d.arcs)
        if (a.orientation && c.arc_orientation.count(id) && c.arc_orientation.at(id) != *a.orientation) {
            if (why) *why = "certificate reverses the prescribed orientation of arc '" + id + "'";
            return false;
        }
    const auto sys = build(d, l, *signs);
    for (const auto& e : sys.equations) {
        Int lhs = 0;
        for (const auto& [v, coef] : e.terms) {
            auto it = c.rotations.find(sys.variables[v]);
            if (it == c.rotations.end()) {
                if (why) *why = "no rotation number for track '" + sys.variables[v] + "'";
                return false;
            }
            lhs += coef * it->second;
        }
        if (lhs != e.rhs) {
            if (why) *why = "equation of arc '" + e.arc + "' reads " + lhs.str() + " = " + std::to_string(e.rhs);
            return false;
        }
    }
    return true;
}

bool verify_witness(const SingularDiagram& d, const InfeasibilityWitness& w, std::string* why) {
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    const auto sys = build_constraints(d, w.component_signs);
    if (w.multipliers.size() != sys.equations.size()) return fail("witness length does not match the equation count");
    if (w.denominator <= 0) return fail("witness denominator must be positive");
    std::vector<Int> lhs(sys.variables.size(), 0);
    Int rhs = 0;
    for (std::size_t e = 0; e < sys.equations.size(); ++e) {
        for (const auto& [v, coef] : sys.equations[e].terms) lhs[v] += w.multipliers[e] * coef;
        rhs += w.multipliers[e] * sys.equations[e].rhs;
    }
    for (const auto& x : lhs) {
        if (w.rational && x != 0) return fail("combined left-hand side is not zero");
        if (x % w.denominator != 0) return fail("combined left-hand side is not integral");
    }
    if (w.rational ? rhs == 0 : rhs % w.denominator == 0) return fail("combined right-hand side is satisfiable");
    return true;
}

SingularDiagram without_orientation(const SingularDiagram& d) {
    SingularDiagram out = d;
    for (auto& [id, a] : out.arcs) a.orientation.reset();
    return out;
}

LiftCertificate flipped(const LiftCertificate& c) {
    LiftCertificate out = c;
    for (auto& s : out.component_signs) s = -s;
    for (auto& [id, o] : out.arc_orientation) o = -o;
    for (auto& [t, r] : out.rotations) r = -r;
    return out;
}

SingularDiagram with_orientation(const SingularDiagram& d, const LiftCertificate& c) {
    SingularDiagram out = d;
    for (auto& [id, a] : out.arcs) {
        auto it = c.arc_orientation.find(id);
        if (it != c.arc_orientation.end()) a.orientation = it->second;
    }
    return out;
}

std::string print_certificate(const LiftCertificate& c) {
    nlohmann::json j;
    j["format"] = kCertificateFormat;
    j["component_signs"] = c.component_signs;
    j["orientation"] = c.arc_orientation;
    j["rotations"] = nlohmann::json::object();
    for (const auto& [t, r] : c.rotations) j["rotations"][t] = static_cast<long long>(r);
    return j.dump(2) + "\n";
}

LiftCertificate parse_certificate(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("certificate is not valid JSON: ") + e.what());
    }
    if (j.value("format", "") != kCertificateFormat)
        throw Error(std::string("certificate must declare format ") + kCertificateFormat);
    LiftCertificate c;
    try {
        c.component_signs = j.value("component_signs", std::vector<int>{});
        c.arc_orientation = j.at("orientation").get<std::map<Id, int>>();
        for (const auto& [t, r] : j.at("rotations").items()) c.rotations[t] = Int(r.get<long long>());
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed certificate: ") + e.what());
    }
    return c;
}

std::string print_witness(const SingularDiagram& d, const InfeasibilityWitness& w) {
    const auto sys = build_constraints(d, w.component_signs);
    std::string out = "orientation signs:";
    for (int s : w.component_signs) out += s > 0 ? " +" : " -";
    out += "\n";
    const std::string scale = w.denominator == 1 ? "" : "(1/" + w.denominator.str() + ") * ";
    out += w.rational ? "combination with zero left-hand side:\n" : "combination with integral left-hand side:\n";
    Int rhs = 0;
    for (std::size_t e = 0; e < sys.equations.size(); ++e) {
        if (w.multipliers[e] == 0) continue;
        out += "  " + scale + w.multipliers[e].str() + " x [arc " + sys.equations[e].arc + "]\n";
        rhs += w.multipliers[e] * sys.equations[e].rhs;
    }
    out += "  right-hand side: " + scale + rhs.str() + "\n";
    return out;
}

std::string print_witnesses(const SingularDiagram& d, const std::vector<InfeasibilityWitness>& ws) {
    nlohmann::json j;
    j["format"] = kWitnessFormat;
    j["witnesses"] = nlohmann::json::array();
    for (const auto& w : ws) {
        std::vector<std::string> mult;
        for (const auto& x : w.multipliers) mult.push_back(x.str());
        j["witnesses"].push_back({{"component_signs", w.component_signs},
                                  {"multipliers", mult},
                                  {"denominator", w.denominator.str()},
                                  {"rational", w.rational},
                                  {"explanation", print_witness(d, w)}});
    }
    return j.dump(2) + "\n";
}

std::vector<InfeasibilityWitness> parse_witnesses(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("witness file is not valid JSON: ") + e.what());
    }
    if (j.value("format", "") != kWitnessFormat)
        throw Error(std::string("witness file must declare format ") + kWitnessFormat);
    std::vector<InfeasibilityWitness> out;
    try {
        for (const auto& wj : j.at("witnesses")) {
            InfeasibilityWitness w;
            w.component_signs = wj.at("component_signs").get<std::vector<int>>();
            for (const auto& m : wj.at("multipliers")) w.multipliers.emplace_back(m.get<std::string>());
            w.denominator = Int(wj.at("denominator").get<std::string>());
            w.rational = wj.at("rational").get<bool>();
            out.push_back(std::move(w));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed witness file: ") + e.what());
    } catch (const std::runtime_error& e) {
        throw Error(std::string("malformed witness number: ") + e.what());
    }
    return out;
}

bool verify_infeasibility(const SingularDiagram& d, const std::vector<InfeasibilityWitness>& ws, std::string* why) {
    const Layout l = layout_of(d);
    const std::size_t k = l.comps.size();
    const auto pins = pinned_signs(d, l);
    std::set<std::vector<int>> covered;
    for (const auto& w : ws) {
        if (!verify_witness(d, w, why)) return false;
        covered.insert(w.component_signs);
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        auto signs = signs_of(mask, k);
        bool admissible = true;
        for (std::size_t c = 0; c < k; ++c)
            if (pins[c] && *pins[c] != signs[c]) admissible = false;
        if (admissible && !covered.count(signs)) {
            if (why) {
                *why = "no witness for orientation signs";
                for (int s : signs) *why += s > 0 ? " +" : " -";
            }
            return false;
        }
    }
    return true;
}

std::optional<bool> propagation_feasible(const SingularDiagram& d) {
    for (const auto& [id, a] : d.arcs)
        if (a.type == FoldType::Indefinite) return std::nullopt;
    const Layout l = layout_of(d);
    const std::size_t k = l.comps.size();
    if (k > kMaxOrientationComponents) throw Error("too many strand components");
    const auto pins = pinned_signs(d, l);
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        const auto signs = signs_of(mask, k);
        bool ok = true;
        for (std::size_t c = 0; c < k; ++c)
            if (pins[c] && *pins[c] != signs[c]) ok = false;
        if (!ok) continue;
        const auto sys = build(d, l, signs);
        std::map<std::size_t, int> value;
        for (const auto& e : sys.equations) {
            const auto [v, coef] = e.terms.front();
            const int want = e.rhs * coef;
            auto [it, fresh] = value.emplace(v, want);
            if (!fresh && it->second != want) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

std::optional<std::size_t> PreservationReport::first_loss() const {
    if (!initially_feasible) return std::nullopt;
    for (const auto& s : steps) {
        if (!s.in_contract) return std::nullopt;
        if (!s.feasible) return s.index;
    }
    return std::nullopt;
}

bool PreservationReport::any_out_of_contract() const {
    return std::any_of(steps.begin(), steps.end(), [](const PreservationStep& s) { return !s.in_contract; });
}

bool in_coherent_repertoire(const MoveSite& s) {
    const bool kind = s.kind == MoveKind::BeaksMerge || s.kind == MoveKind::SwallowtailCreate ||
                      s.kind == MoveKind::CuspFoldCross;
    return kind && is_coherent_variant(s.variant);
}

PreservationReport check_preservation(const SingularDiagram& d, const MoveScript& script) {
    PreservationReport rep;
    auto first = solve(d);
    rep.initially_feasible = first.feasible();
    SingularDiagram cur = first.feasible() ? with_orientation(d, *first.certificate) : d;
    for (std::size_t i = 0; i < script.size(); ++i) {
        PreservationStep st;
        st.index = i;
        st.site = script[i];
        st.in_contract = in_coherent_repertoire(script[i]);
        try {
            cur = apply(cur, script[i]);
        } catch (const Error& e) {
            throw ScriptError(i, e.what());
        }
        // prefer a certificate that extends the orientation carried through the move
        auto res = solve(cur);
        if (!res.feasible()) {
            cur = without_orientation(cur);
            res = solve(cur);
        }
        st.feasible = res.feasible();
        if (res.feasible()) cur = with_orientation(cur, *res.certificate);
        rep.steps.push_back(st);
    }
    return rep;
}

ConsequenceReport homology_consequence(const SingularDiagram& d, const AbelianGroup& g,
                                       const std::map<Id, ClassVector>& strands) {
    ConsequenceReport rep;
    rep.signed_sum = g.zero();
    const auto res = solve(d);
    rep.feasible = res.feasible();
    if (!rep.feasible) {
        rep.message = "diagram is not Levine-consistent; no constraint on the classes";
        return rep;
    }
    const auto membership = strand_membership(d);
    const std::size_t k = strand_components(d).size();
    std::vector<std::optional<Id>> rep_arc(k);
    for (const auto& [arc, cls] : strands) {
        auto it = membership.find(arc);
        if (it == membership.end()) throw Error("class supplied for unknown arc '" + arc + "'");
        if (!rep_arc[it->second.first]) rep_arc[it->second.first] = arc;
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (!rep_arc[c]) throw Error("no class supplied for strand component " + std::to_string(c));
        const Id& arc = *rep_arc[c];
        const int sign = res.certificate->arc_orientation.at(arc);
        const auto& cls = strands.at(arc);
        rep.signed_sum = add(rep.signed_sum, sign > 0 ? cls : neg(cls));
    }
    rep.signed_sum = g.reduce(rep.signed_sum);
    rep.consistent = g.is_zero(rep.signed_sum);
    rep.message = rep.consistent ? "signed class sum vanishes"
                                 : "signed class sum " + format_class(rep.signed_sum) +
                                       " is nonzero although the diagram is Levine-consistent";
    return rep;
}

InfeasibilityResult search_infeasible(const InfeasibilitySearch& opts) {
    InfeasibilityResult res;
    std::vector<SingularDiagram> maps{standard_s3_diagram()};
    std::set<std::string> seen{canonical_form(maps.front())};
    std::vector<SingularDiagram> frontier = maps;
    for (std::size_t depth = 0; depth < opts.max_depth && !frontier.empty(); ++depth) {
        std::vector<SingularDiagram> next;
        for (const auto& d : frontier)
            for (const auto& site : enumerate_all_sites(d)) {
                try {
                    auto e = apply(d, site);
                    if (e.arcs.size() <= opts.max_arcs && seen.insert(canonical_form(e)).second) next.push_back(e);
                } catch (const Error&) {
                }
            }
        maps.insert(maps.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::stable_sort(maps.begin(), maps.end(),
                     [](const auto& x, const auto& y) { return x.arcs.size() < y.arcs.size(); });
    res.maps = maps.size();

    bool over = false;
    auto test = [&](const SingularDiagram& e) {
        if (!solve(e).feasible()) res.diagram = e;
    };
    for (const auto& base : maps) {
        SingularDiagram e = base;
        std::vector<Id> regions, arcs;
        for (const auto& [id, r] : e.regions)
            if (!r.outer) regions.push_back(id);
        for (const auto& [id, a] : e.arcs) arcs.push_back(id);
        for (auto& [id, a] : e.arcs) a.orientation.reset();

        std::function<void(std::size_t)> label_arcs, label_types, label_counts;
        label_arcs = [&](std::size_t i) {
            if (res.diagram || over) return;
            if (i == arcs.size()) {
                if (++res.labellings > opts.budget) {
                    over = true;
                    return;
                }
                if (!validate(e).valid()) return;
                if (!opts.prescribe_orientations) return test(e);
                auto comps = strand_components(e);
                if (comps.size() > kMaxOrientationComponents) return;
                for (std::size_t mask = 0; mask < (std::size_t{1} << comps.size()) && !res.diagram; ++mask) {
                    SingularDiagram f = e;
                    for (std::size_t c = 0; c < comps.size(); ++c)
                        for (const auto& h : comps[c].arcs)
                            f.arc(h.arc).orientation = ((mask >> c) & 1 ? -1 : 1) * h.dir;
                    test(f);
                }
                return;
            }
            auto& arc = e.arc(arcs[i]);
            for (const auto& t : detail::transition_options(e.region(arc.left).circles, e.region(arc.right).circles,
                                                            arc.type)) {
                e.arc(arcs[i]).transition = t;
                label_arcs(i + 1);
            }
        };
        label_types = [&](std::size_t i) {
            if (i == arcs.size()) return label_arcs(0);
            for (auto t : {FoldType::Definite, FoldType::Indefinite}) {
                e.arc(arcs[i]).type = t;
                label_types(i + 1);
            }
        };
        label_counts = [&](std::size_t i) {
            if (i == regions.size()) {
                for (const auto& [id, a] : e.arcs) {
                    auto l = e.count(a.left), r = e.count(a.right);
                    if (l + 1 != r && r + 1 != l) return;
                }
                return label_types(0);
            }
            auto& reg = e.region(regions[i]);
            for (std::size_t c = 0; c <= opts.max_circles; ++c) {
                reg.circles.clear();
                reg.shaded.clear();
                for (std::size_t k = 1; k <= c; ++k) reg.circles.push_back("c" + std::to_string(k));
                label_counts(i + 1);
            }
        };
        label_counts(0);
        if (res.diagram || over) break;
    }
    res.exhausted = !res.diagram && !over;
    return res;
}

}  // namespace contour
