#include <algorithm>
#include <cstdlib>
#include <map>

#include "contour/diagram.hpp"

namespace contour {

namespace {

class Checker {
public:
    explicit Checker(const SingularDiagram& d) : d_(d) {}

    ValidationReport run() {
        check_regions();
        bool refs_ok = check_references();
        if (refs_ok) {
            check_attachments();
            for (const auto& [id, a] : d_.arcs) check_arc(a);
            for (const auto& [id, c] : d_.cusps) check_cusp(c);
            for (const auto& [id, x] : d_.crossings) check_crossing(x);
            check_strands();
            check_faces();
            if (report_.valid()) check_orientations();
        }
        return std::move(report_);
    }

private:
    void issue(std::string code, std::string message) {
        report_.issues.push_back({std::move(code), std::move(message)});
    }

    void check_regions() {
        std::size_t outer = 0;
        for (const auto& [id, r] : d_.regions) {
            if (r.id != id) issue("id mismatch", "region stored under '" + id + "' has id '" + r.id + "'");
            if (r.outer) {
                ++outer;
                if (!r.circles.empty()) issue("outer region nonempty", "outer region '" + id + "' carries fiber circles");
            }
            auto sorted = r.circles;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                issue("duplicate circle", "region '" + id + "' lists a circle twice");
            for (const auto& s : r.shaded)
                if (std::find(r.circles.begin(), r.circles.end(), s) == r.circles.end())
                    issue("shaded circle unknown", "region '" + id + "' shades missing circle '" + s + "'");
        }
        if (outer == 0) issue("no outer region", "no region is marked as the unbounded one");
        if (outer > 1) issue("multiple outer regions", "more than one region is marked outer");
        if (d_.arcs.empty()) issue("empty singular set", "a closed source manifold has nonempty singular set");
    }

    bool check_references() {
        bool ok = true;
        std::set<Id> used;
        for (const auto& [id, a] : d_.arcs) {
            if (a.id != id) issue("id mismatch", "arc stored under '" + id + "' has id '" + a.id + "'");
            for (const auto& side : {a.left, a.right}) {
                if (!d_.regions.count(side)) {
                    issue("unknown region", "arc '" + id + "' references region '" + side + "'");
                    ok = false;
                }
                used.insert(side);
            }
            if (a.left == a.right) issue("arc sides equal", "arc '" + id + "' has the same region on both sides");
        }
        auto check_end = [&](const Id& vid, const ArcEnd& e) {
            if (!d_.arcs.count(e.arc)) {
                issue("unknown arc", "vertex '" + vid + "' references arc '" + e.arc + "'");
                ok = false;
            }
        };
        for (const auto& [id, c] : d_.cusps)
            for (const auto& e : c.ends) check_end(id, e);
        for (const auto& [id, x] : d_.crossings)
            for (const auto& e : x.ends) check_end(id, e);
        for (const auto& [id, r] : d_.regions)
            if (!used.count(id) && !d_.arcs.empty())
                issue("isolated region", "region '" + id + "' is not adjacent to any arc");
        return ok;
    }

    void check_attachments() {
        std::map<ArcEnd, int> uses;
        for (const auto& [id, c] : d_.cusps)
            for (const auto& e : c.ends) ++uses[e];
        for (const auto& [id, x] : d_.crossings)
            for (const auto& e : x.ends) ++uses[e];
        for (const auto& [e, n] : uses)
            if (n > 1) issue("arc end reused", "end " + to_string(e.end) + " of arc '" + e.arc + "' attaches twice");
        for (const auto& [id, a] : d_.arcs) {
            bool t = uses.count({id, End::Tail}) > 0, h = uses.count({id, End::Head}) > 0;
            if (t != h) issue("half-attached arc", "arc '" + id + "' has exactly one free end");
        }
    }

    void check_arc(const FoldArc& a) {
        const auto& L = d_.region(a.left);
        const auto& R = d_.region(a.right);
        long diff = static_cast<long>(L.circles.size()) - static_cast<long>(R.circles.size());
        if (std::labs(diff) != 1) {
            issue("count jump", "fiber counts across arc '" + a.id + "' differ by " + std::to_string(std::labs(diff)));
            return;
        }
        bool definite = a.type == FoldType::Definite;
        if (definite != std::holds_alternative<Vanish>(a.transition.special)) {
            issue("transition kind", "arc '" + a.id + "' transition does not match its fold type");
            return;
        }
        const Region& high = diff > 0 ? L : R;
        const Region& low = diff > 0 ? R : L;
        std::map<Id, int> use_left, use_right;
        for (const auto& [l, r] : a.transition.bijection) {
            ++use_left[l];
            ++use_right[r];
        }
        auto& use_high = diff > 0 ? use_left : use_right;
        auto& use_low = diff > 0 ? use_right : use_left;
        if (const auto* v = std::get_if<Vanish>(&a.transition.special)) {
            ++use_high[v->circle];
        } else {
            const auto& s = std::get<Split>(a.transition.special);
            ++use_low[s.low];
            ++use_high[s.high_a];
            ++use_high[s.high_b];
        }
        auto covers = [](const Region& r, const std::map<Id, int>& use) {
            if (use.size() != r.circles.size()) return false;
            for (const auto& c : r.circles) {
                auto it = use.find(c);
                if (it == use.end() || it->second != 1) return false;
            }
            return true;
        };
        if (!covers(high, use_high) || !covers(low, use_low))
            issue("transition not a cover", "transition of arc '" + a.id + "' does not match every circle exactly once");
    }

    void check_cusp(const CuspVertex& c) {
        const auto& a0 = d_.arc(c.ends[0].arc);
        const auto& a1 = d_.arc(c.ends[1].arc);
        if (a0.type == a1.type) {
            issue("cusp fold types", "cusp '" + c.id + "' does not join a definite and an indefinite arc");
            return;
        }
        std::set<Id> s0{a0.left, a0.right}, s1{a1.left, a1.right};
        if (s0 != s1) {
            issue("cusp regions", "arcs at cusp '" + c.id + "' separate different regions");
            return;
        }
        const auto& def = a0.type == FoldType::Definite ? a0 : a1;
        const auto& ind = a0.type == FoldType::Definite ? a1 : a0;
        auto outside = low_side(d_, def);
        if (!outside) return;  // reported as a count jump
        auto r_def = relation_across(d_, def.id, *outside);
        auto r_ind = relation_across(d_, ind.id, *outside);
        const auto* v = std::get_if<Vanish>(&def.transition.special);
        const auto* s = std::get_if<Split>(&ind.transition.special);
        if (!v || !s) return;
        r_def.emplace(s->low, v->circle);
        if (r_def != r_ind)
            issue("cusp coherence", "fiber transitions at cusp '" + c.id + "' do not agree");
    }

    Id quadrant(const CrossingVertex& x, int i) const {
        const ArcEnd& e = x.ends[(i + 1) % 4];
        return d_.left_of(HalfEdge{e.arc, e.end == End::Head ? 1 : -1});
    }

    void check_crossing(const CrossingVertex& x) {
        std::array<Id, 4> q;
        std::array<std::size_t, 4> n{};
        for (int i = 0; i < 4; ++i) {
            q[i] = quadrant(x, i);
            n[i] = d_.count(q[i]);
        }
        int lo = static_cast<int>(std::min_element(n.begin(), n.end()) - n.begin());
        int hi = (lo + 2) % 4;
        if (n[hi] != n[lo] + 2 || n[(lo + 1) % 4] != n[lo] + 1 || n[(lo + 3) % 4] != n[lo] + 1) {
            issue("crossing counts", "fiber counts around crossing '" + x.id + "' are not n, n+1, n+2, n+1");
            return;
        }
        // ends[i] separates quadrant i-1 from quadrant i
        auto step = [&](const CircleRelation& acc, int from_q, int arc_slot) {
            return compose(acc, relation_across(d_, x.ends[arc_slot].arc, q[from_q]));
        };
        CircleRelation id;
        for (const auto& c : d_.region(q[lo]).circles) id.emplace(c, c);
        auto via_next = step(step(id, lo, (lo + 1) % 4), (lo + 1) % 4, (lo + 2) % 4);
        auto via_prev = step(step(id, lo, lo), (lo + 3) % 4, (lo + 3) % 4);
        if (via_next != via_prev)
            issue("crossing coherence", "fiber correspondences around crossing '" + x.id + "' disagree");
    }

    void check_strands() {
        try {
            (void)strand_components(d_);
        } catch (const Error& e) {
            issue("strand malformed", e.what());
        }
    }

    void check_faces() {
        std::vector<std::vector<HalfEdge>> cycles;
        try {
            cycles = boundary_cycles(d_);
        } catch (const Error& e) {
            issue("face inconsistent", e.what());
            return;
        }
        for (const auto& cyc : cycles) {
            Id r = d_.left_of(cyc.front());
            for (const auto& h : cyc)
                if (d_.left_of(h) != r) {
                    issue("face inconsistent", "boundary cycle through arc '" + h.arc + "' meets regions '" + r +
                                                   "' and '" + d_.left_of(h) + "'");
                    return;
                }
        }
        if (d_.arcs.empty()) return;
        long loops = 0;
        for (const auto& [id, a] : d_.arcs)
            if (!d_.attachment({id, End::Tail})) ++loops;
        long v = static_cast<long>(d_.cusps.size() + d_.crossings.size()) + loops;
        long e = static_cast<long>(d_.arcs.size());
        long f = static_cast<long>(d_.regions.size());
        long c = static_cast<long>(graph_components(d_));
        if (v - e + f != 1 + c)
            issue("euler", "V-E+F = " + std::to_string(v - e + f) + " but the map has " + std::to_string(c) +
                               " component(s)");
    }

    // Prescribed orientations must run consistently along each strand.
    void check_orientations() {
        std::map<std::size_t, std::pair<int, Id>> seen;
        for (const auto& [id, member] : strand_membership(d_)) {
            const auto& a = d_.arc(id);
            if (!a.orientation) continue;
            if (*a.orientation != 1 && *a.orientation != -1) {
                issue("orientation", "arc '" + id + "' has orientation other than +1 or -1");
                continue;
            }
            int sign = *a.orientation * member.second;
            auto [it, fresh] = seen.emplace(member.first, std::pair{sign, id});
            if (!fresh && it->second.first != sign)
                issue("orientation", "arcs '" + it->second.second + "' and '" + id +
                                         "' prescribe opposite directions along one strand");
        }
    }

    const SingularDiagram& d_;
    ValidationReport report_;
};

}  // namespace

ValidationReport validate(const SingularDiagram& d) { return Checker(d).run(); }

bool euler_fiber_check(const SingularDiagram& d) {
    for (const auto& [id, a] : d.arcs) {
        if (!d.regions.count(a.left) || !d.regions.count(a.right)) return false;
        long diff = static_cast<long>(d.count(a.left)) - static_cast<long>(d.count(a.right));
        if (std::labs(diff) != 1) return false;
    }
    for (const auto& [id, c] : d.cusps) {
        if (!d.arcs.count(c.ends[0].arc) || !d.arcs.count(c.ends[1].arc)) return false;
        const auto& a0 = d.arc(c.ends[0].arc);
        const auto& a1 = d.arc(c.ends[1].arc);
        if (std::set<Id>{a0.left, a0.right} != std::set<Id>{a1.left, a1.right}) return false;
    }
    return true;
}

}  // namespace contour
