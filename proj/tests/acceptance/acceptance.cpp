// One PASS/FAIL line per acceptance criterion; exits 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "contour/canonical.hpp"
#include "contour/diagram_io.hpp"
#include "contour/homology.hpp"
#include "contour/immersion.hpp"
#include "contour/lift.hpp"
#include "contour/moves.hpp"
#include "support.hpp"

using namespace contour;
namespace ct = contour::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int n, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) o.require(false, "over time budget");
    failures += !o.pass;
    std::printf("%s criterion %d (%s) %.2fs/%.0fs:%s\n", o.pass ? "PASS" : "FAIL", n, title, secs, budget_s,
                o.detail.str().c_str());
    std::fflush(stdout);
}

void validator(Outcome& o) {
    auto d = standard_s3_diagram();
    o.require(validate(d).valid(), "standard diagram valid");

    auto outer = d;
    outer.region("R0").circles.push_back("c9");
    o.require(validate(outer).has("outer region nonempty"), "nonempty outer region");

    auto cover = load_diagram("samples/infeasible.diagram");
    std::get<Vanish>(cover.arc("a2").transition.special).circle = "c7";
    o.require(validate(cover).has("transition not a cover"), "uncovered transition");

    auto jump = d;
    jump.region("R1").circles.push_back("c2");
    o.require(validate(jump).has("count jump"), "count jump of 2");
    o.detail << " 3 corruptions rejected by name";
}

void move_engine(Outcome& o) {
    std::size_t found = 0;
    for (const auto& key : ct::figure_variants()) {
        auto hit = ct::neighbourhood_for(key);
        if (!hit) {
            o.require(false, "no neighbourhood for " + key);
            continue;
        }
        auto out = apply(hit->first, hit->second);
        o.require(validate(out).valid(), key + " result valid");
        ++found;
    }

    auto d0 = standard_s3_diagram();
    auto lips = apply(d0, MoveSite{MoveKind::LipsCreate, {"R1", "c1"}, "lips"});
    bool lips_back = false;
    for (const auto& s : enumerate_sites(lips, MoveKind::LipsRemove)) lips_back |= isomorphic(d0, apply(lips, s));
    o.require(lips_back, "lips round trip");

    bool beaks_back = false;
    for (const auto& m : enumerate_sites(lips, MoveKind::BeaksMerge)) {
        SingularDiagram merged;
        try {
            merged = apply(lips, m);
        } catch (const WouldViolateInvariant&) {
            continue;
        }
        for (const auto& s : enumerate_sites(merged, MoveKind::BeaksSplit)) {
            try {
                beaks_back |= s.variant == m.variant && isomorphic(lips, apply(merged, s));
            } catch (const Error&) {
            }
        }
    }
    o.require(beaks_back, "beaks round trip");

    std::mt19937 rng(2024);
    std::size_t applied = 0, invalid = 0;
    while (applied < 500) {
        auto d = standard_s3_diagram();
        for (int step = 0; step < 5 && applied < 500; ++step) {
            auto sites = enumerate_all_sites(d);
            if (sites.empty()) break;
            d = apply(d, sites[rng() % sites.size()]);
            ++applied;
            invalid += !validate(d).valid();
        }
    }
    o.require(invalid == 0, std::to_string(invalid) + " invalid random results");
    o.detail << " " << found << "/10 variants, round trips ok, " << applied << " random applications";
}

void lift_solver(Outcome& o) {
    auto d = standard_s3_diagram();
    auto r = solve(d);
    o.require(r.feasible(), "standard diagram feasible");
    if (r.feasible()) {
        const auto& c = *r.certificate;
        o.require(c.rotations.size() == 1 && abs(c.rotations.begin()->second) == 1, "|r| = 1");
        o.require(verify_certificate(d, c), "certificate re-verifies");
        o.require(verify_certificate(d, parse_certificate(print_certificate(c))), "serialised certificate verifies");
    }

    InfeasibilitySearch plain;  // 6 arcs, orientations left to the solver
    auto search = search_infeasible(plain);
    o.detail << " search over " << search.maps << " maps, " << search.labellings << " labellings"
             << (search.exhausted ? " (exhausted)" : " (budget hit)");
    if (search.diagram) {
        auto s = solve(*search.diagram);
        o.require(!s.feasible() && verify_infeasibility(*search.diagram, s.witnesses), "witness verifies");
    } else {
        o.require(false,
                  "no infeasible diagram exists without prescribed orientations: every valid diagram lifts with "
                  "all strand signs +1");
        InfeasibilitySearch pinned;
        pinned.prescribe_orientations = true;
        auto p = search_infeasible(pinned);
        if (p.diagram) {
            auto s = solve(*p.diagram);
            bool proof = !s.feasible() && verify_infeasibility(*p.diagram, s.witnesses);
            o.detail << "; with prescribed orientations a " << p.diagram->arcs.size() << "-arc diagram is infeasible"
                     << (proof ? " and its witnesses verify" : " but its witnesses do not verify");
        }
    }
}

void preservation(Outcome& o) {
    std::mt19937 rng(77);
    auto d = standard_s3_diagram();
    std::size_t failures = 0, moves = 0, out_of_contract = 0;
    for (int i = 0; i < 100; ++i) {
        auto script = ct::random_coherent_script(d, 1 + rng() % 6, rng);
        auto rep = check_preservation(d, script);
        moves += rep.steps.size();
        out_of_contract += rep.any_out_of_contract();
        failures += !rep.initially_feasible || rep.first_loss().has_value();
    }
    o.require(failures == 0, std::to_string(failures) + " scripts lost feasibility");
    o.require(out_of_contract == 0, "scripts left the coherent repertoire");
    o.detail << " 100 scripts, " << moves << " moves, " << failures << " failures";
}

void consequence(Outcome& o) {
    struct Fixture {
        const char* diagram;
        const char* links;
        bool consistent;
    };
    const Fixture fixtures[] = {
        {"samples/s3-standard.diagram", "samples/standard-consistent.links", true},
        {"samples/s3-lips.diagram", "samples/lips-torsion.links", true},
        {"samples/s3-standard.diagram", "samples/standard-inconsistent.links", false},
    };
    for (const auto& f : fixtures) {
        auto d = load_diagram(f.diagram);
        auto links = parse_links(read_file(f.links));
        auto rep = homology_consequence(d, links.group, links.strands);
        o.require(rep.feasible, std::string(f.diagram) + " liftable");
        o.require(rep.consistent == f.consistent, std::string(f.links) + ": " + rep.message);
    }
    o.detail << " 2 consistent fixtures sum to 0, inconsistent fixture flagged";
}

void coherent_plans(Outcome& o) {
    std::mt19937 rng(99);
    std::size_t agree = 0, bad = 0;
    for (int t = 0; t < 200; ++t) {
        auto g = ct::random_group(rng);
        OrientedLinkClass a{g, ct::random_components(g.generators(), rng)};
        OrientedLinkClass b{g, ct::random_components(g.generators(), rng)};
        if (rng() % 2) b.components.push_back(sub(class_of(a), class_of(b)));
        bool same = g.equal(class_of(a), class_of(b));
        agree += same;
        auto r = plan(a, b);
        if (r.plan.has_value() != same) ++bad;
        else if (r.plan && !replays_to(a, *r.plan, b)) ++bad;
    }
    o.require(bad == 0, std::to_string(bad) + " mismatches");
    o.detail << " 200 pairs, " << agree << " with equal classes, " << bad << " mismatches";
}

void round_sphere(Outcome& o) {
    auto s = builtin_immersion("round-s3", 64);
    auto r = verify_theorem_imm(s);
    o.require(r.scan.coincidence <= s.tol.coincidence, "loci coincide");
    o.require(r.scan.margin > 0, "positive margin");
    o.require(r.jacobians.worst_relative <= s.tol.gradient, "Jacobians agree");
    o.require(r.pass && !r.vacuous, r.message);
    o.detail << " Hausdorff " << r.scan.coincidence << ", margin " << r.scan.margin << ", jacobian rel "
             << r.jacobians.worst_relative << ", " << r.scan.tangent.points.size() << " tangent and "
             << r.scan.fold.points.size() << " fold points";
}

void negative_control(Outcome& o) {
    auto s = builtin_immersion("round-s3", 64);
    s.lift_sign = +1;
    auto r = verify_theorem_imm(s);
    o.require(!r.pass, "broken construction unexpectedly passed");
    o.require(r.scan.coincidence > s.tol.coincidence, "coincidence check should fail");
    o.detail << " expected FAIL observed: " << r.message;
}

}  // namespace

int main() {
    criterion(1, "validator", 1, validator);
    criterion(2, "move engine", 30, move_engine);
    criterion(3, "lift solver", 60, lift_solver);
    criterion(4, "coherent moves preserve liftability", 300, preservation);
    criterion(5, "homology consequence", 1, consequence);
    criterion(6, "coherent band plans", 30, coherent_plans);
    criterion(7, "complex tangents on the round sphere", 120, round_sphere);
    criterion(8, "negative control", 120, negative_control);
    return failures == 0 ? 0 : 1;
}
