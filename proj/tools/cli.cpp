#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "contour/diagram_io.hpp"
#include "contour/homology.hpp"
#include "contour/immersion.hpp"
#include "contour/lift.hpp"
#include "contour/moves.hpp"
#include "contour/render.hpp"
#include "json.hpp"

namespace contour {

namespace {

using nlohmann::json;

// Raised for unreadable or malformed inputs; maps to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

template <class F>
auto parsed(const std::string& what, F&& f) {
    try {
        return f();
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(what + ": " + e.what());
    }
}

SingularDiagram diagram_at(const std::string& path) {
    auto text = slurp(path);
    return parsed(path, [&] { return parse_diagram(text); });
}

SampledImmersion immersion_at(const std::string& spec, int resolution) {
    SampledImmersion s;
    const std::string prefix = "builtin:";
    if (spec.rfind(prefix, 0) == 0) {
        s = parsed(spec, [&] { return builtin_immersion(spec.substr(prefix.size()), resolution > 0 ? resolution : 64); });
    } else {
        auto text = slurp(spec);
        s = parsed(spec, [&] { return parse_immersion(text); });
        if (resolution > 0)
            for (auto& c : s.charts) {
                c.resolution = {resolution, resolution, resolution};
            }
    }
    s.tol = tolerances_from_env(s.tol);
    return s;
}

struct Io {
    std::ostream& out;
    std::ostream& err;
    std::string out_path;

    // The structured report goes to stdout and, with --out, to that file too.
    void emit(const std::string& text) const {
        out << text;
        if (!out_path.empty()) {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw InputError("cannot write '" + out_path + "'");
            f << text;
        }
    }
};

json issues_json(const ValidationReport& r) {
    json a = json::array();
    for (const auto& i : r.issues) a.push_back({{"code", i.code}, {"message", i.message}});
    return a;
}

int cmd_validate(const Io& io, const std::string& path) {
    auto d = diagram_at(path);
    auto r = validate(d);
    json j = {{"format", "contour-validation/1"}, {"valid", r.valid()}, {"issues", issues_json(r)}};
    io.emit(j.dump(2) + "\n");
    for (const auto& i : r.issues) io.err << "invalid: " << i.code << ": " << i.message << "\n";
    return r.valid() ? 0 : 1;
}

int cmd_apply(const Io& io, const std::string& path, const std::string& script_path, int random_steps,
              std::uint64_t seed, const std::string& script_out) {
    auto d = diagram_at(path);
    MoveScript script;
    if (!script_path.empty()) {
        auto text = slurp(script_path);
        script = parsed(script_path, [&] { return parse_script(text); });
    }
    try {
        d = apply_script(d, script);
        if (random_steps > 0) {
            std::mt19937_64 rng(seed);
            for (int step = 0; step < random_steps; ++step) {
                auto sites = enumerate_all_sites(d);
                std::shuffle(sites.begin(), sites.end(), rng);
                bool moved = false;
                for (const auto& s : sites) {
                    try {
                        d = apply(d, s);
                        script.push_back(s);
                        moved = true;
                        break;
                    } catch (const WouldViolateInvariant&) {
                    } catch (const PatternMismatch&) {
                    }
                }
                if (!moved) break;
            }
        }
    } catch (const ScriptError& e) {
        io.err << "move failed: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        io.err << "move failed: " << e.what() << "\n";
        return 1;
    }
    if (!script_out.empty()) {
        std::ofstream f(script_out, std::ios::binary);
        if (!f) throw InputError("cannot write '" + script_out + "'");
        f << print_script(script);
    }
    io.emit(print_diagram(d));
    return 0;
}

int cmd_sites(const Io& io, const std::string& path, const std::string& kind) {
    auto d = diagram_at(path);
    std::vector<MoveSite> sites;
    if (kind.empty()) {
        sites = enumerate_all_sites(d);
    } else {
        auto k = parse_move_kind(kind);
        if (!k) throw InputError("unknown move kind '" + kind + "'");
        sites = enumerate_sites(d, *k);
    }
    io.emit(print_script(sites));
    io.err << sites.size() << " site(s)\n";
    return 0;
}

int cmd_lift(const Io& io, const std::string& path) {
    auto d = diagram_at(path);
    auto report = validate(d);
    if (!report.valid()) {
        for (const auto& i : report.issues) io.err << "invalid: " << i.code << ": " << i.message << "\n";
        return 1;
    }
    auto r = solve(d);
    if (r.feasible()) {
        io.emit(print_certificate(*r.certificate));
        return 0;
    }
    io.emit(print_witnesses(d, r.witnesses));
    io.err << "infeasible: no admissible orientation satisfies the rotation equations\n";
    if (!r.witnesses.empty()) io.err << print_witness(d, r.witnesses.front());
    return 1;
}

int cmd_lift_search(const Io& io, const InfeasibilitySearch& opts) {
    auto r = search_infeasible(opts);
    io.err << r.maps << " planar map(s), " << r.labellings << " labelling(s) tried"
           << (r.exhausted ? ", search exhausted" : "") << "\n";
    if (!r.diagram) {
        io.err << "no infeasible diagram within the bounds\n";
        return 1;
    }
    io.emit(print_diagram(*r.diagram));
    return 0;
}

int cmd_lift_verify(const Io& io, const std::string& path, const std::string& proof_path) {
    auto d = diagram_at(path);
    auto text = slurp(proof_path);
    auto j = parsed(proof_path, [&] { return json::parse(text); });
    const auto format = j.value("format", "");
    std::string why;
    bool ok = false;
    std::string kind;
    if (format == kCertificateFormat) {
        auto c = parsed(proof_path, [&] { return parse_certificate(text); });
        ok = verify_certificate(d, c, &why);
        kind = "certificate";
    } else if (format == kWitnessFormat) {
        auto ws = parsed(proof_path, [&] { return parse_witnesses(text); });
        ok = verify_infeasibility(d, ws, &why);
        kind = "infeasibility";
    } else {
        throw InputError(proof_path + ": expected a certificate or witness file");
    }
    json out = {{"format", "contour-lift-check/1"}, {"kind", kind}, {"verified", ok}};
    if (!ok) out["reason"] = why;
    io.emit(out.dump(2) + "\n");
    if (!ok) io.err << "rejected: " << why << "\n";
    return ok ? 0 : 1;
}

LinksFile links_at(const std::string& path) {
    auto text = slurp(path);
    return parsed(path, [&] { return parse_links(text); });
}

int cmd_links_class(const Io& io, const std::string& path, const std::string& diagram_path) {
    auto f = links_at(path);
    const OrientedLinkClass l{f.group, f.components};
    json j = {{"format", "contour-links-class/1"},
              {"group", f.group.describe()},
              {"class", format_class(f.group.reduce(class_of(l)))}};
    int code = 0;
    if (f.target) {
        const OrientedLinkClass t{f.group, *f.target};
        bool agree = f.group.equal(class_of(l), class_of(t));
        j["target_class"] = format_class(f.group.reduce(class_of(t)));
        j["agree"] = agree;
        if (!agree) code = 1;
    }
    if (!diagram_path.empty()) {
        auto d = diagram_at(diagram_path);
        auto report = validate(d);
        if (!report.valid()) throw InputError(diagram_path + ": invalid diagram");
        auto rep = parsed(path, [&] { return homology_consequence(d, f.group, f.strands); });
        j["consequence"] = {{"feasible", rep.feasible},
                            {"consistent", rep.consistent},
                            {"signed_sum", format_class(rep.signed_sum)},
                            {"message", rep.message}};
        if (!rep.feasible || !rep.consistent) {
            io.err << rep.message << "\n";
            code = 1;
        }
    }
    io.emit(j.dump(2) + "\n");
    return code;
}

int cmd_links_plan(const Io& io, const std::string& path, const std::string& replay) {
    auto f = links_at(path);
    if (!f.target) throw InputError(path + ": links-plan needs a target");
    const OrientedLinkClass l{f.group, f.components}, t{f.group, *f.target};
    if (!replay.empty()) {
        auto text = slurp(replay);
        auto p = parsed(replay, [&] { return parse_plan(text, f.group.generators()); });
        bool ok = p.plan && replays_to(l, *p.plan, t);
        json j = {{"format", "contour-plan-check/1"}, {"replays", ok}};
        io.emit(j.dump(2) + "\n");
        return ok ? 0 : 1;
    }
    auto r = plan(l, t);
    io.emit(plan_to_json(r).dump(2) + "\n");
    if (!r.plan) io.err << "no plan: class difference " << format_class(r.witness) << " is nonzero\n";
    return r.plan ? 0 : 1;
}

int cmd_scan(const Io& io, const std::string& spec, int resolution, bool serial, const std::string& svg) {
    auto s = immersion_at(spec, resolution);
    try {
        auto r = scan(s, serial ? Parallelism::Serial : Parallelism::OpenMP);
        io.emit(print_scan(s, r));
        if (!svg.empty()) {
            std::ofstream f(svg, std::ios::binary);
            if (!f) throw InputError("cannot write '" + svg + "'");
            f << render_scan_svg(s, r);
        }
        io.err << r.tangent.points.size() << " tangent point(s) in " << r.tangent.components << " component(s), "
               << r.fold.points.size() << " fold point(s) in " << r.fold.components << " component(s)\n";
        return 0;
    } catch (const ImmersionViolation& e) {
        io.err << "immersion violation: " << e.what() << "\n";
        return 1;
    }
}

int cmd_verify_imm(const Io& io, const std::string& spec, int resolution, bool serial, int lift_sign) {
    auto s = immersion_at(spec, resolution);
    if (lift_sign != 0) s.lift_sign = lift_sign;
    try {
        auto r = verify_theorem_imm(s, serial ? Parallelism::Serial : Parallelism::OpenMP);
        io.emit(print_report(s, r));
        io.err << (r.pass ? "PASS: " : "FAIL: ") << r.message << "\n";
        return r.pass ? 0 : 1;
    } catch (const ImmersionViolation& e) {
        io.err << "immersion violation: " << e.what() << "\n";
        return 1;
    }
}

int cmd_render(const Io& io, const std::string& path, bool orient, double size) {
    auto d = diagram_at(path);
    if (orient) {
        if (!validate(d).valid()) throw InputError(path + ": cannot orient an invalid diagram");
        auto r = solve(d);
        if (r.feasible()) d = with_orientation(d, *r.certificate);
        else io.err << "diagram is infeasible; drawn without orientation\n";
    }
    RenderOptions o;
    o.size = size;
    io.emit(render_svg(d, o));
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Singular fibre diagrams of stable maps: moves, lifts, link classes and complex tangents", "contour"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    std::string out_path;
    std::uint64_t seed = 1;
    app.add_option("--out", out_path, "Also write the structured report to this file");
    app.add_option("--seed", seed, "Seed for randomized runs");

    std::string diagram, second, kind, diagram_opt, replay, spec, svg, script_out;
    int random_steps = 0, resolution = 0, lift_sign = 0;
    bool serial = false, orient = false, search = false;
    double size = 480;
    InfeasibilitySearch search_opts;

    auto* validate_cmd = app.add_subcommand("validate", "Check the diagram invariants");
    validate_cmd->add_option("diagram", diagram)->required();

    auto* apply_cmd = app.add_subcommand("apply", "Apply a move script");
    apply_cmd->add_option("diagram", diagram)->required();
    apply_cmd->add_option("script", second, "Move script");
    apply_cmd->add_option("--random", random_steps, "Append this many random moves (see --seed)");
    apply_cmd->add_option("--script-out", script_out, "Write the moves actually applied");

    auto* sites_cmd = app.add_subcommand("sites", "List move sites in script syntax");
    sites_cmd->add_option("diagram", diagram)->required();
    sites_cmd->add_option("--kind", kind, "Only this move kind");

    auto* lift_cmd = app.add_subcommand("lift", "Solve for good orientations and rotation numbers");
    lift_cmd->add_option("diagram", diagram);
    lift_cmd->add_flag("--search", search, "Search for a smallest infeasible diagram instead");
    lift_cmd->add_option("--max-arcs", search_opts.max_arcs, "Search bound on arcs");
    lift_cmd->add_option("--max-depth", search_opts.max_depth, "Search bound on move depth");
    lift_cmd->add_option("--max-circles", search_opts.max_circles, "Search bound on circles per region");
    lift_cmd->add_flag("--prescribed", search_opts.prescribe_orientations, "Let the search prescribe orientations");

    auto* verify_cmd = app.add_subcommand("lift-verify", "Check a certificate or infeasibility witness");
    verify_cmd->add_option("diagram", diagram)->required();
    verify_cmd->add_option("proof", second)->required();

    auto* class_cmd = app.add_subcommand("links-class", "Homology class of a link, and the signed strand sum");
    class_cmd->add_option("links", diagram)->required();
    class_cmd->add_option("--diagram", diagram_opt, "Diagram whose strands the file classes");

    auto* plan_cmd = app.add_subcommand("links-plan", "Coherent band moves from a link to its target");
    plan_cmd->add_option("links", diagram)->required();
    plan_cmd->add_option("--replay", replay, "Check a saved plan instead of planning");

    auto* scan_cmd = app.add_subcommand("scan", "Scan an immersion for complex tangents and folds");
    scan_cmd->add_option("spec", spec, "Immersion spec file or builtin:NAME")->required();
    scan_cmd->add_option("--resolution", resolution, "Grid points per axis");
    scan_cmd->add_flag("--serial", serial, "Evaluate without threads");
    scan_cmd->add_option("--svg", svg, "Write a plot of both loci");

    auto* imm_cmd = app.add_subcommand("verify-imm", "Check that complex tangents and folds coincide");
    imm_cmd->add_option("spec", spec, "Immersion spec file or builtin:NAME")->required();
    imm_cmd->add_option("--resolution", resolution, "Grid points per axis");
    imm_cmd->add_flag("--serial", serial, "Evaluate without threads");
    imm_cmd->add_option("--lift-sign", lift_sign, "Override the sign of the sixth coordinate")
        ->check(CLI::IsMember({-1, 1}));

    auto* render_cmd = app.add_subcommand("render", "Draw a diagram as SVG");
    render_cmd->add_option("diagram", diagram)->required();
    render_cmd->add_flag("--orient", orient, "Solve and draw the orientation");
    render_cmd->add_option("--size", size, "Canvas size in px")->check(CLI::PositiveNumber);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        if (!app.get_subcommands().empty()) err << app.get_subcommands().front()->help();
        return 2;
    }

    Io io{out, err, out_path};
    try {
        if (*validate_cmd) return cmd_validate(io, diagram);
        if (*apply_cmd) return cmd_apply(io, diagram, second, random_steps, seed, script_out);
        if (*sites_cmd) return cmd_sites(io, diagram, kind);
        if (*lift_cmd) {
            if (search) return cmd_lift_search(io, search_opts);
            if (diagram.empty()) throw InputError("lift needs a diagram (or --search)");
            return cmd_lift(io, diagram);
        }
        if (*verify_cmd) return cmd_lift_verify(io, diagram, second);
        if (*class_cmd) return cmd_links_class(io, diagram, diagram_opt);
        if (*plan_cmd) return cmd_links_plan(io, diagram, replay);
        if (*scan_cmd) return cmd_scan(io, spec, resolution, serial, svg);
        if (*imm_cmd) return cmd_verify_imm(io, spec, resolution, serial, lift_sign);
        if (*render_cmd) return cmd_render(io, diagram, orient, size);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace contour
