#include <cmath>
#include <regex>
#include <sstream>

#include "contour/immersion.hpp"
#include "json.hpp"

namespace contour {

using nlohmann::json;

namespace {

// Inverse stereographic projection from the pole (0,0,0,pole).
Chart stereo_chart(const std::string& name, int pole, int resolution) {
    Chart c;
    c.name = name;
    c.lo = {-1.1, -1.1, -1.1};
    c.hi = {1.1, 1.1, 1.1};
    c.resolution = {resolution, resolution, resolution};
    c.defs = {{"s", "u*u + v*v + w*w"},
              {"x1", "2*u/(1 + s)"},
              {"x2", "2*v/(1 + s)"},
              {"x3", "2*w/(1 + s)"},
              {"x4", pole > 0 ? "(s - 1)/(s + 1)" : "(1 - s)/(1 + s)"}};
    c.sources = {"x1", "x2", "x3", "x4"};
    return c;
}

json point_json(const SampledImmersion& s, const LocusPoint& p) {
    return {{"chart", s.charts[p.chart].name},
            {"param", {p.param[0], p.param[1], p.param[2]}},
            {"indicator", p.indicator},
            {"component", p.component}};
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json locus_json(const SampledImmersion& s, const LocusSummary& l) {
    json pts = json::array();
    for (const auto& p : l.points) pts.push_back(point_json(s, p));
    return {{"components", l.components}, {"candidates", l.candidates}, {"unrefined", l.unrefined}, {"points", pts}};
}

json tol_json(const Tolerances& t) {
    return {{"refine", t.refine},       {"coincidence", t.coincidence}, {"gradient", t.gradient},
            {"overlap", t.overlap},     {"candidate", t.candidate},     {"tube", t.tube},
            {"fd_step", t.fd_step},     {"immersion", t.immersion},     {"max_candidates", t.max_candidates}};
}

void read_tol(const json& j, Tolerances& t) {
    auto rd = [&](const char* k, double& slot) {
        if (j.contains(k)) slot = j.at(k).get<double>();
    };
    rd("refine", t.refine);
    rd("coincidence", t.coincidence);
    rd("gradient", t.gradient);
    rd("overlap", t.overlap);
    rd("candidate", t.candidate);
    rd("tube", t.tube);
    rd("fd_step", t.fd_step);
    rd("immersion", t.immersion);
    if (j.contains("max_candidates")) t.max_candidates = j.at("max_candidates").get<std::size_t>();
}

json scan_json(const SampledImmersion& s, const TangentScanResult& r) {
    json j = {{"samples", r.samples},
              {"tangent", locus_json(s, r.tangent)},
              {"fold", locus_json(s, r.fold)},
              {"coincidence", number_or_null(r.coincidence)},
              {"margin", number_or_null(r.margin)},
              {"min_immersion_sigma", r.min_immersion_sigma}};
    if (r.worst) j["worst"] = point_json(s, *r.worst);
    if (r.margin_point) j["margin_point"] = point_json(s, *r.margin_point);
    return j;
}

}  // namespace

std::vector<std::string> builtin_immersion_names() { return {"round-s3", "round-s3-perturbed", "beaks-s3"}; }

SampledImmersion builtin_immersion(const std::string& name, int resolution) {
    SampledImmersion s;
    s.name = name;
    s.charts = {stereo_chart("north", 1, resolution), stereo_chart("south", -1, resolution)};
    if (name == "round-s3") {
    } else if (name == "round-s3-perturbed") {
        for (auto& c : s.charts) c.sources[2] = "x3 + 0.01*x1*x1";
    } else if (name == "beaks-s3") {
        // g1 = (x1, x2 + c*bump) with c = 0.8 and bump = x3*x4. The bump does
        // not involve x2, so (f1..f4) stays an immersion of the sphere.
        for (auto& c : s.charts) c.sources[1] = "x2 + 0.8*x3*x4";
    } else {
        throw ImmersionSpecError("unknown builtin immersion '" + name + "'");
    }
    for (auto& c : s.charts) c.compile();
    return s;
}

SampledImmersion parse_immersion(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ImmersionSpecError(std::string("malformed immersion spec: ") + e.what());
    }
    try {
        if (j.value("format", "") != kImmersionFormat)
            throw ImmersionSpecError(std::string("expected format ") + kImmersionFormat);
        SampledImmersion s;
        if (j.contains("builtin")) {
            s = builtin_immersion(j.at("builtin").get<std::string>(), j.value("resolution", 64));
        } else {
            s.name = j.value("name", "immersion");
            for (const auto& cj : j.at("charts")) {
                Chart c;
                c.name = cj.at("name").get<std::string>();
                auto lo = cj.at("lo").get<std::vector<double>>(), hi = cj.at("hi").get<std::vector<double>>();
                auto res = cj.at("resolution").get<std::vector<int>>();
                if (lo.size() != 3 || hi.size() != 3 || res.size() != 3)
                    throw ImmersionSpecError("chart '" + c.name + "': lo, hi and resolution need three entries");
                for (int k = 0; k < 3; ++k) {
                    c.lo[k] = lo[k];
                    c.hi[k] = hi[k];
                    c.resolution[k] = res[k];
                    if (!(hi[k] > lo[k]) || res[k] < 2)
                        throw ImmersionSpecError("chart '" + c.name + "': empty box or resolution below 2");
                }
                if (cj.contains("defs"))
                    for (const auto& d : cj.at("defs"))
                        c.defs.emplace_back(d.at(0).get<std::string>(), d.at(1).get<std::string>());
                auto f = cj.at("f").get<std::vector<std::string>>();
                if (f.size() != 4) throw ImmersionSpecError("chart '" + c.name + "': f needs four components");
                for (int k = 0; k < 4; ++k) c.sources[k] = f[k];
                c.analytic = cj.value("analytic", true);
                c.compile();
                s.charts.push_back(std::move(c));
            }
            if (s.charts.empty()) throw ImmersionSpecError("no charts");
        }
        if (j.contains("name")) s.name = j.at("name").get<std::string>();
        s.lift_sign = j.value("lift_sign", -1);
        if (s.lift_sign != 1 && s.lift_sign != -1) throw ImmersionSpecError("lift_sign must be 1 or -1");
        if (j.contains("tolerances")) read_tol(j.at("tolerances"), s.tol);
        return s;
    } catch (const ExprSyntaxError& e) {
        throw ImmersionSpecError(std::string("expression: ") + e.what());
    } catch (const json::exception& e) {
        throw ImmersionSpecError(std::string("malformed immersion spec: ") + e.what());
    }
}

std::string print_immersion(const SampledImmersion& s) {
    json charts = json::array();
    for (const auto& c : s.charts) {
        json defs = json::array();
        for (const auto& [n, b] : c.defs) defs.push_back({n, b});
        charts.push_back({{"name", c.name},
                          {"lo", {c.lo[0], c.lo[1], c.lo[2]}},
                          {"hi", {c.hi[0], c.hi[1], c.hi[2]}},
                          {"resolution", {c.resolution[0], c.resolution[1], c.resolution[2]}},
                          {"defs", defs},
                          {"f", {c.sources[0], c.sources[1], c.sources[2], c.sources[3]}},
                          {"analytic", c.analytic}});
    }
    json j = {{"format", kImmersionFormat},
              {"name", s.name},
              {"lift_sign", s.lift_sign},
              {"tolerances", tol_json(s.tol)},
              {"charts", charts}};
    return j.dump(2) + "\n";
}

std::string print_scan(const SampledImmersion& s, const TangentScanResult& r) {
    json j = scan_json(s, r);
    j["format"] = kScanFormat;
    j["immersion"] = s.name;
    return j.dump(2) + "\n";
}

std::string print_report(const SampledImmersion& s, const ImmersionReport& r) {
    json j = {{"format", "contour-imm-report/1"},
              {"immersion", s.name},
              {"lift_sign", s.lift_sign},
              {"pass", r.pass},
              {"vacuous", r.vacuous},
              {"message", r.message},
              {"tolerance", s.tol.coincidence},
              {"jacobians",
               {{"worst_relative", r.jacobians.worst_relative},
                {"samples", r.jacobians.samples},
                {"pass", r.jacobians.pass}}},
              {"scan", scan_json(s, r.scan)}};
    return j.dump(2) + "\n";
}

SampledImmersion reparametrized(const SampledImmersion& s, double a) {
    SampledImmersion out = s;
    out.name = s.name + "-reparametrized";
    static const std::regex var(R"(\b([uvw])\b)");
    std::ostringstream as;
    as.precision(17);
    as << a;
    for (auto& c : out.charts) {
        for (auto& [n, b] : c.defs) b = std::regex_replace(b, var, "q_$1");
        for (auto& src : c.sources) src = std::regex_replace(src, var, "q_$1");
        c.defs.insert(c.defs.begin(), {{"q_u", "u + " + as.str() + "*v*v"},
                                       {"q_v", "v + " + as.str() + "*w*w"},
                                       {"q_w", "w + " + as.str() + "*u*u"}});
        c.compile();
    }
    return out;
}

}  // namespace contour
