#include "contour/diagram_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace contour {

using nlohmann::json;

void normalize(SingularDiagram& d) {
    for (auto& [id, r] : d.regions) {
        std::sort(r.circles.begin(), r.circles.end());
        std::sort(r.shaded.begin(), r.shaded.end());
    }
    for (auto& [id, a] : d.arcs) {
        std::sort(a.transition.bijection.begin(), a.transition.bijection.end());
        if (auto* s = std::get_if<Split>(&a.transition.special))
            if (s->high_b < s->high_a) std::swap(s->high_a, s->high_b);
    }
    for (auto& [id, c] : d.cusps)
        if (c.ends[1] < c.ends[0]) std::swap(c.ends[0], c.ends[1]);
    for (auto& [id, x] : d.crossings) {
        auto first = std::min_element(x.ends.begin(), x.ends.end());
        std::rotate(x.ends.begin(), first, x.ends.end());
    }
}

std::string format_arc_end(const ArcEnd& e) { return e.arc + ":" + to_string(e.end); }

ArcEnd parse_arc_end(const std::string& s) {
    auto colon = s.rfind(':');
    if (colon == std::string::npos) throw Error("arc end '" + s + "' must look like <arc>:tail or <arc>:head");
    std::string which = s.substr(colon + 1);
    if (which != "tail" && which != "head") throw Error("arc end '" + s + "' must end in :tail or :head");
    return ArcEnd{s.substr(0, colon), which == "tail" ? End::Tail : End::Head};
}

json diagram_to_json(const SingularDiagram& input) {
    SingularDiagram d = input;
    normalize(d);
    json j;
    j["format"] = kDiagramFormat;
    j["regions"] = json::array();
    for (const auto& [id, r] : d.regions) {
        json jr{{"id", id}, {"circles", r.circles}};
        if (r.outer) jr["outer"] = true;
        if (!r.shaded.empty()) jr["shaded"] = r.shaded;
        j["regions"].push_back(jr);
    }
    j["arcs"] = json::array();
    for (const auto& [id, a] : d.arcs) {
        json ja{{"id", id}, {"type", to_string(a.type)}, {"left", a.left}, {"right", a.right}};
        ja["bijection"] = json::array();
        for (const auto& [l, r] : a.transition.bijection) ja["bijection"].push_back({l, r});
        if (const auto* v = std::get_if<Vanish>(&a.transition.special))
            ja["vanish"] = v->circle;
        else {
            const auto& s = std::get<Split>(a.transition.special);
            ja["split"] = {{"low", s.low}, {"high", {s.high_a, s.high_b}}};
        }
        if (a.orientation) ja["orientation"] = *a.orientation;
        j["arcs"].push_back(ja);
    }
    j["cusps"] = json::array();
    for (const auto& [id, c] : d.cusps)
        j["cusps"].push_back({{"id", id}, {"ends", {format_arc_end(c.ends[0]), format_arc_end(c.ends[1])}}});
    j["crossings"] = json::array();
    for (const auto& [id, x] : d.crossings) {
        json jx{{"id", id}, {"ends", json::array()}};
        for (const auto& e : x.ends) jx["ends"].push_back(format_arc_end(e));
        if (x.shaded) jx["shaded"] = true;
        j["crossings"].push_back(jx);
    }
    return j;
}

namespace {

template <typename T>
void insert_unique(std::map<Id, T>& m, const Id& id, T value, const char* what) {
    if (!m.emplace(id, std::move(value)).second) throw Error(std::string("duplicate ") + what + " id '" + id + "'");
}

}  // namespace

SingularDiagram diagram_from_json(const json& j) {
    if (!j.is_object() || j.value("format", "") != kDiagramFormat)
        throw Error(std::string("expected \"format\": \"") + kDiagramFormat + "\"");
    SingularDiagram d;
    try {
        for (const auto& jr : j.at("regions")) {
            Region r;
            r.id = jr.at("id").get<std::string>();
            r.circles = jr.value("circles", std::vector<std::string>{});
            r.outer = jr.value("outer", false);
            r.shaded = jr.value("shaded", std::vector<std::string>{});
            insert_unique(d.regions, r.id, r, "region");
        }
        for (const auto& ja : j.at("arcs")) {
            FoldArc a;
            a.id = ja.at("id").get<std::string>();
            std::string type = ja.at("type").get<std::string>();
            if (type == "definite")
                a.type = FoldType::Definite;
            else if (type == "indefinite")
                a.type = FoldType::Indefinite;
            else
                throw Error("arc '" + a.id + "' has unknown type '" + type + "'");
            a.left = ja.at("left").get<std::string>();
            a.right = ja.at("right").get<std::string>();
            for (const auto& p : ja.value("bijection", json::array()))
                a.transition.bijection.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
            if (ja.contains("vanish") == ja.contains("split"))
                throw Error("arc '" + a.id + "' needs exactly one of \"vanish\" or \"split\"");
            if (ja.contains("vanish"))
                a.transition.special = Vanish{ja.at("vanish").get<std::string>()};
            else {
                const auto& js = ja.at("split");
                const auto& high = js.at("high");
                if (high.size() != 2) throw Error("arc '" + a.id + "' split needs two high circles");
                a.transition.special = Split{js.at("low").get<std::string>(), high.at(0).get<std::string>(),
                                             high.at(1).get<std::string>()};
            }
            if (ja.contains("orientation")) {
                int o = ja.at("orientation").get<int>();
                if (o != 1 && o != -1) throw Error("arc '" + a.id + "' orientation must be +1 or -1");
                a.orientation = o;
            }
            insert_unique(d.arcs, a.id, a, "arc");
        }
        for (const auto& jc : j.value("cusps", json::array())) {
            CuspVertex c;
            c.id = jc.at("id").get<std::string>();
            const auto& ends = jc.at("ends");
            if (ends.size() != 2) throw Error("cusp '" + c.id + "' needs two ends");
            for (int i = 0; i < 2; ++i) c.ends[i] = parse_arc_end(ends.at(i).get<std::string>());
            insert_unique(d.cusps, c.id, c, "cusp");
        }
        for (const auto& jx : j.value("crossings", json::array())) {
            CrossingVertex x;
            x.id = jx.at("id").get<std::string>();
            const auto& ends = jx.at("ends");
            if (ends.size() != 4) throw Error("crossing '" + x.id + "' needs four ends");
            for (int i = 0; i < 4; ++i) x.ends[i] = parse_arc_end(ends.at(i).get<std::string>());
            x.shaded = jx.value("shaded", false);
            insert_unique(d.crossings, x.id, x, "crossing");
        }
    } catch (const json::exception& e) {
        throw Error(std::string("malformed diagram: ") + e.what());
    }
    normalize(d);
    return d;
}

std::string print_diagram(const SingularDiagram& d) { return diagram_to_json(d).dump(2) + "\n"; }

SingularDiagram parse_diagram(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("diagram is not valid JSON: ") + e.what());
    }
    return diagram_from_json(j);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

SingularDiagram load_diagram(const std::string& path) { return parse_diagram(read_file(path)); }

void save_diagram(const SingularDiagram& d, const std::string& path) { write_file(path, print_diagram(d)); }

}  // namespace contour
