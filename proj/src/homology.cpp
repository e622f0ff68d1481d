#include "contour/homology.hpp"

#include <algorithm>
#include <limits>

#include "contour/diagram_io.hpp"

namespace contour {

namespace {

Int floor_mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

void check_length(const ClassVector& v, std::size_t n) {
    if (v.size() != n)
        throw Error("class vector has " + std::to_string(v.size()) + " entries, group has " + std::to_string(n) +
                    " generators");
}

}  // namespace

AbelianGroup::AbelianGroup(std::size_t generators, IntMatrix relations)
    : n_(generators), relations_(std::move(relations)), snf_(smith_normal_form(relations_, generators)) {}

ClassVector AbelianGroup::reduce(const ClassVector& v) const {
    check_length(v, n_);
    // y = v V; the relation lattice becomes diag(d) in y-coordinates
    ClassVector y(n_, 0);
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t i = 0; i < n_; ++i) y[j] += v[i] * snf_.v[i][j];
    for (std::size_t j = 0; j < snf_.diagonal.size(); ++j)
        if (snf_.diagonal[j] != 0) y[j] = floor_mod(y[j], snf_.diagonal[j]);
    ClassVector out(n_, 0);
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t i = 0; i < n_; ++i) out[j] += y[i] * snf_.v_inv[i][j];
    return out;
}

bool AbelianGroup::equal(const ClassVector& a, const ClassVector& b) const { return reduce(a) == reduce(b); }

bool AbelianGroup::is_zero(const ClassVector& v) const { return reduce(v) == zero(); }

std::vector<Int> AbelianGroup::invariant_factors() const {
    std::vector<Int> torsion, free;
    for (std::size_t j = 0; j < n_; ++j) {
        Int d = j < snf_.diagonal.size() ? snf_.diagonal[j] : Int(0);
        if (d == 0)
            free.push_back(0);
        else if (d != 1)
            torsion.push_back(d);
    }
    torsion.insert(torsion.end(), free.begin(), free.end());
    return torsion;
}

std::string AbelianGroup::describe() const {
    std::string out;
    for (const auto& d : invariant_factors()) {
        if (!out.empty()) out += " + ";
        out += d == 0 ? std::string("Z") : "Z/" + d.str();
    }
    return out.empty() ? "0" : out;
}

ClassVector add(const ClassVector& a, const ClassVector& b) {
    check_length(b, a.size());
    ClassVector out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
    return out;
}

ClassVector neg(const ClassVector& a) {
    ClassVector out = a;
    for (auto& x : out) x = -x;
    return out;
}

ClassVector sub(const ClassVector& a, const ClassVector& b) { return add(a, neg(b)); }

ClassVector class_of(const OrientedLinkClass& l) {
    ClassVector sum = l.group.zero();
    for (const auto& c : l.components) sum = add(sum, c);
    return l.group.reduce(sum);
}

OrientedLinkClass apply_band(const OrientedLinkClass& l, const BandMove& b) {
    OrientedLinkClass out = l;
    auto& comps = out.components;
    const auto& g = l.group;
    auto in_range = [&](std::size_t i) {
        if (i >= comps.size()) throw Error("band move index " + std::to_string(i) + " out of range");
    };
    switch (b.kind) {
        case BandMove::Kind::Merge: {
            in_range(b.i);
            in_range(b.j);
            if (b.i == b.j) throw Error("a merge band needs two distinct components");
            ClassVector merged = g.reduce(add(comps[b.i], comps[b.j]));
            const std::size_t lo = std::min(b.i, b.j), hi = std::max(b.i, b.j);
            comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(hi));
            comps[lo] = merged;
            break;
        }
        case BandMove::Kind::SelfSplit: {
            in_range(b.i);
            check_length(b.first_piece, g.generators());
            ClassVector second = g.reduce(sub(comps[b.i], b.first_piece));
            comps[b.i] = g.reduce(b.first_piece);
            comps.insert(comps.begin() + static_cast<std::ptrdiff_t>(b.i) + 1, second);
            break;
        }
        case BandMove::Kind::EraseNull:
            in_range(b.i);
            if (!g.is_zero(comps[b.i])) throw Error("only a null-homologous component can be erased");
            comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(b.i));
            break;
        case BandMove::Kind::InsertNull:
            comps.push_back(g.zero());
            break;
    }
    return out;
}

PlanResult plan(const OrientedLinkClass& l, const OrientedLinkClass& target) {
    if (!(l.group == target.group)) throw Error("links live in different groups");
    const auto& g = l.group;
    PlanResult r;
    r.witness = g.reduce(sub(class_of(l), class_of(target)));
    if (!g.is_zero(r.witness)) return r;
    MovePlan p;
    OrientedLinkClass cur = l;
    auto step = [&](BandMove b) {
        cur = apply_band(cur, b);
        p.steps.push_back(std::move(b));
    };
    if (l.components.empty() && target.components.empty()) {
        r.plan = p;
        return r;
    }
    if (cur.components.empty()) step({BandMove::Kind::InsertNull, 0, 0, {}});
    while (cur.components.size() > 1) step({BandMove::Kind::Merge, 0, 1, {}});
    if (target.components.empty()) {
        step({BandMove::Kind::EraseNull, 0, 0, {}});
    } else {
        // peel off target classes greedily; the remainder is the last one
        for (std::size_t k = 0; k + 1 < target.components.size(); ++k)
            step({BandMove::Kind::SelfSplit, k, 0, g.reduce(target.components[k])});
    }
    r.plan = p;
    return r;
}

bool replays_to(const OrientedLinkClass& l, const MovePlan& p, const OrientedLinkClass& target) {
    OrientedLinkClass cur = l;
    for (const auto& b : p.steps) cur = apply_band(cur, b);
    auto canon = [&](const std::vector<ClassVector>& v) {
        std::vector<ClassVector> out;
        for (const auto& c : v) out.push_back(l.group.reduce(c));
        std::sort(out.begin(), out.end());
        return out;
    };
    return canon(cur.components) == canon(target.components);
}

std::string format_class(const ClassVector& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
    return out + "]";
}

std::string describe(const BandMove& b) {
    switch (b.kind) {
        case BandMove::Kind::Merge: return "merge " + std::to_string(b.i) + " " + std::to_string(b.j);
        case BandMove::Kind::SelfSplit: return "split " + std::to_string(b.i) + " " + format_class(b.first_piece);
        case BandMove::Kind::EraseNull: return "erase-null " + std::to_string(b.i);
        case BandMove::Kind::InsertNull: return "insert-null";
    }
    return "?";
}

namespace {

ClassVector class_from_json(const nlohmann::json& j, std::size_t n) {
    if (!j.is_array()) throw Error("class vector must be an array");
    ClassVector v;
    for (const auto& x : j) {
        if (x.is_number_integer())
            v.emplace_back(x.get<long long>());
        else if (x.is_string())
            v.emplace_back(Int(x.get<std::string>()));
        else
            throw Error("class entries must be integers");
    }
    check_length(v, n);
    return v;
}

nlohmann::json class_to_json(const ClassVector& v) {
    auto j = nlohmann::json::array();
    for (const auto& x : v) {
        if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
            j.push_back(static_cast<long long>(x));
        else
            j.push_back(x.str());
    }
    return j;
}

}  // namespace

LinksFile parse_links(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("links file is not valid JSON: ") + e.what());
    }
    if (j.value("format", "") != kLinksFormat) throw Error(std::string("links file must declare format ") + kLinksFormat);
    LinksFile f;
    const std::size_t n = j.at("generators").get<std::size_t>();
    IntMatrix rel;
    for (const auto& row : j.value("relations", nlohmann::json::array())) rel.push_back(class_from_json(row, n));
    f.group = AbelianGroup(n, rel);
    for (const auto& c : j.value("components", nlohmann::json::array())) f.components.push_back(class_from_json(c, n));
    if (j.contains("target")) {
        f.target.emplace();
        for (const auto& c : j.at("target")) f.target->push_back(class_from_json(c, n));
    }
    for (const auto& s : j.value("strands", nlohmann::json::array()))
        f.strands[s.at("arc").get<std::string>()] = class_from_json(s.at("class"), n);
    return f;
}

std::string print_links(const LinksFile& f) {
    nlohmann::json j;
    j["format"] = kLinksFormat;
    j["generators"] = f.group.generators();
    j["relations"] = nlohmann::json::array();
    for (const auto& r : f.group.relations()) j["relations"].push_back(class_to_json(r));
    j["components"] = nlohmann::json::array();
    for (const auto& c : f.components) j["components"].push_back(class_to_json(c));
    if (f.target) {
        j["target"] = nlohmann::json::array();
        for (const auto& c : *f.target) j["target"].push_back(class_to_json(c));
    }
    if (!f.strands.empty()) {
        j["strands"] = nlohmann::json::array();
        for (const auto& [arc, c] : f.strands) j["strands"].push_back({{"arc", arc}, {"class", class_to_json(c)}});
    }
    return j.dump(2) + "\n";
}

nlohmann::json plan_to_json(const PlanResult& r) {
    nlohmann::json j;
    j["format"] = "contour-plan/1";
    j["possible"] = r.plan.has_value();
    j["witness"] = class_to_json(r.witness);
    if (r.plan) {
        j["steps"] = nlohmann::json::array();
        for (const auto& s : r.plan->steps) {
            nlohmann::json step = {{"text", describe(s)}};
            switch (s.kind) {
                case BandMove::Kind::Merge: step.update({{"kind", "merge"}, {"i", s.i}, {"j", s.j}}); break;
                case BandMove::Kind::SelfSplit:
                    step.update({{"kind", "split"}, {"i", s.i}, {"first_piece", class_to_json(s.first_piece)}});
                    break;
                case BandMove::Kind::EraseNull: step.update({{"kind", "erase-null"}, {"i", s.i}}); break;
                case BandMove::Kind::InsertNull: step["kind"] = "insert-null"; break;
            }
            j["steps"].push_back(step);
        }
    }
    return j;
}

PlanResult parse_plan(const std::string& text, std::size_t generators) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("plan is not valid JSON: ") + e.what());
    }
    if (j.value("format", "") != "contour-plan/1") throw Error("plan must declare format contour-plan/1");
    PlanResult r;
    try {
        r.witness = class_from_json(j.at("witness"), generators);
        if (j.value("possible", false)) {
            MovePlan p;
            for (const auto& st : j.at("steps")) {
                BandMove b;
                const auto kind = st.at("kind").get<std::string>();
                if (kind == "merge") {
                    b.kind = BandMove::Kind::Merge;
                    b.i = st.at("i").get<std::size_t>();
                    b.j = st.at("j").get<std::size_t>();
                } else if (kind == "split") {
                    b.kind = BandMove::Kind::SelfSplit;
                    b.i = st.at("i").get<std::size_t>();
                    b.first_piece = class_from_json(st.at("first_piece"), generators);
                } else if (kind == "erase-null") {
                    b.kind = BandMove::Kind::EraseNull;
                    b.i = st.at("i").get<std::size_t>();
                } else if (kind == "insert-null") {
                    b.kind = BandMove::Kind::InsertNull;
                } else {
                    throw Error("unknown plan step kind '" + kind + "'");
                }
                p.steps.push_back(std::move(b));
            }
            r.plan = std::move(p);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed plan: ") + e.what());
    }
    return r;
}

}  // namespace contour
