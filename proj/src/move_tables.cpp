#include <algorithm>

#include "contour/moves.hpp"
#include "json.hpp"

namespace contour {

namespace detail {
extern const char* const kFiberTablesJson;
}

namespace {

constexpr std::pair<MoveKind, const char*> kKindNames[] = {
    {MoveKind::LipsCreate, "LipsCreate"},
    {MoveKind::LipsRemove, "LipsRemove"},
    {MoveKind::BeaksMerge, "BeaksMerge"},
    {MoveKind::BeaksSplit, "BeaksSplit"},
    {MoveKind::SwallowtailCreate, "SwallowtailCreate"},
    {MoveKind::SwallowtailRemove, "SwallowtailRemove"},
    {MoveKind::CuspFoldCross, "CuspFoldCross"},
    {MoveKind::FoldTangency, "FoldTangency"},
    {MoveKind::TripleFold, "TripleFold"},
};

std::vector<VariantRecord> load_table() {
    auto j = nlohmann::json::parse(detail::kFiberTablesJson);
    if (j.value("format", "") != "contour-fiber-tables/1") throw Error("fiber tables have an unknown format");
    std::vector<VariantRecord> out;
    for (const auto& jv : j.at("variants")) {
        VariantRecord r;
        r.key = jv.at("key").get<std::string>();
        for (const auto& k : jv.at("kinds")) {
            auto kind = parse_move_kind(k.get<std::string>());
            if (!kind) throw Error("fiber table names unknown move kind '" + k.get<std::string>() + "'");
            r.kinds.push_back(*kind);
        }
        r.figure = jv.value("figure", "");
        r.coherent = jv.value("coherent", true);
        r.shaded_crossing = jv.value("shaded_crossing", false);
        r.new_cusps = jv.value("new_cusps", 0);
        r.new_crossings = jv.value("new_crossings", 0);
        r.shade = jv.value("shade", std::vector<std::string>{});
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

std::string to_string(MoveKind k) {
    for (const auto& [kind, name] : kKindNames)
        if (kind == k) return name;
    return "?";
}

std::optional<MoveKind> parse_move_kind(const std::string& s) {
    for (const auto& [kind, name] : kKindNames)
        if (s == name) return kind;
    return std::nullopt;
}

const std::vector<VariantRecord>& variant_table() {
    static const std::vector<VariantRecord> table = load_table();
    return table;
}

const VariantRecord& variant_record(const std::string& key) {
    for (const auto& r : variant_table())
        if (r.key == key) return r;
    throw PatternMismatch("unknown variant '" + key + "'");
}

bool variant_allows(const std::string& key, MoveKind kind) {
    for (const auto& r : variant_table())
        if (r.key == key) return std::find(r.kinds.begin(), r.kinds.end(), kind) != r.kinds.end();
    return false;
}

bool is_coherent_variant(const std::string& key) {
    for (const auto& r : variant_table())
        if (r.key == key) return r.coherent;
    return false;
}

}  // namespace contour
