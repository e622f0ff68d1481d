#pragma once

#include <optional>
#include <string>
#include <vector>

#include "contour/diagram.hpp"

namespace contour {

enum class MoveKind {
    LipsCreate,
    LipsRemove,
    BeaksMerge,
    BeaksSplit,
    SwallowtailCreate,
    SwallowtailRemove,
    CuspFoldCross,
    FoldTangency,
    TripleFold,
};

inline constexpr MoveKind kAllMoveKinds[] = {
    MoveKind::LipsCreate,        MoveKind::LipsRemove,        MoveKind::BeaksMerge,
    MoveKind::BeaksSplit,        MoveKind::SwallowtailCreate, MoveKind::SwallowtailRemove,
    MoveKind::CuspFoldCross,     MoveKind::FoldTangency,      MoveKind::TripleFold,
};

std::string to_string(MoveKind k);
std::optional<MoveKind> parse_move_kind(const std::string& s);

/// Anchors per kind:
///   LipsCreate [region, circle]     LipsRemove [lens region]
///   BeaksMerge [definite arc, indefinite arc, region between]
///   BeaksSplit [cusp, cusp]
///   SwallowtailCreate [arc]         SwallowtailRemove [triangle region]
///   CuspFoldCross [cusp, arc]       FoldTangency [arc, arc, region between]
///   TripleFold [triangle region]
struct MoveSite {
    MoveKind kind = MoveKind::LipsCreate;
    std::vector<Id> anchors;
    std::string variant;
    bool operator==(const MoveSite&) const = default;
};

using MoveScript = std::vector<MoveSite>;

class PatternMismatch : public Error {
public:
    using Error::Error;
};

class WouldViolateInvariant : public Error {
public:
    using Error::Error;
};

/// Failure while replaying a script; `index` is the 0-based failing move.
class ScriptError : public Error {
public:
    ScriptError(std::size_t index, const std::string& what)
        : Error("move " + std::to_string(index) + ": " + what), index(index) {}
    std::size_t index;
};

/// Malformed move-script text; line and column are 1-based.
class ScriptSyntaxError : public Error {
public:
    ScriptSyntaxError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line(line),
          column(column) {}
    std::size_t line;
    std::size_t column;
};

/// One record of the shipped variant table.
struct VariantRecord {
    std::string key;
    std::vector<MoveKind> kinds;
    std::string figure;
    bool coherent = true;
    bool shaded_crossing = false;
    int new_cusps = 0;
    int new_crossings = 0;
    std::vector<std::string> shade;  // roles whose vanishing circles get the shaded flag
};

const std::vector<VariantRecord>& variant_table();
const VariantRecord& variant_record(const std::string& key);
bool variant_allows(const std::string& key, MoveKind kind);

/// Variant keys of the coherent homotopy moves used by liftability preservation.
bool is_coherent_variant(const std::string& key);

std::vector<MoveSite> enumerate_sites(const SingularDiagram& d, MoveKind kind);
std::vector<MoveSite> enumerate_all_sites(const SingularDiagram& d);

SingularDiagram apply(const SingularDiagram& d, const MoveSite& site);
SingularDiagram apply_script(const SingularDiagram& d, const MoveScript& script);

/// Move-script text: one `<kind> variant=<key> anchors=<id,...>` per line, `#` comments.
MoveScript parse_script(const std::string& text);
std::string print_script(const MoveScript& script);
std::string print_site(const MoveSite& site);

}  // namespace contour
