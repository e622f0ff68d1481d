#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contour/diagram.hpp"
#include "contour/smith.hpp"
#include "json.hpp"

namespace contour {

using ClassVector = std::vector<Int>;

/// Z^n modulo the row span of an integer relation matrix.
class AbelianGroup {
public:
    AbelianGroup() = default;
    AbelianGroup(std::size_t generators, IntMatrix relations);

    std::size_t generators() const { return n_; }
    const IntMatrix& relations() const { return relations_; }
    const SmithForm& smith() const { return snf_; }

    /// Canonical representative of v modulo the relations.
    ClassVector reduce(const ClassVector& v) const;
    bool equal(const ClassVector& a, const ClassVector& b) const;
    bool is_zero(const ClassVector& v) const;
    ClassVector zero() const { return ClassVector(n_, 0); }

    /// Invariant factors other than 1, zeros (free rank) last; e.g. Z/2 + Z gives [2, 0].
    std::vector<Int> invariant_factors() const;
    std::string describe() const;

    bool operator==(const AbelianGroup& o) const { return n_ == o.n_ && relations_ == o.relations_; }

private:
    std::size_t n_ = 0;
    IntMatrix relations_;
    SmithForm snf_;
};

ClassVector add(const ClassVector& a, const ClassVector& b);
ClassVector sub(const ClassVector& a, const ClassVector& b);
ClassVector neg(const ClassVector& a);

struct OrientedLinkClass {
    AbelianGroup group;
    std::vector<ClassVector> components;
};

/// Coherent band surgeries at homology level plus the two null-component steps
/// that stand in for isotopy and trivial-circle manipulations.
struct BandMove {
    enum class Kind { Merge, SelfSplit, EraseNull, InsertNull };
    Kind kind = Kind::Merge;
    std::size_t i = 0;
    std::size_t j = 0;        // Merge partner
    ClassVector first_piece;  // SelfSplit: class of the first piece
};

ClassVector class_of(const OrientedLinkClass& l);
OrientedLinkClass apply_band(const OrientedLinkClass& l, const BandMove& b);

struct MovePlan {
    std::vector<BandMove> steps;
};

struct PlanResult {
    std::optional<MovePlan> plan;
    ClassVector witness;  // class_of(L) - class_of(target) when no plan exists
};

PlanResult plan(const OrientedLinkClass& l, const OrientedLinkClass& target);

/// Replay a plan and compare component classes with the target as multisets.
bool replays_to(const OrientedLinkClass& l, const MovePlan& p, const OrientedLinkClass& target);

std::string describe(const BandMove& b);
std::string format_class(const ClassVector& v);

/// Links file: {"format": "contour-links/1", "generators": n, "relations": [[..]],
/// "components": [[..]], "target": [[..]] (optional),
/// "strands": [{"arc": id, "class": [..]}] (optional, for the homology consequence)}.
inline constexpr const char* kLinksFormat = "contour-links/1";

struct LinksFile {
    AbelianGroup group;
    std::vector<ClassVector> components;
    std::optional<std::vector<ClassVector>> target;
    std::map<Id, ClassVector> strands;
};

LinksFile parse_links(const std::string& text);
std::string print_links(const LinksFile& f);
nlohmann::json plan_to_json(const PlanResult& r);
PlanResult parse_plan(const std::string& text, std::size_t generators);

}  // namespace contour
