#pragma once

// Rewriting primitives shared by the move implementations.

#include <map>
#include <string>
#include <vector>

#include "contour/moves.hpp"

namespace contour::detail {

/// Reverse the stored direction of an arc: swaps sides, transposes the
/// bijection, renames its vertex ends and flips a stored orientation.
void reverse_arc(SingularDiagram& d, const Id& arc);

struct SplitResult {
    // pieces in stored order; pieces[0] keeps the original id
    std::vector<Id> pieces;
    // joint j: (arriving end, leaving end) at the j-th cut point, both still free
    std::vector<std::pair<ArcEnd, ArcEnd>> joints;
};

/// Cut an arc at `cuts` interior points. A closed loop yields `cuts` pieces
/// (cyclically joined), any other arc yields `cuts + 1`.
SplitResult split_arc(SingularDiagram& d, const Id& arc, int cuts);

/// Glue `second` onto the head of `first` (both loose ends must already be
/// detached); `second` is erased. Gluing an arc to itself closes a loop.
void glue_arcs(SingularDiagram& d, const Id& first, const Id& second);

/// Remove a vertex, leaving its arc ends free.
void erase_vertex(SingularDiagram& d, const Id& vertex);

/// Half-edges of the face cycle through h.
std::vector<HalfEdge> face_cycle(const SingularDiagram& d, const HalfEdge& h);

/// Relabel every side on the cycle of h that currently reads `from` as `to`.
void relabel_cycle(SingularDiagram& d, const HalfEdge& h, const Id& from, const Id& to);

/// If half-edges a and b (both with `region` on their left) no longer share
/// a face, the face of b becomes a fresh region with the same fibre data.
void split_region_if_cut(SingularDiagram& d, const Id& region, const HalfEdge& a, const HalfEdge& b);

/// Merge region `gone` into `kept`; circles of `gone` are renamed by `rename`
/// (which must map onto circles of `kept`).
void merge_regions(SingularDiagram& d, const Id& kept, const Id& gone, const std::map<Id, Id>& rename);

/// Identity bijection on the given circles, skipping `except`.
std::vector<std::pair<Id, Id>> identity_pairs(const std::vector<Id>& circles, const std::vector<Id>& except = {});

/// Circle of `to` paired with `c` of `from` by the arc's bijection, if any.
std::optional<Id> bijected(const FoldArc& a, const Id& from_region, const Id& c);

/// Arc sides as seen from one region: the other region.
Id other_side(const FoldArc& a, const Id& region);

/// Circles of the arc's special on the given side.
std::vector<Id> special_on(const SingularDiagram& d, const FoldArc& a, const Id& side);

/// Every fibre transition of the given fold type between two regions whose
/// counts differ by one (empty otherwise), in a fixed order.
std::vector<FiberTransition> transition_options(const std::vector<Id>& left, const std::vector<Id>& right,
                                                FoldType type);

/// Spread stored orientations along strand components; components that would
/// need both signs lose their orientations.
void propagate_orientations(SingularDiagram& d);

/// Mark circles of `region` that vanish on an adjacent definite arc as shaded.
void shade_vanishing(SingularDiagram& d, const Id& region);

/// An arc seen from one of its regions.
struct Change {
    FoldType type = FoldType::Definite;
    std::map<Id, Id> bij;  // from-circle -> to-circle
    std::vector<Id> from_special, to_special;
    bool from_high = false;
};

Change view(const SingularDiagram& d, const FoldArc& a, const Id& from);
FiberTransition to_transition(const Change& c, bool from_is_left);

/// Region X with two independent changes a (X -> SA) and b (X -> SB): the
/// fourth region W = X with both applied, the a-parallel change SB -> W and
/// the b-parallel change SA -> W. Throws PatternMismatch if the changes share
/// a circle of X.
struct Square {
    std::vector<Id> w;
    Change a_par;
    Change b_par;
};
Square make_square(const std::vector<Id>& x, const Change& a, const Change& b);

// Individual rewrites; each returns the variant key it realized.
std::string lips_create(SingularDiagram& d, const MoveSite& s);
std::string lips_remove(SingularDiagram& d, const MoveSite& s);
std::string beaks_merge(SingularDiagram& d, const MoveSite& s);
std::string beaks_split(SingularDiagram& d, const MoveSite& s);
std::string swallowtail_create(SingularDiagram& d, const MoveSite& s);
std::string swallowtail_remove(SingularDiagram& d, const MoveSite& s);
std::string cusp_fold_cross(SingularDiagram& d, const MoveSite& s);
std::string fold_tangency(SingularDiagram& d, const MoveSite& s);
std::string triple_fold(SingularDiagram& d, const MoveSite& s);

/// Variant key of a cusp/fold crossing site, empty if the pair is not a site.
std::vector<std::string> cusp_fold_variants(const SingularDiagram& d, const Id& cusp, const Id& arc);

}  // namespace contour::detail
