#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace contour {

using Id = std::string;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class FoldType { Definite, Indefinite };
enum class End { Tail, Head };

inline End opposite(End e) { return e == End::Tail ? End::Head : End::Tail; }

struct ArcEnd {
    Id arc;
    End end = End::Tail;
    auto operator<=>(const ArcEnd&) const = default;
};

// Circle of the high side that shrinks to a point on a definite fold.
struct Vanish {
    Id circle;
    bool operator==(const Vanish&) const = default;
};

// One circle on the low side pinched into two circles on the high side.
struct Split {
    Id low;
    Id high_a;
    Id high_b;
    bool operator==(const Split&) const = default;
};

struct FiberTransition {
    // (left circle, right circle) pairs
    std::vector<std::pair<Id, Id>> bijection;
    std::variant<Vanish, Split> special;
    bool operator==(const FiberTransition&) const = default;
};

struct FoldArc {
    Id id;
    FoldType type = FoldType::Definite;
    Id left;
    Id right;
    FiberTransition transition;
    // +1 along the stored direction, -1 against; set from a lift certificate
    std::optional<int> orientation;
    bool operator==(const FoldArc&) const = default;
};

struct CuspVertex {
    Id id;
    std::array<ArcEnd, 2> ends;
    bool operator==(const CuspVertex&) const = default;
};

// ends are listed counter-clockwise; strands pass through ends (0,2) and (1,3)
struct CrossingVertex {
    Id id;
    std::array<ArcEnd, 4> ends;
    bool shaded = false;  // osculating singular fibre over the crossing
    bool operator==(const CrossingVertex&) const = default;
};

struct Region {
    Id id;
    std::vector<Id> circles;
    bool outer = false;
    std::vector<Id> shaded;  // circles immersed with rotation number +-1
    bool operator==(const Region&) const = default;
};

/// A directed traversal of an arc: +1 tail to head, -1 head to tail.
struct HalfEdge {
    Id arc;
    int dir = 1;
    auto operator<=>(const HalfEdge&) const = default;
};

struct StrandComponent {
    // arcs in traversal order with their direction relative to the traversal
    std::vector<HalfEdge> arcs;
};

struct CircleRef {
    Id region;
    Id circle;
    auto operator<=>(const CircleRef&) const = default;
};

struct CircleTrack {
    Id id;
    std::vector<CircleRef> members;
};

struct ValidationIssue {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool valid() const { return issues.empty(); }
    bool has(const std::string& code) const;
};

class SingularDiagram {
public:
    std::map<Id, FoldArc> arcs;
    std::map<Id, CuspVertex> cusps;
    std::map<Id, CrossingVertex> crossings;
    std::map<Id, Region> regions;

    bool operator==(const SingularDiagram&) const = default;

    const FoldArc& arc(const Id& id) const;
    FoldArc& arc(const Id& id);
    const Region& region(const Id& id) const;
    Region& region(const Id& id);

    std::size_t count(const Id& region_id) const { return region(region_id).circles.size(); }
    Id outer_region() const;

    /// Vertex attachment of an arc end; nullopt for a free end of a closed loop.
    struct Attachment {
        Id vertex;
        bool is_cusp = false;
        int slot = 0;
    };
    std::optional<Attachment> attachment(const ArcEnd& e) const;

    /// The arc end continuing the strand through the vertex at e.
    std::optional<ArcEnd> through(const ArcEnd& e) const;

    /// Id not used by any arc, vertex, region; `prefix` followed by a number.
    Id fresh_id(const std::string& prefix) const;
    /// Circle id not present in the given region.
    Id fresh_circle(const Id& region_id, const std::string& prefix = "c") const;

    /// Region whose side lies to the left of the half-edge.
    Id left_of(const HalfEdge& h) const;
    Id right_of(const HalfEdge& h) const;
    HalfEdge next_on_face(const HalfEdge& h) const;

    /// Set a vertex slot to a new arc end (used while rewriting).
    void reattach(const ArcEnd& from, const ArcEnd& to);
};

/// Relation between circles of two regions induced by crossing one arc.
using CircleRelation = std::set<std::pair<Id, Id>>;

CircleRelation relation_across(const SingularDiagram& d, const Id& arc, const Id& from_region);
CircleRelation compose(const CircleRelation& a, const CircleRelation& b);

/// Which region of the arc has more circles; empty if counts tie.
std::optional<Id> high_side(const SingularDiagram& d, const FoldArc& a);
std::optional<Id> low_side(const SingularDiagram& d, const FoldArc& a);

ValidationReport validate(const SingularDiagram& d);
bool euler_fiber_check(const SingularDiagram& d);

std::vector<StrandComponent> strand_components(const SingularDiagram& d);
/// Component index of every arc together with its direction inside that component.
std::map<Id, std::pair<std::size_t, int>> strand_membership(const SingularDiagram& d);

std::vector<CircleTrack> circle_tracks(const SingularDiagram& d);
std::map<CircleRef, std::size_t> track_index(const std::vector<CircleTrack>& tracks);

/// Boundary cycles of the planar map; each half-edge lies on exactly one.
std::vector<std::vector<HalfEdge>> boundary_cycles(const SingularDiagram& d);

/// Number of connected components of the arc/vertex graph (loops count once each).
std::size_t graph_components(const SingularDiagram& d);

/// Two-region diagram of the round 3-sphere projected to a plane.
SingularDiagram standard_s3_diagram();

std::string to_string(FoldType t);
std::string to_string(End e);

}  // namespace contour
