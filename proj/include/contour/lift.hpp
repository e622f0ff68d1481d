#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contour/diagram.hpp"
#include "contour/homology.hpp"
#include "contour/moves.hpp"
#include "contour/smith.hpp"

namespace contour {

/// One rotation-number equation: sum of coeff * r(track) = rhs.
struct Equation {
    Id arc;
    std::vector<std::pair<std::size_t, int>> terms;  // (variable index, coefficient), sorted, no zeros
    int rhs = 0;
};

struct ConstraintSystem {
    std::vector<Id> variables;  // circle-track ids
    std::vector<Equation> equations;
};

/// Stored local sign of an arc: +1 when the high side lies left of its stored direction.
int stored_sign(const SingularDiagram& d, const FoldArc& a);

/// Equations for one sign per strand component (in strand_components order).
/// Each sign is relative to the component's traversal direction.
ConstraintSystem build_constraints(const SingularDiagram& d, const std::vector<int>& component_signs);

struct LiftCertificate {
    std::vector<int> component_signs;
    std::map<Id, int> arc_orientation;  // +1 along the stored direction
    std::map<Id, Int> rotations;        // per circle track
};

/// A rational combination y of the equations (y = multipliers / denominator)
/// with y*A integral and y*b not integral; for inconsistent systems y*A = 0.
struct InfeasibilityWitness {
    std::vector<int> component_signs;
    std::vector<Int> multipliers;
    Int denominator = 1;
    bool rational = true;  // true: y*A = 0 and y*b != 0
};

struct SolveResult {
    std::size_t components = 0;
    std::optional<LiftCertificate> certificate;
    std::vector<InfeasibilityWitness> witnesses;  // one per assignment when infeasible
    bool feasible() const { return certificate.has_value(); }
};

inline constexpr std::size_t kMaxOrientationComponents = 20;

/// First feasible assignment in enumeration order (bit i of the counter
/// set means component i is reversed), or a witness for every assignment.
/// Orientations stored on arcs are part of the input: only assignments that
/// agree with them are tried.
SolveResult solve(const SingularDiagram& d);

bool verify_certificate(const SingularDiagram& d, const LiftCertificate& c, std::string* why = nullptr);
bool verify_witness(const SingularDiagram& d, const InfeasibilityWitness& w, std::string* why = nullptr);

/// Same certificate with every sign and rotation negated.
LiftCertificate flipped(const LiftCertificate& c);

/// Copy of d with arc orientations taken from the certificate.
SingularDiagram with_orientation(const SingularDiagram& d, const LiftCertificate& c);

SingularDiagram without_orientation(const SingularDiagram& d);

inline constexpr const char* kCertificateFormat = "contour-lift/1";
std::string print_certificate(const LiftCertificate& c);
LiftCertificate parse_certificate(const std::string& text);
std::string print_witness(const SingularDiagram& d, const InfeasibilityWitness& w);

/// Machine-readable infeasibility proof: one witness per admissible assignment.
inline constexpr const char* kWitnessFormat = "contour-lift-witness/1";
std::string print_witnesses(const SingularDiagram& d, const std::vector<InfeasibilityWitness>& ws);
std::vector<InfeasibilityWitness> parse_witnesses(const std::string& text);

/// Every witness verifies and together they cover every sign assignment that
/// agrees with the stored arc orientations.
bool verify_infeasibility(const SingularDiagram& d, const std::vector<InfeasibilityWitness>& ws,
                          std::string* why = nullptr);

/// Feasibility by pure propagation, honouring stored orientations; only for
/// diagrams without indefinite arcs.
std::optional<bool> propagation_feasible(const SingularDiagram& d);

struct PreservationStep {
    std::size_t index = 0;
    MoveSite site;
    bool in_contract = true;  // coherent H1/H2/H3 variant
    bool feasible = false;
};

struct PreservationReport {
    bool initially_feasible = false;
    std::vector<PreservationStep> steps;
    /// First step that lost feasibility while in contract.
    std::optional<std::size_t> first_loss() const;
    bool any_out_of_contract() const;
};

/// The coherent repertoire: beaks merge, swallowtail creation, cusp across fold.
bool in_coherent_repertoire(const MoveSite& s);

PreservationReport check_preservation(const SingularDiagram& d, const MoveScript& script);

struct ConsequenceReport {
    bool feasible = false;
    bool consistent = true;
    ClassVector signed_sum;
    std::string message;
};

/// Signed sum of the supplied strand classes under the certificate orientation.
/// `strands` maps an arc to the class of its component, oriented along the arc's
/// stored direction; every component needs one entry.
ConsequenceReport homology_consequence(const SingularDiagram& d, const AbelianGroup& g,
                                       const std::map<Id, ClassVector>& strands);

struct InfeasibilitySearch {
    std::size_t max_arcs = 6;
    std::size_t max_depth = 3;     // move sequences generating the underlying maps
    std::size_t max_circles = 3;   // per bounded region
    bool prescribe_orientations = false;
    std::size_t budget = 2000000;  // labellings tried before giving up
};

struct InfeasibilityResult {
    std::optional<SingularDiagram> diagram;
    std::size_t maps = 0;
    std::size_t labellings = 0;
    bool exhausted = false;  // every candidate up to the bounds was tried
};

/// Exhaustive search for a valid diagram that admits no solution. Planar maps
/// come from move sequences out of the standard diagram; each is relabelled
/// with every circle count, fold type and fibre transition within bounds and,
/// if requested, every choice of prescribed strand orientations. Maps are
/// visited by arc count so the first hit is a smallest one.
InfeasibilityResult search_infeasible(const InfeasibilitySearch& opts);

}  // namespace contour
