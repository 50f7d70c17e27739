#pragma once

#include "crdtlab/axioms.hpp"
#include "crdtlab/int_matrix.hpp"
#include "crdtlab/kernel.hpp"
#include "crdtlab/zoo.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crdtlab {

/// Refusal to build a group for a spec that is not an undoable CRDT.
class GroupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The group of actions at the initial state. Each element is the class of all
/// actions reaching one state, so elements are identified with state indices.
struct ActionGroup {
    FiniteCrdtSpec spec;
    StateIndex identity = 0;
    std::vector<std::vector<StateIndex>> table;      // table[x][y] = x * y
    std::vector<StateIndex> inverse;
    std::vector<std::optional<StateIndex>> generator; // per op: class of the one-op action, if it applies at s0
    std::vector<std::vector<OpIndex>> representative; // shortest word reaching each state

    [[nodiscard]] std::size_t order() const noexcept { return table.size(); }
    /// Order of an element (smallest k ≥ 1 with x^k = identity).
    [[nodiscard]] std::size_t element_order(StateIndex x) const;
};

/// Requires both axioms (refuses with GroupError otherwise). The table is built
/// from shortest representatives and cross-checked against a second choice of
/// representatives; closure, identity, inverses, associativity and
/// commutativity are verified exhaustively.
ActionGroup build_action_group(const FiniteCrdtSpec &spec);

/// Returns the first failed group law, or nullopt.
std::optional<std::string> verify_group_laws(const ActionGroup &g);

/// Abelian group presentation: free abelian group on the generators modulo the
/// row lattice of `relations` (one row per relation).
struct Presentation {
    std::vector<std::string> generators;
    IntMatrix relations;
    /// Optional per-generator inverse generator; used to realize negative
    /// coefficients for symbolic presentations.
    std::vector<std::optional<std::size_t>> inverse_of;
};

/// Generators are the ops that apply at s0. Each non-tree edge s --p--> s·p of the
/// BFS spanning tree contributes word(s) + e_p - word(s·p).
Presentation extract_presentation(const ActionGroup &g);

/// Hand-derived presentations for zoo kinds, including the unbounded ones:
/// Counter is <inc, dec | inc + dec>, PN-Set one such pair per element.
Presentation symbolic_presentation(const CrdtKind &kind);

struct CyclicDecomposition {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion; // invariant factors, each ≥ 2, d1 | d2 | ...

    friend bool operator==(const CyclicDecomposition &, const CyclicDecomposition &) = default;
    [[nodiscard]] bool finite() const noexcept { return free_rank == 0; }
    /// Product of the invariant factors (group order when finite).
    [[nodiscard]] Integer torsion_order() const;
    /// e.g. "ℤ × ℤ_2 × ℤ_6", "0" for the trivial group.
    [[nodiscard]] std::string group_text() const;
    /// e.g. "ModCounter(2) × ModCounter(6) × Counter", "Tuple()" for the trivial group.
    [[nodiscard]] std::string tuple_text() const;
};

/// Decomposition together with the SNF data needed to map words to coordinates.
struct Decomposed {
    CyclicDecomposition decomposition;
    SnfResult snf;
    /// Columns of S (= indices into w·V) that carry torsion then free coordinates.
    std::vector<std::size_t> torsion_columns;
    std::vector<std::size_t> free_columns;

    /// Coordinates of a generator-count vector: torsion parts reduced mod d_i,
    /// followed by free parts.
    [[nodiscard]] std::vector<Integer> coordinates(const std::vector<Integer> &word) const;
};

Decomposed decompose_with_basis(const Presentation &p);
CyclicDecomposition decompose(const Presentation &p);

/// Tuple of counters realizing a decomposition. `spec` is present iff free_rank == 0;
/// ops are inc1, dec1, inc2, dec2, ... one pair per factor.
struct CounterTuple {
    CyclicDecomposition decomposition;
    std::string description;
    std::optional<FiniteCrdtSpec> spec;
};

CounterTuple counters_for(const CyclicDecomposition &d);

/// (φ, ψ, ψ') between two finite specs.
struct EquivalenceWitness {
    std::vector<std::pair<StateId, StateId>> phi;  // in source state order
    std::vector<std::pair<OpName, Action>> psi;    // source op -> target action
    std::vector<std::pair<OpName, Action>> psi_prime;
};

/// Checks the three equivalence conditions exhaustively and that φ is a bijection.
/// Returns the first failure, or nullopt.
std::optional<std::string> verify_equivalence(const FiniteCrdtSpec &source, const FiniteCrdtSpec &target,
                                              const EquivalenceWitness &w);

class NotIsomorphic : public std::runtime_error {
public:
    NotIsomorphic(CyclicDecomposition a, CyclicDecomposition b);
    CyclicDecomposition source, target;
};

/// Builds the isomorphism through SNF coordinates on both sides, then ψ/ψ' as
/// shortest (then lexicographically smallest) target actions. Throws GroupError
/// if either side is not an undoable CRDT, NotIsomorphic if the decompositions
/// differ, std::logic_error if the synthesized witness fails verification.
EquivalenceWitness synthesize_equivalence(const FiniteCrdtSpec &source, const FiniteCrdtSpec &target);

/// Witness check for a kind whose target tuple has free factors: native states
/// within `ball` steps of the initial state are mapped to counter coordinates and
/// the conditions are checked on that ball.
struct BoundedWitnessCheck {
    std::size_t ball = 0;
    std::size_t states_checked = 0;
    std::size_t transitions_checked = 0;
    std::optional<std::string> failure;
    std::vector<std::pair<std::string, std::string>> psi; // generator -> counter action
    std::vector<std::pair<std::string, std::string>> psi_prime;
};

BoundedWitnessCheck verify_symbolic_witness(const CrdtKind &kind, std::size_t ball);

struct Analysis {
    enum class Verdict { InvalidSpec, NotCommutative, NotUndoable, Undoable };
    Verdict verdict = Verdict::InvalidSpec;
    ValidationReport validation;
    std::optional<AxiomReport> axioms;
    std::optional<Presentation> presentation;
    std::optional<CyclicDecomposition> decomposition;
    std::optional<CounterTuple> counters;
    std::optional<EquivalenceWitness> witness;
    std::optional<BoundedWitnessCheck> bounded_witness;
    std::string summary;
};

std::string_view verdict_name(Analysis::Verdict v);

/// validation → axioms → group → presentation → decomposition → counters → witness.
Analysis analyze(const FiniteCrdtSpec &spec);

/// Finite kinds go through analyze(to_finite_spec(kind)); unbounded kinds through
/// their symbolic presentation with the witness checked on a ball of radius `ball`.
Analysis analyze_kind(const CrdtKind &kind, std::size_t ball = 4);

/// Decomposition of a bare presentation (no witness possible).
Analysis analyze_presentation(const Presentation &p);

} // namespace crdtlab
