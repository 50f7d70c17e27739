#pragma once

#include "crdtlab/kernel.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crdtlab {

struct CommutativityViolation {
    enum class Reason { PqUndefined, QpUndefined, ResultsDiffer };
    StateIndex state;
    OpIndex p;
    OpIndex q;
    Reason reason;

    friend bool operator==(const CommutativityViolation &, const CommutativityViolation &) = default;
};

std::string_view reason_name(CommutativityViolation::Reason r);

/// s·p is defined but s is not reachable from s·p.
struct UndoabilityViolation {
    StateIndex state;
    OpIndex op;
    friend bool operator==(const UndoabilityViolation &, const UndoabilityViolation &) = default;
};

/// Scans every (s, p, q) in state order, then p, then q. nullopt means the axiom holds.
std::optional<CommutativityViolation> check_commutativity(const FiniteCrdtSpec &spec);

/// Every violation of undoability, in (state, op) order. Empty means the axiom holds.
/// Decided exactly by reachability in the transition graph.
std::vector<UndoabilityViolation> check_undoability(const FiniteCrdtSpec &spec);

/// Replays a counterexample through apply_action; true iff it is a genuine violation.
bool replays(const FiniteCrdtSpec &spec, const CommutativityViolation &v);
bool replays(const FiniteCrdtSpec &spec, const UndoabilityViolation &v);

class UndoError : public std::runtime_error {
public:
    enum class Cause { ActionNotApplicable, AxiomsFail, NoUndo };
    UndoError(Cause c, const std::string &what) : std::runtime_error(what), cause_(c) {}
    [[nodiscard]] Cause cause() const noexcept { return cause_; }

private:
    Cause cause_;
};

/// Shortest action u with s·a·u = s; among shortest, the lexicographically
/// smallest in op declaration order. Throws UndoError when none exists.
std::vector<OpIndex> synthesize_undo(const FiniteCrdtSpec &spec, StateIndex s, const std::vector<OpIndex> &a);
Action synthesize_undo(const FiniteCrdtSpec &spec, std::string_view state, const Action &a);

struct FactResult {
    int number = 0;
    std::string statement;
    bool passed = true;
    std::size_t cases = 0;      // premises that held and were checked
    std::string witness;        // first failing instance, if any
};

struct FactsReport {
    std::size_t depth = 0;
    std::vector<FactResult> facts; // facts 1..6
    [[nodiscard]] bool passed() const;
};

/// Checks the six derived facts for every state and every action up to `depth`.
FactsReport check_facts(const FiniteCrdtSpec &spec, std::size_t depth = 3);

struct ConsequencesReport {
    std::size_t depth = 0;
    bool totality = true;           // ops valid somewhere are valid everywhere
    std::string totality_witness;   // "op p applies at s but not at t"
    bool negative_states = true;    // every action from s0 has a state leading back to s0
    std::size_t negative_cases = 0;
    std::string negative_witness;
    /// For each checked action (shortest first), the state s with s·a = s0.
    std::vector<std::pair<Action, StateId>> negative_examples;
    [[nodiscard]] bool passed() const { return totality && negative_states; }
};

ConsequencesReport check_consequences(const FiniteCrdtSpec &spec, std::size_t depth = 3);

struct AxiomReport {
    std::optional<CommutativityViolation> commutativity;
    std::vector<UndoabilityViolation> undoability;
    [[nodiscard]] bool commutative() const { return !commutativity; }
    [[nodiscard]] bool undoable() const { return undoability.empty(); }
    [[nodiscard]] bool passed() const { return commutative() && undoable(); }
};

AxiomReport check_axioms(const FiniteCrdtSpec &spec);

std::string describe(const FiniteCrdtSpec &spec, const CommutativityViolation &v);
std::string describe(const FiniteCrdtSpec &spec, const UndoabilityViolation &v);

/// All op-index sequences of length exactly n, in lexicographic order.
std::vector<std::vector<OpIndex>> all_actions_of_length(std::size_t ops, std::size_t n);
/// All op-index sequences of length at most n, shortest first.
std::vector<std::vector<OpIndex>> all_actions_up_to(std::size_t ops, std::size_t n);

} // namespace crdtlab
