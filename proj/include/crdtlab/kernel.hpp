#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace crdtlab {

using StateId = std::string;
using OpName = std::string;
using StateIndex = std::size_t;
using OpIndex = std::size_t;

/// Raised for malformed input: unknown state/op names, structurally broken specs.
/// Distinct from an operation being undefined, which is a valid answer.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A finite sequence of primitive operations. The empty action is the identity.
struct Action {
    std::vector<OpName> ops;

    Action() = default;
    explicit Action(std::vector<OpName> o) : ops(std::move(o)) {}

    [[nodiscard]] bool empty() const noexcept { return ops.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return ops.size(); }

    friend Action operator+(const Action &a, const Action &b) {
        Action out = a;
        out.ops.insert(out.ops.end(), b.ops.begin(), b.ops.end());
        return out;
    }
    friend bool operator==(const Action &, const Action &) = default;
    friend auto operator<=>(const Action &, const Action &) = default;

    /// Comma-separated op names; "ε" for the empty action.
    [[nodiscard]] std::string to_string() const;
    /// Parses a comma-separated list. Empty string and "ε"/"eps" give the empty action.
    static Action parse(std::string_view text);
};

struct Transition {
    StateId from;
    OpName op;
    StateId to;
    friend bool operator==(const Transition &, const Transition &) = default;
};

/// Result of applying an action: a state, or Undefined with the length of the
/// longest prefix that did apply.
class ApplyResult {
public:
    struct Undefined {
        std::size_t defined_prefix = 0;
        friend bool operator==(const Undefined &, const Undefined &) = default;
    };

    static ApplyResult state(StateIndex s) { return ApplyResult(s); }
    static ApplyResult undefined(std::size_t prefix) { return ApplyResult(Undefined{prefix}); }

    [[nodiscard]] bool ok() const noexcept { return std::holds_alternative<StateIndex>(v_); }
    [[nodiscard]] StateIndex value() const { return std::get<StateIndex>(v_); }
    [[nodiscard]] std::size_t defined_prefix() const { return std::get<Undefined>(v_).defined_prefix; }

    friend bool operator==(const ApplyResult &, const ApplyResult &) = default;

private:
    explicit ApplyResult(std::variant<StateIndex, Undefined> v) : v_(std::move(v)) {}
    std::variant<StateIndex, Undefined> v_;
};

/// Explicit finite state machine: states, initial state, primitive ops and a
/// deterministic partial transition function.
///
/// Construction rejects duplicate names, an unknown initial state, transitions
/// from unknown states or over unknown ops, and nondeterminism. Transitions into
/// an unknown state are kept aside as dangling and reported by validate_spec().
class FiniteCrdtSpec {
public:
    FiniteCrdtSpec(std::vector<StateId> states, StateId initial, std::vector<OpName> ops,
                   const std::vector<Transition> &transitions);

    [[nodiscard]] const std::vector<StateId> &states() const noexcept { return states_; }
    [[nodiscard]] const std::vector<OpName> &ops() const noexcept { return ops_; }
    [[nodiscard]] StateIndex initial() const noexcept { return initial_; }
    [[nodiscard]] std::size_t state_count() const noexcept { return states_.size(); }
    [[nodiscard]] std::size_t op_count() const noexcept { return ops_.size(); }
    [[nodiscard]] const StateId &state_name(StateIndex s) const { return states_.at(s); }
    [[nodiscard]] const OpName &op_name(OpIndex p) const { return ops_.at(p); }

    [[nodiscard]] StateIndex state_index(std::string_view name) const;
    [[nodiscard]] OpIndex op_index(std::string_view name) const;
    [[nodiscard]] std::optional<StateIndex> find_state(std::string_view name) const;
    [[nodiscard]] std::optional<OpIndex> find_op(std::string_view name) const;

    /// Single step; nullopt when the op is undefined at s.
    [[nodiscard]] std::optional<StateIndex> step(StateIndex s, OpIndex p) const {
        return table_[s * ops_.size() + p];
    }
    /// Applies an op-index sequence, stopping at the first undefined step.
    [[nodiscard]] ApplyResult run(StateIndex s, const std::vector<OpIndex> &ops) const;

    [[nodiscard]] std::vector<OpIndex> indices(const Action &a) const;
    [[nodiscard]] Action action(const std::vector<OpIndex> &ops) const;

    /// All defined transitions, in (state, op) order.
    [[nodiscard]] std::vector<Transition> transitions() const;
    [[nodiscard]] const std::vector<Transition> &dangling() const noexcept { return dangling_; }

    /// Same machine with only the listed ops kept (in the given order).
    [[nodiscard]] FiniteCrdtSpec restrict_ops(const std::vector<OpName> &keep) const;

    friend bool operator==(const FiniteCrdtSpec &, const FiniteCrdtSpec &) = default;

private:
    std::vector<StateId> states_;
    std::vector<OpName> ops_;
    StateIndex initial_ = 0;
    std::map<std::string, StateIndex, std::less<>> state_lookup_;
    std::map<std::string, OpIndex, std::less<>> op_lookup_;
    std::vector<std::optional<StateIndex>> table_;
    std::vector<Transition> dangling_;
};

ApplyResult apply_op(const FiniteCrdtSpec &spec, std::string_view state, std::string_view op);
ApplyResult apply_action(const FiniteCrdtSpec &spec, std::string_view state, const Action &a);

/// Breadth-first closure of the initial state. Returned in discovery order,
/// exploring ops in declaration order.
std::vector<StateIndex> reachable_states(const FiniteCrdtSpec &spec);

/// Forward reachability from an arbitrary state; result[t] is true iff t is reachable.
std::vector<bool> reachable_from(const FiniteCrdtSpec &spec, StateIndex from);

struct ValidationIssue {
    enum class Kind { UnreachableState, DanglingTransition, DuplicateState };
    Kind kind;
    std::string message;
    std::vector<StateId> states;
};

struct ValidationReport {
    std::vector<ValidationIssue> errors;
    std::vector<ValidationIssue> warnings;

    [[nodiscard]] bool ok() const noexcept { return errors.empty(); }
};

ValidationReport validate_spec(const FiniteCrdtSpec &spec);

/// Groups of two or more states whose outgoing transitions are identical
/// (same op defined, same target), so that s·a = t·a for every nonempty action a.
std::vector<std::vector<StateIndex>> duplicate_state_groups(const FiniteCrdtSpec &spec);

} // namespace crdtlab
