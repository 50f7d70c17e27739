#pragma once

#include "crdtlab/zoo.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <variant>
#include <vector>

namespace crdtlab::sim {

/// deps[r] = number of replica r's messages causally preceding this one.
using VectorClock = std::vector<std::uint64_t>;

struct OpMessage {
    ReplicaId origin = 0;
    std::uint64_t seq = 0; // 1-based per origin
    VectorClock deps;
    Effect payload;

    friend bool operator==(const OpMessage &, const OpMessage &) = default;
};

/// Downstream function used by replicas. Defaults to crdtlab::effect; tests
/// substitute broken functions to exercise divergence detection.
using EffectFn = std::function<CrdtState(const CrdtKind &, const CrdtState &, const Effect &)>;

struct ReplicaNode {
    ReplicaId id = 0;
    CrdtState state;
    VectorClock delivered;
    std::vector<OpMessage> pending;
    std::vector<Effect> applied;        // every effect applied here, own ones included, in order
    std::vector<CrdtState> history;     // state after each applied effect

    static ReplicaNode make(ReplicaId id, std::size_t replicas, const CrdtKind &kind);
};

/// Prepares `op` against the node's state, applies the effect locally and returns the
/// broadcast message. Fresh OR-Set tags are (node id, message seq).
OpMessage local_apply(const CrdtKind &kind, ReplicaNode &node, const SourceOp &op, const EffectFn &fx = {});

enum class DeliverOutcome { Applied, Buffered, Duplicate };

/// Applies `msg` if its causal dependencies are met (then drains any pending
/// messages it enables), buffers it otherwise. Already-delivered or already-pending
/// messages are rejected as duplicates with the node unchanged.
DeliverOutcome deliver(const CrdtKind &kind, ReplicaNode &node, const OpMessage &msg, const EffectFn &fx = {});

enum class Convergence {
    Converged,
    Undelivered, // replicas have seen different message sets
    Diverged     // same messages delivered, states differ: effects failed to commute
};

std::string_view convergence_name(Convergence c);
Convergence converged(const std::vector<ReplicaNode> &nodes);

struct LocalEvent {
    ReplicaId replica = 0;
    SourceOp op;
};
struct DeliverEvent {
    ReplicaId replica = 0;
    ReplicaId origin = 0;
    std::uint64_t seq = 0;
};
struct DeliverAllEvent {};

using Event = std::variant<LocalEvent, DeliverEvent, DeliverAllEvent>;

struct Scenario {
    CrdtKind kind;
    std::size_t replicas = 1;
    std::uint64_t seed = 0;
    std::vector<Event> events;
};

class ScenarioError : public InputError {
public:
    using InputError::InputError;
};

struct ScenarioResult {
    std::vector<ReplicaNode> nodes;
    std::vector<OpMessage> messages; // every broadcast, in send order
    Convergence convergence = Convergence::Undelivered;
};

/// Deterministic replay. DeliverAll drains every replica in causal order,
/// lowest (origin, seq) first among the deliverable messages.
ScenarioResult run_scenario(const Scenario &sc, const EffectFn &fx = {});

/// Delivers every message in `messages` to `node` (skipping already delivered ones)
/// in causal order, lowest (origin, seq) first.
void deliver_all(const CrdtKind &kind, ReplicaNode &node, const std::vector<OpMessage> &messages,
                 const EffectFn &fx = {});

/// Replays a causally closed message set into a fresh replica following a random
/// causal-respecting order drawn from `rng`. Returns the final state.
CrdtState replay_random_order(const CrdtKind &kind, std::size_t replicas, const std::vector<OpMessage> &messages,
                              std::mt19937_64 &rng, const EffectFn &fx = {});

/// Random scenario: `ops` local ops spread across `replicas`, interleaved with
/// random single deliveries, ending in DeliverAll.
Scenario random_scenario(const CrdtKind &kind, std::size_t replicas, std::size_t ops, std::uint64_t seed);

} // namespace crdtlab::sim
