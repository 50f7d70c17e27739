#include "crdtlab/sim.hpp"

#include <algorithm>

namespace crdtlab::sim {

namespace {

CrdtState run_effect(const EffectFn &fx, const CrdtKind &kind, const CrdtState &s, const Effect &e) {
    return fx ? fx(kind, s, e) : effect(kind, s, e);
}

bool already_seen(const ReplicaNode &node, const OpMessage &msg) {
    if (msg.seq <= node.delivered[msg.origin]) return true;
    return std::any_of(node.pending.begin(), node.pending.end(), [&](const OpMessage &m) {
        return m.origin == msg.origin && m.seq == msg.seq;
    });
}

bool deliverable(const ReplicaNode &node, const OpMessage &msg) {
    if (node.delivered[msg.origin] + 1 != msg.seq) return false;
    for (std::size_t r = 0; r < msg.deps.size(); ++r) {
        if (r != msg.origin && msg.deps[r] > node.delivered[r]) return false;
    }
    return true;
}

void apply_message(const CrdtKind &kind, ReplicaNode &node, const OpMessage &msg, const EffectFn &fx) {
    node.state = run_effect(fx, kind, node.state, msg.payload);
    node.delivered[msg.origin] = msg.seq;
    node.applied.push_back(msg.payload);
    node.history.push_back(node.state);
}

void check_message(const ReplicaNode &node, const OpMessage &msg) {
    if (msg.origin >= node.delivered.size() || msg.deps.size() != node.delivered.size())
        throw ScenarioError("message from replica " + std::to_string(msg.origin) + " does not fit a " +
                            std::to_string(node.delivered.size()) + "-replica system");
    if (msg.seq == 0) throw ScenarioError("message sequence numbers start at 1");
}

// Lowest (origin, seq) deliverable candidate, or nullptr.
template <class Range>
const OpMessage *next_deliverable(const ReplicaNode &node, const Range &candidates) {
    const OpMessage *best = nullptr;
    for (const auto &m : candidates) {
        if (m.seq <= node.delivered[m.origin] || !deliverable(node, m)) continue;
        if (!best || std::pair(m.origin, m.seq) < std::pair(best->origin, best->seq)) best = &m;
    }
    return best;
}

void drain_pending(const CrdtKind &kind, ReplicaNode &node, const EffectFn &fx) {
    while (const auto *m = next_deliverable(node, node.pending)) {
        auto msg = *m;
        node.pending.erase(node.pending.begin() + (m - node.pending.data()));
        apply_message(kind, node, msg, fx);
    }
}

} // namespace

ReplicaNode ReplicaNode::make(ReplicaId id, std::size_t replicas, const CrdtKind &kind) {
    ReplicaNode node;
    node.id = id;
    node.state = initial_state(kind);
    node.delivered.assign(replicas, 0);
    return node;
}

OpMessage local_apply(const CrdtKind &kind, ReplicaNode &node, const SourceOp &op, const EffectFn &fx) {
    OpMessage msg;
    msg.origin = node.id;
    msg.seq = node.delivered[node.id] + 1;
    msg.deps = node.delivered;
    msg.payload = prepare(kind, node.state, op, Tag{node.id, msg.seq});
    apply_message(kind, node, msg, fx);
    drain_pending(kind, node, fx);
    return msg;
}

DeliverOutcome deliver(const CrdtKind &kind, ReplicaNode &node, const OpMessage &msg, const EffectFn &fx) {
    check_message(node, msg);
    if (already_seen(node, msg)) return DeliverOutcome::Duplicate;
    if (!deliverable(node, msg)) {
        node.pending.push_back(msg);
        return DeliverOutcome::Buffered;
    }
    apply_message(kind, node, msg, fx);
    drain_pending(kind, node, fx);
    return DeliverOutcome::Applied;
}

std::string_view convergence_name(Convergence c) {
    switch (c) {
    case Convergence::Converged: return "converged";
    case Convergence::Undelivered: return "undelivered";
    case Convergence::Diverged: return "diverged";
    }
    return "?";
}

Convergence converged(const std::vector<ReplicaNode> &nodes) {
    if (nodes.empty()) return Convergence::Converged;
    for (const auto &n : nodes) {
        if (n.delivered != nodes.front().delivered || !n.pending.empty()) return Convergence::Undelivered;
    }
    for (const auto &n : nodes) {
        if (!(n.state == nodes.front().state)) return Convergence::Diverged;
    }
    return Convergence::Converged;
}

void deliver_all(const CrdtKind &kind, ReplicaNode &node, const std::vector<OpMessage> &messages,
                 const EffectFn &fx) {
    for (const auto &m : messages) check_message(node, m);
    while (true) {
        const auto *m = next_deliverable(node, messages);
        if (!m) break;
        auto msg = *m;
        std::erase_if(node.pending, [&](const OpMessage &p) { return p.origin == msg.origin && p.seq == msg.seq; });
        apply_message(kind, node, msg, fx);
    }
}

ScenarioResult run_scenario(const Scenario &sc, const EffectFn &fx) {
    if (sc.replicas == 0) throw ScenarioError("scenario needs at least one replica");
    ScenarioResult out;
    for (ReplicaId r = 0; r < sc.replicas; ++r) out.nodes.push_back(ReplicaNode::make(r, sc.replicas, sc.kind));

    auto node_at = [&](ReplicaId r) -> ReplicaNode & {
        if (r >= out.nodes.size()) throw ScenarioError("unknown replica " + std::to_string(r));
        return out.nodes[r];
    };

    for (std::size_t i = 0; i < sc.events.size(); ++i) {
        const auto &ev = sc.events[i];
        if (const auto *local = std::get_if<LocalEvent>(&ev)) {
            out.messages.push_back(local_apply(sc.kind, node_at(local->replica), local->op, fx));
        } else if (const auto *d = std::get_if<DeliverEvent>(&ev)) {
            auto &node = node_at(d->replica);
            auto it = std::find_if(out.messages.begin(), out.messages.end(), [&](const OpMessage &m) {
                return m.origin == d->origin && m.seq == d->seq;
            });
            if (it == out.messages.end())
                throw ScenarioError("event " + std::to_string(i) + ": no message " + std::to_string(d->origin) +
                                    "." + std::to_string(d->seq) + " has been sent");
            if (deliver(sc.kind, node, *it, fx) == DeliverOutcome::Duplicate)
                throw ScenarioError("event " + std::to_string(i) + ": message " + std::to_string(d->origin) + "." +
                                    std::to_string(d->seq) + " already delivered to replica " +
                                    std::to_string(d->replica));
        } else {
            for (auto &node : out.nodes) deliver_all(sc.kind, node, out.messages, fx);
        }
    }
    out.convergence = converged(out.nodes);
    return out;
}

CrdtState replay_random_order(const CrdtKind &kind, std::size_t replicas, const std::vector<OpMessage> &messages,
                              std::mt19937_64 &rng, const EffectFn &fx) {
    // A fresh observer replica outside the origin set, so no message is "own".
    auto node = ReplicaNode::make(static_cast<ReplicaId>(replicas), replicas + 1, kind);
    auto widen = [replicas](OpMessage m) {
        m.deps.resize(replicas + 1, 0);
        return m;
    };
    std::vector<OpMessage> remaining;
    for (const auto &m : messages) remaining.push_back(widen(m));
    while (!remaining.empty()) {
        std::vector<std::size_t> ready;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            if (deliverable(node, remaining[i])) ready.push_back(i);
        }
        if (ready.empty()) throw ScenarioError("message set is not causally closed");
        std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
        auto i = ready[pick(rng)];
        apply_message(kind, node, remaining[i], fx);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return node.state;
}

Scenario random_scenario(const CrdtKind &kind, std::size_t replicas, std::size_t ops, std::uint64_t seed) {
    if (replicas == 0) throw ScenarioError("scenario needs at least one replica");
    auto menu = source_ops(kind);
    if (menu.empty()) throw ScenarioError(kind.describe() + " offers no source ops (empty universe?)");

    Scenario sc{kind, replicas, seed, {}};
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> sent(replicas, 0);
    // delivered[dst][origin], tracked here only to emit plausible Deliver events
    std::vector<std::vector<std::uint64_t>> delivered(replicas, std::vector<std::uint64_t>(replicas, 0));
    std::uniform_int_distribution<std::size_t> pick_replica(0, replicas - 1);
    std::uniform_int_distribution<std::size_t> pick_op(0, menu.size() - 1);
    std::bernoulli_distribution deliver_now(0.5);

    for (std::size_t i = 0; i < ops; ++i) {
        auto r = static_cast<ReplicaId>(pick_replica(rng));
        sc.events.push_back(LocalEvent{r, menu[pick_op(rng)]});
        ++sent[r];
        delivered[r][r] = sent[r];
        while (deliver_now(rng)) {
            auto dst = pick_replica(rng);
            auto origin = pick_replica(rng);
            if (delivered[dst][origin] < sent[origin]) {
                // may arrive before its dependencies; the replica buffers it
                auto seq = delivered[dst][origin] + 1;
                delivered[dst][origin] = seq;
                sc.events.push_back(DeliverEvent{static_cast<ReplicaId>(dst), static_cast<ReplicaId>(origin), seq});
            }
        }
    }
    sc.events.push_back(DeliverAllEvent{});
    return sc;
}

} // namespace crdtlab::sim
