#include "crdtlab/kernel.hpp"

#include <algorithm>
#include <deque>

namespace crdtlab {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::string join_names(const std::vector<StateId> &names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += names[i];
    }
    return out;
}

} // namespace

std::string Action::to_string() const {
    if (ops.empty()) return "ε";
    std::string out;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (i) out += ",";
        out += ops[i];
    }
    return out;
}

Action Action::parse(std::string_view text) {
    text = trim(text);
    if (text.empty() || text == "ε" || text == "eps") return Action{};
    std::vector<OpName> ops;
    while (true) {
        auto comma = text.find(',');
        auto piece = trim(text.substr(0, comma));
        if (piece.empty()) throw InputError("empty op name in action '" + std::string(text) + "'");
        ops.emplace_back(piece);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return Action{std::move(ops)};
}

FiniteCrdtSpec::FiniteCrdtSpec(std::vector<StateId> states, StateId initial, std::vector<OpName> ops,
                               const std::vector<Transition> &transitions)
    : states_(std::move(states)), ops_(std::move(ops)) {
    for (StateIndex i = 0; i < states_.size(); ++i) {
        if (!state_lookup_.emplace(states_[i], i).second)
            throw InputError("duplicate state name '" + states_[i] + "'");
    }
    for (OpIndex i = 0; i < ops_.size(); ++i) {
        if (!op_lookup_.emplace(ops_[i], i).second) throw InputError("duplicate op name '" + ops_[i] + "'");
    }
    auto init = find_state(initial);
    if (!init) throw InputError("initial state '" + initial + "' is not a declared state");
    initial_ = *init;

    table_.assign(states_.size() * ops_.size(), std::nullopt);
    for (const auto &t : transitions) {
        auto from = find_state(t.from);
        if (!from) throw InputError("transition from unknown state '" + t.from + "'");
        auto op = find_op(t.op);
        if (!op) throw InputError("transition over unknown op '" + t.op + "'");
        auto to = find_state(t.to);
        if (!to) {
            dangling_.push_back(t);
            continue;
        }
        auto &slot = table_[*from * ops_.size() + *op];
        if (slot && *slot != *to)
            throw InputError("nondeterministic transition: '" + t.from + "' --" + t.op + "--> both '" +
                             states_[*slot] + "' and '" + t.to + "'");
        slot = *to;
    }
}

std::optional<StateIndex> FiniteCrdtSpec::find_state(std::string_view name) const {
    auto it = state_lookup_.find(name);
    if (it == state_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<OpIndex> FiniteCrdtSpec::find_op(std::string_view name) const {
    auto it = op_lookup_.find(name);
    if (it == op_lookup_.end()) return std::nullopt;
    return it->second;
}

StateIndex FiniteCrdtSpec::state_index(std::string_view name) const {
    if (auto s = find_state(name)) return *s;
    throw InputError("unknown state '" + std::string(name) + "'");
}

OpIndex FiniteCrdtSpec::op_index(std::string_view name) const {
    if (auto p = find_op(name)) return *p;
    throw InputError("unknown op '" + std::string(name) + "'");
}

ApplyResult FiniteCrdtSpec::run(StateIndex s, const std::vector<OpIndex> &ops) const {
    for (std::size_t i = 0; i < ops.size(); ++i) {
        auto next = step(s, ops[i]);
        if (!next) return ApplyResult::undefined(i);
        s = *next;
    }
    return ApplyResult::state(s);
}

std::vector<OpIndex> FiniteCrdtSpec::indices(const Action &a) const {
    std::vector<OpIndex> out;
    out.reserve(a.ops.size());
    for (const auto &name : a.ops) out.push_back(op_index(name));
    return out;
}

Action FiniteCrdtSpec::action(const std::vector<OpIndex> &ops) const {
    Action a;
    a.ops.reserve(ops.size());
    for (auto p : ops) a.ops.push_back(op_name(p));
    return a;
}

std::vector<Transition> FiniteCrdtSpec::transitions() const {
    std::vector<Transition> out;
    for (StateIndex s = 0; s < states_.size(); ++s) {
        for (OpIndex p = 0; p < ops_.size(); ++p) {
            if (auto t = step(s, p)) out.push_back({states_[s], ops_[p], states_[*t]});
        }
    }
    return out;
}

FiniteCrdtSpec FiniteCrdtSpec::restrict_ops(const std::vector<OpName> &keep) const {
    std::vector<Transition> kept;
    for (const auto &name : keep) {
        auto p = op_index(name);
        for (StateIndex s = 0; s < states_.size(); ++s) {
            if (auto t = step(s, p)) kept.push_back({states_[s], name, states_[*t]});
        }
    }
    auto out = FiniteCrdtSpec(states_, states_[initial_], keep, kept);
    return out;
}

ApplyResult apply_op(const FiniteCrdtSpec &spec, std::string_view state, std::string_view op) {
    auto s = spec.state_index(state);
    auto p = spec.op_index(op);
    if (auto t = spec.step(s, p)) return ApplyResult::state(*t);
    return ApplyResult::undefined(0);
}

ApplyResult apply_action(const FiniteCrdtSpec &spec, std::string_view state, const Action &a) {
    return spec.run(spec.state_index(state), spec.indices(a));
}

std::vector<StateIndex> reachable_states(const FiniteCrdtSpec &spec) {
    std::vector<bool> seen(spec.state_count(), false);
    std::vector<StateIndex> order;
    std::deque<StateIndex> queue{spec.initial()};
    seen[spec.initial()] = true;
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        order.push_back(s);
        for (OpIndex p = 0; p < spec.op_count(); ++p) {
            auto t = spec.step(s, p);
            if (t && !seen[*t]) {
                seen[*t] = true;
                queue.push_back(*t);
            }
        }
    }
    return order;
}

std::vector<bool> reachable_from(const FiniteCrdtSpec &spec, StateIndex from) {
    std::vector<bool> seen(spec.state_count(), false);
    std::vector<StateIndex> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
        auto s = stack.back();
        stack.pop_back();
        for (OpIndex p = 0; p < spec.op_count(); ++p) {
            auto t = spec.step(s, p);
            if (t && !seen[*t]) {
                seen[*t] = true;
                stack.push_back(*t);
            }
        }
    }
    return seen;
}

std::vector<std::vector<StateIndex>> duplicate_state_groups(const FiniteCrdtSpec &spec) {
    std::map<std::vector<std::optional<StateIndex>>, std::vector<StateIndex>> by_row;
    std::vector<std::vector<std::optional<StateIndex>>> rows;
    for (StateIndex s = 0; s < spec.state_count(); ++s) {
        std::vector<std::optional<StateIndex>> row;
        for (OpIndex p = 0; p < spec.op_count(); ++p) row.push_back(spec.step(s, p));
        by_row[row].push_back(s);
        rows.push_back(std::move(row));
    }
    std::vector<std::vector<StateIndex>> groups;
    std::vector<bool> emitted(spec.state_count(), false);
    for (StateIndex s = 0; s < spec.state_count(); ++s) {
        if (emitted[s]) continue;
        const auto &group = by_row[rows[s]];
        for (auto t : group) emitted[t] = true;
        if (group.size() > 1) groups.push_back(group);
    }
    return groups;
}

ValidationReport validate_spec(const FiniteCrdtSpec &spec) {
    ValidationReport report;

    for (const auto &t : spec.dangling()) {
        report.errors.push_back({ValidationIssue::Kind::DanglingTransition,
                                 "transition '" + t.from + "' --" + t.op + "--> '" + t.to +
                                     "' targets an undeclared state",
                                 {t.from}});
    }

    std::vector<bool> seen(spec.state_count(), false);
    for (auto s : reachable_states(spec)) seen[s] = true;
    std::vector<StateId> unreachable;
    for (StateIndex s = 0; s < spec.state_count(); ++s) {
        if (!seen[s]) unreachable.push_back(spec.state_name(s));
    }
    if (!unreachable.empty()) {
        report.errors.push_back({ValidationIssue::Kind::UnreachableState,
                                 "states unreachable from initial state: " + join_names(unreachable),
                                 unreachable});
    }

    for (const auto &group : duplicate_state_groups(spec)) {
        std::vector<StateId> names;
        for (auto s : group) names.push_back(spec.state_name(s));
        report.warnings.push_back({ValidationIssue::Kind::DuplicateState,
                                   "states with identical outgoing behavior: " + join_names(names), names});
    }
    return report;
}

} // namespace crdtlab
