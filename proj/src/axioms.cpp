#include "crdtlab/axioms.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace crdtlab {

std::string_view reason_name(CommutativityViolation::Reason r) {
    switch (r) {
    case CommutativityViolation::Reason::PqUndefined: return "pq-undefined";
    case CommutativityViolation::Reason::QpUndefined: return "qp-undefined";
    case CommutativityViolation::Reason::ResultsDiffer: return "results-differ";
    }
    return "?";
}

std::optional<CommutativityViolation> check_commutativity(const FiniteCrdtSpec &spec) {
    using Reason = CommutativityViolation::Reason;
    for (StateIndex s = 0; s < spec.state_count(); ++s) {
        for (OpIndex p = 0; p < spec.op_count(); ++p) {
            auto sp = spec.step(s, p);
            if (!sp) continue;
            for (OpIndex q = 0; q < spec.op_count(); ++q) {
                auto sq = spec.step(s, q);
                if (!sq) continue;
                auto spq = spec.step(*sp, q);
                if (!spq) return CommutativityViolation{s, p, q, Reason::PqUndefined};
                auto sqp = spec.step(*sq, p);
                if (!sqp) return CommutativityViolation{s, p, q, Reason::QpUndefined};
                if (*spq != *sqp) return CommutativityViolation{s, p, q, Reason::ResultsDiffer};
            }
        }
    }
    return std::nullopt;
}

std::vector<UndoabilityViolation> check_undoability(const FiniteCrdtSpec &spec) {
    std::vector<UndoabilityViolation> out;
    std::vector<std::optional<std::vector<bool>>> reach(spec.state_count());
    for (StateIndex s = 0; s < spec.state_count(); ++s) {
        for (OpIndex p = 0; p < spec.op_count(); ++p) {
            auto t = spec.step(s, p);
            if (!t) continue;
            if (!reach[*t]) reach[*t] = reachable_from(spec, *t);
            if (!(*reach[*t])[s]) out.push_back({s, p});
        }
    }
    return out;
}

bool replays(const FiniteCrdtSpec &spec, const CommutativityViolation &v) {
    const auto &s = spec.state_name(v.state);
    Action p{{spec.op_name(v.p)}}, q{{spec.op_name(v.q)}};
    if (!apply_action(spec, s, p).ok() || !apply_action(spec, s, q).ok()) return false;
    auto pq = apply_action(spec, s, p + q);
    auto qp = apply_action(spec, s, q + p);
    using Reason = CommutativityViolation::Reason;
    switch (v.reason) {
    case Reason::PqUndefined: return !pq.ok();
    case Reason::QpUndefined: return !qp.ok();
    case Reason::ResultsDiffer: return pq.ok() && qp.ok() && pq.value() != qp.value();
    }
    return false;
}

bool replays(const FiniteCrdtSpec &spec, const UndoabilityViolation &v) {
    auto t = apply_action(spec, spec.state_name(v.state), Action{{spec.op_name(v.op)}});
    return t.ok() && !reachable_from(spec, t.value())[v.state];
}

AxiomReport check_axioms(const FiniteCrdtSpec &spec) {
    return AxiomReport{check_commutativity(spec), check_undoability(spec)};
}

std::string describe(const FiniteCrdtSpec &spec, const CommutativityViolation &v) {
    return "commutativity fails at state '" + spec.state_name(v.state) + "' for p='" + spec.op_name(v.p) +
           "', q='" + spec.op_name(v.q) + "' (" + std::string(reason_name(v.reason)) + ")";
}

std::string describe(const FiniteCrdtSpec &spec, const UndoabilityViolation &v) {
    auto t = spec.step(v.state, v.op);
    return "undoability fails at state '" + spec.state_name(v.state) + "' for op '" + spec.op_name(v.op) +
           "': no action leads from '" + (t ? spec.state_name(*t) : std::string("?")) + "' back";
}

std::vector<OpIndex> synthesize_undo(const FiniteCrdtSpec &spec, StateIndex s, const std::vector<OpIndex> &a) {
    auto applied = spec.run(s, a);
    if (!applied.ok())
        throw UndoError(UndoError::Cause::ActionNotApplicable,
                        "action '" + spec.action(a).to_string() + "' is not applicable at state '" +
                            spec.state_name(s) + "' (fails after " + std::to_string(applied.defined_prefix()) +
                            " ops)");
    auto start = applied.value();
    if (start == s) return {};

    struct Edge {
        StateIndex from;
        OpIndex op;
    };
    std::vector<std::optional<Edge>> parent(spec.state_count());
    std::vector<bool> seen(spec.state_count(), false);
    std::deque<StateIndex> queue{start};
    seen[start] = true;
    while (!queue.empty() && !seen[s]) {
        auto u = queue.front();
        queue.pop_front();
        for (OpIndex p = 0; p < spec.op_count(); ++p) {
            auto v = spec.step(u, p);
            if (!v || seen[*v]) continue;
            seen[*v] = true;
            parent[*v] = Edge{u, p};
            queue.push_back(*v);
        }
    }
    if (!seen[s]) {
        auto axioms = check_axioms(spec);
        if (!axioms.passed()) {
            auto why = axioms.commutativity ? describe(spec, *axioms.commutativity)
                                            : describe(spec, axioms.undoability.front());
            throw UndoError(UndoError::Cause::AxiomsFail, "no undo exists; the spec is not an undoable CRDT: " + why);
        }
        throw UndoError(UndoError::Cause::NoUndo, "no undo exists from state '" + spec.state_name(start) + "'");
    }
    std::vector<OpIndex> path;
    for (auto v = s; v != start; v = parent[v]->from) path.push_back(parent[v]->op);
    std::reverse(path.begin(), path.end());
    return path;
}

Action synthesize_undo(const FiniteCrdtSpec &spec, std::string_view state, const Action &a) {
    return spec.action(synthesize_undo(spec, spec.state_index(state), spec.indices(a)));
}

std::vector<std::vector<OpIndex>> all_actions_of_length(std::size_t ops, std::size_t n) {
    std::vector<std::vector<OpIndex>> out;
    if (ops == 0) {
        if (n == 0) out.emplace_back();
        return out;
    }
    std::vector<OpIndex> cur(n, 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = n;
        while (i > 0 && cur[i - 1] + 1 == ops) cur[--i] = 0;
        if (i == 0) break;
        ++cur[i - 1];
    }
    return out;
}

std::vector<std::vector<OpIndex>> all_actions_up_to(std::size_t ops, std::size_t n) {
    std::vector<std::vector<OpIndex>> out;
    for (std::size_t len = 0; len <= n; ++len) {
        auto level = all_actions_of_length(ops, len);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

bool FactsReport::passed() const {
    return std::all_of(facts.begin(), facts.end(), [](const FactResult &f) { return f.passed; });
}

namespace {

std::vector<OpIndex> concat(const std::vector<OpIndex> &a, const std::vector<OpIndex> &b) {
    auto out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

} // namespace

FactsReport check_facts(const FiniteCrdtSpec &spec, std::size_t depth) {
    FactsReport report;
    report.depth = depth;
    report.facts = {
        {1, "if a1 ≡s b1 and a2 ≡s b2 then a1a2 ≡s b1b2"},
        {2, "if s·a ok then s·aa ok"},
        {3, "if s·a ok then (s·a)·a⁻¹a⁻¹ ok"},
        {4, "if s·a ok then s·a⁻¹ ok"},
        {5, "if s·a ok then a⁻¹a ≡s aa⁻¹ ≡s ε"},
        {6, "if s·ab ok then s·b ok"},
    };
    auto fail = [&](int n, std::string witness) {
        auto &f = report.facts[static_cast<std::size_t>(n - 1)];
        if (f.passed) {
            f.passed = false;
            f.witness = std::move(witness);
        }
    };
    auto at = [&](StateIndex s, const std::vector<OpIndex> &a) {
        return "s='" + spec.state_name(s) + "', a=" + spec.action(a).to_string();
    };

    const auto actions = all_actions_up_to(spec.op_count(), depth);
    for (StateIndex s = 0; s < spec.state_count(); ++s) {
        std::vector<std::size_t> valid;
        std::vector<StateIndex> result(actions.size(), 0);
        for (std::size_t i = 0; i < actions.size(); ++i) {
            auto r = spec.run(s, actions[i]);
            if (r.ok()) {
                valid.push_back(i);
                result[i] = r.value();
            }
        }

        // Fact 1: s·(a1 a2) is defined and depends only on the classes of a1 and a2.
        std::map<std::pair<StateIndex, StateIndex>, StateIndex> product;
        for (auto i : valid) {
            for (auto j : valid) {
                ++report.facts[0].cases;
                auto r = spec.run(s, concat(actions[i], actions[j]));
                if (!r.ok()) {
                    fail(1, at(s, actions[i]) + ", b=" + spec.action(actions[j]).to_string() + ": ab undefined");
                    continue;
                }
                auto [it, inserted] = product.emplace(std::pair(result[i], result[j]), r.value());
                if (!inserted && it->second != r.value())
                    fail(1, at(s, actions[i]) + ", b=" + spec.action(actions[j]).to_string() +
                                ": concatenation depends on representatives");
            }
        }

        for (auto i : valid) {
            const auto &a = actions[i];
            ++report.facts[1].cases;
            if (!spec.run(s, concat(a, a)).ok()) fail(2, at(s, a));

            std::optional<std::vector<OpIndex>> inverse;
            try {
                inverse = synthesize_undo(spec, s, a);
            } catch (const UndoError &e) {
                for (int n = 3; n <= 5; ++n) fail(n, at(s, a) + ": " + e.what());
                continue;
            }
            const auto &u = *inverse;
            ++report.facts[2].cases;
            if (!spec.run(result[i], concat(u, u)).ok()) fail(3, at(s, a) + ", a⁻¹=" + spec.action(u).to_string());
            ++report.facts[3].cases;
            if (!spec.run(s, u).ok()) fail(4, at(s, a) + ", a⁻¹=" + spec.action(u).to_string());
            ++report.facts[4].cases;
            auto ua = spec.run(s, concat(u, a));
            auto au = spec.run(s, concat(a, u));
            if (!ua.ok() || !au.ok() || ua.value() != s || au.value() != s)
                fail(5, at(s, a) + ", a⁻¹=" + spec.action(u).to_string());
        }

        for (const auto &a : actions) {
            for (const auto &b : actions) {
                if (!spec.run(s, concat(a, b)).ok()) continue;
                ++report.facts[5].cases;
                if (!spec.run(s, b).ok()) fail(6, at(s, a) + ", b=" + spec.action(b).to_string());
            }
        }
    }
    return report;
}

ConsequencesReport check_consequences(const FiniteCrdtSpec &spec, std::size_t depth) {
    ConsequencesReport report;
    report.depth = depth;

    for (OpIndex p = 0; p < spec.op_count() && report.totality; ++p) {
        std::optional<StateIndex> applies, blocked;
        for (StateIndex s = 0; s < spec.state_count(); ++s) {
            (spec.step(s, p) ? applies : blocked) = s;
            if (applies && blocked) break;
        }
        if (applies && blocked) {
            report.totality = false;
            report.totality_witness = "op '" + spec.op_name(p) + "' applies at '" + spec.state_name(*applies) +
                                      "' but not at '" + spec.state_name(*blocked) + "'";
        }
    }

    constexpr std::size_t kMaxExamples = 16;
    const auto s0 = spec.initial();
    for (const auto &a : all_actions_up_to(spec.op_count(), depth)) {
        if (!spec.run(s0, a).ok()) continue;
        ++report.negative_cases;
        std::string problem;
        try {
            auto u = synthesize_undo(spec, s0, a);
            auto back = spec.run(s0, u);
            if (!back.ok()) {
                problem = "inverse " + spec.action(u).to_string() + " does not apply at the initial state";
            } else {
                auto again = spec.run(back.value(), a);
                if (!again.ok() || again.value() != s0)
                    problem = "state '" + spec.state_name(back.value()) + "' does not return to the initial state";
                else if (report.negative_examples.size() < kMaxExamples)
                    report.negative_examples.emplace_back(spec.action(a), spec.state_name(back.value()));
            }
        } catch (const UndoError &e) {
            problem = e.what();
        }
        if (!problem.empty() && report.negative_states) {
            report.negative_states = false;
            report.negative_witness = "a=" + spec.action(a).to_string() + ": " + problem;
        }
    }
    return report;
}

} // namespace crdtlab
