#include "crdtlab/commands.hpp"

#include <chrono>
#include <functional>
#include <random>

namespace crdtlab::cli {

using io::json;

namespace {

// YAML-like rendering of the report data; the text form never states anything
// the JSON form lacks.
void render_text(const json &v, std::string &out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    auto scalar = [](const json &x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
    auto is_flat = [](const json &x) {
        if (!x.is_array()) return false;
        for (const auto &e : x)
            if (e.is_structured()) return false;
        return true;
    };
    if (v.is_object()) {
        for (const auto &[k, x] : v.items()) {
            if (x.is_structured() && !(is_flat(x) && x.dump().size() < 100)) {
                out += pad + k + ":\n";
                render_text(x, out, indent + 2);
            } else if (x.is_array()) {
                std::string items;
                for (const auto &e : x) items += (items.empty() ? "" : ", ") + scalar(e);
                out += pad + k + ": [" + items + "]\n";
            } else {
                out += pad + k + ": " + scalar(x) + "\n";
            }
        }
    } else if (v.is_array()) {
        for (const auto &x : v) {
            if (x.is_object()) {
                std::string inner;
                render_text(x, inner, indent + 2);
                inner.replace(0, static_cast<std::size_t>(indent) + 2, pad + "- ");
                out += inner;
            } else if (x.is_array()) {
                std::string items;
                for (const auto &e : x) items += (items.empty() ? "" : ", ") + scalar(e);
                out += pad + "- [" + items + "]\n";
            } else {
                out += pad + "- " + scalar(x) + "\n";
            }
        }
    } else {
        out += pad + scalar(v) + "\n";
    }
}

Report finish(json data, int exit_code) {
    Report r;
    r.exit_code = exit_code;
    data["exit_code"] = exit_code;
    r.text = data.value("command", std::string("?")) + ": " + data.value("summary", std::string()) + "\n";
    json rest = data;
    rest.erase("command");
    rest.erase("summary");
    render_text(rest, r.text, 2);
    r.data = std::move(data);
    return r;
}

json input_entry(const Source &src, const std::string &bytes) {
    return {{"path", src.label}, {"digest", io::digest(bytes)}};
}

// Runs a command body, turning input errors into exit code 2 reports.
Report guarded(const std::string &command, const Options &opts, const std::function<Report(json &)> &body) {
    json data = {{"command", command}, {"inputs", json::array()}};
    auto start = std::chrono::steady_clock::now();
    Report r;
    try {
        r = body(data);
    } catch (const InputError &e) {
        data["summary"] = std::string("input error: ") + e.what();
        data["error"] = e.what();
        r = finish(data, kInputError);
    }
    if (opts.timing) {
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        r.data["timing_ms"] = ms;
        r.text += "  timing_ms: " + std::to_string(ms) + "\n";
    }
    return r;
}

io::SpecDocument load_document(const Source &src, json &data) {
    auto bytes = src.bytes();
    data["inputs"].push_back(input_entry(src, bytes));
    return io::parse_spec_document(std::string_view(bytes));
}

std::string verdict_word(bool ok) { return ok ? "pass" : "fail"; }

} // namespace

Source Source::inline_text(std::string label, std::string text) {
    Source s{std::filesystem::path()};
    s.label = std::move(label);
    s.text = std::move(text);
    return s;
}

std::string Source::bytes() const { return text ? *text : io::read_file(path); }

std::filesystem::path Source::base_dir() const { return text ? std::filesystem::path() : path.parent_path(); }

json validation_json(const FiniteCrdtSpec &spec, const ValidationReport &r) {
    auto issues = [](const std::vector<ValidationIssue> &list) {
        json out = json::array();
        for (const auto &i : list) out.push_back({{"message", i.message}, {"states", i.states}});
        return out;
    };
    return {{"states", spec.state_count()},
            {"ops", spec.op_count()},
            {"valid", r.ok()},
            {"errors", issues(r.errors)},
            {"warnings", issues(r.warnings)}};
}

json axioms_json(const FiniteCrdtSpec &spec, const AxiomReport &r) {
    json out;
    if (r.commutativity) {
        const auto &v = *r.commutativity;
        out["commutativity"] = {{"verdict", "fail"},
                                {"state", spec.state_name(v.state)},
                                {"p", spec.op_name(v.p)},
                                {"q", spec.op_name(v.q)},
                                {"reason", std::string(reason_name(v.reason))},
                                {"replays", replays(spec, v)}};
    } else {
        out["commutativity"] = {{"verdict", "pass"}};
    }
    if (r.undoability.empty()) {
        out["undoability"] = {{"verdict", "pass"}};
    } else {
        json list = json::array();
        for (const auto &v : r.undoability)
            list.push_back({{"state", spec.state_name(v.state)}, {"op", spec.op_name(v.op)}, {"replays", replays(spec, v)}});
        out["undoability"] = {{"verdict", "fail"}, {"counterexamples", list}};
    }
    return out;
}

json facts_json(const FactsReport &r) {
    json facts = json::array();
    for (const auto &f : r.facts) {
        json entry = {{"fact", f.number}, {"statement", f.statement}, {"verdict", verdict_word(f.passed)}, {"cases", f.cases}};
        if (!f.passed) entry["witness"] = f.witness;
        facts.push_back(std::move(entry));
    }
    return {{"depth", r.depth}, {"verdict", verdict_word(r.passed())}, {"facts", facts}};
}

json consequences_json(const ConsequencesReport &r) {
    json totality = {{"verdict", verdict_word(r.totality)}};
    if (!r.totality) totality["witness"] = r.totality_witness;
    json negative = {{"verdict", verdict_word(r.negative_states)}, {"depth", r.depth}, {"cases", r.negative_cases}};
    if (!r.negative_states) negative["witness"] = r.negative_witness;
    json examples = json::array();
    for (const auto &[a, s] : r.negative_examples) examples.push_back({{"action", a.to_string()}, {"state", s}});
    negative["examples"] = examples;
    return {{"all_operations_always_valid", totality}, {"negative_states_exist", negative}};
}

json decomposition_json(const CyclicDecomposition &d) {
    json torsion = json::array();
    for (const auto &t : d.torsion) torsion.push_back(io::integer_json(t));
    return {{"free_rank", d.free_rank}, {"torsion", torsion}, {"group", d.group_text()}, {"tuple", d.tuple_text()}};
}

json witness_json(const EquivalenceWitness &w) {
    json phi = json::array(), psi = json::array(), psi_prime = json::array();
    for (const auto &[s, t] : w.phi) phi.push_back({{"from", s}, {"to", t}});
    for (const auto &[p, a] : w.psi) psi.push_back({{"op", p}, {"action", a.to_string()}});
    for (const auto &[p, a] : w.psi_prime) psi_prime.push_back({{"op", p}, {"action", a.to_string()}});
    return {{"verified", true}, {"phi", phi}, {"psi", psi}, {"psi_prime", psi_prime}};
}

json analysis_json(const Analysis &a) {
    json out = {{"verdict", std::string(verdict_name(a.verdict))}};
    if (a.axioms) out["axioms"] = {{"commutativity", verdict_word(a.axioms->commutative())},
                                   {"undoability", verdict_word(a.axioms->undoable())}};
    if (a.presentation) out["presentation"] = io::presentation_to_json(*a.presentation);
    if (a.decomposition) out["decomposition"] = decomposition_json(*a.decomposition);
    if (a.counters) out["equivalent_to"] = a.counters->description;
    if (a.witness) out["witness"] = witness_json(*a.witness);
    if (a.bounded_witness) {
        const auto &b = *a.bounded_witness;
        json psi = json::array(), psi_prime = json::array();
        for (const auto &[g, act] : b.psi) psi.push_back({{"op", g}, {"action", act}});
        for (const auto &[g, act] : b.psi_prime) psi_prime.push_back({{"op", g}, {"action", act}});
        out["witness"] = {{"verified", !b.failure.has_value()},
                          {"ball", b.ball},
                          {"states_checked", b.states_checked},
                          {"transitions_checked", b.transitions_checked},
                          {"psi", psi},
                          {"psi_prime", psi_prime}};
    }
    return out;
}

json simulation_json(const sim::Scenario &sc, const sim::ScenarioResult &r) {
    json replicas = json::array();
    for (const auto &node : r.nodes) {
        json applied = json::array();
        for (const auto &e : node.applied) applied.push_back(e.to_string());
        json entry = {{"replica", node.id},
                      {"state", state_to_string(sc.kind, node.state)},
                      {"delivered", node.delivered},
                      {"pending", node.pending.size()},
                      {"applied", applied}};
        if (sc.kind.is_set_like()) {
            std::set<Element> elements(sc.kind.universe.begin(), sc.kind.universe.end());
            for (const auto &e : node.applied) {
                if (!e.element.empty()) elements.insert(e.element);
            }
            json members = json::object();
            for (const auto &e : elements) members[e] = contains(sc.kind, node.state, e);
            entry["contains"] = members;
        }
        replicas.push_back(std::move(entry));
    }
    return {{"crdt", sc.kind.describe()},
            {"messages", r.messages.size()},
            {"convergence", std::string(sim::convergence_name(r.convergence))},
            {"replicas", replicas}};
}

Report cmd_validate(const Source &src, const Options &opts) {
    return guarded("validate", opts, [&](json &data) {
        auto spec = io::resolve_finite(load_document(src, data));
        auto report = validate_spec(spec);
        data["validation"] = validation_json(spec, report);
        data["summary"] = report.ok() ? "valid (" + std::to_string(spec.state_count()) + " states, " +
                                            std::to_string(report.warnings.size()) + " warnings)"
                                      : "invalid: " + report.errors.front().message;
        return finish(data, report.ok() ? kSuccess : kNegative);
    });
}

Report cmd_check_axioms(const Source &src, const Options &opts) {
    return guarded("check-axioms", opts, [&](json &data) {
        auto spec = io::resolve_finite(load_document(src, data));
        auto validation = validate_spec(spec);
        data["validation"] = validation_json(spec, validation);
        if (!validation.ok()) {
            data["summary"] = "invalid spec: " + validation.errors.front().message;
            return finish(data, kNegative);
        }
        auto axioms = check_axioms(spec);
        data["axioms"] = axioms_json(spec, axioms);
        data["facts"] = facts_json(check_facts(spec, opts.fact_depth));
        data["consequences"] = consequences_json(check_consequences(spec, opts.fact_depth));
        if (axioms.passed())
            data["summary"] = "both axioms hold";
        else if (axioms.commutativity)
            data["summary"] = describe(spec, *axioms.commutativity);
        else
            data["summary"] = describe(spec, axioms.undoability.front());
        return finish(data, axioms.passed() ? kSuccess : kNegative);
    });
}

Report cmd_analyze(const Source &src, const Options &opts) {
    return guarded("analyze", opts, [&](json &data) {
        auto doc = load_document(src, data);
        Analysis analysis;
        if (const auto *p = std::get_if<Presentation>(&doc)) {
            analysis = analyze_presentation(*p);
        } else if (const auto *b = std::get_if<io::BuiltinSpec>(&doc); b && !io::kind_from_builtin(*b).is_finite()) {
            analysis = analyze_kind(io::kind_from_builtin(*b), opts.ball);
        } else {
            auto spec = io::resolve_finite(doc);
            analysis = analyze(spec);
            data["validation"] = validation_json(spec, analysis.validation);
            if (analysis.axioms) data["axioms"] = axioms_json(spec, *analysis.axioms);
        }
        data["summary"] = analysis.summary;
        auto body = analysis_json(analysis);
        if (data.contains("axioms")) body.erase("axioms");
        for (auto &[k, v] : body.items()) data[k] = v;
        return finish(data, analysis.verdict == Analysis::Verdict::Undoable ? kSuccess : kNegative);
    });
}

Report cmd_simulate(const Source &src, const Options &opts) {
    return guarded("simulate", opts, [&](json &data) {
        auto bytes = src.bytes();
        data["inputs"].push_back(input_entry(src, bytes));
        auto sc = io::parse_scenario(io::read_json(bytes), src.base_dir());
        if (opts.seed) sc.seed = *opts.seed;
        auto result = sim::run_scenario(sc);
        data["seed"] = sc.seed;
        auto body = simulation_json(sc, result);
        for (auto &[k, v] : body.items()) data[k] = v;

        // replay the whole message multiset in random causal orders
        bool order_independent = true;
        if (result.convergence == sim::Convergence::Converged) {
            std::mt19937_64 rng(sc.seed);
            for (std::size_t i = 0; i < opts.replay_orders; ++i) {
                auto state = sim::replay_random_order(sc.kind, sc.replicas, result.messages, rng);
                order_independent = order_independent && state == result.nodes.front().state;
            }
            data["order_independence"] = {{"orders", opts.replay_orders}, {"verdict", verdict_word(order_independent)}};
        }
        bool ok = result.convergence == sim::Convergence::Converged && order_independent;
        std::string summary(sim::convergence_name(result.convergence));
        if (sc.kind.is_set_like() && result.convergence == sim::Convergence::Converged) {
            const auto &members = data["replicas"][0]["contains"];
            std::string present;
            for (const auto &[e, in] : members.items()) present += (present.empty() ? "" : ", ") + e + (in.get<bool>() ? " present" : " absent");
            if (!present.empty()) summary += "; " + present;
        }
        data["summary"] = summary;
        return finish(data, ok ? kSuccess : kNegative);
    });
}

Report cmd_undo(const Source &src, const std::string &state, const std::string &action,
                const Options &opts) {
    return guarded("undo", opts, [&](json &data) {
        auto spec = io::resolve_finite(load_document(src, data));
        const auto &start = state.empty() ? spec.state_name(spec.initial()) : state;
        auto a = Action::parse(action);
        (void)spec.state_index(start);
        (void)spec.indices(a);
        data["state"] = start;
        data["action"] = a.to_string();
        auto axioms = check_axioms(spec);
        if (!axioms.passed()) {
            auto why = axioms.commutativity ? describe(spec, *axioms.commutativity) : describe(spec, axioms.undoability.front());
            data["summary"] = "refused: " + why;
            data["axioms"] = axioms_json(spec, axioms);
            return finish(data, kNegative);
        }
        try {
            auto u = synthesize_undo(spec, start, a);
            data["undo"] = u.to_string();
            data["length"] = u.size();
            data["summary"] = "undo = " + u.to_string();
            return finish(data, kSuccess);
        } catch (const UndoError &e) {
            if (e.cause() == UndoError::Cause::ActionNotApplicable) throw InputError(e.what());
            data["summary"] = std::string("refused: ") + e.what();
            return finish(data, kNegative);
        }
    });
}

Report cmd_equiv(const Source &a, const Source &b, const Options &opts) {
    return guarded("equiv", opts, [&](json &data) {
        auto left = io::resolve_finite(load_document(a, data));
        auto right = io::resolve_finite(load_document(b, data));
        auto refuse = [&](const FiniteCrdtSpec &spec, const std::string &name) -> std::optional<std::string> {
            auto v = validate_spec(spec);
            if (!v.ok()) return name + " is invalid: " + v.errors.front().message;
            auto ax = check_axioms(spec);
            if (ax.commutativity) return name + ": " + describe(spec, *ax.commutativity);
            if (!ax.undoable()) return name + ": " + describe(spec, ax.undoability.front());
            return std::nullopt;
        };
        for (auto why : {refuse(left, a.label), refuse(right, b.label)}) {
            if (why) {
                data["verdict"] = "refused";
                data["summary"] = "refused: " + *why;
                return finish(data, kNegative);
            }
        }
        try {
            auto w = synthesize_equivalence(left, right);
            data["verdict"] = "isomorphic";
            data["decomposition"] = decomposition_json(decompose(extract_presentation(build_action_group(left))));
            data["witness"] = witness_json(w);
            data["summary"] = "isomorphic (witness verified over all " + std::to_string(left.state_count()) + " states)";
            return finish(data, kSuccess);
        } catch (const NotIsomorphic &e) {
            data["verdict"] = "not isomorphic";
            data["decompositions"] = {decomposition_json(e.source), decomposition_json(e.target)};
            data["summary"] = "not isomorphic: " + e.source.group_text() + " vs " + e.target.group_text();
            return finish(data, kNegative);
        }
    });
}

} // namespace crdtlab::cli
