#include "crdtlab/zoo.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace crdtlab {

bool operator==(const TupleState &a, const TupleState &b) { return a.parts == b.parts; }

std::string Tag::to_string() const { return std::to_string(replica) + "." + std::to_string(seq); }

std::string_view kind_name(Kind k) {
    switch (k) {
    case Kind::Counter: return "counter";
    case Kind::ModCounter: return "modcounter";
    case Kind::GSet: return "gset";
    case Kind::ORSet: return "orset";
    case Kind::PNSet: return "pnset";
    case Kind::TSet: return "tset";
    case Kind::Tuple: return "tuple";
    }
    return "?";
}

std::string_view opcode_name(OpCode op) {
    switch (op) {
    case OpCode::Inc: return "inc";
    case OpCode::Dec: return "dec";
    case OpCode::Add: return "add";
    case OpCode::Remove: return "remove";
    case OpCode::Toggle: return "toggle";
    }
    return "?";
}

CrdtKind CrdtKind::mod_counter(std::int64_t n) {
    if (n < 1) throw ZooError("modulus must be at least 1, got " + std::to_string(n));
    CrdtKind k{Kind::ModCounter};
    k.modulus = n;
    return k;
}

CrdtKind CrdtKind::gset(std::vector<Element> universe) {
    CrdtKind k{Kind::GSet};
    k.universe = std::move(universe);
    return k;
}

CrdtKind CrdtKind::orset(std::vector<Element> universe, std::size_t tag_pool) {
    CrdtKind k{Kind::ORSet};
    k.universe = std::move(universe);
    k.tag_pool = tag_pool;
    return k;
}

CrdtKind CrdtKind::pnset(std::vector<Element> universe) {
    CrdtKind k{Kind::PNSet};
    k.universe = std::move(universe);
    return k;
}

CrdtKind CrdtKind::tset(std::vector<Element> universe) {
    CrdtKind k{Kind::TSet};
    k.universe = std::move(universe);
    return k;
}

CrdtKind CrdtKind::tuple(std::vector<CrdtKind> components) {
    CrdtKind k{Kind::Tuple};
    k.components = std::move(components);
    return k;
}

bool CrdtKind::is_set_like() const noexcept {
    return kind == Kind::GSet || kind == Kind::ORSet || kind == Kind::PNSet || kind == Kind::TSet;
}

bool CrdtKind::is_finite() const noexcept {
    switch (kind) {
    case Kind::Counter:
    case Kind::PNSet: return false;
    case Kind::ModCounter: return true;
    case Kind::GSet:
    case Kind::TSet: return true;
    case Kind::ORSet: return tag_pool > 0;
    case Kind::Tuple:
        return std::all_of(components.begin(), components.end(), [](const auto &c) { return c.is_finite(); });
    }
    return false;
}

std::string CrdtKind::describe() const {
    auto universe_text = [this] {
        std::string out = "{";
        for (std::size_t i = 0; i < universe.size(); ++i) out += (i ? "," : "") + universe[i];
        return out + "}";
    };
    switch (kind) {
    case Kind::Counter: return "Counter";
    case Kind::ModCounter: return "ModCounter(" + std::to_string(modulus) + ")";
    case Kind::GSet: return "GSet" + universe_text();
    case Kind::ORSet:
        return "ORSet" + universe_text() + (tag_pool ? "[tags=" + std::to_string(tag_pool) + "]" : "");
    case Kind::PNSet: return "PNSet" + universe_text();
    case Kind::TSet: return "TSet" + universe_text();
    case Kind::Tuple: {
        std::string out;
        for (std::size_t i = 0; i < components.size(); ++i) out += (i ? " × " : "") + components[i].describe();
        return components.empty() ? "Tuple()" : out;
    }
    }
    return "?";
}

std::int64_t PNSetState::count(const Element &e) const {
    auto it = counts.find(e);
    return it == counts.end() ? 0 : it->second;
}

SourceOp SourceOp::parse(std::string_view text) {
    SourceOp op;
    auto colon = text.find(':');
    while (colon != std::string_view::npos) {
        auto head = text.substr(0, colon);
        std::size_t idx = 0;
        if (head.empty() || !std::all_of(head.begin(), head.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ZooError("bad tuple component index in op '" + std::string(text) + "'");
        for (char c : head) idx = idx * 10 + static_cast<std::size_t>(c - '0');
        op.path.push_back(idx);
        text.remove_prefix(colon + 1);
        colon = text.find(':');
    }
    auto space = text.find(' ');
    auto verb = text.substr(0, space);
    std::string_view arg = space == std::string_view::npos ? std::string_view{} : text.substr(space + 1);
    while (!arg.empty() && arg.front() == ' ') arg.remove_prefix(1);

    static const std::map<std::string_view, OpCode> verbs{{"inc", OpCode::Inc},
                                                          {"dec", OpCode::Dec},
                                                          {"add", OpCode::Add},
                                                          {"remove", OpCode::Remove},
                                                          {"toggle", OpCode::Toggle}};
    auto it = verbs.find(verb);
    if (it == verbs.end()) throw ZooError("unknown source op '" + std::string(text) + "'");
    op.code = it->second;
    bool takes_element = op.code != OpCode::Inc && op.code != OpCode::Dec;
    if (takes_element && arg.empty()) throw ZooError("op '" + std::string(verb) + "' needs an element");
    if (!takes_element && !arg.empty()) throw ZooError("op '" + std::string(verb) + "' takes no element");
    op.element = std::string(arg);
    return op;
}

namespace {

std::string path_prefix(const std::vector<std::size_t> &path) {
    std::string out;
    for (auto k : path) out += std::to_string(k) + ":";
    return out;
}

std::string pool_tag_name(std::uint64_t seq) {
    // i, j, k, ... as in the usual add_i / add_j notation
    if (seq >= 1 && seq <= 18) return std::string(1, static_cast<char>('i' + (seq - 1)));
    return "t" + std::to_string(seq);
}

// Finite encodings pin OR-Set tags to replica 0 and print them as letters.
std::string tag_text(const Tag &t, bool pool_letters) {
    return pool_letters ? pool_tag_name(t.seq) : t.to_string();
}

const CrdtKind &component_kind(const CrdtKind &kind, const std::vector<std::size_t> &path, std::size_t depth) {
    if (depth == path.size()) return kind;
    if (kind.kind != Kind::Tuple) throw ZooError("component path used on non-tuple kind " + kind.describe());
    if (path[depth] >= kind.components.size())
        throw ZooError("tuple component " + std::to_string(path[depth]) + " out of range");
    return component_kind(kind.components[path[depth]], path, depth + 1);
}

void check_element(const CrdtKind &kind, const Element &e) {
    if (!kind.universe.empty() && std::find(kind.universe.begin(), kind.universe.end(), e) == kind.universe.end())
        throw ZooError("element '" + e + "' is outside the universe of " + kind.describe());
}

void check_source_op(const CrdtKind &kind, OpCode code) {
    bool ok = false;
    switch (kind.kind) {
    case Kind::Counter:
    case Kind::ModCounter: ok = code == OpCode::Inc || code == OpCode::Dec; break;
    case Kind::GSet: ok = code == OpCode::Add; break;
    case Kind::ORSet:
    case Kind::PNSet: ok = code == OpCode::Add || code == OpCode::Remove; break;
    case Kind::TSet: ok = code == OpCode::Add || code == OpCode::Remove || code == OpCode::Toggle; break;
    case Kind::Tuple: ok = false; break;
    }
    if (!ok)
        throw ZooError("op '" + std::string(opcode_name(code)) + "' is not valid for " + kind.describe());
}

const CrdtState &component_state(const CrdtState &state, const std::vector<std::size_t> &path, std::size_t depth) {
    if (depth == path.size()) return state;
    const auto *tuple = std::get_if<TupleState>(&state.value);
    if (!tuple || path[depth] >= tuple->parts.size()) throw ZooError("state does not match tuple path");
    return component_state(tuple->parts[path[depth]], path, depth + 1);
}

template <class T>
const T &expect_state(const CrdtState &s, const CrdtKind &kind) {
    const auto *v = std::get_if<T>(&s.value);
    if (!v) throw ZooError("state does not belong to " + kind.describe());
    return *v;
}

CrdtState apply_leaf(const CrdtKind &kind, const CrdtState &state, const Effect &e) {
    check_source_op(kind, e.code);
    switch (kind.kind) {
    case Kind::Counter: {
        auto s = expect_state<CounterState>(state, kind);
        s.value += e.code == OpCode::Inc ? 1 : -1;
        return {s};
    }
    case Kind::ModCounter: {
        auto s = expect_state<ModCounterState>(state, kind);
        s.value = (s.value + (e.code == OpCode::Inc ? 1 : s.modulus - 1)) % s.modulus;
        return {s};
    }
    case Kind::GSet: {
        auto s = expect_state<GSetState>(state, kind);
        s.members.insert(e.element);
        return {s};
    }
    case Kind::ORSet: {
        auto s = expect_state<ORSetState>(state, kind);
        if (e.code == OpCode::Add) {
            s.added.insert({e.element, e.tag});
        } else {
            for (const auto &t : e.observed) s.removed.insert({e.element, t});
        }
        return {s};
    }
    case Kind::PNSet: {
        auto s = expect_state<PNSetState>(state, kind);
        auto next = s.count(e.element) + (e.code == OpCode::Add ? 1 : -1);
        if (next == 0)
            s.counts.erase(e.element);
        else
            s.counts[e.element] = next;
        return {s};
    }
    case Kind::TSet: {
        auto s = expect_state<TSetState>(state, kind);
        if (!s.members.erase(e.element)) s.members.insert(e.element);
        return {s};
    }
    case Kind::Tuple: break;
    }
    throw ZooError("malformed effect for " + kind.describe());
}

CrdtState apply_at(const CrdtKind &kind, const CrdtState &state, const Effect &e, std::size_t depth) {
    if (depth == e.path.size()) return apply_leaf(kind, state, e);
    if (kind.kind != Kind::Tuple) throw ZooError("effect path used on non-tuple kind " + kind.describe());
    auto tuple = expect_state<TupleState>(state, kind);
    auto k = e.path[depth];
    if (k >= kind.components.size() || k >= tuple.parts.size())
        throw ZooError("effect targets missing tuple component " + std::to_string(k));
    tuple.parts[k] = apply_at(kind.components[k], tuple.parts[k], e, depth + 1);
    return {tuple};
}

std::string leaf_state_text(const CrdtKind &kind, const CrdtState &state, bool pool_letters) {
    auto set_text = [](const std::set<Element> &s) {
        std::string out = "{";
        bool first = true;
        for (const auto &e : s) {
            out += (first ? "" : ",") + e;
            first = false;
        }
        return out + "}";
    };
    auto tagged_text = [pool_letters](const std::set<TaggedElement> &s) {
        std::string out = "{";
        bool first = true;
        for (const auto &te : s) {
            out += (first ? "" : ",") + te.element + (pool_letters ? "_" : "@") + tag_text(te.tag, pool_letters);
            first = false;
        }
        return out + "}";
    };
    switch (kind.kind) {
    case Kind::Counter: return std::to_string(expect_state<CounterState>(state, kind).value);
    case Kind::ModCounter: return std::to_string(expect_state<ModCounterState>(state, kind).value);
    case Kind::GSet: return set_text(expect_state<GSetState>(state, kind).members);
    case Kind::TSet: return set_text(expect_state<TSetState>(state, kind).members);
    case Kind::ORSet: {
        const auto &s = expect_state<ORSetState>(state, kind);
        return "+" + tagged_text(s.added) + " -" + tagged_text(s.removed);
    }
    case Kind::PNSet: {
        std::string out = "{";
        bool first = true;
        for (const auto &[e, c] : expect_state<PNSetState>(state, kind).counts) {
            out += (first ? "" : ",") + e + ":" + std::to_string(c);
            first = false;
        }
        return out + "}";
    }
    case Kind::Tuple: {
        const auto &t = expect_state<TupleState>(state, kind);
        std::string out = "(";
        for (std::size_t i = 0; i < t.parts.size(); ++i)
            out += (i ? "," : "") + leaf_state_text(kind.components.at(i), t.parts[i], pool_letters);
        return out + ")";
    }
    }
    return "?";
}

// One effect-level primitive of a finite encoding plus its causal precondition.
struct Primitive {
    std::string name;
    Effect payload;
    std::function<bool(const CrdtState &)> enabled;
};

std::vector<Primitive> primitives(const CrdtKind &kind) {
    std::vector<Primitive> out;
    auto always = [](const CrdtState &) { return true; };
    switch (kind.kind) {
    case Kind::ModCounter:
        out.push_back({"inc", Effect{{}, OpCode::Inc}, always});
        out.push_back({"dec", Effect{{}, OpCode::Dec}, always});
        break;
    case Kind::GSet:
        for (const auto &e : kind.universe) out.push_back({"add " + e, Effect{{}, OpCode::Add, e}, always});
        break;
    case Kind::TSet:
        for (const auto &e : kind.universe)
            out.push_back({"toggle " + e, Effect{{}, OpCode::Toggle, e}, always});
        break;
    case Kind::ORSet: {
        // Adds carry a pinned tag and are idempotent. A remove is only
        // deliverable after the adds it observed.
        for (const auto &e : kind.universe) {
            for (std::uint64_t seq = 1; seq <= kind.tag_pool; ++seq) {
                Effect add{{}, OpCode::Add, e, Tag{0, seq}};
                out.push_back({"add_" + pool_tag_name(seq) + " " + e, add, always});
            }
            auto pool = kind.tag_pool;
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << pool); ++mask) {
                Effect rm{{}, OpCode::Remove, e};
                std::string suffix;
                for (std::uint64_t seq = 1; seq <= pool; ++seq) {
                    if (mask & (std::uint64_t{1} << (seq - 1))) {
                        rm.observed.insert(Tag{0, seq});
                        suffix += pool_tag_name(seq);
                    }
                }
                auto enabled = [rm](const CrdtState &s) {
                    const auto &st = std::get<ORSetState>(s.value);
                    return std::all_of(rm.observed.begin(), rm.observed.end(), [&](const Tag &t) {
                        return st.added.count(TaggedElement{rm.element, t}) > 0;
                    });
                };
                out.push_back({"remove_" + suffix + " " + e, rm, enabled});
            }
        }
        break;
    }
    case Kind::Tuple:
        for (std::size_t k = 0; k < kind.components.size(); ++k) {
            for (auto prim : primitives(kind.components[k])) {
                prim.payload.path.insert(prim.payload.path.begin(), k);
                auto inner = prim.enabled;
                prim.enabled = [inner, k](const CrdtState &s) {
                    return inner(std::get<TupleState>(s.value).parts[k]);
                };
                prim.name = std::to_string(k) + ":" + prim.name;
                out.push_back(std::move(prim));
            }
        }
        break;
    case Kind::Counter:
    case Kind::PNSet: break;
    }
    return out;
}

} // namespace

std::string SourceOp::to_string() const {
    auto out = path_prefix(path) + std::string(opcode_name(code));
    if (!element.empty()) out += " " + element;
    return out;
}

std::string Effect::to_string() const {
    auto out = path_prefix(path) + std::string(opcode_name(code));
    if (code == OpCode::Add && (tag.replica != 0 || tag.seq != 0)) out += "@" + tag.to_string();
    if (code == OpCode::Remove && !observed.empty()) {
        std::string tags;
        for (const auto &t : observed) tags += (tags.empty() ? "" : ",") + t.to_string();
        out += "{" + tags + "}";
    }
    if (!element.empty()) out += " " + element;
    return out;
}

CrdtState initial_state(const CrdtKind &kind) {
    switch (kind.kind) {
    case Kind::Counter: return {CounterState{}};
    case Kind::ModCounter: return {ModCounterState{0, kind.modulus}};
    case Kind::GSet: return {GSetState{}};
    case Kind::ORSet: return {ORSetState{}};
    case Kind::PNSet: return {PNSetState{}};
    case Kind::TSet: return {TSetState{}};
    case Kind::Tuple: {
        TupleState t;
        for (const auto &c : kind.components) t.parts.push_back(initial_state(c));
        return {t};
    }
    }
    throw ZooError("unknown kind");
}

Effect prepare(const CrdtKind &kind, const CrdtState &state, const SourceOp &op, Tag fresh) {
    const auto &leaf = component_kind(kind, op.path, 0);
    check_source_op(leaf, op.code);
    if (leaf.is_set_like()) check_element(leaf, op.element);
    Effect e{op.path, op.code, op.element};
    if (leaf.kind == Kind::ORSet) {
        const auto &s = expect_state<ORSetState>(component_state(state, op.path, 0), leaf);
        if (op.code == OpCode::Add) {
            e.tag = fresh;
        } else {
            for (const auto &te : s.added) {
                if (te.element == op.element && !s.removed.count(te)) e.observed.insert(te.tag);
            }
        }
    }
    return e;
}

CrdtState effect(const CrdtKind &kind, const CrdtState &state, const Effect &e) {
    return apply_at(kind, state, e, 0);
}

bool contains(const CrdtKind &kind, const CrdtState &state, const Element &element) {
    switch (kind.kind) {
    case Kind::ORSet: {
        const auto &s = expect_state<ORSetState>(state, kind);
        for (const auto &te : s.added) {
            if (te.element == element && !s.removed.count(te)) return true;
        }
        return false;
    }
    case Kind::PNSet: return expect_state<PNSetState>(state, kind).count(element) > 0;
    case Kind::TSet: return expect_state<TSetState>(state, kind).members.count(element) > 0;
    case Kind::GSet: return expect_state<GSetState>(state, kind).members.count(element) > 0;
    default: throw ZooError(kind.describe() + " has no membership query");
    }
}

std::vector<SourceOp> source_ops(const CrdtKind &kind) {
    std::vector<SourceOp> out;
    auto element_ops = [&](std::initializer_list<OpCode> codes) {
        for (const auto &e : kind.universe) {
            for (auto c : codes) out.push_back(SourceOp{{}, c, e});
        }
    };
    switch (kind.kind) {
    case Kind::Counter:
    case Kind::ModCounter:
        out.push_back(SourceOp{{}, OpCode::Inc});
        out.push_back(SourceOp{{}, OpCode::Dec});
        break;
    case Kind::GSet: element_ops({OpCode::Add}); break;
    case Kind::ORSet:
    case Kind::PNSet: element_ops({OpCode::Add, OpCode::Remove}); break;
    case Kind::TSet: element_ops({OpCode::Add, OpCode::Remove, OpCode::Toggle}); break;
    case Kind::Tuple:
        for (std::size_t k = 0; k < kind.components.size(); ++k) {
            for (auto op : source_ops(kind.components[k])) {
                op.path.insert(op.path.begin(), k);
                out.push_back(std::move(op));
            }
        }
        break;
    }
    return out;
}

std::string state_to_string(const CrdtKind &kind, const CrdtState &state) {
    return leaf_state_text(kind, state, false);
}

FiniteCrdtSpec to_finite_spec(const CrdtKind &kind) {
    if (!kind.is_finite()) {
        throw ZooError(kind.describe() +
                       " has infinitely many states (or no finite parameters); analyze it through its "
                       "symbolic presentation instead");
    }
    auto prims = primitives(kind);
    std::vector<CrdtState> states{initial_state(kind)};
    std::vector<std::string> names{leaf_state_text(kind, states[0], true)};
    std::map<std::string, StateIndex> index{{names[0], 0}};
    std::vector<Transition> transitions;
    std::deque<StateIndex> queue{0};
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (const auto &prim : prims) {
            if (!prim.enabled(states[s])) continue;
            auto next = effect(kind, states[s], prim.payload);
            auto name = leaf_state_text(kind, next, true);
            auto [it, inserted] = index.emplace(name, states.size());
            if (inserted) {
                states.push_back(std::move(next));
                names.push_back(name);
                queue.push_back(it->second);
            }
            transitions.push_back({names[s], prim.name, name});
        }
    }
    std::vector<OpName> ops;
    for (const auto &prim : prims) ops.push_back(prim.name);
    auto initial = names[0];
    return FiniteCrdtSpec(std::move(names), std::move(initial), std::move(ops), transitions);
}

FiniteCrdtSpec tuple_spec(const std::vector<FiniteCrdtSpec> &components) {
    std::vector<OpName> ops;
    for (std::size_t k = 0; k < components.size(); ++k) {
        for (const auto &op : components[k].ops()) ops.push_back(std::to_string(k) + ":" + op);
    }
    auto name_of = [&](const std::vector<StateIndex> &parts) {
        std::string out = "(";
        for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? "," : "") + components[k].state_name(parts[k]);
        return out + ")";
    };
    std::vector<StateIndex> start;
    for (const auto &c : components) start.push_back(c.initial());
    std::map<std::vector<StateIndex>, std::size_t> seen{{start, 0}};
    std::vector<std::vector<StateIndex>> order{start};
    std::vector<Transition> transitions;
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto current = order[i];
        for (std::size_t k = 0; k < components.size(); ++k) {
            for (OpIndex p = 0; p < components[k].op_count(); ++p) {
                auto t = components[k].step(current[k], p);
                if (!t) continue;
                auto next = current;
                next[k] = *t;
                if (seen.emplace(next, order.size()).second) order.push_back(next);
                transitions.push_back(
                    {name_of(current), std::to_string(k) + ":" + components[k].op_name(p), name_of(next)});
            }
        }
    }
    std::vector<StateId> names;
    for (const auto &parts : order) names.push_back(name_of(parts));
    auto initial = names[0];
    return FiniteCrdtSpec(std::move(names), std::move(initial), std::move(ops), transitions);
}

} // namespace crdtlab
