#include "crdtlab/spec_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace crdtlab::io {

ParseError::ParseError(const std::string &what, std::size_t l, std::size_t c)
    : InputError(l ? what + " (line " + std::to_string(l) + ", column " + std::to_string(c) + ")" : what),
      line(l), column(c) {}

json read_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        // byte offset -> line/column
        std::size_t line = 1, column = 1;
        auto limit = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < limit; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string msg = e.what();
        throw ParseError("malformed JSON: " + msg.substr(msg.find(']') == std::string::npos ? 0 : msg.find(']') + 2),
                         line, column);
    }
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

const json &field(const json &doc, const char *key, const char *where) {
    if (!doc.is_object() || !doc.contains(key))
        throw ParseError(std::string(where) + ": missing field '" + key + "'");
    return doc.at(key);
}

std::string as_string(const json &v, const std::string &what) {
    if (!v.is_string()) throw ParseError(what + " must be a string");
    return v.get<std::string>();
}

std::vector<std::string> string_list(const json &v, const std::string &what) {
    if (!v.is_array()) throw ParseError(what + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto &x : v) out.push_back(as_string(x, what + " entry"));
    return out;
}

long long as_int(const json &v, const std::string &what) {
    if (!v.is_number_integer()) throw ParseError(what + " must be an integer");
    return v.get<long long>();
}

Integer integer_from_json(const json &v, const std::string &what) {
    if (v.is_number_integer()) return Integer(v.get<long long>());
    if (v.is_string()) {
        try {
            return Integer(v.get<std::string>());
        } catch (const std::exception &) {
        }
    }
    throw ParseError(what + " must be an integer");
}

} // namespace

json integer_json(const Integer &v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

json spec_to_json(const FiniteCrdtSpec &spec) {
    json transitions = json::array();
    for (const auto &t : spec.transitions()) transitions.push_back({{"from", t.from}, {"op", t.op}, {"to", t.to}});
    for (const auto &t : spec.dangling()) transitions.push_back({{"from", t.from}, {"op", t.op}, {"to", t.to}});
    return {{"states", spec.states()},
            {"initial", spec.state_name(spec.initial())},
            {"ops", spec.ops()},
            {"transitions", transitions}};
}

FiniteCrdtSpec spec_from_json(const json &doc) {
    const char *where = "explicit spec";
    auto states = string_list(field(doc, "states", where), "states");
    auto initial = as_string(field(doc, "initial", where), "initial");
    auto ops = string_list(field(doc, "ops", where), "ops");
    const auto &list = field(doc, "transitions", where);
    if (!list.is_array()) throw ParseError("transitions must be an array");
    std::vector<Transition> transitions;
    for (std::size_t i = 0; i < list.size(); ++i) {
        auto what = "transitions[" + std::to_string(i) + "]";
        const auto &t = list[i];
        transitions.push_back({as_string(field(t, "from", what.c_str()), what + ".from"),
                               as_string(field(t, "op", what.c_str()), what + ".op"),
                               as_string(field(t, "to", what.c_str()), what + ".to")});
    }
    return FiniteCrdtSpec(std::move(states), std::move(initial), std::move(ops), transitions);
}

json presentation_to_json(const Presentation &p) {
    json rows = json::array();
    for (std::size_t r = 0; r < p.relations.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < p.relations.cols(); ++c) row.push_back(integer_json(p.relations(r, c)));
        rows.push_back(std::move(row));
    }
    return {{"generators", p.generators}, {"relations", rows}};
}

Presentation presentation_from_json(const json &doc) {
    Presentation p;
    p.generators = string_list(field(doc, "generators", "presentation"), "generators");
    const auto &rows = field(doc, "relations", "presentation");
    if (!rows.is_array()) throw ParseError("relations must be an array of integer rows");
    std::vector<std::vector<Integer>> matrix;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].is_array() || rows[r].size() != p.generators.size())
            throw ParseError("relations[" + std::to_string(r) + "] must have one entry per generator");
        std::vector<Integer> row;
        for (const auto &v : rows[r]) row.push_back(integer_from_json(v, "relations[" + std::to_string(r) + "]"));
        matrix.push_back(std::move(row));
    }
    p.relations = IntMatrix::from_rows(matrix, p.generators.size());
    p.inverse_of.assign(p.generators.size(), std::nullopt);
    return p;
}

SpecDocument parse_spec_document(const json &doc) {
    if (!doc.is_object()) throw ParseError("spec document must be a JSON object");
    if (doc.contains("builtin")) {
        BuiltinSpec b{as_string(doc.at("builtin"), "builtin")};
        if (doc.contains("params")) {
            if (!doc.at("params").is_object()) throw ParseError("params must be an object");
            b.params = doc.at("params");
        }
        kind_from_builtin(b); // reject unknown names and bad params early
        return b;
    }
    if (doc.contains("generators")) return presentation_from_json(doc);
    if (doc.contains("states")) return spec_from_json(doc);
    throw ParseError("spec document needs 'builtin', 'states' or 'generators'");
}

SpecDocument parse_spec_document(std::string_view text) { return parse_spec_document(read_json(text)); }

json to_json(const SpecDocument &doc) {
    return std::visit(
        [](const auto &d) -> json {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, BuiltinSpec>)
                return {{"builtin", d.name}, {"params", d.params}};
            else if constexpr (std::is_same_v<T, FiniteCrdtSpec>)
                return spec_to_json(d);
            else
                return presentation_to_json(d);
        },
        doc);
}

CrdtKind kind_from_builtin(const BuiltinSpec &b) {
    const auto &params = b.params;
    auto universe = [&] {
        if (!params.contains("universe")) return std::vector<Element>{};
        return string_list(params.at("universe"), b.name + " universe");
    };
    if (b.name == "counter") return CrdtKind::counter();
    if (b.name == "modcounter") {
        if (!params.contains("n")) throw ParseError("modcounter needs params.n");
        auto n = as_int(params.at("n"), "modcounter n");
        if (n < 1) throw ParseError("modcounter n must be at least 1");
        return CrdtKind::mod_counter(n);
    }
    if (b.name == "gset") return CrdtKind::gset(universe());
    if (b.name == "tset") return CrdtKind::tset(universe());
    if (b.name == "pnset") return CrdtKind::pnset(universe());
    if (b.name == "orset") {
        long long tags = params.contains("tags") ? as_int(params.at("tags"), "orset tags") : 0;
        if (tags < 0 || tags > 8) throw ParseError("orset tags must be between 0 and 8");
        return CrdtKind::orset(universe(), static_cast<std::size_t>(tags));
    }
    if (b.name == "tuple") {
        if (!params.contains("components") || !params.at("components").is_array())
            throw ParseError("tuple needs params.components (array of builtin documents)");
        std::vector<CrdtKind> parts;
        for (const auto &c : params.at("components")) {
            auto doc = parse_spec_document(c);
            const auto *inner = std::get_if<BuiltinSpec>(&doc);
            if (!inner) throw ParseError("tuple components must be builtin documents");
            parts.push_back(kind_from_builtin(*inner));
        }
        return CrdtKind::tuple(std::move(parts));
    }
    throw ParseError("unknown builtin kind '" + b.name + "'");
}

BuiltinSpec builtin_from_kind(const CrdtKind &kind) {
    BuiltinSpec b{std::string(kind_name(kind.kind))};
    switch (kind.kind) {
    case Kind::Counter: break;
    case Kind::ModCounter: b.params["n"] = kind.modulus; break;
    case Kind::GSet:
    case Kind::TSet:
    case Kind::PNSet: b.params["universe"] = kind.universe; break;
    case Kind::ORSet:
        b.params["universe"] = kind.universe;
        b.params["tags"] = kind.tag_pool;
        break;
    case Kind::Tuple: {
        json parts = json::array();
        for (const auto &c : kind.components) {
            auto inner = builtin_from_kind(c);
            parts.push_back({{"builtin", inner.name}, {"params", inner.params}});
        }
        b.params["components"] = parts;
        break;
    }
    }
    return b;
}

FiniteCrdtSpec resolve_finite(const SpecDocument &doc) {
    if (const auto *spec = std::get_if<FiniteCrdtSpec>(&doc)) return *spec;
    if (std::holds_alternative<Presentation>(doc))
        throw ParseError("a presentation document has no explicit states; only 'analyze' accepts it");
    const auto &b = std::get<BuiltinSpec>(doc);
    auto spec = to_finite_spec(kind_from_builtin(b));
    if (b.params.contains("ops")) {
        auto keep = string_list(b.params.at("ops"), "params.ops");
        for (const auto &op : keep) {
            if (!spec.find_op(op)) throw ParseError("params.ops names unknown op '" + op + "'");
        }
        spec = spec.restrict_ops(keep);
    }
    return spec;
}

namespace {

ReplicaId replica_field(const json &obj, const char *key, const std::string &where) {
    auto v = as_int(field(obj, key, where.c_str()), where + "." + key);
    if (v < 0) throw ParseError(where + "." + key + " must be nonnegative");
    return static_cast<ReplicaId>(v);
}

} // namespace

sim::Scenario parse_scenario(const json &doc, const std::filesystem::path &base_dir) {
    const char *where = "scenario";
    sim::Scenario sc;
    const auto &crdt = field(doc, "crdt", where);
    json crdt_doc = crdt;
    if (crdt.is_string()) crdt_doc = read_json(read_file(base_dir / crdt.get<std::string>()));
    auto spec = parse_spec_document(crdt_doc);
    const auto *builtin = std::get_if<BuiltinSpec>(&spec);
    if (!builtin) throw ParseError("scenario crdt must be a builtin document");
    sc.kind = kind_from_builtin(*builtin);

    auto replicas = as_int(field(doc, "replicas", where), "replicas");
    if (replicas < 1 || replicas > 64) throw ParseError("replicas must be between 1 and 64");
    sc.replicas = static_cast<std::size_t>(replicas);
    if (doc.contains("seed")) sc.seed = static_cast<std::uint64_t>(as_int(doc.at("seed"), "seed"));

    const auto &events = field(doc, "events", where);
    if (!events.is_array()) throw ParseError("events must be an array");
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto &ev = events[i];
        auto what = "events[" + std::to_string(i) + "]";
        if (ev.is_string()) {
            if (ev.get<std::string>() != "deliver_all") throw ParseError(what + ": unknown event '" + ev.get<std::string>() + "'");
            sc.events.emplace_back(sim::DeliverAllEvent{});
        } else if (ev.is_object() && ev.contains("local")) {
            const auto &l = ev.at("local");
            auto op = as_string(field(l, "op", what.c_str()), what + ".op");
            try {
                sc.events.emplace_back(sim::LocalEvent{replica_field(l, "replica", what), SourceOp::parse(op)});
            } catch (const ZooError &e) {
                throw ParseError(what + ": " + e.what());
            }
        } else if (ev.is_object() && ev.contains("deliver")) {
            const auto &d = ev.at("deliver");
            auto seq = as_int(field(d, "seq", what.c_str()), what + ".seq");
            if (seq < 1) throw ParseError(what + ".seq must be at least 1");
            sc.events.emplace_back(sim::DeliverEvent{replica_field(d, "replica", what), replica_field(d, "origin", what),
                                                     static_cast<std::uint64_t>(seq)});
        } else {
            throw ParseError(what + ": expected {\"local\": ...}, {\"deliver\": ...} or \"deliver_all\"");
        }
    }
    return sc;
}

json scenario_to_json(const sim::Scenario &sc) {
    auto b = builtin_from_kind(sc.kind);
    json events = json::array();
    for (const auto &ev : sc.events) {
        if (const auto *l = std::get_if<sim::LocalEvent>(&ev))
            events.push_back({{"local", {{"replica", l->replica}, {"op", l->op.to_string()}}}});
        else if (const auto *d = std::get_if<sim::DeliverEvent>(&ev))
            events.push_back({{"deliver", {{"replica", d->replica}, {"origin", d->origin}, {"seq", d->seq}}}});
        else
            events.push_back("deliver_all");
    }
    return {{"crdt", {{"builtin", b.name}, {"params", b.params}}},
            {"replicas", sc.replicas},
            {"seed", sc.seed},
            {"events", events}};
}

std::string digest(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char *hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    return out;
}

} // namespace crdtlab::io
