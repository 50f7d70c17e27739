#pragma once

#include "crdtlab/groups.hpp"
#include "crdtlab/kernel.hpp"
#include "crdtlab/sim.hpp"
#include "crdtlab/zoo.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

namespace crdtlab::io {

using json = nlohmann::ordered_json;

/// Malformed document. `line`/`column` are 1-based and 0 when not applicable.
class ParseError : public InputError {
public:
    ParseError(const std::string &what, std::size_t line = 0, std::size_t column = 0);
    std::size_t line, column;
};

struct BuiltinSpec {
    std::string name;
    json params = json::object();
};

/// {"builtin": ..., "params": ...} | {"states", "initial", "ops", "transitions"} |
/// {"generators": [...], "relations": [[...]]}
using SpecDocument = std::variant<BuiltinSpec, FiniteCrdtSpec, Presentation>;

json read_json(std::string_view text);
std::string read_file(const std::filesystem::path &path);

SpecDocument parse_spec_document(const json &doc);
SpecDocument parse_spec_document(std::string_view text);
json to_json(const SpecDocument &doc);

json spec_to_json(const FiniteCrdtSpec &spec);
FiniteCrdtSpec spec_from_json(const json &doc);
json presentation_to_json(const Presentation &p);
Presentation presentation_from_json(const json &doc);

/// Builtin names: counter, modcounter {n}, gset/tset/pnset {universe},
/// orset {universe, tags}, tuple {components: [spec documents]}.
CrdtKind kind_from_builtin(const BuiltinSpec &b);
BuiltinSpec builtin_from_kind(const CrdtKind &kind);

/// Explicit specs as-is; finite builtins through to_finite_spec, optionally
/// restricted by params.ops. Throws ZooError for unbounded builtins and
/// ParseError for presentations.
FiniteCrdtSpec resolve_finite(const SpecDocument &doc);

/// Scenario schema: {"crdt": spec document or relative path, "replicas": int,
/// "seed": int, "events": [{"local": {...}} | {"deliver": {...}} | "deliver_all"]}.
sim::Scenario parse_scenario(const json &doc, const std::filesystem::path &base_dir = {});
json scenario_to_json(const sim::Scenario &sc);

json integer_json(const Integer &v);

/// FNV-1a 64-bit digest as 16 hex digits.
std::string digest(std::string_view bytes);

} // namespace crdtlab::io
