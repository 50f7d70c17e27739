#pragma once

#include "crdtlab/kernel.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace crdtlab {

using Element = std::string;
using ReplicaId = std::uint32_t;

/// Unique ID of an OR-Set add: the originating replica and its message sequence number.
struct Tag {
    ReplicaId replica = 0;
    std::uint64_t seq = 0;
    friend auto operator<=>(const Tag &, const Tag &) = default;
    friend bool operator==(const Tag &, const Tag &) = default;
    [[nodiscard]] std::string to_string() const;
};

struct TaggedElement {
    Element element;
    Tag tag;
    friend auto operator<=>(const TaggedElement &, const TaggedElement &) = default;
    friend bool operator==(const TaggedElement &, const TaggedElement &) = default;
};

enum class Kind { Counter, ModCounter, GSet, ORSet, PNSet, TSet, Tuple };

std::string_view kind_name(Kind k);

/// A CRDT type together with its parameters. Only the fields relevant to the
/// kind are meaningful.
struct CrdtKind {
    Kind kind = Kind::Counter;
    std::int64_t modulus = 0;           // ModCounter
    std::vector<Element> universe;      // GSet, ORSet, PNSet, TSet (finite encoding / random ops)
    std::size_t tag_pool = 0;           // ORSet finite encoding
    std::vector<CrdtKind> components;   // Tuple

    static CrdtKind counter() { return CrdtKind{}; }
    static CrdtKind mod_counter(std::int64_t n);
    static CrdtKind gset(std::vector<Element> universe);
    static CrdtKind orset(std::vector<Element> universe, std::size_t tag_pool = 0);
    static CrdtKind pnset(std::vector<Element> universe);
    static CrdtKind tset(std::vector<Element> universe);
    static CrdtKind tuple(std::vector<CrdtKind> components);

    [[nodiscard]] bool is_set_like() const noexcept;
    /// ModCounter, GSet, TSet, ORSet (with a tag pool) and tuples of these.
    [[nodiscard]] bool is_finite() const noexcept;
    [[nodiscard]] std::string describe() const;

    friend bool operator==(const CrdtKind &, const CrdtKind &) = default;
};

struct CounterState {
    std::int64_t value = 0;
    friend bool operator==(const CounterState &, const CounterState &) = default;
};

struct ModCounterState {
    std::int64_t value = 0;
    std::int64_t modulus = 1;
    friend bool operator==(const ModCounterState &, const ModCounterState &) = default;
};

struct GSetState {
    std::set<Element> members;
    friend bool operator==(const GSetState &, const GSetState &) = default;
};

struct ORSetState {
    std::set<TaggedElement> added;
    std::set<TaggedElement> removed;
    friend bool operator==(const ORSetState &, const ORSetState &) = default;
};

/// Per-element counters. Zero counts are never stored, so equal sets compare equal.
struct PNSetState {
    std::map<Element, std::int64_t> counts;
    [[nodiscard]] std::int64_t count(const Element &e) const;
    friend bool operator==(const PNSetState &, const PNSetState &) = default;
};

struct TSetState {
    std::set<Element> members;
    friend bool operator==(const TSetState &, const TSetState &) = default;
};

struct CrdtState;

struct TupleState {
    std::vector<CrdtState> parts;
    friend bool operator==(const TupleState &, const TupleState &);
};

struct CrdtState {
    std::variant<CounterState, ModCounterState, GSetState, ORSetState, PNSetState, TSetState, TupleState> value;
    friend bool operator==(const CrdtState &, const CrdtState &) = default;
};

enum class OpCode { Inc, Dec, Add, Remove, Toggle };

std::string_view opcode_name(OpCode op);

/// A source-level operation as issued by a client. `path` routes into tuple components.
struct SourceOp {
    std::vector<std::size_t> path;
    OpCode code = OpCode::Inc;
    Element element;

    friend bool operator==(const SourceOp &, const SourceOp &) = default;

    /// "inc", "dec", "add A", "remove A", "toggle A"; tuple components as "1:inc" or "0:1:add A".
    static SourceOp parse(std::string_view text);
    [[nodiscard]] std::string to_string() const;
};

/// Effect payload broadcast to every replica. For OR-Set adds `tag` is the fresh
/// ID; for OR-Set removes `observed` holds the tags seen at the source.
struct Effect {
    std::vector<std::size_t> path;
    OpCode code = OpCode::Inc;
    Element element;
    Tag tag;
    std::set<Tag> observed;

    friend bool operator==(const Effect &, const Effect &) = default;
    [[nodiscard]] std::string to_string() const;
};

class ZooError : public InputError {
public:
    using InputError::InputError;
};

CrdtState initial_state(const CrdtKind &kind);

/// Source-side half of an operation. `fresh` is the tag assigned if the op is an OR-Set add.
Effect prepare(const CrdtKind &kind, const CrdtState &state, const SourceOp &op, Tag fresh = {});

/// Downstream half: total on every state for well-formed payloads.
CrdtState effect(const CrdtKind &kind, const CrdtState &state, const Effect &e);

bool contains(const CrdtKind &kind, const CrdtState &state, const Element &element);

/// The source ops a client may issue for this kind over its universe.
std::vector<SourceOp> source_ops(const CrdtKind &kind);

std::string state_to_string(const CrdtKind &kind, const CrdtState &state);

/// Exhaustive reachable-state encoding for finite kinds, one op per effect-level
/// primitive. Throws ZooError for unbounded kinds (Counter, PNSet) and for
/// OR-Sets without a tag pool.
FiniteCrdtSpec to_finite_spec(const CrdtKind &kind);

/// Product of already-finite specs: states "(s0,s1,...)", ops "k:op" acting on component k.
FiniteCrdtSpec tuple_spec(const std::vector<FiniteCrdtSpec> &components);

} // namespace crdtlab
