#include "crdtlab/zoo.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <bitset>
#include <random>

using namespace crdtlab;

namespace {

const Tag kI{0, 1};
const Tag kJ{0, 3};

ORSetState orset(std::set<TaggedElement> added, std::set<TaggedElement> removed = {}) {
    return {std::move(added), std::move(removed)};
}

CrdtState apply_all(const CrdtKind &kind, CrdtState s, const std::vector<std::string> &ops) {
    for (const auto &op : ops) s = effect(kind, s, prepare(kind, s, SourceOp::parse(op)));
    return s;
}

} // namespace

TEST_CASE("source op parsing") {
    CHECK(SourceOp::parse("inc") == SourceOp{{}, OpCode::Inc, ""});
    CHECK(SourceOp::parse("add A") == SourceOp{{}, OpCode::Add, "A"});
    CHECK(SourceOp::parse("1:toggle B") == SourceOp{{1}, OpCode::Toggle, "B"});
    CHECK(SourceOp::parse("0:1:dec") == SourceOp{{0, 1}, OpCode::Dec, ""});
    CHECK(SourceOp::parse("0:1:add A").to_string() == "0:1:add A");
    CHECK_THROWS_AS(SourceOp::parse("jump"), ZooError);
    CHECK_THROWS_AS(SourceOp::parse("add"), ZooError);
}

TEST_CASE("prepare") {
    auto kind = CrdtKind::orset({"A"});
    SUBCASE("OR-Set remove observes the live tags") {
        CrdtState s{orset({{"A", kI}})};
        auto e = prepare(kind, s, SourceOp::parse("remove A"));
        CHECK(e.code == OpCode::Remove);
        CHECK(e.observed == std::set<Tag>{kI});
    }
    SUBCASE("OR-Set remove after removal observes nothing") {
        CrdtState s{orset({{"A", kI}}, {{"A", kI}})};
        CHECK(prepare(kind, s, SourceOp::parse("remove A")).observed.empty());
    }
    SUBCASE("OR-Set add carries the fresh tag") {
        auto e = prepare(kind, initial_state(kind), SourceOp::parse("add A"), kJ);
        CHECK(e.tag == kJ);
    }
    SUBCASE("PN-Set add ignores the state") {
        auto pn = CrdtKind::pnset({"A"});
        auto a = prepare(pn, initial_state(pn), SourceOp::parse("add A"));
        auto b = prepare(pn, apply_all(pn, initial_state(pn), {"remove A", "remove A"}), SourceOp::parse("add A"));
        CHECK(a == b);
        CHECK(a.code == OpCode::Add);
    }
    SUBCASE("ops outside the kind are refused") {
        auto g = CrdtKind::gset({"A"});
        CHECK_THROWS_AS(prepare(g, initial_state(g), SourceOp::parse("remove A")), ZooError);
        CHECK_THROWS_AS(prepare(g, initial_state(g), SourceOp::parse("inc")), ZooError);
        CHECK_THROWS_AS(prepare(CrdtKind::counter(), initial_state(CrdtKind::counter()), SourceOp::parse("1:inc")),
                        ZooError);
    }
}

TEST_CASE("effect") {
    SUBCASE("PN-Set goes negative") {
        auto pn = CrdtKind::pnset({"A"});
        auto s = apply_all(pn, initial_state(pn), {"add A", "remove A", "remove A"});
        CHECK(std::get<PNSetState>(s.value).counts == std::map<Element, std::int64_t>{{"A", -1}});
    }
    SUBCASE("T-Set add then remove toggles back") {
        auto t = CrdtKind::tset({"A"});
        auto s = apply_all(t, initial_state(t), {"add A", "remove A"});
        CHECK(std::get<TSetState>(s.value).members.empty());
    }
    SUBCASE("OR-Set add after removal") {
        auto kind = CrdtKind::orset({"A"});
        Effect add{{}, OpCode::Add, "A", kJ, {}};
        auto s = effect(kind, CrdtState{orset({{"A", kI}}, {{"A", kI}})}, add);
        CHECK(std::get<ORSetState>(s.value) == orset({{"A", kI}, {"A", kJ}}, {{"A", kI}}));
    }
    SUBCASE("mod counter wraps both ways") {
        auto m = CrdtKind::mod_counter(3);
        CHECK(std::get<ModCounterState>(apply_all(m, initial_state(m), {"dec"}).value).value == 2);
        CHECK(std::get<ModCounterState>(apply_all(m, initial_state(m), {"inc", "inc", "inc"}).value).value == 0);
    }
    SUBCASE("tuple components are independent") {
        auto k = CrdtKind::tuple({CrdtKind::counter(), CrdtKind::tset({"A"})});
        auto s = apply_all(k, initial_state(k), {"0:inc", "1:toggle A", "0:inc"});
        CHECK(state_to_string(k, s) == "(2,{A})");
    }
}

TEST_CASE("contains") {
    auto kind = CrdtKind::orset({"A"});
    CHECK(contains(kind, CrdtState{orset({{"A", kI}, {"A", kJ}}, {{"A", kI}})}, "A"));
    CHECK_FALSE(contains(kind, CrdtState{orset({{"A", kI}}, {{"A", kI}})}, "A"));

    auto pn = CrdtKind::pnset({"A"});
    auto s1 = apply_all(pn, initial_state(pn), {"add A", "remove A", "add A", "remove A"});
    CHECK_FALSE(contains(pn, s1, "A"));
    CHECK(contains(pn, apply_all(pn, initial_state(pn), {"add A"}), "A"));
}

TEST_CASE("PN-Set agrees with the unordered-log representation") {
    auto pn = CrdtKind::pnset({"A", "B", "C"});
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        oracle::PNLog log;
        auto s = initial_state(pn);
        std::uniform_int_distribution<int> len(0, 30), coin(0, 1), elem(0, 2);
        for (int i = len(rng); i > 0; --i) {
            std::string op = coin(rng) ? "add" : "remove";
            std::string e(1, static_cast<char>('A' + elem(rng)));
            log.apply(op, e);
            s = effect(pn, s, prepare(pn, s, SourceOp::parse(op + " " + e)));
        }
        for (std::string e : {"A", "B", "C"}) {
            CHECK(contains(pn, s, e) == log.contains(e));
            CHECK(std::get<PNSetState>(s.value).count(e) == log.count(e));
        }
    }
}

TEST_CASE("to_finite_spec") {
    SUBCASE("ModCounter(3)") {
        auto spec = to_finite_spec(CrdtKind::mod_counter(3));
        CHECK(spec.state_count() == 3);
        CHECK(spec.ops() == std::vector<OpName>{"inc", "dec"});
        CHECK(oracle::matches_model(spec, 0, {"inc", "dec"}, [](int v, const std::string &op) -> std::optional<int> {
            return op == "inc" ? (v + 1) % 3 : (v + 2) % 3;
        }));
    }
    SUBCASE("T-Set is a parity vector") {
        for (std::size_t n = 1; n <= 4; ++n) {
            std::vector<Element> universe;
            std::vector<std::string> ops;
            for (std::size_t i = 0; i < n; ++i) {
                universe.emplace_back(1, static_cast<char>('A' + i));
                ops.push_back("toggle " + universe.back());
            }
            auto spec = to_finite_spec(CrdtKind::tset(universe));
            CHECK(spec.state_count() == (std::size_t{1} << n));
            CHECK(spec.ops() == ops);
            CHECK(oracle::matches_model(spec, 0u, ops, [](unsigned mask, const std::string &op) -> std::optional<unsigned> {
                return mask ^ (1u << (op.back() - 'A'));
            }));
        }
    }
    SUBCASE("G-Set over two elements") {
        auto spec = to_finite_spec(CrdtKind::gset({"A", "B"}));
        CHECK(oracle::matches_model(spec, 0u, {"add A", "add B"},
                                    [](unsigned mask, const std::string &op) -> std::optional<unsigned> {
                                        return mask | (1u << (op.back() - 'A'));
                                    }));
    }
    SUBCASE("OR-Set with one element and one tag") {
        auto spec = to_finite_spec(CrdtKind::orset({"A"}, 1));
        CHECK(spec.state_count() == 3);
        CHECK(spec.ops() == std::vector<OpName>{"add_i A", "remove_i A"});
        // model: (added, removed) bits for (A, i); remove needs the observed add
        using M = std::pair<bool, bool>;
        CHECK(oracle::matches_model(spec, M{false, false}, {"add_i A", "remove_i A"},
                                    [](M m, const std::string &op) -> std::optional<M> {
                                        if (op == "add_i A") return M{true, m.second};
                                        if (!m.first) return std::nullopt;
                                        return M{true, true};
                                    }));
    }
    SUBCASE("tuples") {
        auto spec = to_finite_spec(CrdtKind::tuple({CrdtKind::mod_counter(2), CrdtKind::mod_counter(3)}));
        CHECK(spec.state_count() == 6);
        CHECK(spec.ops() == std::vector<OpName>{"0:inc", "0:dec", "1:inc", "1:dec"});
        CHECK(spec.state_name(spec.initial()) == "(0,0)");
    }
    SUBCASE("unbounded kinds are refused") {
        CHECK_THROWS_AS(to_finite_spec(CrdtKind::counter()), ZooError);
        CHECK_THROWS_AS(to_finite_spec(CrdtKind::pnset({"A"})), ZooError);
        CHECK_THROWS_AS(to_finite_spec(CrdtKind::orset({"A"})), ZooError);
        CHECK(to_finite_spec(CrdtKind::tset({})).state_count() == 1);
        CHECK_THROWS_AS(to_finite_spec(CrdtKind::tuple({CrdtKind::counter()})), ZooError);
    }
}

TEST_CASE("tuple_spec matches the tuple kind") {
    auto a = to_finite_spec(CrdtKind::mod_counter(2));
    auto b = to_finite_spec(CrdtKind::tset({"A", "B"}));
    auto t = tuple_spec({a, b});
    CHECK(t.state_count() == a.state_count() * b.state_count());
    CHECK(t.op_count() == a.op_count() + b.op_count());
    auto r = apply_action(t, "(0,{})", Action::parse("0:inc,1:toggle B,0:inc"));
    REQUIRE(r.ok());
    CHECK(t.state_name(r.value()) == "(0,{B})");
}

TEST_CASE("describe") {
    CHECK(CrdtKind::mod_counter(3).describe() == "ModCounter(3)");
    CHECK(CrdtKind::tset({"A", "B"}).describe() == "TSet{A,B}");
    CHECK(CrdtKind::tuple({CrdtKind::counter(), CrdtKind::mod_counter(2)}).describe() == "Counter × ModCounter(2)");
    CHECK(CrdtKind::orset({"A"}, 2).is_finite());
    CHECK_FALSE(CrdtKind::pnset({"A"}).is_finite());
}
