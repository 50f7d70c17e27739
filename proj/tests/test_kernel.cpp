#include "crdtlab/kernel.hpp"
#include "crdtlab/zoo.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace crdtlab;

namespace {

FiniteCrdtSpec mod_counter(int n) { return to_finite_spec(CrdtKind::mod_counter(n)); }

std::string name_after(const FiniteCrdtSpec &spec, std::string_view s, std::string_view action) {
    auto r = apply_action(spec, s, Action::parse(action));
    REQUIRE(r.ok());
    return spec.state_name(r.value());
}

} // namespace

TEST_CASE("action parsing and printing") {
    CHECK(Action::parse("").empty());
    CHECK(Action::parse("ε").empty());
    CHECK(Action::parse("inc, inc ,dec") == Action({"inc", "inc", "dec"}));
    CHECK(Action({"inc", "dec"}).to_string() == "inc,dec");
    CHECK(Action().to_string() == "ε");
    CHECK(Action::parse(Action({"add A", "remove A"}).to_string()) == Action({"add A", "remove A"}));
}

TEST_CASE("concatenation is associative with the empty action as unit") {
    Action a({"inc"}), b({"dec", "dec"}), c({"inc", "dec"});
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + Action() == a);
    CHECK(Action() + a == a);
}

TEST_CASE("apply_op on the mod-2 counter wraps around") {
    auto spec = mod_counter(2);
    auto r = apply_op(spec, "1", "inc");
    REQUIRE(r.ok());
    CHECK(spec.state_name(r.value()) == "0");
}

TEST_CASE("apply_op reports undefined ops") {
    auto spec = to_finite_spec(CrdtKind::orset({"A"}, 1));
    auto r = apply_op(spec, "+{} -{}", "remove_i A");
    CHECK_FALSE(r.ok());
    CHECK(r.defined_prefix() == 0);
}

TEST_CASE("OR-Set remove effect inserts the observed pair into the removed set") {
    auto spec = to_finite_spec(CrdtKind::orset({"A"}, 1));
    auto r = apply_op(spec, "+{A_i} -{}", "remove_i A");
    REQUIRE(r.ok());
    CHECK(spec.state_name(r.value()) == "+{A_i} -{A_i}");
}

TEST_CASE("apply_action") {
    auto spec = mod_counter(4);
    CHECK(name_after(spec, "2", "") == "2");
    CHECK(name_after(spec, "0", "inc,inc,dec") == "1");
    CHECK(name_after(mod_counter(2), "0", "inc,inc") == "0");

    SUBCASE("undefined keeps the defined prefix length") {
        auto r = apply_action(fixtures::bounded_counter(), "0", Action::parse("inc,inc,inc,inc"));
        REQUIRE_FALSE(r.ok());
        CHECK(r.defined_prefix() == 3);
    }
    SUBCASE("unknown names are input errors") {
        CHECK_THROWS_AS(apply_action(spec, "9", Action::parse("inc")), InputError);
        CHECK_THROWS_AS(apply_action(spec, "0", Action::parse("jump")), InputError);
    }
}

TEST_CASE("defined results have defined prefixes") {
    auto spec = to_finite_spec(CrdtKind::orset({"A"}, 2));
    for (StateIndex s = 0; s < spec.state_count(); ++s) {
        for (std::size_t n = 0; n <= 3; ++n) {
            for (const auto &w : oracle::words(spec.op_count(), n)) {
                auto r = spec.run(s, w);
                if (!r.ok()) continue;
                for (std::size_t k = 0; k < n; ++k) {
                    std::vector<OpIndex> prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
                    CHECK(spec.run(s, prefix).ok());
                }
            }
        }
    }
}

TEST_CASE("construction rejects malformed machines") {
    CHECK_THROWS_AS(FiniteCrdtSpec({"a", "a"}, "a", {"p"}, {}), InputError);
    CHECK_THROWS_AS(FiniteCrdtSpec({"a"}, "b", {"p"}, {}), InputError);
    CHECK_THROWS_AS(FiniteCrdtSpec({"a"}, "a", {"p", "p"}, {}), InputError);
    CHECK_THROWS_AS(FiniteCrdtSpec({"a"}, "a", {"p"}, {{"x", "p", "a"}}), InputError);
    CHECK_THROWS_AS(FiniteCrdtSpec({"a"}, "a", {"p"}, {{"a", "q", "a"}}), InputError);
    CHECK_THROWS_AS(FiniteCrdtSpec({"a", "b"}, "a", {"p"}, {{"a", "p", "a"}, {"a", "p", "b"}}), InputError);
}

TEST_CASE("validate_spec") {
    SUBCASE("mod-3 counter is clean") {
        auto r = validate_spec(mod_counter(3));
        CHECK(r.ok());
        CHECK(r.warnings.empty());
    }
    SUBCASE("isolated state is an error") {
        FiniteCrdtSpec spec({"a", "b", "lost"}, "a", {"p"}, {{"a", "p", "b"}, {"b", "p", "a"}});
        auto r = validate_spec(spec);
        REQUIRE(r.errors.size() == 1);
        CHECK(r.errors[0].kind == ValidationIssue::Kind::UnreachableState);
        CHECK(r.errors[0].states == std::vector<StateId>{"lost"});
    }
    SUBCASE("dangling transition is an error") {
        FiniteCrdtSpec spec({"a"}, "a", {"p"}, {{"a", "p", "nowhere"}});
        auto r = validate_spec(spec);
        REQUIRE_FALSE(r.ok());
        CHECK(r.errors[0].kind == ValidationIssue::Kind::DanglingTransition);
    }
    SUBCASE("behaviourally identical states are a warning") {
        // b and c both step to a under p and are stuck under q
        FiniteCrdtSpec spec({"a", "b", "c"}, "a", {"p", "q"},
                            {{"a", "p", "b"}, {"a", "q", "c"}, {"b", "p", "a"}, {"c", "p", "a"}});
        auto r = validate_spec(spec);
        CHECK(r.ok());
        REQUIRE(r.warnings.size() == 1);
        CHECK(r.warnings[0].kind == ValidationIssue::Kind::DuplicateState);
        CHECK(r.warnings[0].states == std::vector<StateId>{"b", "c"});

        // oracle: b and c agree on definedness of every action up to |states|
        auto b = spec.state_index("b"), c = spec.state_index("c");
        for (std::size_t n = 0; n <= spec.state_count(); ++n)
            for (const auto &w : oracle::words(spec.op_count(), n))
                CHECK(oracle::walk(spec, b, w).has_value() == oracle::walk(spec, c, w).has_value());
    }
}

TEST_CASE("reachable_states") {
    auto reach = [](const FiniteCrdtSpec &spec) {
        auto v = reachable_states(spec);
        return std::set<StateIndex>(v.begin(), v.end());
    };
    for (int n = 1; n <= 7; ++n) CHECK(reachable_states(mod_counter(n)).size() == static_cast<std::size_t>(n));

    auto orset = to_finite_spec(CrdtKind::orset({"A"}, 1));
    std::set<std::string> names;
    for (auto s : reachable_states(orset)) names.insert(orset.state_name(s));
    CHECK(names == std::set<std::string>{"+{} -{}", "+{A_i} -{}", "+{A_i} -{A_i}"});
    CHECK(reach(orset) == oracle::reachable(orset, orset.initial()));

    FiniteCrdtSpec partial({"a", "b", "c"}, "a", {"p"}, {{"a", "p", "b"}});
    CHECK(reach(partial) == std::set<StateIndex>{0, 1});
}

TEST_CASE("restrict_ops keeps the named ops in order") {
    auto spec = mod_counter(5).restrict_ops({"inc"});
    CHECK(spec.ops() == std::vector<OpName>{"inc"});
    CHECK(spec.state_count() == 5);
    CHECK(name_after(spec, "4", "inc") == "0");
    CHECK_THROWS_AS((void)mod_counter(5).restrict_ops({"jump"}), InputError);
}
