#pragma once

#include "crdtlab/kernel.hpp"
#include "crdtlab/zoo.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fixtures {

// One instance of every zoo kind, as used by the randomized simulation suites.
inline std::vector<std::pair<std::string, crdtlab::CrdtKind>> zoo_kinds() {
    using crdtlab::CrdtKind;
    return {
        {"counter", CrdtKind::counter()},
        {"modcounter", CrdtKind::mod_counter(5)},
        {"gset", CrdtKind::gset({"A", "B", "C"})},
        {"orset", CrdtKind::orset({"A", "B", "C"})},
        {"pnset", CrdtKind::pnset({"A", "B", "C"})},
        {"tset", CrdtKind::tset({"A", "B", "C"})},
        {"tuple", CrdtKind::tuple({CrdtKind::counter(), CrdtKind::orset({"A", "B"}), CrdtKind::mod_counter(3)})},
    };
}

inline crdtlab::FiniteCrdtSpec bounded_counter() {
    return crdtlab::FiniteCrdtSpec({"0", "1", "2", "3"}, "0", {"inc"},
                                   {{"0", "inc", "1"}, {"1", "inc", "2"}, {"2", "inc", "3"}});
}

inline std::vector<crdtlab::Element> letters(std::size_t n) {
    std::vector<crdtlab::Element> out;
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(1, static_cast<char>('A' + i));
    return out;
}

// Finite specs exercised by the axiom, fact and undo suites. Some of them are
// expected to fail the axioms.
inline std::vector<std::pair<std::string, crdtlab::FiniteCrdtSpec>> finite_corpus() {
    using crdtlab::CrdtKind;
    using crdtlab::to_finite_spec;
    std::vector<std::pair<std::string, crdtlab::FiniteCrdtSpec>> out;
    for (int n = 2; n <= 12; ++n) {
        auto k = CrdtKind::mod_counter(n);
        out.emplace_back(k.describe(), to_finite_spec(k));
    }
    out.emplace_back("ModCounter(5) inc only", to_finite_spec(CrdtKind::mod_counter(5)).restrict_ops({"inc"}));
    for (std::size_t n = 1; n <= 4; ++n) {
        auto k = CrdtKind::tset(letters(n));
        out.emplace_back(k.describe(), to_finite_spec(k));
    }
    for (const auto &k : {CrdtKind::tuple({CrdtKind::mod_counter(2), CrdtKind::mod_counter(3)}),
                          CrdtKind::tuple({CrdtKind::mod_counter(2), CrdtKind::mod_counter(2)}),
                          CrdtKind::tuple({CrdtKind::mod_counter(4), CrdtKind::mod_counter(6)}),
                          CrdtKind::tuple({CrdtKind::tset({"A"}), CrdtKind::mod_counter(3)}),
                          CrdtKind::tuple({CrdtKind::mod_counter(2), CrdtKind::tset({"A", "B"})})})
        out.emplace_back(k.describe(), to_finite_spec(k));
    for (const auto &k : {CrdtKind::gset({"A"}), CrdtKind::gset({"A", "B"}), CrdtKind::orset({"A"}, 1),
                          CrdtKind::orset({"A"}, 2), CrdtKind::tuple({CrdtKind::mod_counter(3), CrdtKind::gset({"A"})})})
        out.emplace_back(k.describe(), to_finite_spec(k));
    out.emplace_back("bounded counter", bounded_counter());
    return out;
}

} // namespace fixtures
