#include "crdtlab/int_matrix.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace crdtlab;

namespace {

std::vector<Integer> ints(std::initializer_list<long long> v) { return {v.begin(), v.end()}; }

IntMatrix random_matrix(std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> dim(1, 4), entry(-9, 9);
    IntMatrix m(static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = entry(rng);
    return m;
}

} // namespace

TEST_CASE("determinant") {
    CHECK(IntMatrix{{2, 0}, {0, 3}}.determinant() == 6);
    CHECK(IntMatrix{{0, 1}, {1, 0}}.determinant() == -1);
    CHECK(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}.determinant() == 0);
    CHECK(IntMatrix(0, 0).determinant() == 1);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        auto m = random_matrix(rng);
        if (m.rows() != m.cols()) continue;
        std::vector<std::vector<Integer>> rows;
        for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
        CHECK(m.determinant() == oracle::cofactor_det(rows));
    }
}

TEST_CASE("smith normal form examples") {
    SUBCASE("identity") {
        auto snf = smith_normal_form(IntMatrix::identity(2));
        CHECK(snf.S == IntMatrix::identity(2));
        CHECK(snf.certifies(IntMatrix::identity(2)));
    }
    SUBCASE("diag(2,3)") {
        IntMatrix a{{2, 0}, {0, 3}};
        auto snf = smith_normal_form(a);
        CHECK(snf.diagonal() == ints({1, 6}));
        CHECK(snf.certifies(a));
        CHECK(oracle::determinantal_factors(a) == ints({1, 6}));
    }
    SUBCASE("counter relation") {
        IntMatrix a{{1, 1}};
        auto snf = smith_normal_form(a);
        CHECK(snf.S == IntMatrix{{1, 0}});
        CHECK(snf.certifies(a));
    }
    SUBCASE("zero and empty matrices") {
        IntMatrix z(2, 3);
        auto snf = smith_normal_form(z);
        CHECK(snf.diagonal() == ints({0, 0}));
        CHECK(snf.certifies(z));
        IntMatrix empty(0, 3);
        CHECK(smith_normal_form(empty).certifies(empty));
    }
    SUBCASE("negative entries come out nonnegative") {
        IntMatrix a{{-4, 0}, {0, -6}};
        CHECK(smith_normal_form(a).diagonal() == ints({2, 12}));
    }
}

TEST_CASE("certifies rejects wrong answers") {
    IntMatrix a{{2, 0}, {0, 3}};
    auto snf = smith_normal_form(a);
    auto bad = snf;
    bad.S = IntMatrix{{2, 0}, {0, 3}};
    CHECK_FALSE(bad.certifies(a));
    bad = snf;
    bad.U = IntMatrix{{2, 0}, {0, 1}};
    CHECK_FALSE(bad.certifies(a));
}

TEST_CASE("random matrices agree with determinantal divisors") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 300; ++i) {
        auto a = random_matrix(rng);
        CAPTURE(a.to_string());
        auto snf = smith_normal_form(a);
        CHECK(snf.U * a * snf.V == snf.S);
        CHECK(abs(snf.U.determinant()) == 1);
        CHECK(abs(snf.V.determinant()) == 1);
        CHECK(snf.V * snf.V_inverse == IntMatrix::identity(a.cols()));
        CHECK(snf.certifies(a));
        CHECK(snf.diagonal() == oracle::determinantal_factors(a));
    }
}

TEST_CASE("large entries stay exact") {
    IntMatrix a{{1000000007, 0}, {0, 998244353}};
    auto snf = smith_normal_form(a);
    CHECK(snf.diagonal() == std::vector<Integer>{1, Integer(1000000007) * 998244353});
    CHECK(snf.certifies(a));
}
