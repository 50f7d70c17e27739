#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace crdtlab {

using Integer = boost::multiprecision::cpp_int;

/// Dense row-major matrix of arbitrary-precision integers. Zero rows or
/// columns are allowed.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);
    static IntMatrix from_rows(const std::vector<std::vector<Integer>> &rows, std::size_t cols);
    static IntMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    Integer &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] std::vector<Integer> row(std::size_t r) const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += k * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer &k);
    /// col[dst] += k * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer &k);
    void negate_row(std::size_t r);

    /// Exact determinant (fraction-free Bareiss elimination). Square matrices only.
    [[nodiscard]] Integer determinant() const;

    friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b);
    friend bool operator==(const IntMatrix &, const IntMatrix &) = default;

    [[nodiscard]] std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// U·A·V = S with U, V unimodular and S diagonal, d1 | d2 | ... with zeros trailing.
struct SnfResult {
    IntMatrix S;
    IntMatrix U;
    IntMatrix V;
    IntMatrix V_inverse;

    [[nodiscard]] std::vector<Integer> diagonal() const;
    /// Recomputes U·A·V, checks unimodularity, diagonal shape and the divisibility chain.
    [[nodiscard]] bool certifies(const IntMatrix &A) const;
};

SnfResult smith_normal_form(const IntMatrix &A);

} // namespace crdtlab
