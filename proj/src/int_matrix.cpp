#include "crdtlab/int_matrix.hpp"

#include <stdexcept>
#include <utility>

namespace crdtlab {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (auto v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>> &rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("row length does not match column count");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

std::vector<Integer> IntMatrix::row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer &k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer &k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

Integer IntMatrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
    const auto n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimensions do not match for product");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
        }
    }
    return out;
}

std::string IntMatrix::to_string() const {
    std::string out = "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        out += r ? ", [" : "[";
        for (std::size_t c = 0; c < cols_; ++c) out += (c ? ", " : "") + (*this)(r, c).str();
        out += "]";
    }
    return out + "]";
}

std::vector<Integer> SnfResult::diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
}

bool SnfResult::certifies(const IntMatrix &A) const {
    if (U.rows() != A.rows() || U.cols() != A.rows() || V.rows() != A.cols() || V.cols() != A.cols()) return false;
    if (!(U * A * V == S)) return false;
    if (!(V * V_inverse == IntMatrix::identity(V.rows()))) return false;
    auto du = U.determinant(), dv = V.determinant();
    if (abs(du) != 1 || abs(dv) != 1) return false;
    for (std::size_t r = 0; r < S.rows(); ++r) {
        for (std::size_t c = 0; c < S.cols(); ++c) {
            if (r != c && S(r, c) != 0) return false;
        }
    }
    auto d = diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] < 0) return false;
        if (i + 1 < d.size()) {
            if (d[i] == 0 && d[i + 1] != 0) return false;
            if (d[i] != 0 && d[i + 1] % d[i] != 0) return false;
        }
    }
    return true;
}

SnfResult smith_normal_form(const IntMatrix &A) {
    const auto m = A.rows(), n = A.cols();
    SnfResult out{A, IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n)};
    auto &S = out.S;
    auto &U = out.U;
    auto &V = out.V;
    auto &Vinv = out.V_inverse;

    auto row_swap = [&](std::size_t a, std::size_t b) { S.swap_rows(a, b), U.swap_rows(a, b); };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        S.swap_cols(a, b), V.swap_cols(a, b), Vinv.swap_rows(a, b);
    };
    auto row_add = [&](std::size_t dst, std::size_t src, const Integer &k) {
        S.add_row_multiple(dst, src, k), U.add_row_multiple(dst, src, k);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Integer &k) {
        S.add_col_multiple(dst, src, k), V.add_col_multiple(dst, src, k), Vinv.add_row_multiple(src, dst, -k);
    };

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        while (true) {
            // smallest nonzero |entry| in the trailing block becomes the pivot
            std::size_t pr = m, pc = n;
            for (std::size_t r = t; r < m; ++r) {
                for (std::size_t c = t; c < n; ++c) {
                    if (S(r, c) != 0 && (pr == m || abs(S(r, c)) < abs(S(pr, pc)))) pr = r, pc = c;
                }
            }
            if (pr == m) return out; // trailing block is zero
            row_swap(t, pr);
            col_swap(t, pc);

            bool clean = true;
            for (std::size_t r = t + 1; r < m; ++r) {
                if (S(r, t) == 0) continue;
                row_add(r, t, -(S(r, t) / S(t, t)));
                if (S(r, t) != 0) clean = false;
            }
            for (std::size_t c = t + 1; c < n; ++c) {
                if (S(t, c) == 0) continue;
                col_add(c, t, -(S(t, c) / S(t, t)));
                if (S(t, c) != 0) clean = false;
            }
            if (!clean) continue; // a remainder smaller than the pivot is left

            std::size_t bad = m;
            for (std::size_t r = t + 1; r < m && bad == m; ++r) {
                for (std::size_t c = t + 1; c < n; ++c) {
                    if (S(r, c) % S(t, t) != 0) {
                        bad = r;
                        break;
                    }
                }
            }
            if (bad == m) break;
            row_add(t, bad, 1);
        }
        if (S(t, t) < 0) {
            S.negate_row(t);
            U.negate_row(t);
        }
    }
    return out;
}

} // namespace crdtlab
