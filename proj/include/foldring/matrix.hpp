#pragma once

// Dense integer matrices plus the two exact computations the rest of the
// library leans on: Bareiss determinants and Smith normal form with
// recorded unimodular transforms.

#include "foldring/diagnostics.hpp"
#include "foldring/integers.hpp"

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace foldring {

class IntegerMatrix {
public:
    IntegerMatrix() = default;

    IntegerMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntegerMatrix identity(std::size_t n) {
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntegerMatrix from_rows(const std::vector<std::vector<Int>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.front().size();
        IntegerMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c)
                throw dimension_error("from_rows: ragged row lengths");
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) {
        if (i >= rows_ || j >= cols_) throw dimension_error("matrix index out of range");
        return data_[i * cols_ + j];
    }

    const Int& at(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw dimension_error("matrix index out of range");
        return data_[i * cols_ + j];
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return v == 0; });
    }

    bool is_square() const { return rows_ == cols_; }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    bool has_zero_diagonal() const {
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
            if (at(i, i) != 0) return false;
        return true;
    }

    IntegerMatrix transpose() const {
        IntegerMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    // Elementary transforms; the Smith reduction mirrors each of these onto
    // its change-of-basis factors.
    void swap_rows(std::size_t x, std::size_t y) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(x, j), at(y, j));
    }

    void swap_cols(std::size_t x, std::size_t y) {
        for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, x), at(i, y));
    }

    // row[dst] += c * row[src]
    void row_axpy(std::size_t dst, std::size_t src, const Int& c) {
        for (std::size_t j = 0; j < cols_; ++j) at(dst, j) += c * at(src, j);
    }

    // col[dst] += c * col[src]
    void col_axpy(std::size_t dst, std::size_t src, const Int& c) {
        for (std::size_t i = 0; i < rows_; ++i) at(i, dst) += c * at(i, src);
    }

    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < cols_; ++j) at(i, j) = -at(i, j);
    }

    friend bool operator==(const IntegerMatrix& x, const IntegerMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
    }

    friend bool operator!=(const IntegerMatrix& x, const IntegerMatrix& y) { return !(x == y); }

    friend IntegerMatrix operator*(const IntegerMatrix& x, const IntegerMatrix& y) {
        if (x.cols_ != y.rows_) throw dimension_error("matrix product shape mismatch");
        IntegerMatrix p(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const Int& v = x.at(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) p.at(i, j) += v * y.at(k, j);
            }
        return p;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

inline std::string to_string(const IntegerMatrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i == 0 ? "[" : ", [";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += to_decimal(m.at(i, j));
        }
        out += "]";
    }
    out += "]";
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
    return os << to_string(m);
}

// [a 0; 0 b]
inline IntegerMatrix block_diag(const IntegerMatrix& a, const IntegerMatrix& b) {
    IntegerMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

// Fraction-free Gaussian elimination (Bareiss); every division is exact, so
// the result is the determinant with no rounding anywhere.
inline Int determinant(const IntegerMatrix& m) {
    if (!m.is_square()) throw dimension_error("determinant requires a square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntegerMatrix b = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (b.at(k, k) == 0) {
            std::size_t pivot = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (b.at(i, k) != 0) {
                    pivot = i;
                    break;
                }
            if (pivot == n) return 0;
            b.swap_rows(k, pivot);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                b.at(i, j) = (b.at(i, j) * b.at(k, k) - b.at(i, k) * b.at(k, j)) / prev;
        prev = b.at(k, k);
    }
    Int det = b.at(n - 1, n - 1);
    if (sign < 0) det = -det;
    return det;
}

inline bool is_unimodular(const IntegerMatrix& m) {
    return m.is_square() && abs(determinant(m)) == 1;
}

// u * input * v == s, with u and v unimodular and s diagonal, nonnegative,
// each diagonal entry dividing the next.
struct SmithDecomposition {
    IntegerMatrix u;
    IntegerMatrix s;
    IntegerMatrix v;
};

inline SmithDecomposition smith_normal_form(const IntegerMatrix& m) {
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    SmithDecomposition d{IntegerMatrix::identity(r), m, IntegerMatrix::identity(c)};
    IntegerMatrix& s = d.s;

    auto swap_rows = [&](std::size_t x, std::size_t y) {
        s.swap_rows(x, y);
        d.u.swap_rows(x, y);
    };
    auto swap_cols = [&](std::size_t x, std::size_t y) {
        s.swap_cols(x, y);
        d.v.swap_cols(x, y);
    };
    auto row_axpy = [&](std::size_t dst, std::size_t src, const Int& q) {
        s.row_axpy(dst, src, q);
        d.u.row_axpy(dst, src, q);
    };
    auto col_axpy = [&](std::size_t dst, std::size_t src, const Int& q) {
        s.col_axpy(dst, src, q);
        d.v.col_axpy(dst, src, q);
    };

    for (std::size_t t = 0; t < std::min(r, c); ++t) {
        // Smallest-magnitude nonzero entry of the trailing block becomes the
        // pivot; small pivots keep the Euclidean passes short.
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j) {
                const Int& v = s.at(i, j);
                if (v == 0) continue;
                if (!found || abs(v) < abs(s.at(pi, pj))) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        if (pi != t) swap_rows(pi, t);
        if (pj != t) swap_cols(pj, t);

        for (;;) {
            // Euclidean sweeps: reduce the pivot column, then the pivot row.
            // A nonzero remainder is swapped into the pivot slot, strictly
            // shrinking |pivot|, so the sweeps terminate.
            bool dirty = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (s.at(i, t) == 0) continue;
                Int q = s.at(i, t) / s.at(t, t);
                if (q != 0) row_axpy(i, t, -q);
                if (s.at(i, t) != 0) {
                    swap_rows(i, t);
                    dirty = true;
                }
            }
            if (dirty) continue;
            for (std::size_t j = t + 1; j < c; ++j) {
                if (s.at(t, j) == 0) continue;
                Int q = s.at(t, j) / s.at(t, t);
                if (q != 0) col_axpy(j, t, -q);
                if (s.at(t, j) != 0) {
                    swap_cols(j, t);
                    dirty = true;
                }
            }
            if (dirty) continue;

            // Pivot is alone in its row and column.  Fold in any entry it
            // does not divide yet; that forces the divisibility chain.
            bool divides_all = true;
            for (std::size_t i = t + 1; i < r && divides_all; ++i)
                for (std::size_t j = t + 1; j < c && divides_all; ++j)
                    if (s.at(i, j) % s.at(t, t) != 0) {
                        row_axpy(t, i, 1);
                        divides_all = false;
                    }
            if (divides_all) break;
        }

        if (s.at(t, t) < 0) {
            s.negate_row(t);
            d.u.negate_row(t);
        }
    }
    return d;
}

} // namespace foldring
