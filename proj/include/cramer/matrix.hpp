#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cramer/errors.hpp"
#include "cramer/rational.hpp"
#include "cramer/rng.hpp"

namespace cramer {

/// Dense matrix of exact rationals, row-major.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}
    RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw DimensionError("RatMatrix: entry count does not match shape");
    }

    /// Row-of-rows construction for literals in tests.
    static RatMatrix from_rows(std::initializer_list<std::initializer_list<Rational>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.begin()->size();
        std::vector<Rational> flat;
        flat.reserve(r * c);
        for (const auto& row : rows) {
            if (row.size() != c) throw DimensionError("RatMatrix: ragged rows");
            for (const auto& v : row) flat.push_back(v);
        }
        return RatMatrix(r, c, std::move(flat));
    }

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
        return m;
    }

    static RatMatrix zero(std::size_t rows, std::size_t cols) { return RatMatrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    const std::vector<Rational>& entries() const { return entries_; }

    RatMatrix transpose() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    /// Submatrix selected by 0-based row and column index lists.
    RatMatrix submatrix(const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) const {
        RatMatrix sub(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i] >= rows_) throw DimensionError("submatrix: row index out of range");
            for (std::size_t j = 0; j < cols.size(); ++j) {
                if (cols[j] >= cols_) throw DimensionError("submatrix: column index out of range");
                sub.at(i, j) = at(rows[i], cols[j]);
            }
        }
        return sub;
    }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
        if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
        RatMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return c;
    }

    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DimensionError("matrix sum: shapes differ");
        RatMatrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.entries_.size(); ++i)
            c.entries_[i] = a.entries_[i] + b.entries_[i];
        return c;
    }

    friend RatMatrix operator*(const Rational& scalar, const RatMatrix& m) {
        RatMatrix c(m.rows_, m.cols_);
        for (std::size_t i = 0; i < m.entries_.size(); ++i)
            c.entries_[i] = scalar * m.entries_[i];
        return c;
    }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const RatMatrix& m) {
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i == 0 ? "[" : " ");
            for (std::size_t j = 0; j < m.cols_; ++j)
                os << (j == 0 ? "[" : ", ") << m.at(i, j);
            os << "]" << (i + 1 == m.rows_ ? "]" : "\n");
        }
        return os;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> entries_;
};

namespace detail {

/// One-step fraction-free (Bareiss) elimination on a working copy.
/// Returns the pivot count (= rank); when `det_out` is non-null and the
/// matrix is square of full rank, stores the determinant there.
/// Every intermediate entry stays a quotient of minors of the input, so
/// coefficient growth is polynomial in the matrix size.
inline std::size_t bareiss_eliminate(RatMatrix a, Rational* det_out) {
    const std::size_t rows = a.rows(), cols = a.cols();
    Rational prev(1);
    int sign = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a.at(pivot, col).is_zero()) ++pivot;
        if (pivot == rows) continue; // column already clear
        if (pivot != rank) {
            for (std::size_t j = col; j < cols; ++j)
                std::swap(a.at(pivot, j), a.at(rank, j));
            sign = -sign;
        }
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j)
                a.at(i, j) = (a.at(rank, col) * a.at(i, j) - a.at(i, col) * a.at(rank, j)) / prev;
            a.at(i, col) = Rational(0);
        }
        prev = a.at(rank, col);
        ++rank;
    }
    if (det_out != nullptr) {
        if (rank < rows) {
            *det_out = Rational(0);
        } else {
            *det_out = sign > 0 ? prev : -prev;
        }
    }
    return rank;
}

} // namespace detail

/// Exact determinant via fraction-free elimination.
inline Rational det(const RatMatrix& m) {
    if (!m.is_square()) throw DimensionError("det: matrix is not square");
    if (m.rows() == 0) return Rational(1);
    Rational d;
    detail::bareiss_eliminate(m, &d);
    return d;
}

/// Exact rank; 0 for the zero (or empty) matrix.
inline std::size_t rank(const RatMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return detail::bareiss_eliminate(m, nullptr);
}

/// Exact inverse by Gauss-Jordan on the augmented matrix.
inline RatMatrix inverse(const RatMatrix& m) {
    if (!m.is_square()) throw DimensionError("inverse: matrix is not square");
    const std::size_t n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a.at(pivot, col).is_zero()) ++pivot;
        if (pivot == n) throw SingularMatrixError("inverse: singular matrix");
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.at(pivot, j), a.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        const Rational p = a.at(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a.at(col, j) /= p;
            inv.at(col, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a.at(i, col).is_zero()) continue;
            const Rational f = a.at(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

/// Reduced row echelon form: pivots normalized to one, cleared above and
/// below, zero rows dropped. Canonical: two row spaces are equal exactly
/// when their forms are identical.
inline RatMatrix rref(RatMatrix a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t lead = 0;
    for (std::size_t col = 0; col < cols && lead < rows; ++col) {
        std::size_t pivot = lead;
        while (pivot < rows && a.at(pivot, col).is_zero()) ++pivot;
        if (pivot == rows) continue;
        if (pivot != lead)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(pivot, j), a.at(lead, j));
        const Rational p = a.at(lead, col);
        for (std::size_t j = col; j < cols; ++j) a.at(lead, j) /= p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == lead || a.at(i, col).is_zero()) continue;
            const Rational f = a.at(i, col);
            for (std::size_t j = col; j < cols; ++j) a.at(i, j) -= f * a.at(lead, j);
        }
        ++lead;
    }
    RatMatrix out(lead, cols);
    for (std::size_t i = 0; i < lead; ++i)
        for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = a.at(i, j);
    return out;
}

/// Random n-by-n matrix with integer entries in [-bound, bound] and
/// nonzero determinant. Deterministic for a fixed seed; singular draws
/// are resampled up to a fixed retry budget.
inline RatMatrix random_invertible(std::size_t n, std::uint64_t seed, long bound) {
    if (n == 0) throw ParameterError("random_invertible: n must be positive");
    if (bound < 1) throw ParameterError("random_invertible: bound must be positive");
    constexpr int kMaxDraws = 64;
    Rng rng(seed);
    for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m.at(i, j) = Rational(rng.bounded(-bound, bound));
        if (!det(m).is_zero()) return m;
    }
    throw SamplingError("random_invertible: retry budget exhausted");
}

} // namespace cramer
