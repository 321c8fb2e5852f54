#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cramer/errors.hpp"
#include "cramer/rational.hpp"
#include "cramer/variables.hpp"

namespace cramer {

using Exponents = std::vector<int>;

/// Graded order: total degree first, then lexicographic in table order.
/// Fixes a canonical term order for printing and span computations.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        return a < b;
    }
};

/// Sparse multivariate polynomial over the rationals with a fixed
/// variable table. Zero coefficients are never stored.
class MultiPoly {
public:
    using TermMap = std::map<Exponents, Rational, GradedLexLess>;

    explicit MultiPoly(TablePtr table) : table_(std::move(table)) {
        if (!table_) throw ParameterError("MultiPoly: null table");
    }

    static MultiPoly zero(TablePtr table) { return MultiPoly(std::move(table)); }

    static MultiPoly constant(TablePtr table, const Rational& c) {
        MultiPoly p(std::move(table));
        if (!c.is_zero()) p.terms_.emplace(Exponents(p.table_->size(), 0), c);
        return p;
    }

    static MultiPoly variable(TablePtr table, std::size_t index, int exponent = 1) {
        MultiPoly p(std::move(table));
        if (index >= p.table_->size()) throw TableMismatchError("MultiPoly: variable index out of range");
        if (exponent < 0) throw ParameterError("MultiPoly: negative exponent");
        Exponents e(p.table_->size(), 0);
        e[index] = exponent;
        p.terms_.emplace(std::move(e), Rational(1));
        return p;
    }

    const TablePtr& table() const { return table_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    int total_degree() const {
        int deg = 0;
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (int x : e) d += x;
            if (d > deg) deg = d;
        }
        return deg;
    }

    bool is_homogeneous(int degree) const {
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (int x : e) d += x;
            if (d != degree) return false;
        }
        return true;
    }

    /// Largest exponent of one variable across all terms.
    int degree_in(std::size_t index) const {
        int deg = 0;
        for (const auto& [e, c] : terms_)
            if (e[index] > deg) deg = e[index];
        return deg;
    }

    /// Total degree of each term in the given variable set, maximized.
    int degree_in_set(const std::vector<std::size_t>& indices) const {
        int deg = 0;
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (std::size_t k : indices) d += e[k];
            if (d > deg) deg = d;
        }
        return deg;
    }

    void add_term(const Exponents& exps, const Rational& coeff) {
        if (coeff.is_zero()) return;
        if (exps.size() != table_->size())
            throw TableMismatchError("MultiPoly: exponent vector length mismatch");
        auto it = terms_.find(exps);
        if (it == terms_.end()) {
            terms_.emplace(exps, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly p(table_);
        for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
        return p;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_table(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_table(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_table(b);
        MultiPoly p(a.table_);
        Exponents e(a.table_->size());
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
                p.add_term(e, ca * cb);
            }
        return p;
    }

    friend MultiPoly operator*(const Rational& c, const MultiPoly& a) {
        MultiPoly p(a.table_);
        if (c.is_zero()) return p;
        for (const auto& [e, q] : a.terms_) p.terms_.emplace(e, c * q);
        return p;
    }

    MultiPoly pow(int e) const {
        if (e < 0) throw ParameterError("MultiPoly: negative power");
        MultiPoly acc = constant(table_, Rational(1));
        for (int k = 0; k < e; ++k) acc = acc * *this;
        return acc;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return same_table(a.table_, b.table_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    /// Exact substitution of one value per table variable.
    Rational eval(const std::vector<Rational>& values) const {
        if (values.size() != table_->size())
            throw DimensionError("MultiPoly::eval: value count mismatch");
        Rational acc(0);
        for (const auto& [e, c] : terms_) {
            Rational term = c;
            for (std::size_t k = 0; k < e.size(); ++k)
                if (e[k] != 0) term *= values[k].pow(e[k]);
            acc += term;
        }
        return acc;
    }

    Rational eval(const ConfigurationPoint& p) const {
        return eval(ambient_values(*table_, p));
    }

    /// Formal partial derivative with respect to one table variable.
    MultiPoly partial(std::size_t index) const {
        if (index >= table_->size()) throw TableMismatchError("MultiPoly::partial: unknown variable");
        MultiPoly p(table_);
        for (const auto& [e, c] : terms_) {
            if (e[index] == 0) continue;
            Exponents d = e;
            d[index] -= 1;
            p.add_term(d, Rational(e[index]) * c);
        }
        return p;
    }

    /// Ring homomorphism into polynomials over another table: each
    /// variable of this table is replaced by its image polynomial.
    MultiPoly substitute(const TablePtr& target, const std::vector<MultiPoly>& images) const {
        if (images.size() != table_->size())
            throw TableMismatchError("MultiPoly::substitute: one image per variable required");
        MultiPoly acc(target);
        for (const auto& [e, c] : terms_) {
            MultiPoly term = constant(target, c);
            for (std::size_t k = 0; k < e.size(); ++k)
                if (e[k] != 0) term = term * images[k].pow(e[k]);
            acc += term;
        }
        return acc;
    }

    /// Canonical text form, highest term first: "m11*n11 - 2*m12^2".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            Rational a = c;
            if (first) {
                if (a.sign() < 0) { os << "-"; a = -a; }
            } else {
                os << (a.sign() < 0 ? " - " : " + ");
                if (a.sign() < 0) a = -a;
            }
            first = false;
            bool monomial = false;
            for (int x : e)
                if (x != 0) { monomial = true; break; }
            if (!monomial || !a.is_one()) {
                os << a.str();
                if (monomial) os << "*";
            }
            bool lead = true;
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                if (!lead) os << "*";
                lead = false;
                os << table_->name(k);
                if (e[k] > 1) os << "^" << e[k];
            }
        }
        return os.str();
    }

private:
    void check_table(const MultiPoly& o) const {
        if (!same_table(table_, o.table_))
            throw TableMismatchError("MultiPoly: operands belong to different variable tables");
    }

    TablePtr table_;
    TermMap terms_;
};

/// Matrix of polynomials over a shared variable table.
class PolyMatrix {
public:
    PolyMatrix(std::size_t rows, std::size_t cols, TablePtr table)
        : rows_(rows), cols_(cols), table_(std::move(table)),
          entries_(rows * cols, MultiPoly::zero(table_)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const TablePtr& table() const { return table_; }

    MultiPoly& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const MultiPoly& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

private:
    std::size_t rows_, cols_;
    TablePtr table_;
    std::vector<MultiPoly> entries_;
};

/// The symbolic r-by-t matrix of m variables over an ambient table.
inline PolyMatrix symbolic_m(const TablePtr& table, int r, int t) {
    PolyMatrix pm(r, t, table);
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= t; ++j)
            pm.at(i - 1, j - 1) = MultiPoly::variable(table, table->index_of(VarKind::m_entry, i, j));
    return pm;
}

/// The symbolic t-by-s matrix of n variables over an ambient table.
inline PolyMatrix symbolic_n(const TablePtr& table, int t, int s) {
    PolyMatrix pm(t, s, table);
    for (int i = 1; i <= t; ++i)
        for (int j = 1; j <= s; ++j)
            pm.at(i - 1, j - 1) = MultiPoly::variable(table, table->index_of(VarKind::n_entry, i, j));
    return pm;
}

/// Minors of one matrix over a fixed row set, expanded by Laplace along
/// the first remaining row and memoized on the remaining-column bitmask.
/// Reusing one family across the column subsets of a minor system shares
/// the common sub-minors.
class MinorFamily {
public:
    MinorFamily(const PolyMatrix& pm, std::vector<std::size_t> rows)
        : pm_(pm), rows_(std::move(rows)) {
        for (std::size_t r : rows_)
            if (r >= pm_.rows()) throw DimensionError("minor: row index out of range");
        if (pm_.cols() > 64) throw DimensionError("minor: column count limit exceeded");
    }

    MultiPoly minor(const std::vector<std::size_t>& cols) {
        if (rows_.size() != cols.size())
            throw DimensionError("minor: need equally many rows and columns");
        std::uint64_t mask = 0;
        for (std::size_t c : cols) {
            if (c >= pm_.cols()) throw DimensionError("minor: column index out of range");
            mask |= (1ULL << c);
        }
        if (cols.size() != static_cast<std::size_t>(__builtin_popcountll(mask)))
            throw DimensionError("minor: duplicate column index");
        return expand(0, mask);
    }

private:
    MultiPoly expand(std::size_t depth, std::uint64_t colmask) {
        if (depth == rows_.size()) return MultiPoly::constant(pm_.table(), Rational(1));
        auto it = memo_.find(colmask);
        if (it != memo_.end()) return it->second;
        MultiPoly acc = MultiPoly::zero(pm_.table());
        int sign = 1;
        for (std::size_t c = 0; c < pm_.cols(); ++c) {
            if (!(colmask & (1ULL << c))) continue;
            const MultiPoly& entry = pm_.at(rows_[depth], c);
            if (!entry.is_zero()) {
                MultiPoly sub = expand(depth + 1, colmask & ~(1ULL << c));
                MultiPoly contrib = entry * sub;
                acc += (sign > 0) ? contrib : -contrib;
            }
            sign = -sign;
        }
        memo_.emplace(colmask, acc);
        return acc;
    }

    const PolyMatrix& pm_;
    std::vector<std::size_t> rows_;
    std::unordered_map<std::uint64_t, MultiPoly> memo_;
};

/// Exact determinant of the submatrix selected by 0-based row/column lists.
/// Note the expansion runs over column subsets; for a system of minors
/// with a fixed row set, build one MinorFamily and reuse it.
inline MultiPoly minor(const PolyMatrix& pm, const std::vector<std::size_t>& rows,
                       const std::vector<std::size_t>& cols) {
    MinorFamily family(pm, rows);
    return family.minor(cols);
}

} // namespace cramer
