#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cramer/errors.hpp"
#include "cramer/matrix.hpp"
#include "cramer/point.hpp"
#include "cramer/poly.hpp"
#include "cramer/rational.hpp"
#include "cramer/variables.hpp"

namespace cramer {

/// All k-element subsets of {1, ..., n} in lexicographic order.
inline std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    std::iota(cur.begin(), cur.end(), 1);
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i + 1) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t acc = 1;
    for (int i = 0; i < k; ++i) acc = acc * static_cast<std::uint64_t>(n - i) / (i + 1);
    return acc;
}

/// Identifies one generator of the ideal: either entry (i, j) of the
/// bilinear system M*N = 0, or the minor-matching equation attached to an
/// r-subset of column indices, together with its sign exponent.
struct GeneratorLabel {
    enum class Kind { bilinear, minor_match };

    Kind kind = Kind::bilinear;
    int i = 0, j = 0;         ///< bilinear: entry of M*N (1-based)
    std::vector<int> subset;  ///< minor match: the r-subset of {1..t}
    int sign_exponent = 0;    ///< minor match: e with attached sign (-1)^e

    std::string text() const {
        std::ostringstream os;
        if (kind == Kind::bilinear) {
            os << "Bilinear(" << i << "," << j << ")";
        } else {
            os << "MinorMatch{";
            for (std::size_t k = 0; k < subset.size(); ++k)
                os << (k ? "," : "") << subset[k];
            os << "}";
        }
        return os.str();
    }
};

/// The defining equations of the variety for given (r, s), as an ordered,
/// labeled generator list over its own variable table.
struct CramerIdeal {
    int r = 0, s = 0;
    OmegaMode mode = OmegaMode::with_omega;
    TablePtr table;
    std::vector<std::pair<GeneratorLabel, MultiPoly>> generators;

    int t() const { return r + s; }
    std::size_t ambient_dimension() const { return table->size(); }
};

/// Generates the r*s bilinear equations (the entries of M*N) followed by
/// the C(t, r) minor-matching equations
///
///     sign(T) * w * M_T  -  N_{complement of T},
///
/// listed in lexicographic order of T. Here M_T is the maximal minor of M
/// on columns T, the N minor keeps the complementary rows, and
/// sign(T) = (-1)^(sum(T) + r(r+1)/2) is the shuffle sign of the ordered
/// pair (T, complement): the unique normalization under which the minors
/// of N match those of a kernel basis of M, so that every generator
/// vanishes on the whole orbit of the marked point (see base_point). In
/// omega-less mode the w factor is simply dropped.
inline CramerIdeal generate_ideal(int r, int s, OmegaMode mode) {
    if (r < 1) throw ParameterError("generate_ideal: r must be at least 1");
    if (r > s) throw ParameterError("generate_ideal: need r <= s");
    const int t = r + s;

    CramerIdeal ideal;
    ideal.r = r;
    ideal.s = s;
    ideal.mode = mode;
    ideal.table = ambient_table(r, s, mode);

    const PolyMatrix m = symbolic_m(ideal.table, r, t);
    const PolyMatrix n = symbolic_n(ideal.table, t, s);

    // Bilinear block: (M*N)_{ij} = sum_k m_{ik} n_{kj}, each with t terms.
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= s; ++j) {
            MultiPoly entry = MultiPoly::zero(ideal.table);
            for (int k = 1; k <= t; ++k)
                entry += m.at(i - 1, k - 1) * n.at(k - 1, j - 1);
            GeneratorLabel label;
            label.kind = GeneratorLabel::Kind::bilinear;
            label.i = i;
            label.j = j;
            ideal.generators.emplace_back(std::move(label), std::move(entry));
        }

    // Minor-matching block. M minors share the full row set; N minors
    // share the full column set, so they are expanded over the transpose.
    std::vector<std::size_t> m_rows(r);
    std::iota(m_rows.begin(), m_rows.end(), 0);
    MinorFamily m_minors(m, m_rows);

    PolyMatrix n_t(static_cast<std::size_t>(s), static_cast<std::size_t>(t), ideal.table);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < s; ++j) n_t.at(j, i) = n.at(i, j);
    std::vector<std::size_t> n_rows(s);
    std::iota(n_rows.begin(), n_rows.end(), 0);
    MinorFamily n_minors(n_t, n_rows);

    for (const auto& subset : k_subsets(t, r)) {
        std::vector<std::size_t> m_cols;
        m_cols.reserve(subset.size());
        int subset_sum = 0;
        std::vector<bool> in_subset(t + 1, false);
        for (int c : subset) {
            m_cols.push_back(static_cast<std::size_t>(c - 1));
            subset_sum += c;
            in_subset[c] = true;
        }
        std::vector<std::size_t> n_kept_rows;
        for (int c = 1; c <= t; ++c)
            if (!in_subset[c]) n_kept_rows.push_back(static_cast<std::size_t>(c - 1));

        const int sign_exponent = subset_sum + r * (r + 1) / 2;
        MultiPoly lhs = m_minors.minor(m_cols);
        if (mode == OmegaMode::with_omega)
            lhs = lhs * MultiPoly::variable(ideal.table, ideal.table->index_of(VarKind::omega));
        if (sign_exponent % 2 != 0) lhs = -lhs;
        MultiPoly gen = lhs - n_minors.minor(n_kept_rows);

        GeneratorLabel label;
        label.kind = GeneratorLabel::Kind::minor_match;
        label.subset = subset;
        label.sign_exponent = sign_exponent;
        ideal.generators.emplace_back(std::move(label), std::move(gen));
    }
    return ideal;
}

/// Exact values of all generators at a point, in generator order.
inline std::vector<Rational> evaluate_ideal(const CramerIdeal& ideal, const ConfigurationPoint& p) {
    if (static_cast<int>(p.r()) != ideal.r || static_cast<int>(p.s()) != ideal.s)
        throw DimensionError("evaluate_ideal: point shape does not match ideal");
    if ((ideal.mode == OmegaMode::with_omega) != p.has_omega())
        throw DimensionError("evaluate_ideal: omega presence does not match ideal mode");
    const std::vector<Rational> values = ambient_values(*ideal.table, p);
    std::vector<Rational> out;
    out.reserve(ideal.generators.size());
    for (const auto& [label, gen] : ideal.generators) out.push_back(gen.eval(values));
    return out;
}

inline bool on_variety(const CramerIdeal& ideal, const ConfigurationPoint& p) {
    for (const Rational& v : evaluate_ideal(ideal, p))
        if (!v.is_zero()) return false;
    return true;
}

/// Exact rank of the matrix of first partials of all generators at a
/// point of the variety. The point must satisfy every generator.
inline std::size_t jacobian_rank_at(const CramerIdeal& ideal, const ConfigurationPoint& p) {
    if (!on_variety(ideal, p))
        throw PreconditionError("jacobian_rank_at: point does not satisfy the ideal");
    const std::vector<Rational> values = ambient_values(*ideal.table, p);
    const std::size_t vars = ideal.table->size();
    RatMatrix jac(ideal.generators.size(), vars);
    for (std::size_t g = 0; g < ideal.generators.size(); ++g)
        for (std::size_t k = 0; k < vars; ++k)
            jac.at(g, k) = ideal.generators[g].second.partial(k).eval(values);
    return rank(jac);
}

/// Where a point sits relative to the orbit stratification.
enum class Stratum {
    open_orbit,  ///< rank M = r, rank N = s, omega nonzero
    divisor_v1,  ///< rank M = r, rank N = s-1, omega = 0
    case2,       ///< rank M < r, omega nonzero
    case3,       ///< omega = 0 and not on the divisor (rank-deficient boundary)
    off_variety  ///< some generator does not vanish
};

inline std::string to_string(Stratum s) {
    switch (s) {
    case Stratum::open_orbit: return "OpenOrbit";
    case Stratum::divisor_v1: return "Divisor_V1";
    case Stratum::case2: return "Case2";
    case Stratum::case3: return "Case3";
    case Stratum::off_variety: return "OffVariety";
    }
    return "?";
}

/// Exclusive, exhaustive classification of an ambient point. On the
/// variety, omega != 0 forces rank M = r and rank N = s or rank M < r
/// (cases open orbit / case2); omega = 0 splits into the divisor
/// (rank M = r, rank N = s-1) and the deeper boundary (case3), which
/// also absorbs the codimension >= 2 locus rank M = r, rank N <= s-2.
///
/// Omega-less ideals, which have no divisorial omega = 0 wall, classify
/// by matrix ranks alone: full ranks give open_orbit, anything else case3.
inline Stratum classify(const ConfigurationPoint& p, const CramerIdeal& ideal) {
    if (!on_variety(ideal, p)) return Stratum::off_variety;
    const std::size_t rank_m = rank(p.M);
    const std::size_t rank_n = rank(p.N);
    const std::size_t r = p.r(), s = p.s();
    if (ideal.mode == OmegaMode::omega_less) {
        if (rank_m == r && rank_n == s) return Stratum::open_orbit;
        return Stratum::case3;
    }
    const bool omega_zero = p.omega->is_zero();
    if (!omega_zero) {
        if (rank_m == r) return Stratum::open_orbit;
        return Stratum::case2;
    }
    if (rank_m == r && rank_n == s - 1) return Stratum::divisor_v1;
    return Stratum::case3;
}

/// The marked representative of the divisor: M = (I | 0), N with r+1 zero
/// rows on top of I_{s-1} (padded by a zero last column), omega = 0. For
/// s = 1 the identity block is empty and N is the zero matrix.
inline ConfigurationPoint divisor_representative(int r, int s) {
    if (r < 1 || r > s) throw ParameterError("divisor_representative: need 1 <= r <= s");
    const int t = r + s;
    RatMatrix m = RatMatrix::zero(r, t);
    for (int i = 0; i < r; ++i) m.at(i, i) = Rational(1);
    RatMatrix n = RatMatrix::zero(t, s);
    for (int k = 0; k < s - 1; ++k) n.at(r + 1 + k, k) = Rational(1);
    return ConfigurationPoint(std::move(m), std::move(n), Rational(0));
}

} // namespace cramer
