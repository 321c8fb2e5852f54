#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "cramer/errors.hpp"
#include "cramer/group.hpp"
#include "cramer/matrix.hpp"
#include "cramer/point.hpp"
#include "cramer/poly.hpp"
#include "cramer/variety.hpp"

namespace cramer {

/// Coordinate chart of the variety over the locus where one maximal minor
/// of M is invertible. The free coordinates are every entry of M plus the
/// rows of N outside the pivot subset; the pivot rows of N and omega are
/// solved as numerator / pivot-minor, with the numerators reduced to the
/// free coordinates alone.
///
/// Each chart carries an orientation sign fixing the order ambiguity of
/// its coordinate wedge. Orientations are normalized against the
/// lexicographically first chart so that the transition Jacobian between
/// any two charts is exactly (pivot_to / pivot_from)^s, which in turn
/// makes the local expressions of the canonical differential glue with
/// ratio one.
struct ChartMap {
    int r = 0, s = 0;
    std::vector<int> pivot; ///< 1-based column subset, ascending
    TablePtr table;         ///< with-omega ambient table
    MultiPoly pivot_minor = MultiPoly(ambient_table(1, 1, OmegaMode::with_omega));
    std::vector<std::size_t> free_vars;        ///< table indices, ascending
    std::map<std::size_t, MultiPoly> solved;   ///< var index -> numerator over pivot minor
    int orientation = 1;

    bool is_free(std::size_t var) const {
        return std::binary_search(free_vars.begin(), free_vars.end(), var);
    }

    Rational pivot_value(const ConfigurationPoint& p) const { return pivot_minor.eval(p); }

    /// Rebuilds the full point determined by the free coordinates of p.
    /// For p on the variety inside the chart domain this reproduces p.
    ConfigurationPoint reconstruct(const ConfigurationPoint& p) const {
        const std::vector<Rational> values = ambient_values(*table, p);
        const Rational piv = pivot_minor.eval(values);
        if (piv.is_zero()) throw ChartDomainError("reconstruct: pivot minor vanishes at point");
        ConfigurationPoint out = p;
        for (const auto& [var, numerator] : solved) {
            const Rational value = numerator.eval(values) / piv;
            const auto& d = table->var(var);
            if (d.kind == VarKind::n_entry)
                out.N.at(d.i - 1, d.j - 1) = value;
            else
                out.omega = value;
        }
        return out;
    }
};

namespace detail {

/// Cramer solve of the pivot rows of N and omega; no orientation yet.
inline ChartMap solve_chart_raw(int r, int s, const std::vector<int>& pivot) {
    if (static_cast<int>(pivot.size()) != r)
        throw ParameterError("chart_solve: pivot subset must have r elements");
    const int t = r + s;
    std::vector<int> sorted = pivot;
    std::sort(sorted.begin(), sorted.end());
    for (int c : sorted)
        if (c < 1 || c > t) throw ParameterError("chart_solve: pivot column out of range");

    ChartMap chart;
    chart.r = r;
    chart.s = s;
    chart.pivot = sorted;
    chart.table = ambient_table(r, s, OmegaMode::with_omega);
    const TablePtr& table = chart.table;

    const PolyMatrix m = symbolic_m(table, r, t);
    const PolyMatrix n = symbolic_n(table, t, s);

    std::vector<std::size_t> all_rows(r);
    std::iota(all_rows.begin(), all_rows.end(), 0);
    std::vector<std::size_t> pivot_cols;
    std::vector<bool> in_pivot(t + 1, false);
    int pivot_sum = 0;
    for (int c : sorted) {
        pivot_cols.push_back(static_cast<std::size_t>(c - 1));
        in_pivot[c] = true;
        pivot_sum += c;
    }
    chart.pivot_minor = minor(m, all_rows, pivot_cols);

    // Solved rows of N, column by column: the pivot block of M times the
    // unknown block equals minus the free contribution, so each unknown is
    // a ratio of determinants with the pivot minor below.
    for (int j = 1; j <= s; ++j) {
        std::vector<MultiPoly> rhs;
        rhs.reserve(r);
        for (int i = 1; i <= r; ++i) {
            MultiPoly acc = MultiPoly::zero(table);
            for (int k = 1; k <= t; ++k)
                if (!in_pivot[k]) acc -= m.at(i - 1, k - 1) * n.at(k - 1, j - 1);
            rhs.push_back(std::move(acc));
        }
        for (int a = 0; a < r; ++a) {
            PolyMatrix replaced(r, r, table);
            for (int i = 0; i < r; ++i)
                for (int b = 0; b < r; ++b)
                    replaced.at(i, b) = (b == a) ? rhs[i] : m.at(i, pivot_cols[b]);
            std::vector<std::size_t> cols(r);
            std::iota(cols.begin(), cols.end(), 0);
            const std::size_t var = table->index_of(VarKind::n_entry, sorted[a], j);
            chart.solved.emplace(var, minor(replaced, all_rows, cols));
        }
    }

    // Omega from the minor-matching equation of the pivot subset itself:
    // its N-minor keeps exactly the free rows.
    PolyMatrix n_t(static_cast<std::size_t>(s), static_cast<std::size_t>(t), table);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < s; ++j) n_t.at(j, i) = n.at(i, j);
    std::vector<std::size_t> kept;
    for (int c = 1; c <= t; ++c)
        if (!in_pivot[c]) kept.push_back(static_cast<std::size_t>(c - 1));
    std::vector<std::size_t> nt_rows(s);
    std::iota(nt_rows.begin(), nt_rows.end(), 0);
    MultiPoly omega_num = minor(n_t, nt_rows, kept);
    if ((pivot_sum + r * (r + 1) / 2) % 2 != 0) omega_num = -omega_num;
    chart.solved.emplace(table->index_of(VarKind::omega), std::move(omega_num));

    for (std::size_t k = 0; k < table->size(); ++k)
        if (!chart.solved.count(k)) chart.free_vars.push_back(k);
    return chart;
}

/// g with the solved coordinates substituted and denominators cleared:
/// pivot^D * g(free, solved(free)). Identically zero exactly when g
/// vanishes on the chart.
inline MultiPoly substitute_cleared(const MultiPoly& g, const ChartMap& chart) {
    const TablePtr& table = chart.table;
    int max_solved_degree = 0;
    for (const auto& [e, c] : g.terms()) {
        int d = 0;
        for (const auto& [var, num] : chart.solved) d += e[var];
        if (d > max_solved_degree) max_solved_degree = d;
    }
    MultiPoly out = MultiPoly::zero(table);
    for (const auto& [e, c] : g.terms()) {
        MultiPoly term = MultiPoly::constant(table, c);
        int d = 0;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            auto it = chart.solved.find(k);
            if (it == chart.solved.end()) {
                term = term * MultiPoly::variable(table, k, e[k]);
            } else {
                term = term * it->second.pow(e[k]);
                d += e[k];
            }
        }
        term = term * chart.pivot_minor.pow(max_solved_degree - d);
        out += term;
    }
    return out;
}

/// Jacobian determinant of the coordinate change at p with both charts in
/// plain ascending coordinate order (no orientation applied).
inline Rational raw_transition_det(const ChartMap& from, const ChartMap& to,
                                   const ConfigurationPoint& p) {
    if (from.r != to.r || from.s != to.s)
        throw DimensionError("transition: charts belong to different varieties");
    const std::vector<Rational> values = ambient_values(*from.table, p);
    const Rational piv = from.pivot_minor.eval(values);
    if (piv.is_zero() || to.pivot_minor.eval(values).is_zero())
        throw ChartDomainError("transition: point is outside the chart overlap");

    const std::size_t dim = from.free_vars.size();
    std::map<std::size_t, std::size_t> col_of;
    for (std::size_t c = 0; c < dim; ++c) col_of.emplace(from.free_vars[c], c);

    RatMatrix jac(dim, dim);
    const Rational piv_sq = piv * piv;
    for (std::size_t rrow = 0; rrow < dim; ++rrow) {
        const std::size_t v = to.free_vars[rrow];
        auto common = col_of.find(v);
        if (common != col_of.end()) {
            jac.at(rrow, common->second) = Rational(1);
            continue;
        }
        const MultiPoly& num = from.solved.at(v);
        const Rational num_p = num.eval(values);
        for (std::size_t ccol = 0; ccol < dim; ++ccol) {
            const std::size_t u = from.free_vars[ccol];
            const Rational dnum = num.partial(u).eval(values);
            const Rational dpiv = from.pivot_minor.partial(u).eval(values);
            jac.at(rrow, ccol) = (dnum * piv - num_p * dpiv) / piv_sq;
        }
    }
    return det(jac);
}

constexpr std::uint64_t kOrientationSeed = 0x9d8a7b6c5e4f3a21ULL;

/// Witness point with every requested pivot minor invertible.
inline ConfigurationPoint generic_overlap_point(int r, int s,
                                                const std::vector<const MultiPoly*>& minors,
                                                std::uint64_t seed) {
    for (std::uint64_t attempt = 0; attempt < 32; ++attempt) {
        ConfigurationPoint p = orbit_sample(r, s, derive_seed(seed, attempt), 1, 3)[0];
        bool ok = true;
        for (const MultiPoly* m : minors)
            ok = ok && !m->eval(p).is_zero();
        if (ok) return p;
    }
    throw SamplingError("generic_overlap_point: no point with invertible pivots found");
}

/// Fixes chart.orientation so the oriented transition from the reference
/// chart matches (pivot_to / pivot_from)^s. The ascending-order Jacobian
/// already has that value up to a sign that depends only on the pivot
/// pair, so one generic witness point determines it; anything other than
/// an exact +-1 ratio is a defect and throws.
inline void calibrate_orientation(const ChartMap& reference, ChartMap& chart) {
    if (chart.pivot == reference.pivot) {
        chart.orientation = 1;
        return;
    }
    const ConfigurationPoint p = generic_overlap_point(
        chart.r, chart.s, {&reference.pivot_minor, &chart.pivot_minor}, kOrientationSeed);
    const Rational raw = raw_transition_det(reference, chart, p);
    const Rational formula =
        (chart.pivot_minor.eval(p) / reference.pivot_minor.eval(p)).pow(chart.s);
    const Rational ratio = raw / formula;
    if (ratio == Rational(1))
        chart.orientation = 1;
    else if (ratio == Rational(-1))
        chart.orientation = -1;
    else
        throw Error("calibrate_orientation: transition is not +-1 times the minor ratio");
}

inline std::vector<int> first_pivot(int r) {
    std::vector<int> t0(r);
    std::iota(t0.begin(), t0.end(), 1);
    return t0;
}

} // namespace detail

/// Builds the chart over {pivot minor != 0}: solves the pivot rows of N by
/// Cramer's rule and omega from the matching minor equation, verifies that
/// the solved expressions annihilate every generator identically, and
/// normalizes the chart orientation.
inline ChartMap chart_solve(int r, int s, const std::vector<int>& pivot) {
    ChartMap chart = detail::solve_chart_raw(r, s, pivot);

    const CramerIdeal ideal = generate_ideal(r, s, OmegaMode::with_omega);
    for (const auto& [label, gen] : ideal.generators)
        if (!detail::substitute_cleared(gen, chart).is_zero())
            throw Error("chart_solve: solved expressions do not annihilate " + label.text());

    const std::vector<int> t0 = detail::first_pivot(r);
    if (chart.pivot != t0) {
        ChartMap reference = detail::solve_chart_raw(r, s, t0);
        detail::calibrate_orientation(reference, chart);
    }
    return chart;
}

/// Oriented Jacobian determinant of the change of free coordinates at p.
/// Equals (pivot_to(p) / pivot_from(p))^s on the chart overlap.
inline Rational transition_jacobian_det(const ChartMap& from, const ChartMap& to,
                                        const ConfigurationPoint& p) {
    const Rational raw = detail::raw_transition_det(from, to, p);
    return Rational(from.orientation * to.orientation) * raw;
}

/// True when the canonical differential's local expressions in the two
/// charts glue with ratio exactly one at p.
inline bool sigma_consistency(const ConfigurationPoint& p, const ChartMap& t1, const ChartMap& t2) {
    const Rational jac = transition_jacobian_det(t1, t2, p);
    const Rational ratio = jac * t1.pivot_value(p).pow(t1.s) / t2.pivot_value(p).pow(t2.s);
    return ratio == Rational(1);
}

/// All charts of one variety, solved once and sharing the orientation
/// reference.
class ChartAtlas {
public:
    ChartAtlas(int r, int s) : r_(r), s_(s) {
        const CramerIdeal ideal = generate_ideal(r, s, OmegaMode::with_omega);
        ChartMap reference = detail::solve_chart_raw(r, s, detail::first_pivot(r));
        for (const auto& pivot : k_subsets(r + s, r)) {
            ChartMap chart = pivot == reference.pivot ? reference
                                                      : detail::solve_chart_raw(r, s, pivot);
            for (const auto& [label, gen] : ideal.generators)
                if (!detail::substitute_cleared(gen, chart).is_zero())
                    throw Error("ChartAtlas: solved expressions do not annihilate " + label.text());
            detail::calibrate_orientation(reference, chart);
            charts_.push_back(std::move(chart));
        }
    }

    int r() const { return r_; }
    int s() const { return s_; }
    const std::vector<ChartMap>& charts() const { return charts_; }

    const ChartMap& chart(const std::vector<int>& pivot) const {
        for (const ChartMap& c : charts_)
            if (c.pivot == pivot) return c;
        throw ParameterError("ChartAtlas: no such pivot subset");
    }

private:
    int r_, s_;
    std::vector<ChartMap> charts_;
};

/// Structure of the coordinate change between the two adjacent reference
/// charts, with coordinates listed common-first: the common block must be
/// the identity with zero to its right, and the trailing block must be a
/// scalar matrix. Checked at one point.
struct AdjacentBlockStructure {
    bool identity_block = false;
    bool scalar_block = false;
    Rational scalar;
};

inline AdjacentBlockStructure adjacent_block_structure(const ChartMap& from, const ChartMap& to,
                                                       const ConfigurationPoint& p) {
    const std::vector<Rational> values = ambient_values(*from.table, p);
    const Rational piv = from.pivot_minor.eval(values);
    if (piv.is_zero() || to.pivot_minor.eval(values).is_zero())
        throw ChartDomainError("adjacent_block_structure: point outside overlap");

    std::vector<std::size_t> common, new_rows, old_cols;
    for (std::size_t v : to.free_vars)
        if (std::binary_search(from.free_vars.begin(), from.free_vars.end(), v))
            common.push_back(v);
        else
            new_rows.push_back(v);
    for (std::size_t u : from.free_vars)
        if (!std::binary_search(to.free_vars.begin(), to.free_vars.end(), u))
            old_cols.push_back(u);

    AdjacentBlockStructure out;
    out.identity_block = true;
    // Rows of common coordinates: the map is the identity there, and the
    // derivative against the trailing old coordinates vanishes.
    // (Common coordinates are free in `from`, so this is exact.)
    const Rational piv_sq = piv * piv;
    auto entry = [&](std::size_t v, std::size_t u) {
        const MultiPoly& num = from.solved.at(v);
        const Rational dnum = num.partial(u).eval(values);
        const Rational dpiv = from.pivot_minor.partial(u).eval(values);
        return (dnum * piv - num.eval(values) * dpiv) / piv_sq;
    };

    out.scalar_block = !new_rows.empty();
    Rational diag;
    bool have_diag = false;
    for (std::size_t i = 0; i < new_rows.size(); ++i) {
        for (std::size_t j = 0; j < old_cols.size(); ++j) {
            const Rational value = entry(new_rows[i], old_cols[j]);
            if (i == j) {
                if (!have_diag) {
                    diag = value;
                    have_diag = true;
                } else if (value != diag) {
                    out.scalar_block = false;
                }
            } else if (!value.is_zero()) {
                out.scalar_block = false;
            }
        }
    }
    out.scalar = diag;
    return out;
}

// ---------------------------------------------------------------------------
// Cartier cover verification
// ---------------------------------------------------------------------------

struct CartierPairResult {
    std::vector<int> pivot_a, pivot_b;
    enum class Status { pass, inconclusive } status = Status::inconclusive;
    std::size_t overlap_hits = 0;
    std::optional<ConfigurationPoint> witness;
};

struct CartierReport {
    int r = 0, s = 0;
    std::size_t samples = 0;
    std::vector<CartierPairResult> pairs;

    bool all_pass() const {
        for (const auto& p : pairs)
            if (p.status != CartierPairResult::Status::pass) return false;
        return true;
    }
};

constexpr std::uint64_t kCartierSeed = 0x51cafe77aa010203ULL;

/// For every ordered pair of pivot subsets, samples orbit points in the
/// chart overlap and checks that the transition function
/// (pivot_a / pivot_b)^s is invertible there. Pairs whose overlap was
/// never hit within the sample budget are flagged inconclusive rather
/// than failed.
inline CartierReport cartier_cover_report(int r, int s, std::size_t samples,
                                          std::uint64_t seed = kCartierSeed) {
    if (samples < 1) throw ParameterError("cartier_cover_report: samples must be positive");
    const int t = r + s;
    CartierReport report;
    report.r = r;
    report.s = s;
    report.samples = samples;

    std::vector<std::pair<std::vector<int>, MultiPoly>> minors;
    {
        const TablePtr table = ambient_table(r, s, OmegaMode::with_omega);
        const PolyMatrix m = symbolic_m(table, r, t);
        std::vector<std::size_t> rows(r);
        std::iota(rows.begin(), rows.end(), 0);
        MinorFamily family(m, rows);
        for (const auto& subset : k_subsets(t, r)) {
            std::vector<std::size_t> cols;
            for (int c : subset) cols.push_back(static_cast<std::size_t>(c - 1));
            minors.emplace_back(subset, family.minor(cols));
        }
    }

    const std::vector<ConfigurationPoint> points = orbit_sample(r, s, seed, samples, 5);
    std::vector<std::vector<Rational>> minor_values(points.size());
    for (std::size_t k = 0; k < points.size(); ++k)
        for (const auto& [subset, poly] : minors)
            minor_values[k].push_back(poly.eval(points[k]));

    for (std::size_t a = 0; a < minors.size(); ++a)
        for (std::size_t b = 0; b < minors.size(); ++b) {
            CartierPairResult pr;
            pr.pivot_a = minors[a].first;
            pr.pivot_b = minors[b].first;
            bool unit_everywhere = true;
            for (std::size_t k = 0; k < points.size(); ++k) {
                const Rational& va = minor_values[k][a];
                const Rational& vb = minor_values[k][b];
                if (va.is_zero() || vb.is_zero()) continue; // outside the overlap
                ++pr.overlap_hits;
                const Rational transition = (va / vb).pow(s);
                if (transition.is_zero()) unit_everywhere = false;
                if (!pr.witness) pr.witness = points[k];
            }
            pr.status = (pr.overlap_hits > 0 && unit_everywhere)
                            ? CartierPairResult::Status::pass
                            : CartierPairResult::Status::inconclusive;
            report.pairs.push_back(std::move(pr));
        }
    return report;
}

} // namespace cramer
