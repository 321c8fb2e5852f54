#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cramer/errors.hpp"
#include "cramer/group.hpp"
#include "cramer/matrix.hpp"
#include "cramer/poly.hpp"
#include "cramer/rng.hpp"
#include "cramer/variables.hpp"
#include "cramer/variety.hpp"
#include "cramer/weights.hpp"

namespace cramer {

// ---------------------------------------------------------------------------
// Spinor coordinates and quadrics
// ---------------------------------------------------------------------------

/// The 16 spinor-embedding coordinates: one scalar x, the entries x_{ij}
/// (1 <= i < j <= 5) of a skew matrix, and five coordinates y_i.
inline TablePtr spinor_table() {
    std::vector<VarDescriptor> vars;
    vars.push_back({VarKind::named, 0, 0, "x"});
    for (int i = 1; i <= 5; ++i)
        for (int j = i + 1; j <= 5; ++j)
            vars.push_back({VarKind::named, i, j, "x" + std::to_string(i) + std::to_string(j)});
    for (int i = 1; i <= 5; ++i) vars.push_back({VarKind::named, i, 0, "y" + std::to_string(i)});
    return std::make_shared<VariableTable>(std::move(vars));
}

inline std::size_t spinor_x_index(const VariableTable& table) { return table.index_of_name("x"); }

inline std::size_t spinor_xij_index(const VariableTable& table, int i, int j) {
    if (i > j) std::swap(i, j);
    return table.index_of_name("x" + std::to_string(i) + std::to_string(j));
}

inline std::size_t spinor_y_index(const VariableTable& table, int i) {
    return table.index_of_name("y" + std::to_string(i));
}

/// Signed skew entry as a polynomial: x_{ij} for i < j, -x_{ji} for i > j.
inline MultiPoly skew_entry(const TablePtr& table, int i, int j) {
    if (i == j) return MultiPoly::zero(table);
    MultiPoly v = MultiPoly::variable(table, spinor_xij_index(*table, i, j));
    return i < j ? v : -v;
}

/// Three-term Pfaffian of the skew submatrix on the four indices of
/// {1..5} other than `omit`, in symbolic spinor coordinates.
inline MultiPoly sub_pfaffian(const TablePtr& table, int omit) {
    std::array<int, 4> k{};
    int pos = 0;
    for (int i = 1; i <= 5; ++i)
        if (i != omit) k[pos++] = i;
    auto x = [&](int a, int b) { return MultiPoly::variable(table, spinor_xij_index(*table, a, b)); };
    return x(k[0], k[1]) * x(k[2], k[3]) - x(k[0], k[2]) * x(k[1], k[3]) +
           x(k[0], k[3]) * x(k[1], k[2]);
}

/// Numeric three-term Pfaffian of a 4x4 skew matrix.
inline Rational pfaffian4(const RatMatrix& m) {
    if (m.rows() != 4 || m.cols() != 4) throw DimensionError("pfaffian4: need a 4x4 matrix");
    return m.at(0, 1) * m.at(2, 3) - m.at(0, 2) * m.at(1, 3) + m.at(0, 3) * m.at(1, 2);
}

/// Numeric sub-Pfaffian of a 5x5 skew matrix with one index removed,
/// carrying the alternating sign (-1)^omit that makes the vector of
/// sub-Pfaffians a kernel vector of the matrix.
inline Rational signed_sub_pfaffian(const RatMatrix& xi, int omit) {
    std::vector<std::size_t> keep;
    for (int i = 1; i <= 5; ++i)
        if (i != omit) keep.push_back(static_cast<std::size_t>(i - 1));
    const Rational pf = pfaffian4(xi.submatrix(keep, keep));
    return omit % 2 == 0 ? pf : -pf;
}

/// The ten spinor quadrics in 16 coordinates: five Pfaffian relations
/// x*y_i = (-1)^i Pf_i and five incidence relations sum_j x_{ij} y_j = 0.
/// Each has exactly four terms.
inline std::vector<MultiPoly> ogr_quadrics(const TablePtr& table) {
    std::vector<MultiPoly> out;
    out.reserve(10);
    const MultiPoly x = MultiPoly::variable(table, spinor_x_index(*table));
    for (int i = 1; i <= 5; ++i) {
        const MultiPoly y = MultiPoly::variable(table, spinor_y_index(*table, i));
        MultiPoly pf = sub_pfaffian(table, i);
        if (i % 2 != 0) pf = -pf;
        out.push_back(x * y - pf);
    }
    for (int i = 1; i <= 5; ++i) {
        MultiPoly acc = MultiPoly::zero(table);
        for (int j = 1; j <= 5; ++j) {
            if (j == i) continue;
            acc += skew_entry(table, i, j) *
                   MultiPoly::variable(table, spinor_y_index(*table, j));
        }
        out.push_back(std::move(acc));
    }
    return out;
}

inline std::vector<MultiPoly> ogr_quadrics() { return ogr_quadrics(spinor_table()); }

/// Point of the spinor variety parametrized by a rational 5x5 skew
/// matrix: x = 1, x_{ij} = Xi_{ij}, y_i the signed sub-Pfaffians.
/// Returned as values in spinor table order.
inline std::vector<Rational> spinor_parametrization(const TablePtr& table, const RatMatrix& xi) {
    if (xi.rows() != 5 || xi.cols() != 5) throw DimensionError("spinor_parametrization: need 5x5");
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            if (xi.at(i, j) != -xi.at(j, i))
                throw ParameterError("spinor_parametrization: matrix is not skew");
    std::vector<Rational> values(table->size());
    values[spinor_x_index(*table)] = Rational(1);
    for (int i = 1; i <= 5; ++i)
        for (int j = i + 1; j <= 5; ++j)
            values[spinor_xij_index(*table, i, j)] = xi.at(i - 1, j - 1);
    for (int i = 1; i <= 5; ++i)
        values[spinor_y_index(*table, i)] = signed_sub_pfaffian(xi, i);
    return values;
}

/// Deterministic random skew matrix with bounded integer entries.
inline RatMatrix random_skew5(std::uint64_t seed, long bound) {
    Rng rng(seed);
    RatMatrix xi = RatMatrix::zero(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            const Rational v(rng.bounded(-bound, bound));
            xi.at(i, j) = v;
            xi.at(j, i) = -v;
        }
    return xi;
}

// ---------------------------------------------------------------------------
// Quadric spans
// ---------------------------------------------------------------------------

/// Linear span of a family of quadratic forms, canonicalized as the
/// reduced row echelon form of the coefficient matrix over the monomial
/// basis {v_i v_j : i <= j} in table order.
struct QuadricSpan {
    std::size_t variables = 0;
    RatMatrix reduced; ///< RREF, one row per independent quadric

    std::size_t rank() const { return reduced.rows(); }

    friend bool operator==(const QuadricSpan& a, const QuadricSpan& b) {
        return a.variables == b.variables && a.reduced == b.reduced;
    }
    friend bool operator!=(const QuadricSpan& a, const QuadricSpan& b) { return !(a == b); }
};

inline QuadricSpan quadric_span(const std::vector<MultiPoly>& quadrics) {
    if (quadrics.empty()) throw ParameterError("quadric_span: empty family");
    const TablePtr table = quadrics.front().table();
    const std::size_t n = table->size();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> column;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) column.emplace(std::make_pair(i, j), column.size());

    RatMatrix coeffs(quadrics.size(), column.size());
    for (std::size_t q = 0; q < quadrics.size(); ++q) {
        if (!same_table(quadrics[q].table(), table))
            throw TableMismatchError("quadric_span: mixed variable tables");
        if (!quadrics[q].is_homogeneous(2) || quadrics[q].is_zero())
            throw ParameterError("quadric_span: input is not a nonzero quadratic form");
        for (const auto& [e, c] : quadrics[q].terms()) {
            std::size_t first = n, second = n;
            for (std::size_t k = 0; k < n; ++k) {
                if (e[k] == 1) {
                    (first == n ? first : second) = k;
                } else if (e[k] == 2) {
                    first = second = k;
                }
            }
            coeffs.at(q, column.at({first, second})) = c;
        }
    }
    QuadricSpan span;
    span.variables = n;
    span.reduced = rref(std::move(coeffs));
    return span;
}

/// The omega-less (2,2) equations over their 16-variable table.
inline std::vector<MultiPoly> cramer_242_quadrics(const CramerIdeal& ideal) {
    if (ideal.r != 2 || ideal.s != 2 || ideal.mode != OmegaMode::omega_less)
        throw ParameterError("cramer_242_quadrics: expected the omega-less (2,2) ideal");
    std::vector<MultiPoly> out;
    out.reserve(ideal.generators.size());
    for (const auto& [label, gen] : ideal.generators) out.push_back(gen);
    return out;
}

inline std::vector<MultiPoly> cramer_242_quadrics() {
    const CramerIdeal ideal = generate_ideal(2, 2, OmegaMode::omega_less);
    return cramer_242_quadrics(ideal);
}

// ---------------------------------------------------------------------------
// Coordinate identification
// ---------------------------------------------------------------------------

/// A signed bijection from spinor coordinates onto the 16 coordinates of
/// the omega-less (2,2) ring: spinor variable k maps to sign[k] times the
/// cramer variable target[k].
struct CoordMap {
    std::vector<std::size_t> target; ///< indexed by spinor variable
    std::vector<int> sign;           ///< +1 / -1, same indexing

    bool is_signed_bijection(std::size_t n) const {
        if (target.size() != n || sign.size() != n) return false;
        std::vector<bool> used(n, false);
        for (std::size_t k = 0; k < n; ++k) {
            if (target[k] >= n || used[target[k]]) return false;
            if (sign[k] != 1 && sign[k] != -1) return false;
            used[target[k]] = true;
        }
        return true;
    }
};

/// Images of the spinor variables in the cramer ring under the map.
inline std::vector<MultiPoly> coord_map_images(const CoordMap& map, const TablePtr& spinor,
                                               const TablePtr& cramer_ring) {
    if (!map.is_signed_bijection(spinor->size()))
        throw ParameterError("coord_map_images: not a signed bijection");
    std::vector<MultiPoly> images;
    images.reserve(spinor->size());
    for (std::size_t k = 0; k < spinor->size(); ++k) {
        MultiPoly v = MultiPoly::variable(cramer_ring, map.target[k]);
        images.push_back(map.sign[k] == 1 ? v : -v);
    }
    return images;
}

/// True exactly when the substituted spinor quadrics span the same space
/// of quadratic forms as the omega-less (2,2) equations.
inline bool verify_identification(const CoordMap& map) {
    const TablePtr spinor = spinor_table();
    const CramerIdeal ideal = generate_ideal(2, 2, OmegaMode::omega_less);
    if (!map.is_signed_bijection(spinor->size())) return false;
    const std::vector<MultiPoly> images = coord_map_images(map, spinor, ideal.table);
    std::vector<MultiPoly> mapped;
    mapped.reserve(10);
    for (const MultiPoly& q : ogr_quadrics(spinor)) mapped.push_back(q.substitute(ideal.table, images));
    return quadric_span(mapped) == quadric_span(cramer_242_quadrics(ideal));
}

// ---------------------------------------------------------------------------
// Identification search
// ---------------------------------------------------------------------------

namespace detail {

/// Degree-two monomial support of a quadric family with pairwise disjoint
/// supports: each unordered variable pair occurs in at most one quadric.
struct QuadricSupport {
    std::size_t vars = 0;
    std::size_t count = 0;
    /// pair (u < v) -> (quadric index, coefficient)
    std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, Rational>> pairs;
    /// quadric index -> its pairs
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> by_quadric;

    static QuadricSupport build(const std::vector<MultiPoly>& quadrics) {
        QuadricSupport sup;
        sup.vars = quadrics.front().table()->size();
        sup.count = quadrics.size();
        sup.by_quadric.resize(quadrics.size());
        for (std::size_t q = 0; q < quadrics.size(); ++q) {
            for (const auto& [e, c] : quadrics[q].terms()) {
                std::size_t first = sup.vars, second = sup.vars;
                for (std::size_t k = 0; k < e.size(); ++k) {
                    if (e[k] == 1) (first == sup.vars ? first : second) = k;
                    if (e[k] == 2) throw Error("QuadricSupport: square monomial unexpected");
                }
                auto key = std::make_pair(std::min(first, second), std::max(first, second));
                if (!sup.pairs.emplace(key, std::make_pair(q, c)).second)
                    throw Error("QuadricSupport: supports are not disjoint");
                sup.by_quadric[q].push_back(key);
            }
        }
        return sup;
    }
};

/// GF(2) linear solve; returns any solution of A x = b with free
/// variables set to zero, or nothing when inconsistent. Rows are bitmasks
/// over the unknowns.
inline std::optional<std::vector<int>> solve_gf2(std::vector<std::uint64_t> rows,
                                                 std::vector<int> rhs, std::size_t unknowns) {
    std::size_t lead = 0;
    std::vector<int> pivot_of_col(unknowns, -1);
    for (std::size_t col = 0; col < unknowns && lead < rows.size(); ++col) {
        std::size_t p = lead;
        while (p < rows.size() && !(rows[p] >> col & 1)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[lead]);
        std::swap(rhs[p], rhs[lead]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != lead && (rows[i] >> col & 1)) {
                rows[i] ^= rows[lead];
                rhs[i] ^= rhs[lead];
            }
        }
        pivot_of_col[col] = static_cast<int>(lead);
        ++lead;
    }
    for (std::size_t i = lead; i < rows.size(); ++i)
        if (rows[i] == 0 && rhs[i] != 0) return std::nullopt;
    std::vector<int> x(unknowns, 0);
    for (std::size_t col = 0; col < unknowns; ++col)
        if (pivot_of_col[col] >= 0) x[col] = rhs[static_cast<std::size_t>(pivot_of_col[col])];
    return x;
}

} // namespace detail

struct SearchLog {
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    std::uint64_t nodes_expanded = 0;
    std::uint64_t leaves_tested = 0;
    bool budget_exhausted = false;
    std::size_t maps_found = 0;
    std::vector<CoordMap> maps; ///< capped at kMapCap
    static constexpr std::size_t kMapCap = 8;
};

struct SearchOutcome {
    std::optional<CoordMap> map; ///< first verified map, if any
    SearchLog log;
};

/// Backtracking search for a signed variable bijection identifying the
/// two quadric families. Candidates are pruned by monomial support
/// (every fully-mapped spinor monomial must land inside a single cramer
/// quadric's support) and by torus-weight compatibility (mapped monomial
/// weights within one quadric must agree modulo the omega direction).
/// Signs are recovered per candidate by a GF(2) solve and the winner is
/// re-verified through the span comparison. The budget caps the number of
/// search nodes expanded.
inline SearchOutcome search_identification(std::uint64_t seed, std::uint64_t budget) {
    const TablePtr spinor = spinor_table();
    const CramerIdeal ideal = generate_ideal(2, 2, OmegaMode::omega_less);
    const std::vector<MultiPoly> spinor_quadrics = ogr_quadrics(spinor);
    const std::vector<MultiPoly> cramer_quadrics = cramer_242_quadrics(ideal);
    const auto spinor_sup = detail::QuadricSupport::build(spinor_quadrics);
    const auto cramer_sup = detail::QuadricSupport::build(cramer_quadrics);
    const std::size_t n = spinor->size();

    SearchOutcome outcome;
    outcome.log.seed = seed;
    outcome.log.budget = budget;

    // Torus data for the weight pruning: weights of the 16 coordinates in
    // the rank-8 lattice, and the omega direction that minor-matching
    // equations are allowed to shift by.
    std::vector<std::vector<long>> weight_of(n);
    for (std::size_t k = 0; k < n; ++k)
        weight_of[k] = coordinate_weight(2, 2, *ideal.table, k).exp;
    const std::vector<long> omega_dir = coordinate_weight(2, 2, {VarKind::omega, 0, 0, ""}).exp;
    auto congruent_mod_omega = [&](const std::vector<long>& u, const std::vector<long>& v) {
        // u - v must be an integer multiple of omega_dir, whose entries
        // are all +-1, so the multiplier is read off the first slot.
        const long k = (u[0] - v[0]) / omega_dir[0];
        for (std::size_t i = 0; i < u.size(); ++i)
            if (u[i] - v[i] != k * omega_dir[i]) return false;
        return true;
    };
    auto pair_weight = [&](std::size_t u, std::size_t v) {
        std::vector<long> w = weight_of[u];
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += weight_of[v][i];
        return w;
    };

    // Spinor variable assignment order: x, then the y's, then the skew
    // coordinates; this front-loads the quadric-matching constraints.
    std::vector<std::size_t> order;
    order.push_back(spinor_x_index(*spinor));
    for (int i = 1; i <= 5; ++i) order.push_back(spinor_y_index(*spinor, i));
    for (int i = 1; i <= 5; ++i)
        for (int j = i + 1; j <= 5; ++j) order.push_back(spinor_xij_index(*spinor, i, j));

    // Candidate target order, deterministically shuffled by the seed.
    std::vector<std::size_t> targets(n);
    std::iota(targets.begin(), targets.end(), 0);
    {
        Rng rng(derive_seed(seed, 0xf00d));
        for (std::size_t i = n; i > 1; --i)
            std::swap(targets[i - 1], targets[static_cast<std::size_t>(rng.bounded(0, static_cast<long>(i) - 1))]);
    }

    std::vector<int> assignment(n, -1);       // spinor var -> cramer var
    std::vector<bool> used(n, false);         // cramer var taken
    std::vector<int> quadric_match(spinor_sup.count, -1);
    std::vector<std::vector<long>> monomial_weight(spinor_sup.count); // first mapped weight per quadric

    // For each spinor variable, the monomials it participates in.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> monomials_of(n);
    for (const auto& [pair, info] : spinor_sup.pairs) {
        monomials_of[pair.first].push_back(pair);
        monomials_of[pair.second].push_back(pair);
    }

    auto try_signs_and_verify = [&]() -> std::optional<CoordMap> {
        // Unknowns: n sign bits, then one scalar bit per spinor quadric.
        const std::size_t unknowns = n + spinor_sup.count;
        std::vector<std::uint64_t> rows;
        std::vector<int> rhs;
        for (const auto& [pair, info] : spinor_sup.pairs) {
            const auto [q, eps] = info;
            const auto key = std::make_pair(
                std::min<std::size_t>(assignment[pair.first], assignment[pair.second]),
                std::max<std::size_t>(assignment[pair.first], assignment[pair.second]));
            const auto it = cramer_sup.pairs.find(key);
            if (it == cramer_sup.pairs.end()) return std::nullopt;
            const auto& [cq, delta] = it->second;
            std::uint64_t row = 0;
            row |= 1ULL << pair.first;
            row |= 1ULL << pair.second;
            row |= 1ULL << (n + q);
            const Rational ratio = eps / delta;
            if (ratio != Rational(1) && ratio != Rational(-1)) return std::nullopt;
            rows.push_back(row);
            rhs.push_back(ratio == Rational(-1) ? 1 : 0);
        }
        const auto solution = detail::solve_gf2(std::move(rows), std::move(rhs), unknowns);
        if (!solution) return std::nullopt;
        CoordMap map;
        map.target.resize(n);
        map.sign.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            map.target[k] = static_cast<std::size_t>(assignment[k]);
            map.sign[k] = (*solution)[k] ? -1 : 1;
        }
        if (!verify_identification(map)) return std::nullopt;
        return map;
    };

    // Depth-first assignment with support/weight pruning.
    auto consistent = [&](std::size_t var) {
        for (const auto& pair : monomials_of[var]) {
            const std::size_t other = pair.first == var ? pair.second : pair.first;
            if (assignment[other] < 0) continue;
            const auto key = std::make_pair(
                std::min<std::size_t>(assignment[var], assignment[other]),
                std::max<std::size_t>(assignment[var], assignment[other]));
            const auto it = cramer_sup.pairs.find(key);
            if (it == cramer_sup.pairs.end()) return false;
            const std::size_t q = spinor_sup.pairs.at(pair).first;
            const std::size_t cq = it->second.first;
            if (quadric_match[q] >= 0 && quadric_match[q] != static_cast<int>(cq)) return false;
            const auto w = pair_weight(key.first, key.second);
            if (!monomial_weight[q].empty() && !congruent_mod_omega(monomial_weight[q], w))
                return false;
        }
        return true;
    };

    struct Frame {
        std::size_t depth;
        std::vector<int> quadric_match;
        std::vector<std::vector<long>> monomial_weight;
    };

    bool exhausted = false;
    std::uint64_t nodes = 0, leaves = 0;

    std::function<void(std::size_t)> dfs = [&](std::size_t depth) {
        if (outcome.log.maps.size() >= SearchLog::kMapCap) return;
        if (nodes >= budget) {
            exhausted = true;
            return;
        }
        ++nodes;
        if (depth == order.size()) {
            ++leaves;
            if (auto map = try_signs_and_verify()) {
                if (!outcome.map) outcome.map = *map;
                outcome.log.maps.push_back(*map);
                ++outcome.log.maps_found;
            }
            return;
        }
        const std::size_t var = order[depth];
        for (std::size_t candidate : targets) {
            if (used[candidate]) continue;
            assignment[var] = static_cast<int>(candidate);
            // Record/restore the per-quadric state touched by this choice.
            std::vector<std::pair<std::size_t, int>> saved_match;
            std::vector<std::pair<std::size_t, std::vector<long>>> saved_weight;
            bool ok = consistent(var);
            if (ok) {
                for (const auto& pair : monomials_of[var]) {
                    const std::size_t other = pair.first == var ? pair.second : pair.first;
                    if (assignment[other] < 0) continue;
                    const auto key = std::make_pair(
                        std::min<std::size_t>(assignment[var], assignment[other]),
                        std::max<std::size_t>(assignment[var], assignment[other]));
                    const std::size_t q = spinor_sup.pairs.at(pair).first;
                    const std::size_t cq = cramer_sup.pairs.at(key).first;
                    if (quadric_match[q] < 0) {
                        saved_match.emplace_back(q, quadric_match[q]);
                        quadric_match[q] = static_cast<int>(cq);
                    }
                    if (monomial_weight[q].empty()) {
                        saved_weight.emplace_back(q, monomial_weight[q]);
                        monomial_weight[q] = pair_weight(key.first, key.second);
                    }
                }
                used[candidate] = true;
                dfs(depth + 1);
                used[candidate] = false;
            }
            for (auto& [q, old] : saved_match) quadric_match[q] = old;
            for (auto& [q, old] : saved_weight) monomial_weight[q] = old;
            assignment[var] = -1;
            if (exhausted || outcome.log.maps.size() >= SearchLog::kMapCap) return;
        }
    };

    if (budget > 0) dfs(0);
    outcome.log.nodes_expanded = nodes;
    outcome.log.leaves_tested = leaves;
    outcome.log.budget_exhausted = exhausted;
    return outcome;
}

// ---------------------------------------------------------------------------
// Cross-membership sampling
// ---------------------------------------------------------------------------

/// Transports a spinor point to cramer coordinates under the map.
inline std::vector<Rational> map_spinor_values(const CoordMap& map,
                                               const std::vector<Rational>& spinor_values) {
    std::vector<Rational> out(spinor_values.size());
    for (std::size_t k = 0; k < spinor_values.size(); ++k)
        out[map.target[k]] = Rational(map.sign[k]) * spinor_values[k];
    return out;
}

/// Transports cramer-coordinate values back to spinor coordinates.
inline std::vector<Rational> map_cramer_values(const CoordMap& map,
                                               const std::vector<Rational>& cramer_values) {
    std::vector<Rational> out(cramer_values.size());
    for (std::size_t k = 0; k < cramer_values.size(); ++k)
        out[k] = Rational(map.sign[k]) * cramer_values[map.target[k]];
    return out;
}

} // namespace cramer
