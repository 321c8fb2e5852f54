#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "cramer/errors.hpp"
#include "cramer/matrix.hpp"
#include "cramer/point.hpp"
#include "cramer/poly.hpp"
#include "cramer/variables.hpp"
#include "cramer/variety.hpp"

namespace cramer {

/// An element (A, B, C) of GL(r) x GL(t) x GL(s). Multiplication is
/// componentwise; the action on configuration points is a left action.
struct GroupElement {
    RatMatrix A, B, C;

    static GroupElement identity(int r, int s) {
        return {RatMatrix::identity(r), RatMatrix::identity(r + s), RatMatrix::identity(s)};
    }

    friend GroupElement operator*(const GroupElement& g, const GroupElement& h) {
        return {g.A * h.A, g.B * h.B, g.C * h.C};
    }
};

/// The scalar by which omega rescales under g: det(B) / (det(A) det(C)).
inline Rational action_scalar(const GroupElement& g) {
    const Rational da = det(g.A), db = det(g.B), dc = det(g.C);
    if (da.is_zero() || db.is_zero() || dc.is_zero())
        throw SingularMatrixError("action_scalar: group element has a singular component");
    return db / (da * dc);
}

/// g . (M, N, w) = (A M B^-1, B N C^-1, lambda w). Points without omega
/// transform on the matrix part alone.
inline ConfigurationPoint act(const GroupElement& g, const ConfigurationPoint& p) {
    if (g.A.rows() != p.r() || g.B.rows() != p.t() || g.C.rows() != p.s())
        throw DimensionError("act: group element does not match point shape");
    const Rational lambda = action_scalar(g);
    RatMatrix m = g.A * p.M * inverse(g.B);
    RatMatrix n = g.B * p.N * inverse(g.C);
    std::optional<Rational> w;
    if (p.omega) w = lambda * *p.omega;
    return ConfigurationPoint(std::move(m), std::move(n), std::move(w));
}

/// The marked point v: M = (I | 0), N = (0 over I), omega = 1.
inline ConfigurationPoint base_point(int r, int s) {
    if (r < 1 || r > s) throw ParameterError("base_point: need 1 <= r <= s");
    const int t = r + s;
    RatMatrix m = RatMatrix::zero(r, t);
    for (int i = 0; i < r; ++i) m.at(i, i) = Rational(1);
    RatMatrix n = RatMatrix::zero(t, s);
    for (int j = 0; j < s; ++j) n.at(r + j, j) = Rational(1);
    return ConfigurationPoint(std::move(m), std::move(n), Rational(1));
}

/// Membership in the stabilizer of the marked point. Checked two ways:
/// dynamically (does g fix v?) and structurally (is B block lower
/// triangular with diagonal blocks A and C?). The two criteria are
/// equivalent; any disagreement means a defect in the action code, so it
/// throws rather than picking a side.
inline bool is_in_stabilizer(const GroupElement& g, int r, int s) {
    const ConfigurationPoint v = base_point(r, s);
    if (g.A.rows() != static_cast<std::size_t>(r) || g.C.rows() != static_cast<std::size_t>(s) ||
        g.B.rows() != v.t())
        throw DimensionError("is_in_stabilizer: group element has wrong shape");
    const bool dynamic = act(g, v) == v;

    bool structural = true;
    for (int i = 0; i < r && structural; ++i)
        for (int j = 0; j < r && structural; ++j)
            structural = g.B.at(i, j) == g.A.at(i, j);
    for (int i = 0; i < r && structural; ++i)
        for (int j = 0; j < s && structural; ++j)
            structural = g.B.at(i, r + j).is_zero();
    for (int i = 0; i < s && structural; ++i)
        for (int j = 0; j < s && structural; ++j)
            structural = g.B.at(r + i, r + j) == g.C.at(i, j);

    if (dynamic != structural)
        throw Error("is_in_stabilizer: structural and dynamic membership disagree");
    return dynamic;
}

/// The diagonal group element with the given torus coordinates.
inline GroupElement diagonal_element(const std::vector<Rational>& a_vals,
                                     const std::vector<Rational>& b_vals,
                                     const std::vector<Rational>& c_vals) {
    auto diag = [](const std::vector<Rational>& values) {
        RatMatrix m = RatMatrix::zero(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i].is_zero())
                throw SingularMatrixError("diagonal_element: zero diagonal entry");
            m.at(i, i) = values[i];
        }
        return m;
    };
    if (a_vals.size() + c_vals.size() != b_vals.size())
        throw DimensionError("diagonal_element: middle factor must have size r + s");
    return {diag(a_vals), diag(b_vals), diag(c_vals)};
}

/// A deterministic random group element: three independent invertible
/// integer matrices with entries bounded by `bound`.
inline GroupElement random_group_element(int r, int s, std::uint64_t seed, long bound) {
    const int t = r + s;
    return {random_invertible(r, derive_seed(seed, 0), bound),
            random_invertible(t, derive_seed(seed, 1), bound),
            random_invertible(s, derive_seed(seed, 2), bound)};
}

/// `count` orbit points act(g_i, v) for independent seeded random g_i.
/// Every returned point is checked against the ideal.
inline std::vector<ConfigurationPoint> orbit_sample(int r, int s, std::uint64_t seed,
                                                    std::size_t count, long bound) {
    if (count < 1) throw ParameterError("orbit_sample: count must be positive");
    const CramerIdeal ideal = generate_ideal(r, s, OmegaMode::with_omega);
    const ConfigurationPoint v = base_point(r, s);
    std::vector<ConfigurationPoint> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        GroupElement g = random_group_element(r, s, derive_seed(seed, k), bound);
        ConfigurationPoint p = act(g, v);
        if (!on_variety(ideal, p))
            throw Error("orbit_sample: sampled point fails the ideal (action defect)");
        out.push_back(std::move(p));
    }
    return out;
}

/// Orbit points of the omega-less equations. A with-omega orbit point
/// (M, N, w) maps onto the omega-less variety by scaling the first
/// column of N by 1/w, which divides every maximal minor of N by w.
inline std::vector<ConfigurationPoint> orbit_sample_omega_less(int r, int s, std::uint64_t seed,
                                                               std::size_t count, long bound) {
    std::vector<ConfigurationPoint> out = orbit_sample(r, s, seed, count, bound);
    for (ConfigurationPoint& p : out) {
        const Rational w = *p.omega;
        for (std::size_t i = 0; i < p.N.rows(); ++i) p.N.at(i, 0) /= w;
        p.omega.reset();
    }
    return out;
}

/// dim G - dim H = (r^2 + t^2 + s^2) - (r^2 + s^2 + rs), which collapses
/// to rt + s^2. Both forms are computed and compared.
inline int orbit_dimension(int r, int s) {
    if (r < 1 || r > s) throw ParameterError("orbit_dimension: need 1 <= r <= s");
    const int t = r + s;
    const int dim_g = r * r + t * t + s * s;
    const int dim_h = r * r + s * s + r * s;
    const int by_groups = dim_g - dim_h;
    const int by_bundle = r * t + s * s;
    if (by_groups != by_bundle)
        throw Error("orbit_dimension: group count and bundle rank disagree");
    return by_groups;
}

// ---------------------------------------------------------------------------
// One-parameter degeneration
// ---------------------------------------------------------------------------

/// The variable table {t} of the deformation parameter alone.
inline TablePtr deformation_table() {
    static TablePtr table =
        std::make_shared<VariableTable>(std::vector<VarDescriptor>{{VarKind::deformation, 0, 0, "t"}});
    return table;
}

/// A configuration point whose entries are polynomials in the deformation
/// parameter.
struct OneParamPoint {
    TablePtr table; ///< the {t} table
    PolyMatrix M, N;
    MultiPoly omega;

    /// Substitutes t = 0 entrywise.
    ConfigurationPoint limit_at_zero() const {
        const std::vector<Rational> zero{Rational(0)};
        RatMatrix m(M.rows(), M.cols()), n(N.rows(), N.cols());
        for (std::size_t i = 0; i < M.rows(); ++i)
            for (std::size_t j = 0; j < M.cols(); ++j) m.at(i, j) = M.at(i, j).eval(zero);
        for (std::size_t i = 0; i < N.rows(); ++i)
            for (std::size_t j = 0; j < N.cols(); ++j) n.at(i, j) = N.at(i, j).eval(zero);
        return ConfigurationPoint(std::move(m), std::move(n), omega.eval(zero));
    }

    /// Images of the ambient variables of `ideal` in the polynomial ring
    /// of t, for substituting the family into equations.
    std::vector<MultiPoly> images_for(const CramerIdeal& ideal) const {
        std::vector<MultiPoly> images;
        images.reserve(ideal.table->size());
        for (std::size_t k = 0; k < ideal.table->size(); ++k) {
            const auto& v = ideal.table->var(k);
            switch (v.kind) {
            case VarKind::m_entry: images.push_back(M.at(v.i - 1, v.j - 1)); break;
            case VarKind::n_entry: images.push_back(N.at(v.i - 1, v.j - 1)); break;
            case VarKind::omega: images.push_back(omega); break;
            default: throw TableMismatchError("OneParamPoint: unexpected variable kind");
            }
        }
        return images;
    }
};

/// Applies the one-parameter subgroup
///   A(t) = I,  B(t) = diag(1, ..., 1, t at slot r+1, 1, ..., 1),  C(t) = I
/// to a rational base point. B scales row r+1 of N by t and column r+1 of
/// M by 1/t; a nonzero entry in that column of M would leave the
/// polynomial ring, which raises LimitError. Omega rescales by
/// lambda(P(t)) = det B(t) = t.
inline OneParamPoint one_param_intermediate(int r, int s, const ConfigurationPoint& base) {
    if (r < 1 || r > s) throw ParameterError("one_param_intermediate: need 1 <= r <= s");
    if (static_cast<int>(base.r()) != r || static_cast<int>(base.s()) != s || !base.omega)
        throw DimensionError("one_param_intermediate: base point has wrong shape");
    const TablePtr table = deformation_table();
    const MultiPoly t_var = MultiPoly::variable(table, 0);

    PolyMatrix m(base.M.rows(), base.M.cols(), table);
    for (std::size_t i = 0; i < base.M.rows(); ++i)
        for (std::size_t j = 0; j < base.M.cols(); ++j) {
            const Rational& entry = base.M.at(i, j);
            if (j == static_cast<std::size_t>(r)) {
                if (!entry.is_zero())
                    throw LimitError("one_param_intermediate: negative power of t in M");
                continue;
            }
            m.at(i, j) = MultiPoly::constant(table, entry);
        }

    PolyMatrix n(base.N.rows(), base.N.cols(), table);
    for (std::size_t i = 0; i < base.N.rows(); ++i)
        for (std::size_t j = 0; j < base.N.cols(); ++j) {
            MultiPoly value = MultiPoly::constant(table, base.N.at(i, j));
            if (i == static_cast<std::size_t>(r)) value = value * t_var;
            n.at(i, j) = value;
        }

    MultiPoly w = MultiPoly::constant(table, *base.omega) * t_var;
    return OneParamPoint{table, std::move(m), std::move(n), std::move(w)};
}

inline OneParamPoint one_param_intermediate(int r, int s) {
    return one_param_intermediate(r, s, base_point(r, s));
}

/// The t -> 0 limit of the one-parameter family through the marked point.
inline ConfigurationPoint one_param_limit(int r, int s) {
    return one_param_intermediate(r, s).limit_at_zero();
}

// ---------------------------------------------------------------------------
// Weyl group action
// ---------------------------------------------------------------------------

/// A permutation of {0, ..., n-1} given by its image list.
using Permutation = std::vector<std::size_t>;

inline void check_permutation(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    for (std::size_t v : p) {
        if (v >= p.size() || seen[v]) throw ParameterError("not a permutation");
        seen[v] = true;
    }
}

inline int permutation_sign(const Permutation& p) {
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) sign = -sign;
    return sign;
}

/// The matrix sending e_j to e_{sigma(j)}.
inline RatMatrix permutation_matrix(const Permutation& p) {
    RatMatrix m = RatMatrix::zero(p.size(), p.size());
    for (std::size_t j = 0; j < p.size(); ++j) m.at(p[j], j) = Rational(1);
    return m;
}

inline Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

/// Permutation action: sigma_r permutes rows of M, sigma_t columns of M
/// and rows of N simultaneously, sigma_s columns of N; omega picks up the
/// sign pattern of the scalar of the corresponding permutation-matrix
/// triple. Coincides entrywise with act() on that triple.
inline ConfigurationPoint weyl_act(const Permutation& sigma_r, const Permutation& sigma_t,
                                   const Permutation& sigma_s, const ConfigurationPoint& p) {
    if (sigma_r.size() != p.r() || sigma_t.size() != p.t() || sigma_s.size() != p.s())
        throw DimensionError("weyl_act: permutation sizes do not match point shape");
    check_permutation(sigma_r);
    check_permutation(sigma_t);
    check_permutation(sigma_s);

    RatMatrix m(p.r(), p.t());
    for (std::size_t i = 0; i < p.r(); ++i)
        for (std::size_t j = 0; j < p.t(); ++j) m.at(sigma_r[i], sigma_t[j]) = p.M.at(i, j);
    RatMatrix n(p.t(), p.s());
    for (std::size_t i = 0; i < p.t(); ++i)
        for (std::size_t j = 0; j < p.s(); ++j) n.at(sigma_t[i], sigma_s[j]) = p.N.at(i, j);

    std::optional<Rational> w;
    if (p.omega) {
        const int lambda =
            permutation_sign(sigma_t) * permutation_sign(sigma_r) * permutation_sign(sigma_s);
        w = Rational(lambda) * *p.omega;
    }
    return ConfigurationPoint(std::move(m), std::move(n), std::move(w));
}

} // namespace cramer
