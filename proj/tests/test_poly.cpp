#include <gtest/gtest.h>

#include "cramer/group.hpp"
#include "cramer/poly.hpp"
#include "cramer/variety.hpp"

using namespace cramer;

namespace {

MultiPoly var(const TablePtr& table, VarKind kind, int i, int j) {
    return MultiPoly::variable(table, table->index_of(kind, i, j));
}

} // namespace

TEST(MultiPoly, RingOperations) {
    TablePtr table = ambient_table(1, 1, OmegaMode::with_omega);
    MultiPoly m11 = var(table, VarKind::m_entry, 1, 1);
    MultiPoly m12 = var(table, VarKind::m_entry, 1, 2);
    MultiPoly n11 = var(table, VarKind::n_entry, 1, 1);

    EXPECT_TRUE((m11 - m11).is_zero());
    EXPECT_TRUE((m11 + (-m11)).is_zero());

    MultiPoly prod = m11 * n11;
    EXPECT_EQ(prod.term_count(), 1u);
    EXPECT_EQ(prod.str(), "m11*n11");

    MultiPoly sq = (m11 + m12) * (m11 + m12);
    EXPECT_EQ(sq.term_count(), 3u);
    EXPECT_EQ(sq, m11 * m11 + Rational(2) * (m11 * m12) + m12 * m12);
}

TEST(MultiPoly, TableMismatchIsAnError) {
    TablePtr a = ambient_table(1, 1, OmegaMode::with_omega);
    TablePtr b = ambient_table(2, 2, OmegaMode::with_omega);
    MultiPoly pa = var(a, VarKind::m_entry, 1, 1);
    MultiPoly pb = var(b, VarKind::m_entry, 1, 1);
    EXPECT_THROW(pa + pb, TableMismatchError);
    EXPECT_THROW(pa * pb, TableMismatchError);
}

TEST(MultiPoly, Eval) {
    TablePtr table = ambient_table(1, 1, OmegaMode::with_omega);
    const ConfigurationPoint v = base_point(1, 1);

    EXPECT_EQ(MultiPoly::zero(table).eval(v), Rational(0));
    MultiPoly w = MultiPoly::variable(table, table->index_of(VarKind::omega));
    EXPECT_EQ(w.eval(v), Rational(1));

    MultiPoly bilinear = var(table, VarKind::m_entry, 1, 1) * var(table, VarKind::n_entry, 1, 1) +
                         var(table, VarKind::m_entry, 1, 2) * var(table, VarKind::n_entry, 2, 1);
    EXPECT_EQ(bilinear.eval(v), Rational(0));
}

TEST(MultiPoly, Partial) {
    TablePtr table = ambient_table(1, 1, OmegaMode::with_omega);
    MultiPoly m11 = var(table, VarKind::m_entry, 1, 1);
    MultiPoly n11 = var(table, VarKind::n_entry, 1, 1);
    MultiPoly n21 = var(table, VarKind::n_entry, 2, 1);
    MultiPoly w = MultiPoly::variable(table, table->index_of(VarKind::omega));

    EXPECT_EQ((m11 * n11).partial(table->index_of(VarKind::m_entry, 1, 1)), n11);
    EXPECT_TRUE(MultiPoly::constant(table, Rational(7)).partial(0).is_zero());
    EXPECT_EQ((w * m11 - n21).partial(table->index_of(VarKind::omega)), m11);
    EXPECT_THROW(m11.partial(99), TableMismatchError);
}

TEST(MultiPoly, SubstituteIntoDeformationRing) {
    TablePtr table = ambient_table(1, 1, OmegaMode::with_omega);
    TablePtr tt = deformation_table();
    MultiPoly t = MultiPoly::variable(tt, 0);
    // Images: m11 -> 1, m12 -> 0, n11 -> 0, n21 -> t, w -> t.
    std::vector<MultiPoly> images{MultiPoly::constant(tt, Rational(1)), MultiPoly::zero(tt),
                                  MultiPoly::zero(tt), t, t};
    MultiPoly gen = var(table, VarKind::m_entry, 1, 1) * var(table, VarKind::n_entry, 1, 1) +
                    var(table, VarKind::m_entry, 1, 2) * var(table, VarKind::n_entry, 2, 1);
    EXPECT_TRUE(gen.substitute(tt, images).is_zero());

    MultiPoly w = MultiPoly::variable(table, table->index_of(VarKind::omega));
    EXPECT_EQ((w * var(table, VarKind::m_entry, 1, 1)).substitute(tt, images), t);
}

TEST(Minor, SymbolicExamples) {
    TablePtr table = ambient_table(2, 2, OmegaMode::with_omega);
    PolyMatrix m = symbolic_m(table, 2, 4);

    MultiPoly m2x2 = minor(m, {0, 1}, {0, 1});
    MultiPoly expected = var(table, VarKind::m_entry, 1, 1) * var(table, VarKind::m_entry, 2, 2) -
                         var(table, VarKind::m_entry, 1, 2) * var(table, VarKind::m_entry, 2, 1);
    EXPECT_EQ(m2x2, expected);

    for (std::size_t j = 0; j < 4; ++j)
        EXPECT_EQ(minor(m, {0}, {j}), var(table, VarKind::m_entry, 1, static_cast<int>(j) + 1));

    // Every 2x2 minor of the generic 2-row matrix has exactly two terms.
    for (const auto& cols : k_subsets(4, 2)) {
        std::vector<std::size_t> c{static_cast<std::size_t>(cols[0] - 1),
                                   static_cast<std::size_t>(cols[1] - 1)};
        EXPECT_EQ(minor(m, {0, 1}, c).term_count(), 2u);
    }

    EXPECT_THROW(minor(m, {0, 1}, {0, 9}), DimensionError);
    EXPECT_THROW(minor(m, {0, 1}, {0}), DimensionError);
}

TEST(Minor, RowSwapFlipsSign) {
    TablePtr table = ambient_table(2, 2, OmegaMode::with_omega);
    PolyMatrix m = symbolic_m(table, 2, 4);
    EXPECT_EQ(minor(m, {0, 1}, {1, 3}), -minor(m, {1, 0}, {1, 3}));
}

TEST(Minor, AgreesWithExactDetAtRandomPoints) {
    // Symbolic minors up to 4x4, evaluated at 20 random points, versus the
    // numeric determinant of the evaluated submatrix.
    const int r = 4, s = 4, t = 8;
    TablePtr table = ambient_table(r, s, OmegaMode::with_omega);
    PolyMatrix m = symbolic_m(table, r, t);
    for (std::uint64_t k = 0; k < 20; ++k) {
        Rng rng(derive_seed(77, k));
        ConfigurationPoint p(RatMatrix(r, t), RatMatrix(t, s), Rational(0));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < t; ++j) p.M.at(i, j) = Rational(rng.bounded(-5, 5));
        const std::vector<Rational> values = ambient_values(*table, p);

        for (std::size_t size = 1; size <= 4; ++size) {
            std::vector<std::size_t> rows, cols;
            for (std::size_t i = 0; i < size; ++i) {
                rows.push_back(i);
                cols.push_back(2 * i); // spread the columns
            }
            EXPECT_EQ(minor(m, rows, cols).eval(values), det(p.M.submatrix(rows, cols)));
        }
    }
}

TEST(Minor, LaplaceExpansionIdentity) {
    // det = sum_j (-1)^(1+j) a_{1j} * complementary minor, symbolically,
    // for the generic 3x3 block of a 3-row matrix.
    TablePtr table = ambient_table(3, 3, OmegaMode::with_omega);
    PolyMatrix m = symbolic_m(table, 3, 6);
    MultiPoly full = minor(m, {0, 1, 2}, {0, 1, 2});
    MultiPoly expansion = MultiPoly::zero(table);
    for (std::size_t j = 0; j < 3; ++j) {
        std::vector<std::size_t> rest;
        for (std::size_t c = 0; c < 3; ++c)
            if (c != j) rest.push_back(c);
        MultiPoly term = m.at(0, j) * minor(m, {1, 2}, rest);
        expansion += (j % 2 == 0) ? term : -term;
    }
    EXPECT_EQ(full, expansion);
}

TEST(MultiPoly, CanonicalPrinting) {
    TablePtr table = ambient_table(1, 1, OmegaMode::with_omega);
    MultiPoly m11 = var(table, VarKind::m_entry, 1, 1);
    MultiPoly m12 = var(table, VarKind::m_entry, 1, 2);
    MultiPoly w = MultiPoly::variable(table, table->index_of(VarKind::omega));
    MultiPoly p = Rational(-3, 2) * (w * w) + m11 * m12 + MultiPoly::constant(table, Rational(5));
    // Same term order on every run: graded, then table-lexicographic.
    EXPECT_EQ(p.str(), "m11*m12 - 3/2*w^2 + 5");
}
