#include <gtest/gtest.h>

#include "cramer/charts.hpp"
#include "cramer/group.hpp"

using namespace cramer;

namespace {

MultiPoly var(const TablePtr& table, VarKind kind, int i, int j) {
    return MultiPoly::variable(table, table->index_of(kind, i, j));
}

/// Orbit points at which every maximal minor of M is invertible.
std::vector<ConfigurationPoint> generic_points(const ChartAtlas& atlas, std::uint64_t seed,
                                               std::size_t count) {
    std::vector<ConfigurationPoint> out;
    std::uint64_t stream = 0;
    while (out.size() < count && stream < 40 * count) {
        ConfigurationPoint p = orbit_sample(atlas.r(), atlas.s(), derive_seed(seed, stream++), 1, 5)[0];
        bool ok = true;
        for (const ChartMap& c : atlas.charts()) ok = ok && !c.pivot_value(p).is_zero();
        if (ok) out.push_back(std::move(p));
    }
    return out;
}

} // namespace

TEST(ChartSolve, SmallestCaseClosedForm) {
    const ChartMap chart = chart_solve(1, 1, {1});
    const TablePtr table = chart.table;
    const MultiPoly m11 = var(table, VarKind::m_entry, 1, 1);
    const MultiPoly m12 = var(table, VarKind::m_entry, 1, 2);
    const MultiPoly n21 = var(table, VarKind::n_entry, 2, 1);

    EXPECT_EQ(chart.pivot_minor, m11);
    // n11 = -m12*n21 / m11 and w = n21 / m11.
    EXPECT_EQ(chart.solved.at(table->index_of(VarKind::n_entry, 1, 1)), -(m12 * n21));
    EXPECT_EQ(chart.solved.at(table->index_of(VarKind::omega)), n21);
    EXPECT_EQ(chart.free_vars.size(), 3u);
}

TEST(ChartSolve, FreeCoordinateCountAndIdentity) {
    // The substitution identity (every generator annihilated) is enforced
    // inside chart_solve; constructing the atlas exercises it per pivot.
    for (auto [r, s] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}}) {
        const ChartAtlas atlas(r, s);
        EXPECT_EQ(atlas.charts().size(), binomial(r + s, r));
        for (const ChartMap& chart : atlas.charts())
            EXPECT_EQ(chart.free_vars.size(), static_cast<std::size_t>(r * (r + s) + s * s));
    }
    EXPECT_THROW(chart_solve(2, 2, {1}), ParameterError);
    EXPECT_THROW(chart_solve(2, 2, {1, 5}), ParameterError);
}

TEST(ChartSolve, RoundTripReconstruction) {
    const ChartAtlas atlas(2, 2);
    for (const ConfigurationPoint& p : generic_points(atlas, 606, 10))
        for (const ChartMap& chart : atlas.charts())
            EXPECT_EQ(chart.reconstruct(p), p);
}

TEST(Transition, IdentityOnSameChart) {
    const ChartMap chart = chart_solve(2, 2, {1, 2});
    const ConfigurationPoint p = orbit_sample(2, 2, 17, 1, 5)[0];
    if (!chart.pivot_value(p).is_zero())
        EXPECT_EQ(transition_jacobian_det(chart, chart, p), Rational(1));
}

TEST(Transition, SmallestCaseFormula) {
    const ChartAtlas atlas(1, 1);
    const ChartMap& c1 = atlas.chart({1});
    const ChartMap& c2 = atlas.chart({2});
    const auto points = generic_points(atlas, 909, 20);
    ASSERT_GE(points.size(), 20u);
    for (const ConfigurationPoint& p : points) {
        const Rational expected = p.M.at(0, 1) / p.M.at(0, 0);
        EXPECT_EQ(transition_jacobian_det(c1, c2, p), expected);
        EXPECT_EQ(transition_jacobian_det(c2, c1, p), Rational(1) / expected);
    }
}

TEST(Transition, AdjacentPairFormula22) {
    const ChartAtlas atlas(2, 2);
    const ChartMap& c12 = atlas.chart({1, 2});
    const ChartMap& c23 = atlas.chart({2, 3});
    const auto points = generic_points(atlas, 1212, 20);
    ASSERT_GE(points.size(), 20u);
    for (const ConfigurationPoint& p : points) {
        const Rational expected = (c23.pivot_value(p) / c12.pivot_value(p)).pow(2);
        EXPECT_EQ(transition_jacobian_det(c12, c23, p), expected);
    }
}

TEST(Transition, AllPairsAllShapes) {
    for (auto [r, s] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}}) {
        const ChartAtlas atlas(r, s);
        const auto points = generic_points(atlas, 1515, 8);
        ASSERT_GE(points.size(), 8u);
        for (const ChartMap& from : atlas.charts())
            for (const ChartMap& to : atlas.charts())
                for (const ConfigurationPoint& p : points) {
                    const Rational expected =
                        (to.pivot_value(p) / from.pivot_value(p)).pow(s);
                    ASSERT_EQ(transition_jacobian_det(from, to, p), expected)
                        << "(" << r << "," << s << ")";
                    ASSERT_TRUE(sigma_consistency(p, from, to));
                }
    }
}

TEST(Transition, OutsideOverlapIsAnError) {
    const ChartAtlas atlas(1, 1);
    // The marked point has m12 = 0, so the second chart does not contain it.
    EXPECT_THROW(transition_jacobian_det(atlas.chart({1}), atlas.chart({2}), base_point(1, 1)),
                 ChartDomainError);
}

TEST(Transition, AdjacentBlockStructure) {
    {
        const ChartAtlas atlas(2, 2);
        const auto points = generic_points(atlas, 1818, 5);
        ASSERT_FALSE(points.empty());
        const auto block =
            adjacent_block_structure(atlas.chart({1, 2}), atlas.chart({2, 3}), points[0]);
        EXPECT_TRUE(block.identity_block);
        EXPECT_TRUE(block.scalar_block);
        // diag value is (-1)^r * (pivot_to / pivot_from); r = 2 here.
        EXPECT_EQ(block.scalar,
                  atlas.chart({2, 3}).pivot_value(points[0]) /
                      atlas.chart({1, 2}).pivot_value(points[0]));
    }
    {
        const ChartAtlas atlas(1, 1);
        const auto points = generic_points(atlas, 2121, 5);
        ASSERT_FALSE(points.empty());
        const auto block = adjacent_block_structure(atlas.chart({1}), atlas.chart({2}), points[0]);
        EXPECT_TRUE(block.scalar_block);
        EXPECT_EQ(block.scalar,
                  -(atlas.chart({2}).pivot_value(points[0]) /
                    atlas.chart({1}).pivot_value(points[0])));
    }
}

TEST(Cartier, CoverReportPasses) {
    const CartierReport small = cartier_cover_report(1, 1, 30);
    EXPECT_EQ(small.pairs.size(), 4u);
    EXPECT_TRUE(small.all_pass());

    const CartierReport mid = cartier_cover_report(2, 2, 30);
    EXPECT_EQ(mid.pairs.size(), 36u);
    EXPECT_TRUE(mid.all_pass());
    for (const auto& pair : mid.pairs) {
        EXPECT_GT(pair.overlap_hits, 0u);
        ASSERT_TRUE(pair.witness.has_value());
        if (pair.pivot_a == pair.pivot_b) {
            EXPECT_EQ(pair.status, CartierPairResult::Status::pass);
        }
    }
    EXPECT_THROW(cartier_cover_report(1, 1, 0), ParameterError);
}
