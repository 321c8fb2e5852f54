#include <gtest/gtest.h>

#include "cramer/group.hpp"
#include "cramer/weights.hpp"

using namespace cramer;

namespace {

const std::vector<std::pair<int, int>> kTestedShapes{{1, 1}, {1, 2}, {2, 2}, {2, 3}};

std::vector<Rational> random_nonzero(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Rational> out;
    while (out.size() < n) {
        Rational num(rng.bounded(-5, 5));
        Rational den(rng.bounded(1, 5));
        if (!num.is_zero()) out.push_back(num / den);
    }
    return out;
}

} // namespace

TEST(CoordinateWeight, Examples) {
    const int r = 2, s = 3;
    Character m11 = coordinate_weight(r, s, {VarKind::m_entry, 1, 1, ""});
    EXPECT_EQ(m11.a(1), 1);
    EXPECT_EQ(m11.b(1), -1);
    EXPECT_EQ(m11.str(), "a1 - b1");

    Character n11 = coordinate_weight(r, s, {VarKind::n_entry, 1, 1, ""});
    EXPECT_EQ(n11.str(), "b1 - c1");

    Character w = coordinate_weight(r, s, {VarKind::omega, 0, 0, ""});
    for (int i = 1; i <= r; ++i) EXPECT_EQ(w.a(i), -1);
    for (int i = 1; i <= r + s; ++i) EXPECT_EQ(w.b(i), 1);
    for (int i = 1; i <= s; ++i) EXPECT_EQ(w.c(i), -1);

    EXPECT_THROW(coordinate_weight(r, s, {VarKind::deformation, 0, 0, "t"}), TableMismatchError);
}

TEST(CoordinateWeight, EquivarianceOracle) {
    // Scaling by a diagonal element multiplies each coordinate by the
    // value of its weight character at the diagonal entries.
    for (auto [r, s] : kTestedShapes) {
        const int t = r + s;
        const TablePtr table = ambient_table(r, s, OmegaMode::with_omega);
        for (std::uint64_t k = 0; k < 20; ++k) {
            const auto a_vals = random_nonzero(r, derive_seed(1000 + k, 1));
            const auto b_vals = random_nonzero(t, derive_seed(1000 + k, 2));
            const auto c_vals = random_nonzero(s, derive_seed(1000 + k, 3));
            const GroupElement g = diagonal_element(a_vals, b_vals, c_vals);
            const ConfigurationPoint p = orbit_sample(r, s, derive_seed(2000 + k, 0), 1, 4)[0];
            const ConfigurationPoint gp = act(g, p);

            const auto before = ambient_values(*table, p);
            const auto after = ambient_values(*table, gp);
            for (std::size_t idx = 0; idx < table->size(); ++idx) {
                const Character chi = coordinate_weight(r, s, *table, idx);
                ASSERT_EQ(after[idx], chi.eval(a_vals, b_vals, c_vals) * before[idx])
                    << table->name(idx) << " at (" << r << "," << s << ")";
            }
        }
    }
}

TEST(GModH, CardinalityMatchesOrbitDimension) {
    EXPECT_EQ(g_mod_h_weights(2, 2).size(), 12u);
    EXPECT_EQ(g_mod_h_weights(1, 1).size(), 3u);
    for (auto [r, s] : kTestedShapes)
        EXPECT_EQ(g_mod_h_weights(r, s).size(), static_cast<std::size_t>(orbit_dimension(r, s)));
}

TEST(GModH, MatchesBlockPicture) {
    for (auto [r, s] : kTestedShapes) {
        const GModHBlocks blocks = g_mod_h_block_weights(r, s);
        std::vector<RestrictedCharacter> expected;
        expected.insert(expected.end(), blocks.square_r.begin(), blocks.square_r.end());
        expected.insert(expected.end(), blocks.mixed.begin(), blocks.mixed.end());
        expected.insert(expected.end(), blocks.square_s.begin(), blocks.square_s.end());
        std::sort(expected.begin(), expected.end());
        EXPECT_EQ(g_mod_h_weights(r, s), expected);

        // The mixed block contributes each a_i - c_j exactly once.
        EXPECT_EQ(blocks.mixed.size(), static_cast<std::size_t>(r * s));
        for (int i = 1; i <= r; ++i)
            for (int j = 1; j <= s; ++j) {
                RestrictedCharacter w = RestrictedCharacter::zero(r, s);
                w.a(i) = 1;
                w.c(j) = -1;
                EXPECT_EQ(std::count(blocks.mixed.begin(), blocks.mixed.end(), w), 1);
            }
    }
}

TEST(WeightProduct, ExamplesAndSquareBlockCancellation) {
    EXPECT_TRUE(weight_product({}).is_trivial());

    const RestrictedCharacter prod22 = weight_product(g_mod_h_weights(2, 2));
    EXPECT_EQ(prod22.a(1), 2);
    EXPECT_EQ(prod22.a(2), 2);
    EXPECT_EQ(prod22.c(1), -2);
    EXPECT_EQ(prod22.c(2), -2);

    for (auto [r, s] : kTestedShapes) {
        const GModHBlocks blocks = g_mod_h_block_weights(r, s);
        EXPECT_TRUE(weight_product(blocks.square_r).is_trivial());
        EXPECT_TRUE(weight_product(blocks.square_s).is_trivial());
        EXPECT_EQ(weight_product(blocks.mixed), det_power_character(r, s));
    }
}

TEST(SigmaWeight, TheoremHoldsOnTestedShapes) {
    // sigma_weight itself asserts both identities; this spells them out.
    for (auto [r, s] : kTestedShapes) {
        const SigmaWeight sw = sigma_weight(r, s);
        EXPECT_EQ(sw.restricted, weight_product(g_mod_h_weights(r, s)));
        EXPECT_EQ(sw.restricted, det_power_character(r, s));
    }
}

TEST(SigmaWeight, IndependentOfPivotSubset) {
    for (auto [r, s] : kTestedShapes) {
        const SigmaWeight reference = sigma_weight(r, s);
        for (const auto& pivot : k_subsets(r + s, r)) {
            const SigmaWeight sw = sigma_weight_for_pivot(r, s, pivot);
            EXPECT_EQ(sw.full, reference.full);
            EXPECT_EQ(sw.restricted, reference.restricted);
        }
    }
}

TEST(SigmaWeight, FullTorusForm) {
    // From first principles the full-torus weight comes out as
    // (det A)^r (det B)^(s-r) (det C)^(-s); for s = r + 1 the middle
    // exponent is one.
    for (auto [r, s] : kTestedShapes) {
        const SigmaWeight sw = sigma_weight(r, s);
        for (int i = 1; i <= r; ++i) EXPECT_EQ(sw.full.a(i), r);
        for (int i = 1; i <= r + s; ++i) EXPECT_EQ(sw.full.b(i), s - r);
        for (int i = 1; i <= s; ++i) EXPECT_EQ(sw.full.c(i), -s);
    }
    const SigmaWeight sw12 = sigma_weight(1, 2);
    EXPECT_EQ(sw12.full.str(), "a1 + b1 + b2 + b3 - 2*c1 - 2*c2");
}

TEST(Restriction, LinearAndSurjective) {
    const int r = 2, s = 3;
    Character ch = Character::zero(r, s);
    ch.b(1) = 1;
    EXPECT_EQ(restrict_character(ch).a(1), 1);
    ch = Character::zero(r, s);
    ch.b(r + 2) = 1;
    EXPECT_EQ(restrict_character(ch).c(2), 1);

    Character x = Character::zero(r, s), y = Character::zero(r, s);
    x.a(1) = 3;
    x.b(2) = -1;
    y.c(3) = 4;
    y.b(1) = 2;
    const RestrictedCharacter sum = restrict_character(x + y);
    EXPECT_EQ(sum, restrict_character(x) + restrict_character(y));
}
