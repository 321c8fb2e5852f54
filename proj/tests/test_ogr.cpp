#include <gtest/gtest.h>

#include <fstream>

#include "cramer/ogr.hpp"

#include "json.hpp"

using namespace cramer;

namespace {

const std::string kMapPath = std::string(CRAMER_SOURCE_DIR) + "/data/ogr_coordmap.json";

CoordMap load_committed_map() {
    std::ifstream in(kMapPath);
    if (!in) throw ConfigError("missing committed coordinate map: " + kMapPath);
    nlohmann::json doc = nlohmann::json::parse(in);
    const TablePtr spinor = spinor_table();
    const TablePtr cramer_ring = generate_ideal(2, 2, OmegaMode::omega_less).table;
    CoordMap map;
    map.target.resize(spinor->size());
    map.sign.resize(spinor->size());
    for (std::size_t k = 0; k < spinor->size(); ++k) {
        const auto& entry = doc.at("map").at(spinor->name(k));
        map.target[k] = cramer_ring->index_of_name(entry.at("target").get<std::string>());
        map.sign[k] = entry.at("sign").get<int>();
    }
    return map;
}

} // namespace

TEST(OgrQuadrics, CountsAndTermCounts) {
    const TablePtr spinor = spinor_table();
    EXPECT_EQ(spinor->size(), 16u);
    const auto quadrics = ogr_quadrics(spinor);
    EXPECT_EQ(quadrics.size(), 10u);
    for (const MultiPoly& q : quadrics) {
        EXPECT_EQ(q.term_count(), 4u);
        EXPECT_TRUE(q.is_homogeneous(2));
    }
    const auto cramer = cramer_242_quadrics();
    EXPECT_EQ(cramer.size(), 10u);
    for (const MultiPoly& q : cramer) EXPECT_EQ(q.term_count(), 4u);
}

TEST(OgrQuadrics, ParametrizationOracle) {
    const TablePtr spinor = spinor_table();
    const auto quadrics = ogr_quadrics(spinor);

    // Zero matrix: the point (1, 0, 0) kills all quadrics.
    const auto origin = spinor_parametrization(spinor, RatMatrix::zero(5, 5));
    for (const MultiPoly& q : quadrics) EXPECT_TRUE(q.eval(origin).is_zero());

    for (std::uint64_t k = 0; k < 20; ++k) {
        const RatMatrix xi = random_skew5(derive_seed(5150, k), 5);
        const auto values = spinor_parametrization(spinor, xi);
        for (const MultiPoly& q : quadrics)
            ASSERT_TRUE(q.eval(values).is_zero()) << "seed stream " << k;
    }
}

TEST(Pfaffian, SquaresToDeterminant) {
    for (std::uint64_t k = 0; k < 20; ++k) {
        const RatMatrix xi = random_skew5(derive_seed(616, k), 7);
        for (int omit = 1; omit <= 5; ++omit) {
            std::vector<std::size_t> keep;
            for (int i = 1; i <= 5; ++i)
                if (i != omit) keep.push_back(static_cast<std::size_t>(i - 1));
            const RatMatrix sub = xi.submatrix(keep, keep);
            const Rational pf = pfaffian4(sub);
            EXPECT_EQ(pf * pf, det(sub));
        }
    }
}

TEST(QuadricSpan, RanksAndCanonicalForm) {
    const CramerIdeal ideal = generate_ideal(2, 2, OmegaMode::omega_less);
    const MultiPoly one_quadric = ideal.generators.front().second;
    EXPECT_EQ(quadric_span({one_quadric}).rank(), 1u);

    const QuadricSpan cramer_span = quadric_span(cramer_242_quadrics(ideal));
    EXPECT_EQ(cramer_span.rank(), 10u);
    const QuadricSpan ogr_span = quadric_span(ogr_quadrics());
    EXPECT_EQ(ogr_span.rank(), 10u);

    // Same span under rescaling and row mixing.
    std::vector<MultiPoly> mixed = cramer_242_quadrics(ideal);
    mixed[0] = Rational(3) * mixed[0];
    mixed[1] += mixed[2];
    EXPECT_EQ(quadric_span(mixed), cramer_span);

    MultiPoly cubic = one_quadric * MultiPoly::variable(ideal.table, 0);
    EXPECT_THROW(quadric_span({cubic}), ParameterError);
}

TEST(Identification, NaiveMapFails) {
    // Identity-shaped guess: spinor variable k onto cramer variable k.
    CoordMap naive;
    naive.target.resize(16);
    naive.sign.assign(16, 1);
    for (std::size_t k = 0; k < 16; ++k) naive.target[k] = k;
    EXPECT_TRUE(naive.is_signed_bijection(16));
    EXPECT_FALSE(verify_identification(naive));
}

TEST(Identification, SearchWithZeroBudgetFindsNothing) {
    const SearchOutcome outcome = search_identification(1, 0);
    EXPECT_FALSE(outcome.map.has_value());
    EXPECT_EQ(outcome.log.nodes_expanded, 0u);
    EXPECT_TRUE(outcome.log.maps.empty());
}

TEST(Identification, SearchFindsVerifiedMap) {
    const SearchOutcome outcome = search_identification(1, 2000000);
    ASSERT_TRUE(outcome.map.has_value()) << "nodes " << outcome.log.nodes_expanded;
    EXPECT_TRUE(verify_identification(*outcome.map));
    EXPECT_GE(outcome.log.maps_found, 1u);
}

TEST(Identification, CommittedMapVerifies) {
    const CoordMap map = load_committed_map();
    EXPECT_TRUE(map.is_signed_bijection(16));
    EXPECT_TRUE(verify_identification(map));
}

TEST(Identification, CrossMembershipUnderCommittedMap) {
    const CoordMap map = load_committed_map();
    const TablePtr spinor = spinor_table();
    const CramerIdeal ideal = generate_ideal(2, 2, OmegaMode::omega_less);
    const auto spinor_quadrics = ogr_quadrics(spinor);
    const auto cramer_quadrics = cramer_242_quadrics(ideal);

    // Spinor-parametrized points satisfy the cramer equations...
    for (std::uint64_t k = 0; k < 25; ++k) {
        const auto sv = spinor_parametrization(spinor, random_skew5(derive_seed(2711, k), 4));
        const auto cv = map_spinor_values(map, sv);
        for (const MultiPoly& q : cramer_quadrics) ASSERT_TRUE(q.eval(cv).is_zero());
    }
    // ... and omega-less orbit samples satisfy the spinor equations.
    const auto points = orbit_sample_omega_less(2, 2, 31415, 25, 4);
    for (const ConfigurationPoint& p : points) {
        const auto cv = ambient_values(*ideal.table, p);
        const auto sv = map_cramer_values(map, cv);
        for (const MultiPoly& q : spinor_quadrics) ASSERT_TRUE(q.eval(sv).is_zero());
    }
}
