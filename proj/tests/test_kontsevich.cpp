#include "fatmod/census.hpp"
#include "fatmod/kontsevich.hpp"
#include "fatmod/trees.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace fatmod;

namespace {

Matrix random_skew(int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-3, 3);
    Matrix a = zero_matrix(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            a[i][j] = d(rng);
            a[j][i] = -a[i][j];
        }
    }
    return a;
}

Rational expected_trivalent_pf(int g) { return Rational(pow2(2 * (3 * g - 2))) / Rational(pow2(g)); }

}  // namespace

TEST(Pfaffian, SmallCases) {
    EXPECT_EQ(pfaffian(Matrix{{0, 2}, {-2, 0}}), Rational(2));
    Matrix block = zero_matrix(4);
    block[0][1] = 3;
    block[1][0] = -3;
    block[2][3] = Rational(5, 2);
    block[3][2] = Rational(-5, 2);
    EXPECT_EQ(pfaffian(block), Rational(15, 2));
    EXPECT_EQ(pfaffian(zero_matrix(3)), Rational(0));
    EXPECT_EQ(pfaffian(zero_matrix(0)), Rational(1));
}

TEST(Pfaffian, MatchesMemoizedExpansionAndDeterminant) {
    std::mt19937 rng(7);
    for (int n = 2; n <= 12; n += 2) {
        for (int trial = 0; trial < 20; ++trial) {
            const Matrix a = random_skew(n, rng);
            const Rational pf = pfaffian(a);
            EXPECT_EQ(pf, oracle::pfaffian(a));
            EXPECT_EQ(pf * pf, determinant(a));
        }
    }
}

TEST(Omega, TrivalentOneOne) {
    const auto c = enumerate_fatgraphs(1, 1, ValenceFilter::trivalent());
    const SkewForm f = omega_matrix(c.entries[0].graph);
    ASSERT_EQ(f.dim, 2);
    EXPECT_TRUE(is_antisymmetric(f.a));
    EXPECT_EQ(abs(f.a[0][1]), Rational(2));
    const CellVolume v = cell_volume(c.entries[0].graph);
    EXPECT_EQ(v.value, Rational(1, 4));
    EXPECT_EQ(v.value / c.entries[0].aut_order, Rational(1, 24));
}

TEST(Omega, StarTree) {
    const auto f = omega_matrix(star_tree(3).graph);
    EXPECT_EQ(abs(pfaffian(f)), Rational(4));
    EXPECT_EQ(cell_volume(star_tree(3).graph).value, Rational(1, 2));
}

TEST(Omega, TrivalentPfaffianLaw) {
    for (int g = 1; g <= 2; ++g) {
        for (const auto& e : enumerate_fatgraphs(g, 1, ValenceFilter::trivalent()).entries) {
            const SkewForm f = omega_matrix(e.graph);
            EXPECT_TRUE(is_antisymmetric(f.a));
            const Rational pf = pfaffian(f);
            EXPECT_EQ(pf * pf, determinant(f.a));
            EXPECT_EQ(abs(pf), expected_trivalent_pf(g)) << serialize(e.graph);
        }
    }
}

TEST(Omega, OddValenceTreePfaffianLaw) {
    int trees = 0;
    for (const auto& p : odd_valence_profiles(11)) {
        for (const auto& e : enumerate_trees(p, Rooting::unrooted).entries) {
            const int m = (e.graph.num_edges() - 1) / 2;
            EXPECT_EQ(abs(pfaffian(omega_matrix(e.graph))), Rational(pow2(2 * m))) << serialize(e.graph);
            EXPECT_EQ(cell_volume(e.graph).value, Rational(factorial(m)) / Rational(factorial(2 * m)));
            ++trees;
        }
    }
    EXPECT_GT(trees, 50);
}

TEST(Omega, EliminationInvariance) {
    for (const auto& e : enumerate_fatgraphs(2, 1, ValenceFilter::trivalent()).entries) {
        const Matrix m = omega_edge_matrix(e.graph);
        const Rational ref = abs(pfaffian(restrict_to_slice(m, 0)));
        for (int z = 1; z < e.graph.num_edges(); ++z) EXPECT_EQ(abs(pfaffian(restrict_to_slice(m, z))), ref);
    }
}

TEST(Omega, RelabelingInvariance) {
    std::mt19937 rng(3);
    for (const auto& e : enumerate_fatgraphs(2, 1, ValenceFilter::all()).entries) {
        if (e.graph.num_edges() % 2 == 0) continue;
        const Rational ref = abs(pfaffian(omega_matrix(e.graph)));
        for (int t = 0; t < 3; ++t) EXPECT_EQ(abs(pfaffian(omega_matrix(fixtures::relabel(e.graph, rng)))), ref);
    }
}

TEST(Omega, MonteCarloAgreesAtDimensionFour) {
    const Fatgraph tree = fixtures::caterpillar(4);  // 5 edges, d = 2
    const SkewForm f = omega_matrix(tree);
    const double exact = cell_volume(f).value.convert_to<double>();
    const double mc = monte_carlo_cell_volume(f, 2'000'000, 12345);
    EXPECT_NEAR(mc, exact, 0.01 * exact);
}

TEST(Omega, Errors) {
    EXPECT_THROW(omega_matrix(fixtures::figure_one()), WrongBoundaryCount);
    EXPECT_THROW(cell_volume(fixtures::gamma_h(1)), WrongType);  // 2 edges
    EXPECT_THROW(restrict_to_slice(zero_matrix(3), 3), MalformedGraph);
}
