#include "fatmod/census.hpp"
#include "fatmod/expansion.hpp"
#include "fatmod/hyperelliptic.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace fatmod;

namespace {

// collapse both copies of every internal tree edge
Fatgraph collapse_internal_copies(const HyperellipticCell& c) {
    std::vector<int> edges;
    for (const auto& images : c.embedding) {
        if (images.size() == 2) {
            for (const auto& [e, coeff] : images) edges.push_back(e);
        }
    }
    return collapse_edges(c.doubled, edges);
}

std::vector<PlanarTree> trivalent_trees(int leaves) {
    std::vector<PlanarTree> out;
    for (const auto& e : enumerate_trees(TreeProfile::trivalent(leaves), Rooting::unrooted).entries) {
        out.push_back(make_planar_tree(e.graph));
    }
    return out;
}

}  // namespace

TEST(Doubling, ThreeStarIsTheOneOneGraph) {
    const auto cell = double_tree(star_tree(3));
    const auto census = enumerate_fatgraphs(1, 1, ValenceFilter::trivalent());
    EXPECT_EQ(canonical_form(cell.doubled), census.entries[0].key);
    EXPECT_EQ(cell.genus, 1);
}

TEST(Doubling, FiveStar) {
    const auto cell = double_tree(star_tree(5));
    EXPECT_EQ(cell.doubled.num_vertices(), 2);
    EXPECT_EQ(cell.doubled.valence(0), 5);
    EXPECT_EQ(cell.doubled.valence(1), 5);
    EXPECT_EQ(automorphism_order(cell.doubled), 10);
    EXPECT_TRUE(isomorphic(cell.doubled, fixtures::gamma_h_prime(2)));
    const auto iota = is_hyperelliptic(cell.doubled);
    ASSERT_TRUE(iota.has_value());
    EXPECT_NE(cell.doubled.vertex_of((*iota)[0]), cell.doubled.vertex_of(0));
}

TEST(Doubling, StructureForAllSmallTrees) {
    for (int leaves : {3, 5, 7, 9}) {
        const int g = (leaves - 1) / 2;
        for (const auto& t : trivalent_trees(leaves)) {
            const auto cell = double_tree(t);
            const Fatgraph& d = cell.doubled;
            EXPECT_EQ(type_of(d), (GraphType{g, 1}));
            EXPECT_EQ(d.num_edges(), leaves + 2 * (t.graph.num_edges() - leaves));
            EXPECT_TRUE(is_automorphism(d, cell.involution));
            EXPECT_EQ(permutation_order(cell.involution), 2);
            EXPECT_EQ(fixed_cells(d, cell.involution).total(), 2 * g + 2);
            ASSERT_TRUE(is_hyperelliptic(d).has_value());
            // Aut(doubled) = <iota> x Aut(T), acting faithfully on leaves
            const int aut = automorphism_order(d);
            EXPECT_EQ(aut % 2, 0);
            EXPECT_EQ(aut, 2 * automorphism_order(t.graph));
            // collapse to the minimal cells
            const Fatgraph prime = collapse_internal_copies(cell);
            EXPECT_TRUE(isomorphic(prime, fixtures::gamma_h_prime(g)));
            EXPECT_TRUE(isomorphic(collapse_edge(prime, 0), fixtures::gamma_h(g)));
            // cut round trip
            const auto [a, b] = cut_along_involution(cell);
            EXPECT_TRUE(isomorphic(a.graph, t.graph));
            EXPECT_TRUE(isomorphic(b.graph, t.graph));
        }
    }
}

TEST(Doubling, MarkedVertexGluings) {
    for (int leaves : {4, 6, 8}) {
        for (const auto& e : enumerate_trees(TreeProfile::marked_trivalent(leaves), Rooting::unrooted).entries) {
            const PlanarTree t = make_planar_tree(e.graph);
            for (int gluing = 0; gluing < 3; ++gluing) {
                const auto cell = double_tree(t, gluing);
                EXPECT_EQ(cell.doubled.num_boundaries(), 1);
                EXPECT_EQ(cell.genus, leaves / 2);
                EXPECT_EQ(fixed_cells(cell.doubled, cell.involution).total(), leaves + 2);
                const auto [a, b] = cut_along_involution(cell);
                EXPECT_TRUE(isomorphic(a.graph, t.graph));
                EXPECT_TRUE(isomorphic(b.graph, t.graph));
            }
        }
    }
}

TEST(Doubling, Errors) {
    EXPECT_THROW(double_tree(star_tree(4)), BadLeafCount);
    EXPECT_THROW(double_tree(star_tree(3, true)), BadLeafCount);
    EXPECT_THROW(double_tree(star_tree(4, true), 4), std::out_of_range);
    EXPECT_EQ(double_tree(star_tree(2)).genus, 1);
}

TEST(Cutting, MinimalCellSplitsIntoMarkedStars) {
    for (int g = 1; g <= 4; ++g) {
        const Fatgraph h = gamma_h(g);
        const auto iota = is_hyperelliptic(h);
        ASSERT_TRUE(iota.has_value());
        const auto [a, b] = cut_along_involution(h, *iota);
        EXPECT_TRUE(isomorphic(a.graph, star_tree(2 * g, true).graph));
        EXPECT_TRUE(isomorphic(b.graph, star_tree(2 * g, true).graph));
        // and it is what the marked star doubles back to
        EXPECT_TRUE(isomorphic(double_tree(star_tree(2 * g, true)).doubled, h));
    }
}

TEST(Cutting, Errors) {
    const Fatgraph h = gamma_h(2);
    Permutation id(h.num_half_edges());
    std::iota(id.begin(), id.end(), 0);
    EXPECT_THROW(cut_along_involution(h, id), NotSymmetric);
    Permutation bad = id;
    std::swap(bad[0], bad[1]);
    EXPECT_THROW(cut_along_involution(h, bad), NotAnAutomorphism);
    const Fatgraph fig = fixtures::figure_one();
    EXPECT_THROW(cut_along_involution(fig, automorphisms(fig).elements.back()), WrongType);
}

TEST(MinimalCells, Recognition) {
    for (int g = 2; g <= 6; ++g) {
        EXPECT_EQ(automorphism_order(gamma_h(g)), 4 * g);
        EXPECT_EQ(automorphism_order(gamma_h_prime(g)), 2 * (2 * g + 1));
        EXPECT_TRUE(has_full_simplex_property(gamma_h(g)));
        EXPECT_TRUE(has_full_simplex_property(gamma_h_prime(g)));
        for (int e = 0; e < gamma_h_prime(g).num_edges(); ++e) {
            EXPECT_TRUE(isomorphic(collapse_edge(gamma_h_prime(g), e), gamma_h(g)));
        }
    }
    for (int g = 2; g <= 3; ++g) {
        std::vector<Fatgraph> seeds;
        for (const auto& c : hyperelliptic_census(g).cells) seeds.push_back(c.doubled);
        std::vector<int> full;
        for (const auto& x : collapse_closure(seeds)) {
            if (has_full_simplex_property(x)) full.push_back(automorphism_order(x));
        }
        std::sort(full.begin(), full.end());
        EXPECT_EQ(full, (std::vector<int>{4 * g, 2 * (2 * g + 1)}));
    }
}

TEST(HyperellipticCensus, OrbifoldCounts) {
    EXPECT_EQ(orbifold_sum(hyperelliptic_census(1).census), Rational(1, 6));
    EXPECT_EQ(orbifold_sum(hyperelliptic_census(2).census), Rational(1, 2));
    EXPECT_EQ(orbifold_sum(hyperelliptic_census(3).census), Rational(3));
    for (int g = 1; g <= 4; ++g) {
        EXPECT_EQ(orbifold_sum(hyperelliptic_census(g).census), Rational(catalan(2 * g - 1)) / (2 * (2 * g + 1)));
    }
    EnumerationLimits tight;
    tight.max_hyperelliptic_genus = 2;
    EXPECT_THROW(hyperelliptic_census(3, tight), ResourceLimit);
}

TEST(HyperellipticCensus, WOneComponents) {
    EXPECT_EQ(count_T1(2), Rational(1, 10));
    EXPECT_EQ(count_T2(2), Rational(1, 2));
    EXPECT_EQ(count_T1(3), Rational(2));
    EXPECT_EQ(count_T2(3), Rational(14, 3));
    for (int g = 2; g <= 4; ++g) {
        const auto w = w1_intersection_census(g);
        EXPECT_EQ(orbifold_sum(w.component1.census), count_T1(g));
        EXPECT_EQ(orbifold_sum(w.component2.census), count_T2(g));
        EXPECT_EQ(count_T1(g) * 2 * (2 * g + 1), Rational(catalan5(2 * g + 1)));
        EXPECT_EQ(w.multiplicity1, 2);
        EXPECT_EQ(w.multiplicity2, 3);
        for (const auto& c : w.component1.cells) {
            std::vector<int> fives;
            for (int v = 0; v < c.doubled.num_vertices(); ++v) {
                if (c.doubled.valence(v) == 5) fives.push_back(v);
            }
            ASSERT_EQ(fives.size(), 2u);
            EXPECT_EQ(c.doubled.vertex_of(c.involution[c.doubled.vertex(fives[0]).front()]), fives[1]);
            EXPECT_TRUE(is_hyperelliptic(c.doubled).has_value());
        }
        for (const auto& c : w.component2.cells) {
            int sixes = 0;
            for (int v = 0; v < c.doubled.num_vertices(); ++v) {
                if (c.doubled.valence(v) != 6) continue;
                ++sixes;
                EXPECT_EQ(c.doubled.vertex_of(c.involution[c.doubled.vertex(v).front()]), v);
                const auto s = six_valent_sheets(c.doubled, v);
                EXPECT_EQ(s.one_edge, 9);
                EXPECT_EQ(s.in_w1, 6);
                EXPECT_EQ(s.symmetric, 3);
            }
            EXPECT_EQ(sixes, 1);
            EXPECT_TRUE(is_hyperelliptic(c.doubled).has_value());
        }
        for (const auto& a : w.component1.census.entries) {
            for (const auto& b : w.component2.census.entries) EXPECT_NE(a.key, b.key);
        }
    }
    EXPECT_THROW(w1_intersection_census(1), WrongType);
}

TEST(HyperellipticVolume, BothPathsAgree) {
    for (int g = 1; g <= 3; ++g) {
        for (const auto& c : hyperelliptic_census(g).cells) {
            const auto v = hyperelliptic_cell_volume(c);
            EXPECT_TRUE(v.agree());
            EXPECT_EQ(v.value(), hyperelliptic_volume_formula(2 * g - 1));
            EXPECT_NE(v.pulled_back.pfaffian, 0);
            EXPECT_EQ(abs(v.pulled_back.pfaffian),
                      abs(cell_volume(c.tree.graph).pfaffian) / Rational(pow2(v.pulled_back.d)));
        }
    }
    for (int g = 2; g <= 3; ++g) {
        const auto w = w1_intersection_census(g);
        for (const auto* comp : {&w.component1, &w.component2}) {
            for (const auto& c : comp->cells) {
                const auto v = hyperelliptic_cell_volume(c);
                EXPECT_TRUE(v.agree());
                EXPECT_EQ(v.value(), hyperelliptic_volume_formula(2 * g - 2));
            }
        }
    }
    EXPECT_EQ(hyperelliptic_volume_formula(1), Rational(1, 4));
    EXPECT_EQ(hyperelliptic_volume_formula(3), Rational(1, 960));
}
