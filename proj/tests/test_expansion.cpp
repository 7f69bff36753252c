#include "fatmod/catalan.hpp"
#include "fatmod/expansion.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace fatmod;

namespace {

std::map<int, int> grading(const std::vector<Expansion>& xs) {
    std::map<int, int> out;
    for (const auto& x : xs) ++out[static_cast<int>(x.new_edges.size())];
    return out;
}

int max_valence(const Fatgraph& g) {
    int m = 0;
    for (int v = 0; v < g.num_vertices(); ++v) m = std::max(m, g.valence(v));
    return m;
}

// Collapse non-loop edges until one vertex is left.
Fatgraph shrink(Fatgraph g) {
    for (bool again = true; again;) {
        again = false;
        for (int e = 0; e < g.num_edges(); ++e) {
            if (!g.is_loop(e)) {
                g = collapse_edge(g, e);
                again = true;
                break;
            }
        }
    }
    return g;
}

Fatgraph collapse_first_non_loop(const Fatgraph& g) {
    for (int e = 0; e < g.num_edges(); ++e) {
        if (!g.is_loop(e)) return collapse_edge(g, e);
    }
    return g;
}

}  // namespace

TEST(Expansion, FourValentVertexHasTwoWhiteheadPartners) {
    const Fatgraph g = collapse_edge(fixtures::theta(false), 0);  // one 4-valent vertex
    const auto xs = expansions(g, 0);
    ASSERT_EQ(xs.size(), 2u);
    for (const auto& x : xs) {
        EXPECT_EQ(x.new_edges.size(), 1u);
        EXPECT_EQ(type_of(x.graph), (GraphType{1, 1}));
        EXPECT_EQ(canonical_form(collapse_edges(x.graph, x.new_edges)), canonical_form(g));
    }
    // on the star the two expansions are genuinely different cells
    const auto ys = expansions(fixtures::star(4), 0);
    ASSERT_EQ(ys.size(), 2u);
    const auto marked = marked_isomorphisms(ys[0].graph, ys[0].new_edges, ys[1].graph, ys[1].new_edges);
    // labeled leaves distinguish them; as unlabeled trees they are isomorphic
    EXPECT_TRUE(isomorphic(ys[0].graph, ys[1].graph));
    EXPECT_FALSE(marked.empty());
}

TEST(Expansion, SixValentFacets) {
    for (const Fatgraph& g : {fixtures::star(6), shrink(fixtures::figure_one())}) {
        int v = 0;
        while (g.valence(v) != 6) ++v;
        const auto xs = expansions(g, v);
        const auto grade = grading(xs);
        EXPECT_EQ(grade.at(3), 14);
        EXPECT_EQ(grade.at(2), 21);
        EXPECT_EQ(grade.at(1), 9);
        int keeps_five = 0;
        for (const auto& x : xs) {
            if (x.new_edges.size() == 1 && max_valence(x.graph) == 5) ++keeps_five;
            EXPECT_EQ(type_of(x.graph), type_of(g));
            EXPECT_EQ(canonical_form(collapse_edges(x.graph, x.new_edges)), canonical_form(g));
        }
        EXPECT_EQ(keeps_five, 6);
    }
}

TEST(Expansion, MaximalCountsAreCatalan) {
    for (int k = 4; k <= 9; ++k) {
        const auto xs = expansions(fixtures::star(k), 0);
        const auto grade = grading(xs);
        EXPECT_EQ(Integer(grade.at(k - 3)), catalan(k - 2)) << k;
        int one_five = k == 5 ? 1 : 0;  // at k = 5 only the vertex itself
        if (k >= 6) {
            for (const auto& x : xs) {
                if (static_cast<int>(x.new_edges.size()) != k - 5) continue;
                int fives = 0, others = 0;
                for (int w = 0; w < x.graph.num_vertices(); ++w) {
                    const int val = x.graph.valence(w);
                    if (val == 5) ++fives; else if (val != 3 && val != 1) ++others;
                }
                if (fives == 1 && others == 0) ++one_five;
            }
            EXPECT_EQ(Integer(one_five), catalan5(k)) << k;
        }
    }
}

TEST(Expansion, TrivalentVertexIsNotExpandable) {
    EXPECT_THROW(expansions(fixtures::theta(false), 0), NotExpandable);
    EXPECT_THROW(expansions(fixtures::star(6), 1), NotExpandable);  // delta leaf
}

TEST(Expansion, OrbifoldWeightedMaximalCount) {
    // one k-valent vertex, all other vertices trivalent:
    // sum over classes of 1/|Aut(G', new edges)| = C_{k-2} / |Aut(G)|
    std::vector<Fatgraph> instances{
        collapse_edge(fixtures::theta(false), 0),           // k = 4, type (1,1)
        collapse_first_non_loop(fixtures::figure_one()),    // k = 5 + trivalent, type (1,2)
        shrink(fixtures::figure_one()),                     // k = 6, type (1,2)
        fixtures::gamma_h(2),                               // k = 8, type (2,1)
        fixtures::star(4), fixtures::star(5), fixtures::star(6),
    };
    int checked = 0;
    for (const Fatgraph& g : instances) {
        for (int v = 0; v < g.num_vertices(); ++v) {
            const int k = g.valence(v);
            if (k < 4) continue;
            bool single = true;
            for (int w = 0; w < g.num_vertices(); ++w) {
                if (w != v && g.valence(w) != 3 && g.kind(w) == VertexKind::ordinary) single = false;
            }
            if (!single) continue;
            Rational sum = 0;
            int members = 0;
            for (const auto& c : expansion_classes(g, v)) {
                if (static_cast<int>(c.representative.new_edges.size()) != k - 3) continue;
                sum += Rational(1) / c.marked_automorphisms;
                members += c.members;
            }
            EXPECT_EQ(Integer(members), catalan(k - 2));
            EXPECT_EQ(sum, Rational(catalan(k - 2)) / automorphism_order(g)) << serialize(g);
            ++checked;
        }
    }
    EXPECT_EQ(checked, 7);
}
