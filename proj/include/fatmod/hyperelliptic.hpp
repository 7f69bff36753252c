#pragma once

// Hyperelliptic fatgraphs from planar trees.
//
// Doubling: take a planar tree T and an identical copy T' (same rotations),
// fuse each leaf edge of T with its twin in T' into a single edge, and keep
// both copies of every internal edge. The map x <-> x' is then an
// automorphism of order two (the hyperelliptic involution). Its fixed cells
// are the fused leaf edges, the glued marked vertices and the one boundary
// cycle: 2g+2 in all, where 2g+1 = leaves + marked vertices.
//
// A marked (delta-labeled) internal vertex x of valence v is glued to its
// copy into a single 2v-valent vertex, fixed by the involution. There are v
// symmetric ways to do this; gluing t uses the rotation
//     x_1..x_{v-t}, x'_{v-t+1}..x'_v, x'_1..x'_{v-t}, x_{v-t+1}..x_v.
//
// Metrics: a leaf edge of T keeps its length on the fused edge; an internal
// edge of length l becomes two edges of length l/2. This embeds the tree's
// normalized simplex into the doubled graph's.

#include "fatmod/canonical.hpp"
#include "fatmod/catalan.hpp"
#include "fatmod/census.hpp"
#include "fatmod/expansion.hpp"
#include "fatmod/kontsevich.hpp"
#include "fatmod/trees.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fatmod {

struct HyperellipticCell {
    PlanarTree tree;
    Fatgraph doubled;
    Permutation involution;
    // per tree edge id: (doubled edge id, length coefficient)
    std::vector<std::vector<std::pair<int, Rational>>> embedding;
    int genus = 0;
};

inline int marked_vertex_count(const Fatgraph& tree) {
    int marked = 0;
    for (int v = 0; v < tree.num_vertices(); ++v) {
        if (tree.kind(v) == VertexKind::delta && tree.valence(v) > 1) ++marked;
    }
    return marked;
}

inline HyperellipticCell double_tree(const PlanarTree& t, int gluing = 0) {
    const Fatgraph& tree = t.graph;
    const int leaves = t.leaves;
    const int marked = marked_vertex_count(tree);
    if (leaves < 2 || leaves + marked < 3 || (leaves + marked) % 2 == 0) {
        throw BadLeafCount(std::to_string(leaves) + " leaves and " + std::to_string(marked) +
                           " marked vertices do not double to a single boundary cycle");
    }
    auto is_leaf = [&](HalfEdge h) { return tree.valence(tree.vertex_of(h)) == 1; };

    // internal half-edges get ids 0..K-1 in copy one and K..2K-1 in copy two
    std::vector<int> id(tree.num_half_edges(), -1);
    int count = 0;
    for (HalfEdge h = 0; h < tree.num_half_edges(); ++h) {
        if (!is_leaf(h)) id[h] = count++;
    }
    const int twin = count;

    std::vector<std::vector<HalfEdge>> rotations;
    for (int v = 0; v < tree.num_vertices(); ++v) {
        const auto& rot = tree.vertex(v);
        if (rot.size() == 1) continue;
        std::vector<HalfEdge> one, two;
        for (HalfEdge h : rot) {
            one.push_back(id[h]);
            two.push_back(id[h] + twin);
        }
        if (tree.kind(v) == VertexKind::delta) {
            const int val = static_cast<int>(rot.size());
            if (gluing < 0 || gluing >= val) throw std::out_of_range("gluing index out of range");
            const int cut = val - gluing;
            std::vector<HalfEdge> glued(one.begin(), one.begin() + cut);
            glued.insert(glued.end(), two.begin() + cut, two.end());
            glued.insert(glued.end(), two.begin(), two.begin() + cut);
            glued.insert(glued.end(), one.begin() + cut, one.end());
            rotations.push_back(std::move(glued));
        } else {
            rotations.push_back(std::move(one));
            rotations.push_back(std::move(two));
        }
    }
    std::vector<std::pair<HalfEdge, HalfEdge>> edges;
    for (int e = 0; e < tree.num_edges(); ++e) {
        auto [a, b] = tree.edge(e);
        if (is_leaf(a)) std::swap(a, b);
        if (is_leaf(b)) {
            edges.emplace_back(id[a], id[a] + twin);
        } else {
            edges.emplace_back(id[a], id[b]);
            edges.emplace_back(id[a] + twin, id[b] + twin);
        }
    }

    HyperellipticCell cell;
    cell.tree = t;
    cell.doubled = Fatgraph::from_rotations(rotations, edges);
    cell.genus = (leaves + marked - 1) / 2;
    if (cell.doubled.num_boundaries() != 1) {
        throw WrongType("doubling produced " + std::to_string(cell.doubled.num_boundaries()) + " boundary cycles");
    }
    cell.involution.resize(2 * twin);
    for (int i = 0; i < twin; ++i) {
        cell.involution[i] = i + twin;
        cell.involution[i + twin] = i;
    }
    cell.embedding.resize(tree.num_edges());
    for (int e = 0; e < tree.num_edges(); ++e) {
        auto [a, b] = tree.edge(e);
        if (is_leaf(a)) std::swap(a, b);
        if (is_leaf(b)) {
            cell.embedding[e].emplace_back(cell.doubled.edge_of(id[a]), Rational(1));
        } else {
            cell.embedding[e].emplace_back(cell.doubled.edge_of(id[a]), Rational(1, 2));
            cell.embedding[e].emplace_back(cell.doubled.edge_of(id[a] + twin), Rational(1, 2));
        }
    }
    return cell;
}

// Split a hyperelliptic fatgraph along the non-boundary fixed cells of its
// involution: each fixed edge is cut into two leaf edges and each fixed
// vertex y_0..y_{2v-1} (starting at its least half-edge) into the two
// delta-labeled halves y_0..y_{v-1} and y_v..y_{2v-1}. The two pieces are
// returned with the one containing half-edge 0 first.
inline std::pair<PlanarTree, PlanarTree> cut_along_involution(const Fatgraph& g, const Permutation& iota) {
    if (!is_automorphism(g, iota)) throw NotAnAutomorphism("involution does not commute with sigma and alpha");
    if (permutation_order(iota) != 2) throw NotSymmetric("automorphism does not have order two");
    const GraphType type = type_of(g);
    if (type.n != 1) throw WrongType("cutting needs one boundary cycle");
    const FixedCells fixed = fixed_cells(g, iota);
    if (fixed.vertices + fixed.edges != 2 * type.g + 1) {
        throw NotSymmetric(std::to_string(fixed.vertices + fixed.edges) + " fixed edges and vertices, expected " +
                           std::to_string(2 * type.g + 1));
    }

    const int size = g.num_half_edges();
    std::vector<std::vector<HalfEdge>> rotations;
    std::vector<VertexKind> kinds;
    std::vector<std::pair<HalfEdge, HalfEdge>> edges;
    int next = size;
    for (int v = 0; v < g.num_vertices(); ++v) {
        const auto& rot = g.vertex(v);
        if (g.vertex_of(iota[rot.front()]) == v) {
            const std::size_t half = rot.size() / 2;
            rotations.emplace_back(rot.begin(), rot.begin() + half);
            rotations.emplace_back(rot.begin() + half, rot.end());
            kinds.push_back(VertexKind::delta);
            kinds.push_back(VertexKind::delta);
        } else {
            rotations.push_back(rot);
            kinds.push_back(g.kind(v));
        }
    }
    for (int e = 0; e < g.num_edges(); ++e) {
        const auto [a, b] = g.edge(e);
        if (iota[a] == b) {
            for (HalfEdge end : {a, b}) {
                const HalfEdge leaf = next++;
                rotations.push_back({leaf});
                kinds.push_back(VertexKind::delta);
                edges.emplace_back(end, leaf);
            }
        } else {
            edges.emplace_back(a, b);
        }
    }

    // connected components of the cut graph
    const int total = next;
    std::vector<int> vertex_of(total), comp(rotations.size(), -1);
    for (std::size_t r = 0; r < rotations.size(); ++r) {
        for (HalfEdge h : rotations[r]) vertex_of[h] = static_cast<int>(r);
    }
    std::vector<std::vector<int>> adjacency(rotations.size());
    for (auto [a, b] : edges) {
        adjacency[vertex_of[a]].push_back(vertex_of[b]);
        adjacency[vertex_of[b]].push_back(vertex_of[a]);
    }
    int components = 0;
    for (std::size_t r = 0; r < rotations.size(); ++r) {
        if (comp[r] >= 0) continue;
        std::vector<int> stack{static_cast<int>(r)};
        comp[r] = components;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int y : adjacency[x]) {
                if (comp[y] < 0) {
                    comp[y] = components;
                    stack.push_back(y);
                }
            }
        }
        ++components;
    }
    if (components != 2) throw NotSymmetric("cutting produced " + std::to_string(components) + " pieces");

    auto extract = [&](int which) {
        std::vector<int> relabel(total, -1);
        int count = 0;
        for (HalfEdge h = 0; h < total; ++h) {
            if (comp[vertex_of[h]] == which) relabel[h] = count++;
        }
        std::vector<std::vector<HalfEdge>> rot;
        std::vector<VertexKind> kd;
        std::vector<std::pair<HalfEdge, HalfEdge>> ed;
        for (std::size_t r = 0; r < rotations.size(); ++r) {
            if (comp[r] != which) continue;
            std::vector<HalfEdge> mapped;
            for (HalfEdge h : rotations[r]) mapped.push_back(relabel[h]);
            rot.push_back(std::move(mapped));
            kd.push_back(kinds[r]);
        }
        for (auto [a, b] : edges) {
            if (comp[vertex_of[a]] == which) ed.emplace_back(relabel[a], relabel[b]);
        }
        return make_planar_tree(Fatgraph::from_rotations(rot, ed, kd));
    };
    const int first = comp[vertex_of[0]];
    return {extract(first), extract(1 - first)};
}

inline std::pair<PlanarTree, PlanarTree> cut_along_involution(const HyperellipticCell& c) {
    return cut_along_involution(c.doubled, c.involution);
}

// One vertex, 2g loops, opposite half-edges glued.
inline Fatgraph gamma_h(int g) {
    if (g < 1) throw WrongType("gamma_h needs g >= 1");
    Permutation sigma(4 * g), alpha(4 * g);
    for (int i = 0; i < 4 * g; ++i) {
        sigma[i] = (i + 1) % (4 * g);
        alpha[i] = (i + 2 * g) % (4 * g);
    }
    return Fatgraph(sigma, alpha);
}

// The double of the (2g+1)-leaf star: two vertices joined by 2g+1 edges.
inline Fatgraph gamma_h_prime(int g) {
    if (g < 1) throw WrongType("gamma_h_prime needs g >= 1");
    return double_tree(star_tree(2 * g + 1)).doubled;
}

// True when an involution with 2g+2 fixed cells fixes every edge, so that
// the whole open simplex of the graph (every metric) is hyperelliptic.
inline bool has_full_simplex_property(const Fatgraph& g) {
    if (g.num_boundaries() != 1) return false;
    const GraphType t = type_of(g);
    for (const auto& a : automorphisms(g).elements) {
        if (permutation_order(a) != 2) continue;
        const FixedCells f = fixed_cells(g, a);
        if (f.total() == 2 * t.g + 2 && f.edges == g.num_edges()) return true;
    }
    return false;
}

// Everything reachable by collapsing non-loop edges, one representative per
// isomorphism class, in key order.
inline std::vector<Fatgraph> collapse_closure(const std::vector<Fatgraph>& seeds) {
    std::map<CanonicalKey, Fatgraph> seen;
    std::vector<Fatgraph> queue;
    for (const auto& s : seeds) {
        auto key = canonical_form(s);
        if (seen.emplace(key, s).second) queue.push_back(s);
    }
    while (!queue.empty()) {
        const Fatgraph g = std::move(queue.back());
        queue.pop_back();
        for (int e = 0; e < g.num_edges(); ++e) {
            if (g.is_loop(e)) continue;
            Fatgraph c = collapse_edge(g, e);
            auto key = canonical_form(c);
            if (seen.emplace(key, c).second) queue.push_back(std::move(c));
        }
    }
    std::vector<Fatgraph> out;
    for (auto& [key, g] : seen) out.push_back(g);
    return out;
}

// A census of doubled trees; cells[i] belongs to census.entries[i].
struct HyperellipticCensus {
    OrbifoldCensus census;
    std::vector<HyperellipticCell> cells;
};

inline HyperellipticCensus double_census(const OrbifoldCensus& trees, std::string descriptor) {
    std::vector<std::pair<CensusEntry, HyperellipticCell>> rows;
    std::set<CanonicalKey> keys;
    for (const auto& t : trees.entries) {
        HyperellipticCell cell = double_tree(make_planar_tree(t.graph));
        CensusEntry entry = make_entry(cell.doubled);
        if (!keys.insert(entry.key).second) {
            throw std::logic_error("two non-isomorphic trees doubled to isomorphic graphs");
        }
        rows.emplace_back(std::move(entry), std::move(cell));
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first.key < b.first.key; });
    HyperellipticCensus out;
    out.census.descriptor = std::move(descriptor);
    for (auto& [entry, cell] : rows) {
        out.census.entries.push_back(std::move(entry));
        out.cells.push_back(std::move(cell));
    }
    return out;
}

inline std::string hyperelliptic_descriptor(int g, const std::string& component) {
    return "hyperelliptic g=" + std::to_string(g) + " cells=" + component;
}

inline void check_hyperelliptic_genus(int g, int min_g, const EnumerationLimits& limits) {
    if (g < min_g) throw WrongType("genus must be at least " + std::to_string(min_g));
    if (g > limits.max_hyperelliptic_genus) {
        throw ResourceLimit("hyperelliptic census at g=" + std::to_string(g) + " exceeds cap " +
                            std::to_string(limits.max_hyperelliptic_genus));
    }
}

// Maximal cells: doubles of trivalent trees with 2g+1 leaves.
inline HyperellipticCensus hyperelliptic_census(int g, const EnumerationLimits& limits = {}) {
    check_hyperelliptic_genus(g, 1, limits);
    return double_census(enumerate_trees(TreeProfile::trivalent(2 * g + 1), Rooting::unrooted, limits),
                         hyperelliptic_descriptor(g, "maximal"));
}

// Intersection multiplicities of the two components of W_1 meeting the
// hyperelliptic locus, taken from the transversality argument rather than
// computed: two swapped 5-valent vertices count twice, a fixed 6-valent
// vertex (three sheets of W_1) three times.
inline constexpr int kMultiplicityFiveValent = 2;
inline constexpr int kMultiplicitySixValent = 3;

struct W1HComponents {
    HyperellipticCensus component1;  // one 5-valent vertex, 2g+1 leaves
    HyperellipticCensus component2;  // trivalent, 2g leaves, one marked vertex
    int multiplicity1 = kMultiplicityFiveValent;
    int multiplicity2 = kMultiplicitySixValent;
};

inline W1HComponents w1_intersection_census(int g, const EnumerationLimits& limits = {}) {
    check_hyperelliptic_genus(g, 2, limits);
    W1HComponents out;
    out.component1 = double_census(enumerate_trees(TreeProfile::one_five_valent(2 * g + 1), Rooting::unrooted, limits),
                                   hyperelliptic_descriptor(g, "five-valent"));
    out.component2 = double_census(enumerate_trees(TreeProfile::marked_trivalent(2 * g), Rooting::unrooted, limits),
                                   hyperelliptic_descriptor(g, "six-valent"));
    return out;
}

// C_{5,2g-3} / (2(2g+1))
inline Rational count_T1(int g) {
    if (g < 2) throw WrongType("count_T1 needs g >= 2");
    return Rational(catalan5(2 * g + 1)) / (2 * (2 * g + 1));
}

// (g-1) C_{2g-2} / (2g)
inline Rational count_T2(int g) {
    if (g < 2) throw WrongType("count_T2 needs g >= 2");
    return Rational((g - 1) * catalan(2 * g - 2)) / (2 * g);
}

struct HyperellipticVolume {
    CellVolume pulled_back;  // omega of the doubled graph restricted to the embedded tree simplex
    CellVolume from_tree;    // half the tree's form: (1/2)^d times the tree volume
    bool agree() const { return pulled_back.value == from_tree.value; }
    const Rational& value() const { return pulled_back.value; }
};

inline HyperellipticVolume hyperelliptic_cell_volume(const HyperellipticCell& c) {
    const Fatgraph& tree = c.tree.graph;
    const int te = tree.num_edges();
    const Matrix big = omega_edge_matrix(c.doubled);
    // M' = J^T M J with J[e][t] the coefficient of l^T_t in l_e
    Matrix pulled = zero_matrix(te);
    for (int s = 0; s < te; ++s) {
        for (int t = 0; t < te; ++t) {
            Rational sum = 0;
            for (const auto& [a, ca] : c.embedding[s]) {
                for (const auto& [b, cb] : c.embedding[t]) sum += ca * cb * big[a][b];
            }
            pulled[s][t] = sum;
        }
    }
    HyperellipticVolume out;
    out.pulled_back = cell_volume(restrict_to_slice(pulled, te - 1));
    const CellVolume tv = cell_volume(tree);
    const Rational scale = Rational(1) / Rational(pow2(tv.d));
    out.from_tree = CellVolume{tv.value * scale, tv.d, tv.pfaffian * scale};
    return out;
}

// d! / (2^d (2d)!)
inline Rational hyperelliptic_volume_formula(int d) {
    return Rational(factorial(d)) / Rational(pow2(d) * factorial(2 * d));
}

struct SheetStructure {
    int one_edge = 0;   // one-edge expansions of the vertex
    int in_w1 = 0;      // ... keeping a vertex of valence >= 5
    int symmetric = 0;  // ... that are still hyperelliptic
};

// The one-edge expansions of a 6-valent vertex of a hyperelliptic graph:
// six stay in W_1 (a 5-valent vertex survives), three split it into two
// 4-valent vertices exchanged by a hyperelliptic involution.
inline SheetStructure six_valent_sheets(const Fatgraph& g, int v) {
    if (g.valence(v) != 6) throw MalformedGraph("vertex is not 6-valent");
    SheetStructure out;
    for (const auto& x : expansions(g, v)) {
        if (x.new_edges.size() != 1) continue;
        ++out.one_edge;
        int max_valence = 0;
        for (int w = 0; w < x.graph.num_vertices(); ++w) max_valence = std::max(max_valence, x.graph.valence(w));
        if (max_valence >= 5) ++out.in_w1;
        if (is_hyperelliptic(x.graph)) ++out.symmetric;
    }
    return out;
}

}  // namespace fatmod
