#pragma once

// Expansions of a vertex.
//
// Expanding a k-valent vertex replaces it by a planar tree of new vertices
// (each of valence >= 3) whose k free ends, in cyclic order, are the old
// half-edges. These trees are dual to dissections of a k-gon: polygon sides
// are the old half-edges, diagonals are the new edges, regions are the new
// vertices. Collapsing the new edges gives back the original graph.

#include "fatmod/canonical.hpp"
#include "fatmod/fatgraph.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace fatmod {

struct Expansion {
    Fatgraph graph;
    std::vector<int> new_edges;  // edge ids in `graph`; collapsing them undoes the expansion
};

namespace detail {

// One region of a dissection. Items are listed counterclockwise, the base
// last; an item >= 0 is a polygon side, an item < 0 is the child region
// with index -item-1 (reached through a diagonal).
struct Region {
    std::vector<int> items;
};
using Dissection = std::vector<Region>;  // region 0 contains the base

// Dissections of the sub-polygon on chain corners lo..hi closed by the base
// (lo, hi). Side s joins corners s and s+1.
inline std::vector<Dissection> dissections(int lo, int hi) {
    std::vector<Dissection> out;
    // choose the interior corners of the base region: lo < c1 < ... < hi
    const int span = hi - lo - 1;
    for (unsigned mask = 0; mask < (1u << span); ++mask) {
        std::vector<int> corners{lo};
        for (int i = 0; i < span; ++i) {
            if (mask & (1u << i)) corners.push_back(lo + 1 + i);
        }
        corners.push_back(hi);
        if (corners.size() < 3) continue;  // region needs >= 3 sides with its base

        std::vector<Dissection> partial{Dissection{Region{}}};
        for (std::size_t t = 0; t + 1 < corners.size(); ++t) {
            const int a = corners[t], b = corners[t + 1];
            std::vector<Dissection> next;
            if (b == a + 1) {
                for (auto& d : partial) {
                    d[0].items.push_back(a);
                    next.push_back(std::move(d));
                }
            } else {
                const auto children = dissections(a, b);
                for (const auto& d : partial) {
                    for (const auto& child : children) {
                        Dissection merged = d;
                        const int offset = static_cast<int>(merged.size());
                        merged[0].items.push_back(-offset - 1);
                        for (Region r : child) {
                            for (int& item : r.items) {
                                if (item < 0) item -= offset;
                            }
                            merged.push_back(std::move(r));
                        }
                        next.push_back(std::move(merged));
                    }
                }
            }
            partial.swap(next);
        }
        out.insert(out.end(), partial.begin(), partial.end());
    }
    return out;
}

}  // namespace detail

// All expansions of vertex v (valence k >= 4), one per dissection of the
// k-gon, ordered by the number of new edges. These are the cells adjacent
// to G's cell at v; distinct entries can be isomorphic as fatgraphs when G
// has automorphisms (see expansion_classes).
inline std::vector<Expansion> expansions(const Fatgraph& g, int v) {
    if (v < 0 || v >= g.num_vertices()) throw MalformedGraph("no vertex " + std::to_string(v));
    const int k = g.valence(v);
    if (k < 4) throw NotExpandable("vertex of valence " + std::to_string(k));
    if (g.kind(v) != VertexKind::ordinary) throw NotExpandable("only ordinary vertices expand");
    const auto& rot = g.vertex(v);  // sides s_i <-> rot[i], base is side k-1

    std::vector<Expansion> out;
    for (const auto& dissection : detail::dissections(0, k - 1)) {
        const int diagonals = static_cast<int>(dissection.size()) - 1;
        if (diagonals == 0) continue;  // the vertex itself
        const int size = g.num_half_edges() + 2 * diagonals;
        Permutation sigma(size), alpha(size);
        for (HalfEdge h = 0; h < g.num_half_edges(); ++h) {
            sigma[h] = g.sigma(h);
            alpha[h] = g.alpha(h);
        }
        // diagonal to child region r (r >= 1): parent-side half-edge
        // H + 2(r-1), child-side H + 2(r-1) + 1
        const int base = g.num_half_edges();
        for (int r = 0; r < static_cast<int>(dissection.size()); ++r) {
            std::vector<HalfEdge> ring;
            for (int item : dissection[r].items) {
                ring.push_back(item >= 0 ? rot[item] : base + 2 * (-item - 2));
            }
            ring.push_back(r == 0 ? rot[k - 1] : base + 2 * (r - 1) + 1);
            for (std::size_t i = 0; i < ring.size(); ++i) sigma[ring[i]] = ring[(i + 1) % ring.size()];
        }
        for (int r = 1; r <= diagonals; ++r) {
            alpha[base + 2 * (r - 1)] = base + 2 * (r - 1) + 1;
            alpha[base + 2 * (r - 1) + 1] = base + 2 * (r - 1);
        }

        std::vector<VertexKind> kinds;
        for (const auto& cycle : cycles_of(sigma)) {
            const HalfEdge h = cycle.front();
            kinds.push_back(h < base && g.vertex_of(h) != v ? g.kind(g.vertex_of(h)) : VertexKind::ordinary);
        }
        std::vector<int> labels;
        if (g.has_boundary_labels()) {
            Permutation phi(size);
            for (int i = 0; i < size; ++i) phi[i] = sigma[alpha[i]];
            for (const auto& face : cycles_of(phi)) {
                const auto old = std::find_if(face.begin(), face.end(), [&](HalfEdge h) { return h < base; });
                labels.push_back(g.boundary_label(g.boundary_of(*old)));
            }
        }
        Fatgraph expanded(sigma, alpha, std::move(kinds), std::move(labels));
        std::vector<int> new_edges;
        for (int r = 1; r <= diagonals; ++r) new_edges.push_back(expanded.edge_of(base + 2 * (r - 1)));
        std::sort(new_edges.begin(), new_edges.end());
        out.push_back(Expansion{std::move(expanded), std::move(new_edges)});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Expansion& a, const Expansion& b) { return a.new_edges.size() < b.new_edges.size(); });
    return out;
}

// Collapse the given edges (a forest) one at a time.
inline Fatgraph collapse_edges(Fatgraph g, std::vector<int> edges) {
    // collapse from the largest representative half-edge down so that the
    // remaining ids stay valid: track edges by their smaller half-edge.
    std::vector<HalfEdge> reps;
    for (int e : edges) reps.push_back(g.edge(e).first);
    while (!reps.empty()) {
        const HalfEdge h = reps.back();
        reps.pop_back();
        const HalfEdge k = g.alpha(h);
        g = collapse_edge(g, g.edge_of(h));
        for (HalfEdge& r : reps) r -= (r > h) + (r > k);
    }
    return g;
}

namespace detail {

inline bool maps_edge_set(const Fatgraph& a, const std::vector<int>& edges_a, const Fatgraph& b,
                          const std::vector<int>& edges_b, const Permutation& map) {
    std::vector<int> image;
    for (int e : edges_a) image.push_back(b.edge_of(map[a.edge(e).first]));
    std::sort(image.begin(), image.end());
    return image == edges_b;
}

}  // namespace detail

// Isomorphisms a -> b carrying the marked edge set of a onto that of b.
inline std::vector<Permutation> marked_isomorphisms(const Fatgraph& a, const std::vector<int>& edges_a,
                                                    const Fatgraph& b, const std::vector<int>& edges_b) {
    std::vector<Permutation> out;
    if (!detail::same_shape(a, b) || edges_a.size() != edges_b.size()) return out;
    const auto inv = detail::half_edge_invariant(a, 0);
    for (HalfEdge h = 0; h < b.num_half_edges(); ++h) {
        if (detail::half_edge_invariant(b, h) != inv) continue;
        auto m = detail::extend_isomorphism(a, b, 0, h);
        if (m && detail::maps_edge_set(a, edges_a, b, edges_b, *m)) out.push_back(std::move(*m));
    }
    return out;
}

struct ExpansionClass {
    Expansion representative;
    int members = 0;              // local expansions in this class
    int marked_automorphisms = 0;  // |Aut(expanded graph, new-edge set)|
};

// Expansions of v up to isomorphisms that carry new edges to new edges.
// Each class is an orbit of Aut(G) acting on the local expansions (when
// Aut(G) fixes v).
inline std::vector<ExpansionClass> expansion_classes(const Fatgraph& g, int v) {
    std::vector<ExpansionClass> classes;
    std::map<CanonicalKey, std::vector<std::size_t>> by_key;
    for (auto& ex : expansions(g, v)) {
        auto& bucket = by_key[canonical_form(ex.graph)];
        bool placed = false;
        for (std::size_t idx : bucket) {
            auto& c = classes[idx];
            if (!marked_isomorphisms(ex.graph, ex.new_edges, c.representative.graph, c.representative.new_edges).empty()) {
                ++c.members;
                placed = true;
                break;
            }
        }
        if (!placed) {
            const int auts = static_cast<int>(
                marked_isomorphisms(ex.graph, ex.new_edges, ex.graph, ex.new_edges).size());
            bucket.push_back(classes.size());
            classes.push_back(ExpansionClass{std::move(ex), 1, auts});
        }
    }
    return classes;
}

}  // namespace fatmod
