#pragma once

// Hand-built reference graphs, constructed independently of the library's
// own builders so that the two can be compared.

#include "fatmod/fatgraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace fixtures {

using fatmod::Fatgraph;
using fatmod::HalfEdge;
using fatmod::Permutation;
using fatmod::VertexKind;

// Type (1,2) graph with vertices (0 1 2 3)(4 5 6)(7 8 9) and edges
// e1={1,5} e2={0,4} e3={3,8} e4={2,7} e5={6,9}.
inline Fatgraph figure_one() {
    return Fatgraph::from_rotations({{0, 1, 2, 3}, {4, 5, 6}, {7, 8, 9}}, {{1, 5}, {0, 4}, {3, 8}, {2, 7}, {6, 9}});
}

// figure_one()'s edge ids -> figure numbering 1..5
inline std::vector<int> figure_one_edge_names(const Fatgraph& g) {
    const std::map<int, int> by_min{{1, 1}, {0, 2}, {3, 3}, {2, 4}, {6, 5}};
    std::vector<int> out;
    for (int e = 0; e < g.num_edges(); ++e) out.push_back(by_min.at(g.edge(e).first));
    return out;
}

// Two trivalent vertices joined by three edges.
inline Fatgraph theta(bool planar) {
    if (planar) return Fatgraph::from_rotations({{0, 1, 2}, {3, 5, 4}}, {{0, 3}, {1, 4}, {2, 5}});
    return Fatgraph::from_rotations({{0, 1, 2}, {3, 4, 5}}, {{0, 3}, {1, 4}, {2, 5}});
}

// k-valent vertex with k delta leaves.
inline Fatgraph star(int k) {
    std::vector<std::vector<HalfEdge>> rot(1);
    std::vector<std::pair<HalfEdge, HalfEdge>> edges;
    std::vector<VertexKind> kinds{k >= 3 ? VertexKind::ordinary : VertexKind::delta};
    for (int i = 0; i < k; ++i) {
        rot[0].push_back(i);
        rot.push_back({k + i});
        edges.emplace_back(i, k + i);
        kinds.push_back(VertexKind::delta);
    }
    return Fatgraph::from_rotations(rot, edges, kinds);
}

// Trivalent tree with `leaves` >= 3 delta leaves whose internal vertices
// form a path.
inline Fatgraph caterpillar(int leaves) {
    const int m = leaves - 2;
    std::vector<std::vector<HalfEdge>> rot;
    std::vector<std::pair<HalfEdge, HalfEdge>> edges;
    std::vector<VertexKind> kinds;
    int next = 0;
    auto fresh = [&] { return next++; };
    auto leaf = [&](HalfEdge h) {
        const HalfEdge l = fresh();
        rot.push_back({l});
        kinds.push_back(VertexKind::delta);
        edges.emplace_back(h, l);
    };
    HalfEdge carry = -1;  // right half-edge of the previous internal vertex
    for (int i = 0; i < m; ++i) {
        const HalfEdge left = fresh(), up = fresh(), right = fresh();
        rot.push_back({left, up, right});
        kinds.push_back(VertexKind::ordinary);
        if (i == 0) leaf(left); else edges.emplace_back(carry, left);
        leaf(up);
        if (i == m - 1) leaf(right);
        carry = right;
    }
    return Fatgraph::from_rotations(rot, edges, kinds);
}

// One vertex, 2g loops, half-edge i glued to the opposite one i+2g.
inline Fatgraph gamma_h(int g) {
    std::vector<HalfEdge> rot(4 * g);
    std::iota(rot.begin(), rot.end(), 0);
    std::vector<std::pair<HalfEdge, HalfEdge>> edges;
    for (int i = 0; i < 2 * g; ++i) edges.emplace_back(i, i + 2 * g);
    return Fatgraph::from_rotations({rot}, edges);
}

// Two (2g+1)-valent vertices joined by 2g+1 edges, with equally oriented
// rotations (the doubled star).
inline Fatgraph gamma_h_prime(int g) {
    const int k = 2 * g + 1;
    std::vector<HalfEdge> a(k), b(k);
    std::iota(a.begin(), a.end(), 0);
    std::iota(b.begin(), b.end(), k);
    std::vector<std::pair<HalfEdge, HalfEdge>> edges;
    for (int i = 0; i < k; ++i) edges.emplace_back(i, k + i);
    return Fatgraph::from_rotations({a, b}, edges);
}

// Conjugate by a random relabeling of half-edges, carrying kinds and labels.
template <class Rng>
Fatgraph relabel(const Fatgraph& g, Rng& rng) {
    const int size = g.num_half_edges();
    Permutation p(size);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    Permutation sigma(size), alpha(size), inv(size);
    for (int h = 0; h < size; ++h) inv[p[h]] = h;
    for (int h = 0; h < size; ++h) {
        sigma[p[h]] = p[g.sigma(h)];
        alpha[p[h]] = p[g.alpha(h)];
    }
    std::vector<VertexKind> kinds;
    for (const auto& c : fatmod::cycles_of(sigma)) kinds.push_back(g.kind(g.vertex_of(inv[c.front()])));
    std::vector<int> labels;
    if (g.has_boundary_labels()) {
        Permutation phi(size);
        for (int h = 0; h < size; ++h) phi[h] = sigma[alpha[h]];
        for (const auto& c : fatmod::cycles_of(phi)) labels.push_back(g.boundary_label(g.boundary_of(inv[c.front()])));
    }
    return Fatgraph(sigma, alpha, kinds, labels);
}

}  // namespace fixtures
