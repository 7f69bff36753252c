#pragma once

// Isomorphism machinery for connected fatgraphs.
//
// A fatgraph isomorphism commutes with sigma and alpha, so on a connected
// map it is determined by the image of a single half-edge. Both the canonical
// key and the automorphism search exploit this: pick a start half-edge,
// propagate along sigma and alpha in breadth-first order, and either read off
// an encoding (canonical key) or check consistency (automorphisms).
// Everything is O(H^2) in the number of half-edges, which is plenty for the
// graphs this library deals with (H <= ~40).

#include "fatmod/fatgraph.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

namespace fatmod {

struct CanonicalKey {
    std::vector<int> code;
    auto operator<=>(const CanonicalKey&) const = default;
    bool operator==(const CanonicalKey&) const = default;
};

struct CanonicalKeyHash {
    std::size_t operator()(const CanonicalKey& k) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int c : k.code) {
            h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

namespace detail {

// Isomorphism-invariant local data of a half-edge; starts and images are
// restricted to half-edges with matching invariants.
inline std::tuple<int, int, int, int> half_edge_invariant(const Fatgraph& g, HalfEdge h) {
    const int v = g.vertex_of(h);
    const int b = g.boundary_of(h);
    return {static_cast<int>(g.kind(v)), g.valence(v), static_cast<int>(g.faces()[b].size()),
            g.has_boundary_labels() ? g.boundary_label(b) : 0};
}

// Breadth-first relabeling from `start`, emitting the code as it goes.
// Returns false as soon as the code is known to exceed `best` (when given).
inline bool encode_from(const Fatgraph& g, HalfEdge start, std::vector<int>& code,
                        const std::vector<int>* best, std::vector<int>& label, std::vector<HalfEdge>& order) {
    const int size = g.num_half_edges();
    label.assign(size, -1);
    order.clear();
    code.clear();
    code.push_back(size);
    label[start] = 0;
    order.push_back(start);
    bool tied = best != nullptr;
    auto emit = [&](int value) {
        const std::size_t pos = code.size();
        code.push_back(value);
        if (tied) {
            const int other = (*best)[pos];
            if (value > other) return false;
            if (value < other) tied = false;
        }
        return true;
    };
    for (std::size_t i = 0; i < order.size(); ++i) {
        const HalfEdge x = order[i];
        for (HalfEdge y : {g.sigma(x), g.alpha(x)}) {
            if (label[y] < 0) {
                label[y] = static_cast<int>(order.size());
                order.push_back(y);
            }
        }
        const int v = g.vertex_of(x);
        if (!emit(label[g.sigma(x)]) || !emit(label[g.alpha(x)]) || !emit(static_cast<int>(g.kind(v))) ||
            !emit(g.has_boundary_labels() ? g.boundary_label(g.boundary_of(x)) : 0)) {
            return false;
        }
    }
    return true;
}

// Try to extend h0 -> image to an isomorphism from a onto b.
inline std::optional<Permutation> extend_isomorphism(const Fatgraph& a, const Fatgraph& b, HalfEdge h0,
                                                     HalfEdge image) {
    const int size = a.num_half_edges();
    Permutation map(size, -1);
    std::vector<char> used(size, 0);
    std::vector<HalfEdge> queue{h0};
    map[h0] = image;
    used[image] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const HalfEdge x = queue[i];
        const HalfEdge fx = map[x];
        if (a.kind(a.vertex_of(x)) != b.kind(b.vertex_of(fx))) return std::nullopt;
        if (a.has_boundary_labels() &&
            a.boundary_label(a.boundary_of(x)) != b.boundary_label(b.boundary_of(fx))) {
            return std::nullopt;
        }
        const std::pair<HalfEdge, HalfEdge> steps[2] = {{a.sigma(x), b.sigma(fx)}, {a.alpha(x), b.alpha(fx)}};
        for (auto [y, fy] : steps) {
            if (map[y] == -1) {
                if (used[fy]) return std::nullopt;
                map[y] = fy;
                used[fy] = 1;
                queue.push_back(y);
            } else if (map[y] != fy) {
                return std::nullopt;
            }
        }
    }
    return map;
}

inline bool same_shape(const Fatgraph& a, const Fatgraph& b) {
    return a.num_half_edges() == b.num_half_edges() && a.num_vertices() == b.num_vertices() &&
           a.num_boundaries() == b.num_boundaries() && a.has_boundary_labels() == b.has_boundary_labels();
}

}  // namespace detail

// Minimum over all admissible start half-edges of the breadth-first code of
// (sigma, alpha, vertex kinds, boundary labels).
inline CanonicalKey canonical_form(const Fatgraph& g) {
    const int size = g.num_half_edges();
    auto best_inv = detail::half_edge_invariant(g, 0);
    for (HalfEdge h = 1; h < size; ++h) best_inv = std::min(best_inv, detail::half_edge_invariant(g, h));

    std::vector<int> best, code, label;
    std::vector<HalfEdge> order;
    for (HalfEdge h = 0; h < size; ++h) {
        if (detail::half_edge_invariant(g, h) != best_inv) continue;
        if (best.empty()) {
            detail::encode_from(g, h, best, nullptr, label, order);
        } else if (detail::encode_from(g, h, code, &best, label, order) && code < best) {
            best.swap(code);
        }
    }
    return CanonicalKey{std::move(best)};
}

// Relabel g by the canonical breadth-first order, giving a representative
// that depends only on the isomorphism class.
inline Fatgraph canonical_representative(const Fatgraph& g) {
    const CanonicalKey key = canonical_form(g);
    const int size = g.num_half_edges();
    Permutation sigma(size), alpha(size);
    std::vector<int> kind_of(size), label_of(size);
    for (int i = 0; i < size; ++i) {
        sigma[i] = key.code[1 + 4 * i];
        alpha[i] = key.code[2 + 4 * i];
        kind_of[i] = key.code[3 + 4 * i];
        label_of[i] = key.code[4 + 4 * i];
    }
    std::vector<VertexKind> kinds;
    for (const auto& cycle : cycles_of(sigma)) kinds.push_back(static_cast<VertexKind>(kind_of[cycle.front()]));
    std::vector<int> labels;
    if (g.has_boundary_labels()) {
        Permutation phi(size);
        for (int i = 0; i < size; ++i) phi[i] = sigma[alpha[i]];
        for (const auto& cycle : cycles_of(phi)) labels.push_back(label_of[cycle.front()]);
    }
    return Fatgraph(std::move(sigma), std::move(alpha), std::move(kinds), std::move(labels));
}

inline std::optional<Permutation> find_isomorphism(const Fatgraph& a, const Fatgraph& b) {
    if (!detail::same_shape(a, b)) return std::nullopt;
    const auto inv = detail::half_edge_invariant(a, 0);
    for (HalfEdge h = 0; h < b.num_half_edges(); ++h) {
        if (detail::half_edge_invariant(b, h) != inv) continue;
        if (auto m = detail::extend_isomorphism(a, b, 0, h)) return m;
    }
    return std::nullopt;
}

inline bool isomorphic(const Fatgraph& a, const Fatgraph& b) { return find_isomorphism(a, b).has_value(); }

struct AutomorphismGroup {
    std::vector<Permutation> elements;  // sorted; identity first
    int order() const { return static_cast<int>(elements.size()); }
};

// All automorphisms (preserving vertex kinds and boundary labels), anchored
// at half-edge 0.
inline AutomorphismGroup automorphisms(const Fatgraph& g) {
    AutomorphismGroup out;
    const auto inv = detail::half_edge_invariant(g, 0);
    for (HalfEdge h = 0; h < g.num_half_edges(); ++h) {
        if (detail::half_edge_invariant(g, h) != inv) continue;
        if (auto m = detail::extend_isomorphism(g, g, 0, h)) out.elements.push_back(std::move(*m));
    }
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

inline int automorphism_order(const Fatgraph& g) { return automorphisms(g).order(); }

inline bool is_automorphism(const Fatgraph& g, const Permutation& a) {
    const int size = g.num_half_edges();
    if (static_cast<int>(a.size()) != size) return false;
    std::vector<char> seen(size, 0);
    for (int h = 0; h < size; ++h) {
        if (a[h] < 0 || a[h] >= size || seen[a[h]]) return false;
        seen[a[h]] = 1;
    }
    for (int h = 0; h < size; ++h) {
        if (a[g.sigma(h)] != g.sigma(a[h]) || a[g.alpha(h)] != g.alpha(a[h])) return false;
        if (g.kind(g.vertex_of(h)) != g.kind(g.vertex_of(a[h]))) return false;
        if (g.has_boundary_labels() && g.boundary_label(g.boundary_of(h)) != g.boundary_label(g.boundary_of(a[h]))) {
            return false;
        }
    }
    return true;
}

inline int permutation_order(const Permutation& p) {
    Permutation q = p;
    Permutation identity(p.size());
    std::iota(identity.begin(), identity.end(), 0);
    int k = 1;
    while (q != identity) {
        Permutation next(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) next[i] = p[q[i]];
        q.swap(next);
        ++k;
    }
    return k;
}

struct FixedCells {
    int vertices = 0;
    int edges = 0;
    int boundaries = 0;
    int total() const { return vertices + edges + boundaries; }
    bool operator==(const FixedCells&) const = default;
};

// Cells mapped to themselves setwise (a boundary cycle rotated onto itself
// counts as fixed).
inline FixedCells fixed_cells(const Fatgraph& g, const Permutation& a) {
    if (!is_automorphism(g, a)) throw NotAnAutomorphism("permutation does not commute with sigma and alpha");
    FixedCells out;
    for (int v = 0; v < g.num_vertices(); ++v) {
        const HalfEdge h = g.vertex(v).front();
        if (g.vertex_of(a[h]) == v) ++out.vertices;
    }
    for (int e = 0; e < g.num_edges(); ++e) {
        const HalfEdge h = g.edge(e).first;
        if (g.edge_of(a[h]) == e) ++out.edges;
    }
    for (int b = 0; b < g.num_boundaries(); ++b) {
        const HalfEdge h = g.faces()[b].front();
        if (g.boundary_of(a[h]) == b) ++out.boundaries;
    }
    return out;
}

// An order-two automorphism with 2g+2 fixed cells, the lexicographically
// least one when several exist.
inline std::optional<Permutation> is_hyperelliptic(const Fatgraph& g) {
    const GraphType t = type_of(g);
    if (t.n != 1) throw WrongType("hyperelliptic test needs one boundary cycle, got " + std::to_string(t.n));
    for (const auto& a : automorphisms(g).elements) {  // sorted, so the first hit is least
        if (permutation_order(a) != 2) continue;
        if (fixed_cells(g, a).total() == 2 * t.g + 2) return a;
    }
    return std::nullopt;
}

}  // namespace fatmod
