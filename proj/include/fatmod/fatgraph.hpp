#pragma once

// Fatgraphs as combinatorial maps.
//
// A fatgraph on half-edges {0, ..., 2E-1} is a pair of permutations:
//   sigma  - cycles are the vertices, cycle order is the counterclockwise
//            order of half-edges around the vertex;
//   alpha  - fixed-point-free involution pairing the two ends of an edge.
// Boundary cycles are the orbits of the face permutation phi = sigma o alpha,
// i.e. phi(h) = sigma(alpha(h)): cross the edge, then turn to the next
// half-edge counterclockwise. This convention is used everywhere, including
// the slot order of the Kontsevich form.
//
// Vertices, edges and boundary cycles are numbered by their smallest
// half-edge. Vertex rotations and boundary cycles are stored starting at that
// smallest half-edge.

#include "fatmod/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fatmod {

using HalfEdge = int;
using Permutation = std::vector<int>;

// Cycles of a permutation, each starting at its smallest element, ordered by
// that element.
inline std::vector<std::vector<int>> cycles_of(const Permutation& p) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t h = 0; h < p.size(); ++h) {
        if (seen[h]) continue;
        std::vector<int> cycle;
        int x = static_cast<int>(h);
        do {
            seen[x] = 1;
            cycle.push_back(x);
            x = p[x];
        } while (x != static_cast<int>(h));
        out.push_back(std::move(cycle));
    }
    return out;
}

enum class VertexKind : std::uint8_t { ordinary = 0, delta = 1, node = 2 };

struct GraphType {
    int g = 0;
    int n = 0;
    auto operator<=>(const GraphType&) const = default;
};

struct BoundaryCycles {
    std::vector<std::vector<HalfEdge>> cycles;  // phi-orbits of half-edges
    std::vector<std::vector<int>> edge_sequences;  // same cycles as edge ids
    std::vector<int> labels;  // label of each cycle; 0..n-1 when unlabeled
    int n = 0;
};

class Fatgraph {
public:
    Fatgraph() = default;

    // kinds: one per vertex in vertex-id order (empty = all ordinary).
    // boundary_labels: one per boundary cycle in cycle-id order, a
    // permutation of 0..n-1 (empty = boundaries not labeled).
    Fatgraph(Permutation sigma, Permutation alpha, std::vector<VertexKind> kinds = {},
             std::vector<int> boundary_labels = {})
        : sigma_(std::move(sigma)), alpha_(std::move(alpha)) {
        validate_permutations();
        build_cells();
        if (kinds.empty()) kinds.assign(vertices_.size(), VertexKind::ordinary);
        if (kinds.size() != vertices_.size()) {
            throw MalformedGraph("expected " + std::to_string(vertices_.size()) + " vertex kinds");
        }
        kinds_ = std::move(kinds);
        set_boundary_labels(std::move(boundary_labels));
        validate_valences();
    }

    // Build from explicit rotations and edge pairs. Every half-edge in
    // 0..2E-1 must appear in exactly one rotation and one edge. Kinds follow
    // the order of `rotations`, not vertex-id order.
    static Fatgraph from_rotations(const std::vector<std::vector<HalfEdge>>& rotations,
                                   const std::vector<std::pair<HalfEdge, HalfEdge>>& edges,
                                   const std::vector<VertexKind>& kinds = {}) {
        const int size = static_cast<int>(2 * edges.size());
        Permutation sigma(size, -1), alpha(size, -1);
        auto check = [size](HalfEdge h) {
            if (h < 0 || h >= size) throw MalformedGraph("half-edge out of range: " + std::to_string(h));
        };
        for (const auto& rot : rotations) {
            if (rot.empty()) throw MalformedGraph("empty rotation");
            for (std::size_t i = 0; i < rot.size(); ++i) {
                check(rot[i]);
                if (sigma[rot[i]] != -1) throw MalformedGraph("half-edge in two rotations");
                sigma[rot[i]] = rot[(i + 1) % rot.size()];
            }
        }
        for (auto [a, b] : edges) {
            check(a);
            check(b);
            if (alpha[a] != -1 || alpha[b] != -1) throw MalformedGraph("half-edge in two edges");
            alpha[a] = b;
            alpha[b] = a;
        }
        std::vector<VertexKind> by_id;
        if (!kinds.empty()) {
            if (kinds.size() != rotations.size()) throw MalformedGraph("kinds/rotations size mismatch");
            std::vector<std::pair<HalfEdge, VertexKind>> keyed;
            for (std::size_t i = 0; i < rotations.size(); ++i) {
                keyed.emplace_back(*std::min_element(rotations[i].begin(), rotations[i].end()), kinds[i]);
            }
            std::sort(keyed.begin(), keyed.end());
            for (auto& [h, k] : keyed) by_id.push_back(k);
        }
        return Fatgraph(std::move(sigma), std::move(alpha), std::move(by_id));
    }

    int num_half_edges() const { return static_cast<int>(sigma_.size()); }
    int num_edges() const { return static_cast<int>(sigma_.size() / 2); }
    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_boundaries() const { return static_cast<int>(faces_.size()); }

    HalfEdge sigma(HalfEdge h) const { return sigma_[h]; }
    HalfEdge sigma_inv(HalfEdge h) const { return sigma_inv_[h]; }
    HalfEdge alpha(HalfEdge h) const { return alpha_[h]; }
    HalfEdge phi(HalfEdge h) const { return sigma_[alpha_[h]]; }

    const Permutation& sigma_perm() const { return sigma_; }
    const Permutation& alpha_perm() const { return alpha_; }

    int vertex_of(HalfEdge h) const { return vertex_of_[h]; }
    int edge_of(HalfEdge h) const { return edge_of_[h]; }
    int boundary_of(HalfEdge h) const { return face_of_[h]; }

    std::span<const std::vector<HalfEdge>> vertices() const { return vertices_; }
    const std::vector<HalfEdge>& vertex(int v) const { return vertices_[v]; }
    int valence(int v) const { return static_cast<int>(vertices_[v].size()); }
    VertexKind kind(int v) const { return kinds_[v]; }
    const std::vector<VertexKind>& kinds() const { return kinds_; }

    // (smaller half-edge, larger half-edge)
    std::pair<HalfEdge, HalfEdge> edge(int e) const { return {edge_min_[e], alpha_[edge_min_[e]]}; }
    bool is_loop(int e) const { return vertex_of_[edge_min_[e]] == vertex_of_[alpha_[edge_min_[e]]]; }

    std::span<const std::vector<HalfEdge>> faces() const { return faces_; }
    bool has_boundary_labels() const { return !boundary_labels_.empty(); }
    // Label of boundary cycle b; the cycle id itself when unlabeled.
    int boundary_label(int b) const { return boundary_labels_.empty() ? b : boundary_labels_[b]; }
    const std::vector<int>& boundary_labels() const { return boundary_labels_; }

    Fatgraph with_kinds(std::vector<VertexKind> kinds) const {
        return Fatgraph(sigma_, alpha_, std::move(kinds), boundary_labels_);
    }
    Fatgraph with_boundary_labels(std::vector<int> labels) const {
        return Fatgraph(sigma_, alpha_, kinds_, std::move(labels));
    }

    bool operator==(const Fatgraph& o) const {
        return sigma_ == o.sigma_ && alpha_ == o.alpha_ && kinds_ == o.kinds_ &&
               boundary_labels_ == o.boundary_labels_;
    }

private:
    void validate_permutations() {
        const std::size_t size = sigma_.size();
        if (size == 0 || size % 2 != 0) throw MalformedGraph("half-edge count must be positive and even");
        if (alpha_.size() != size) throw MalformedGraph("sigma and alpha differ in size");
        std::vector<char> seen(size, 0);
        for (HalfEdge h : sigma_) {
            if (h < 0 || static_cast<std::size_t>(h) >= size || seen[h]) throw MalformedGraph("sigma is not a permutation");
            seen[h] = 1;
        }
        for (std::size_t h = 0; h < size; ++h) {
            const HalfEdge a = alpha_[h];
            if (a < 0 || static_cast<std::size_t>(a) >= size) throw MalformedGraph("alpha out of range");
            if (static_cast<std::size_t>(a) == h) throw MalformedGraph("alpha has a fixed point");
            if (static_cast<std::size_t>(alpha_[a]) != h) throw MalformedGraph("alpha is not an involution");
        }
        // connectivity under <sigma, alpha>
        std::fill(seen.begin(), seen.end(), 0);
        std::vector<HalfEdge> stack{0};
        seen[0] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const HalfEdge x = stack.back();
            stack.pop_back();
            for (HalfEdge y : {sigma_[x], alpha_[x]}) {
                if (!seen[y]) {
                    seen[y] = 1;
                    ++reached;
                    stack.push_back(y);
                }
            }
        }
        if (reached != size) throw MalformedGraph("graph is not connected");
    }

    static void orbits(const Permutation& p, std::vector<std::vector<HalfEdge>>& out, std::vector<int>& owner) {
        owner.assign(p.size(), -1);
        out.clear();
        for (std::size_t h = 0; h < p.size(); ++h) {
            if (owner[h] != -1) continue;
            std::vector<HalfEdge> cycle;
            HalfEdge x = static_cast<HalfEdge>(h);
            do {
                owner[x] = static_cast<int>(out.size());
                cycle.push_back(x);
                x = p[x];
            } while (x != static_cast<HalfEdge>(h));
            out.push_back(std::move(cycle));
        }
    }

    void build_cells() {
        const std::size_t size = sigma_.size();
        sigma_inv_.assign(size, 0);
        for (std::size_t h = 0; h < size; ++h) sigma_inv_[sigma_[h]] = static_cast<HalfEdge>(h);
        orbits(sigma_, vertices_, vertex_of_);
        Permutation phi(size);
        for (std::size_t h = 0; h < size; ++h) phi[h] = sigma_[alpha_[h]];
        orbits(phi, faces_, face_of_);
        edge_of_.assign(size, -1);
        edge_min_.clear();
        for (std::size_t h = 0; h < size; ++h) {
            if (edge_of_[h] != -1) continue;
            edge_of_[h] = edge_of_[alpha_[h]] = static_cast<int>(edge_min_.size());
            edge_min_.push_back(static_cast<HalfEdge>(h));
        }
    }

    void set_boundary_labels(std::vector<int> labels) {
        if (!labels.empty()) {
            if (labels.size() != faces_.size()) throw MalformedGraph("one boundary label per boundary cycle expected");
            std::vector<int> sorted = labels;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t i = 0; i < sorted.size(); ++i) {
                if (sorted[i] != static_cast<int>(i)) throw MalformedGraph("boundary labels must be a permutation of 0..n-1");
            }
        }
        boundary_labels_ = std::move(labels);
    }

    void validate_valences() const {
        for (std::size_t v = 0; v < vertices_.size(); ++v) {
            if (kinds_[v] == VertexKind::ordinary && vertices_[v].size() < 3) {
                throw MalformedGraph("ordinary vertex of valence " + std::to_string(vertices_[v].size()));
            }
        }
    }

    Permutation sigma_, alpha_, sigma_inv_;
    std::vector<std::vector<HalfEdge>> vertices_, faces_;
    std::vector<int> vertex_of_, face_of_, edge_of_;
    std::vector<HalfEdge> edge_min_;
    std::vector<VertexKind> kinds_;
    std::vector<int> boundary_labels_;
};

inline BoundaryCycles boundary_cycles(const Fatgraph& g) {
    BoundaryCycles out;
    out.n = g.num_boundaries();
    for (int b = 0; b < out.n; ++b) {
        const auto& cycle = g.faces()[b];
        out.cycles.push_back(cycle);
        std::vector<int> edges;
        edges.reserve(cycle.size());
        for (HalfEdge h : cycle) edges.push_back(g.edge_of(h));
        out.edge_sequences.push_back(std::move(edges));
        out.labels.push_back(g.boundary_label(b));
    }
    return out;
}

// Euler relation V - E + n = 2 - 2g.
inline GraphType type_of(const Fatgraph& g) {
    const int two_minus_2g = g.num_vertices() - g.num_edges() + g.num_boundaries();
    const int two_g = 2 - two_minus_2g;
    if (two_g % 2 != 0 || two_g < 0) {
        throw MalformedGraph("Euler characteristic " + std::to_string(two_minus_2g) + " gives no genus");
    }
    return {two_g / 2, g.num_boundaries()};
}

// Contract the non-loop edge e, merging its endpoints. Surviving half-edges
// keep their relative order (half-edge h maps to h minus the number of
// removed half-edges below h). The merged vertex is delta-labeled if either
// endpoint was; boundary labels are carried over.
inline Fatgraph collapse_edge(const Fatgraph& g, int e) {
    if (e < 0 || e >= g.num_edges()) throw MalformedGraph("no edge " + std::to_string(e));
    if (g.is_loop(e)) throw LoopCollapse("edge " + std::to_string(e) + " is a loop");
    if (g.num_edges() == 1) throw MalformedGraph("collapsing the only edge leaves no half-edges");
    const auto [h, k] = g.edge(e);
    const int size = g.num_half_edges();

    std::vector<int> remap(size, -1);
    for (int x = 0, next = 0; x < size; ++x) {
        if (x != h && x != k) remap[x] = next++;
    }
    Permutation sigma(size - 2), alpha(size - 2);
    auto succ = [&](HalfEdge x) {
        // successor of x in the merged rotation, skipping h and k
        HalfEdge y = g.sigma(x);
        while (y == h || y == k) y = (y == h) ? g.sigma(k) : g.sigma(h);
        return y;
    };
    for (int x = 0; x < size; ++x) {
        if (remap[x] < 0) continue;
        sigma[remap[x]] = remap[succ(x)];
        alpha[remap[x]] = remap[g.alpha(x)];
    }

    // kinds: vertices of the new graph are numbered by smallest half-edge,
    // and each one is either an untouched old vertex or the merged one.
    const int vh = g.vertex_of(h), vk = g.vertex_of(k);
    const VertexKind merged =
        (g.kind(vh) == VertexKind::delta || g.kind(vk) == VertexKind::delta) ? VertexKind::delta
        : (g.kind(vh) == VertexKind::node || g.kind(vk) == VertexKind::node) ? VertexKind::node
                                                                                : VertexKind::ordinary;
    std::vector<std::pair<int, VertexKind>> keyed;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (v == vh || v == vk) continue;
        keyed.emplace_back(remap[g.vertex(v).front()], g.kind(v));
    }
    int merged_min = size;
    for (int v : {vh, vk}) {
        for (HalfEdge x : g.vertex(v)) {
            if (remap[x] >= 0) merged_min = std::min(merged_min, remap[x]);
        }
    }
    if (merged_min < size) keyed.emplace_back(merged_min, merged);
    std::sort(keyed.begin(), keyed.end());
    std::vector<VertexKind> kinds;
    for (auto& [m, kind] : keyed) kinds.push_back(kind);

    std::vector<int> labels;
    if (g.has_boundary_labels()) {
        // faces survive with the same half-edges minus {h, k}; map each new
        // face (by its smallest surviving half-edge) to the old label.
        std::vector<std::pair<int, int>> keyed_labels;
        for (int b = 0; b < g.num_boundaries(); ++b) {
            int best = size;
            for (HalfEdge x : g.faces()[b]) {
                if (remap[x] >= 0) best = std::min(best, remap[x]);
            }
            if (best < size) keyed_labels.emplace_back(best, g.boundary_label(b));
        }
        std::sort(keyed_labels.begin(), keyed_labels.end());
        for (auto& [m, label] : keyed_labels) labels.push_back(label);
    }
    return Fatgraph(std::move(sigma), std::move(alpha), std::move(kinds), std::move(labels));
}

// Canonical text form: `g n V E | rotations | edges | flags`.
//   rotations: vertices in id order separated by ',', each as its half-edges
//              starting at the smallest, space-separated;
//   edges:     `a:b` pairs in edge-id order, space-separated;
//   flags:     one character per vertex (o ordinary, d delta, x node), then,
//              for boundary-labeled graphs, '/' and the labels of the boundary
//              cycles in cycle-id order, space-separated.
inline std::string serialize(const Fatgraph& g) {
    const GraphType t = type_of(g);
    std::ostringstream os;
    os << t.g << ' ' << t.n << ' ' << g.num_vertices() << ' ' << g.num_edges() << " | ";
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (v) os << ',';
        const auto& rot = g.vertex(v);
        for (std::size_t i = 0; i < rot.size(); ++i) os << (i ? " " : "") << rot[i];
    }
    os << " | ";
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [a, b] = g.edge(e);
        os << (e ? " " : "") << a << ':' << b;
    }
    os << " | ";
    for (int v = 0; v < g.num_vertices(); ++v) {
        os << (g.kind(v) == VertexKind::ordinary ? 'o' : g.kind(v) == VertexKind::delta ? 'd' : 'x');
    }
    if (g.has_boundary_labels()) {
        os << '/';
        for (int b = 0; b < g.num_boundaries(); ++b) os << (b ? " " : "") << g.boundary_label(b);
    }
    return os.str();
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, std::string_view sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + sep.size();
    }
    return out;
}

inline int parse_int(std::string_view s) {
    if (s.empty() || s.size() > 9) throw MalformedGraph("bad integer '" + std::string(s) + "'");
    int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw MalformedGraph("bad integer '" + std::string(s) + "'");
        v = v * 10 + (c - '0');
    }
    return v;
}

}  // namespace detail

// Inverse of serialize(). Rejects any line that is not exactly the canonical
// serialization of the graph it describes.
inline Fatgraph deserialize(std::string_view line) {
    using detail::parse_int;
    using detail::split;
    const auto fields = split(line, " | ");
    if (fields.size() != 4) throw MalformedGraph("expected 4 fields in '" + std::string(line) + "'");
    const auto header = split(fields[0], " ");
    if (header.size() != 4) throw MalformedGraph("bad header");
    const int E = parse_int(header[3]);

    std::vector<std::vector<HalfEdge>> rotations;
    for (auto part : split(fields[1], ",")) {
        std::vector<HalfEdge> rot;
        for (auto tok : split(part, " ")) rot.push_back(parse_int(tok));
        rotations.push_back(std::move(rot));
    }
    std::vector<std::pair<HalfEdge, HalfEdge>> edges;
    for (auto tok : split(fields[2], " ")) {
        const auto ab = split(tok, ":");
        if (ab.size() != 2) throw MalformedGraph("bad edge '" + std::string(tok) + "'");
        edges.emplace_back(parse_int(ab[0]), parse_int(ab[1]));
    }
    if (static_cast<int>(edges.size()) != E) throw MalformedGraph("edge count mismatch");

    const auto flag_parts = split(fields[3], "/");
    if (flag_parts.size() > 2) throw MalformedGraph("bad flags");
    std::vector<VertexKind> kinds;
    for (char c : flag_parts[0]) {
        if (c == 'o') kinds.push_back(VertexKind::ordinary);
        else if (c == 'd') kinds.push_back(VertexKind::delta);
        else if (c == 'x') kinds.push_back(VertexKind::node);
        else throw MalformedGraph(std::string("bad vertex flag '") + c + "'");
    }
    Fatgraph g = Fatgraph::from_rotations(rotations, edges, kinds);
    if (flag_parts.size() == 2) {
        std::vector<int> labels;
        for (auto tok : split(flag_parts[1], " ")) labels.push_back(parse_int(tok));
        g = g.with_boundary_labels(std::move(labels));
    }
    if (serialize(g) != line) throw MalformedGraph("not a canonical line: '" + std::string(line) + "'");
    return g;
}

}  // namespace fatmod
