#pragma once

// Exhaustive censuses of fatgraphs.
//
// Every connected fatgraph of type (g, n) collapses, along a spanning tree,
// to a one-vertex graph with 2g+n-1 loops; conversely each graph with V
// vertices arises from one with V-1 vertices by expanding a single vertex
// into two joined by a new edge. The census is therefore built level by
// level: all one-vertex graphs (every pairing of the 2(2g+n-1) half-edges
// around one vertex), then repeated one-edge expansions, deduplicating by
// canonical key at every level. Boundary labels, when requested, are put on
// at the end: each unlabeled class contributes the Aut-orbits of its n!
// labelings.

#include "fatmod/canonical.hpp"
#include "fatmod/errors.hpp"
#include "fatmod/fatgraph.hpp"
#include "fatmod/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace fatmod {

struct CensusEntry {
    CanonicalKey key;
    Fatgraph graph;  // canonical representative
    int aut_order = 1;
};

// A set of isomorphism classes together with a descriptor of what was
// enumerated. Entries are sorted by key.
struct OrbifoldCensus {
    std::string descriptor;
    std::vector<CensusEntry> entries;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
};

inline Rational orbifold_sum(const OrbifoldCensus& c,
                             const std::function<Rational(const CensusEntry&)>& weight) {
    Rational total = 0;
    for (const auto& e : c.entries) total += weight(e) / e.aut_order;
    return total;
}

inline Rational orbifold_sum(const OrbifoldCensus& c) {
    return orbifold_sum(c, [](const CensusEntry&) { return Rational(1); });
}

inline CensusEntry make_entry(const Fatgraph& g) {
    CanonicalKey key = canonical_form(g);
    Fatgraph rep = canonical_representative(g);
    const int aut = automorphism_order(rep);
    return CensusEntry{std::move(key), std::move(rep), aut};
}

inline void sort_entries(OrbifoldCensus& c) {
    std::sort(c.entries.begin(), c.entries.end(),
              [](const CensusEntry& a, const CensusEntry& b) { return a.key < b.key; });
}

enum class Valence { trivalent, all, single };

struct ValenceFilter {
    Valence kind = Valence::trivalent;
    int k = 3;  // for Valence::single: one k-valent vertex, all others trivalent

    static ValenceFilter trivalent() { return {Valence::trivalent, 3}; }
    static ValenceFilter all() { return {Valence::all, 3}; }
    static ValenceFilter single(int k) { return {Valence::single, k}; }

    bool accepts(const Fatgraph& g) const {
        int big = 0, big_valence = 0;
        for (int v = 0; v < g.num_vertices(); ++v) {
            if (g.valence(v) != 3) {
                ++big;
                big_valence = g.valence(v);
            }
        }
        switch (kind) {
            case Valence::trivalent: return big == 0;
            case Valence::all: return true;
            case Valence::single: return k == 3 ? big == 0 : (big == 1 && big_valence == k);
        }
        return false;
    }

    std::string name() const {
        switch (kind) {
            case Valence::trivalent: return "trivalent";
            case Valence::all: return "all";
            case Valence::single: return "single-" + std::to_string(k);
        }
        return "?";
    }
};

struct EnumerationLimits {
    int max_edges = 15;                   // full fatgraph censuses; 15 edges = trivalent (3,1)
    int max_leaves = 13;                  // tree censuses
    int max_hyperelliptic_genus = 4;      // assembled hyperelliptic paths
    std::size_t max_classes = 2'000'000;  // per level
};

inline std::string fatgraph_descriptor(int g, int n, ValenceFilter f, bool labeled) {
    return "fatgraphs g=" + std::to_string(g) + " n=" + std::to_string(n) + " valence=" + f.name() +
           (labeled ? " boundaries=labeled" : " boundaries=unlabeled");
}

// Split vertex v into two vertices joined by a new edge, in every way that
// leaves both of valence >= 3.
inline std::vector<Fatgraph> one_edge_expansions(const Fatgraph& g, int v) {
    std::vector<Fatgraph> out;
    const auto& rot = g.vertex(v);
    const int k = static_cast<int>(rot.size());
    if (k < 4 || g.kind(v) != VertexKind::ordinary) return out;
    const int size = g.num_half_edges();
    // the arc rot[i..j) not containing position 0 goes to the new vertex
    for (int i = 1; i < k; ++i) {
        for (int j = i + 2; j <= k && k - (j - i) >= 2; ++j) {
            Permutation sigma(g.sigma_perm()), alpha(g.alpha_perm());
            sigma.resize(size + 2);
            alpha.resize(size + 2);
            const HalfEdge d = size, d2 = size + 1;
            alpha[d] = d2;
            alpha[d2] = d;
            std::vector<HalfEdge> arc(rot.begin() + i, rot.begin() + j);
            arc.push_back(d);
            std::vector<HalfEdge> rest(rot.begin() + j, rot.end());
            rest.insert(rest.end(), rot.begin(), rot.begin() + i);
            rest.push_back(d2);
            for (const auto* ring : {&arc, &rest}) {
                for (std::size_t t = 0; t < ring->size(); ++t) sigma[(*ring)[t]] = (*ring)[(t + 1) % ring->size()];
            }
            std::vector<VertexKind> kinds;
            for (const auto& c : cycles_of(sigma)) {
                const HalfEdge h = c.front();
                kinds.push_back(h < size && g.vertex_of(h) != v ? g.kind(g.vertex_of(h)) : VertexKind::ordinary);
            }
            out.emplace_back(std::move(sigma), std::move(alpha), std::move(kinds));
        }
    }
    return out;
}

namespace detail {

// All perfect matchings of {0, ..., 2m-1}, as alpha permutations.
inline void for_each_pairing(int size, const std::function<void(const Permutation&)>& visit) {
    Permutation alpha(size, -1);
    std::function<void()> rec = [&] {
        int first = 0;
        while (first < size && alpha[first] != -1) ++first;
        if (first == size) {
            visit(alpha);
            return;
        }
        for (int other = first + 1; other < size; ++other) {
            if (alpha[other] != -1) continue;
            alpha[first] = other;
            alpha[other] = first;
            rec();
            alpha[first] = alpha[other] = -1;
        }
    };
    rec();
}

// Unlabeled classes, grouped by vertex count (index V-1).
inline std::vector<std::vector<CensusEntry>> unlabeled_levels(int g, int n, const EnumerationLimits& limits) {
    if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) {
        throw WrongType("no fatgraphs of type (" + std::to_string(g) + "," + std::to_string(n) + ")");
    }
    const int max_e = 6 * g - 6 + 3 * n;
    if (max_e > limits.max_edges) {
        throw ResourceLimit("type (" + std::to_string(g) + "," + std::to_string(n) + ") needs " +
                            std::to_string(max_e) + " edges, cap is " + std::to_string(limits.max_edges));
    }
    const int loops = 2 * g + n - 1;
    const int max_v = 2 * (2 * g - 2 + n);

    std::vector<std::vector<CensusEntry>> levels(max_v);
    std::map<CanonicalKey, Fatgraph> seen;
    Permutation sigma(2 * loops);
    for (int i = 0; i < 2 * loops; ++i) sigma[i] = (i + 1) % (2 * loops);
    for_each_pairing(2 * loops, [&](const Permutation& alpha) {
        Fatgraph one(sigma, alpha);
        if (one.num_boundaries() != n) return;
        auto key = canonical_form(one);
        if (!seen.count(key)) seen.emplace(std::move(key), std::move(one));
    });
    auto flush = [&](int level) {
        if (seen.size() > limits.max_classes) throw ResourceLimit("class count exceeds cap");
        for (auto& [key, graph] : seen) {
            Fatgraph rep = canonical_representative(graph);
            const int aut = automorphism_order(rep);
            levels[level].push_back(CensusEntry{key, std::move(rep), aut});
        }
        seen.clear();
    };
    flush(0);
    for (int level = 1; level < max_v; ++level) {
        for (const auto& entry : levels[level - 1]) {
            for (int v = 0; v < entry.graph.num_vertices(); ++v) {
                for (auto& x : one_edge_expansions(entry.graph, v)) {
                    auto key = canonical_form(x);
                    if (!seen.count(key)) seen.emplace(std::move(key), std::move(x));
                }
            }
        }
        flush(level);
    }
    return levels;
}

inline OrbifoldCensus census_from_levels(const std::vector<std::vector<CensusEntry>>& levels, int g, int n,
                                         ValenceFilter filter, bool labeled) {
    OrbifoldCensus out;
    out.descriptor = fatgraph_descriptor(g, n, filter, labeled);
    for (const auto& level : levels) {
        for (const auto& entry : level) {
            if (!filter.accepts(entry.graph)) continue;
            if (!labeled) {
                out.entries.push_back(entry);
                continue;
            }
            std::vector<int> labels(n);
            std::iota(labels.begin(), labels.end(), 0);
            std::map<CanonicalKey, Fatgraph> classes;
            do {
                Fatgraph lg = entry.graph.with_boundary_labels(labels);
                auto key = canonical_form(lg);
                if (!classes.count(key)) classes.emplace(std::move(key), std::move(lg));
            } while (std::next_permutation(labels.begin(), labels.end()));
            for (auto& [key, lg] : classes) out.entries.push_back(make_entry(lg));
        }
    }
    sort_entries(out);
    return out;
}

}  // namespace detail

// Census of fatgraphs of type (g, n) passing `filter`. For n > 1 the
// classes are boundary-labeled unless `label_boundaries` is false.
inline OrbifoldCensus enumerate_fatgraphs(int g, int n, ValenceFilter filter, const EnumerationLimits& limits = {},
                                          bool label_boundaries = true) {
    return detail::census_from_levels(detail::unlabeled_levels(g, n, limits), g, n, filter,
                                      label_boundaries && n > 1);
}

// Bernoulli numbers B_0..B_m (B_1 = -1/2) from the recurrence
// sum_{k=0}^{m} binom(m+1, k) B_k = 0.
inline std::vector<Rational> bernoulli_numbers(int m) {
    std::vector<Rational> b(m + 1);
    b[0] = 1;
    for (int j = 1; j <= m; ++j) {
        Rational s = 0;
        for (int k = 0; k < j; ++k) s += Rational(binomial(j + 1, k)) * b[k];
        b[j] = -s / (j + 1);
    }
    return b;
}

// zeta(1 - 2g) = -B_{2g} / (2g), the orbifold Euler characteristic of M_{g,1}.
inline Rational zeta_one_minus_2g(int g) {
    return -bernoulli_numbers(2 * g)[2 * g] / (2 * g);
}

// Alternating orbifold sum over all cells of the ribbon-graph
// decomposition of M_{g,1}: a cell of graph G has dimension E(G) - 1.
inline Rational euler_characteristic(const OrbifoldCensus& all_valences) {
    return orbifold_sum(all_valences, [](const CensusEntry& e) {
        return Rational((e.graph.num_edges() - 1) % 2 == 0 ? 1 : -1);
    });
}

inline Rational euler_characteristic(int g, const EnumerationLimits& limits = {}) {
    if (g < 1) throw WrongType("euler characteristic needs g >= 1");
    return euler_characteristic(enumerate_fatgraphs(g, 1, ValenceFilter::all(), limits));
}

}  // namespace fatmod
