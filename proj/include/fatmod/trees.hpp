#pragma once

// Planar trees: fatgraphs of type (0,1). Leaves are delta-labeled univalent
// vertices; an internal vertex may also be delta-labeled ("marked").
//
// Rooted trees are generated by branch decomposition: the root leaf hangs
// off a subtree; a subtree is either a leaf or an internal vertex whose
// remaining valence-1 slots carry subtrees, in counterclockwise order. The
// internal vertices are drawn from a fixed multiset (the profile), which is
// split among the branches in every possible way. Unrooted trees are the
// rooted ones deduplicated by canonical key.

#include "fatmod/canonical.hpp"
#include "fatmod/census.hpp"
#include "fatmod/errors.hpp"
#include "fatmod/fatgraph.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fatmod {

struct VertexSpec {
    int valence = 3;
    bool marked = false;  // delta-labeled internal vertex
    auto operator<=>(const VertexSpec&) const = default;
};

// Multiset of internal vertex types.
struct TreeProfile {
    std::vector<std::pair<VertexSpec, int>> internal;  // sorted by spec, counts > 0
    std::string name = "custom";

    static TreeProfile from_counts(std::map<VertexSpec, int> counts, std::string name = "custom") {
        TreeProfile p;
        for (auto& [spec, c] : counts) {
            if (spec.valence < 2) throw MalformedGraph("internal vertices need valence >= 2");
            if (spec.valence < 3 && !spec.marked) throw MalformedGraph("ordinary internal vertices need valence >= 3");
            if (c > 0) p.internal.emplace_back(spec, c);
        }
        p.name = std::move(name);
        return p;
    }

    // All internal vertices trivalent.
    static TreeProfile trivalent(int leaves) {
        if (leaves < 2) throw BadLeafCount("a tree needs at least 2 leaves, got " + std::to_string(leaves));
        return from_counts({{VertexSpec{3, false}, leaves - 2}}, "trivalent");
    }
    // One 5-valent vertex, the rest trivalent.
    static TreeProfile one_five_valent(int leaves) {
        if (leaves < 5) throw BadLeafCount("a 5-valent vertex needs at least 5 leaves, got " + std::to_string(leaves));
        return from_counts({{VertexSpec{3, false}, leaves - 5}, {VertexSpec{5, false}, 1}}, "five");
    }
    // Trivalent with one marked (delta-labeled) internal vertex.
    static TreeProfile marked_trivalent(int leaves) {
        if (leaves < 3) throw BadLeafCount("a marked trivalent vertex needs at least 3 leaves, got " + std::to_string(leaves));
        return from_counts({{VertexSpec{3, false}, leaves - 3}, {VertexSpec{3, true}, 1}}, "marked");
    }

    int leaves() const {
        int l = 2;
        for (auto& [spec, c] : internal) l += c * (spec.valence - 2);
        return l;
    }
    int internal_vertices() const {
        int m = 0;
        for (auto& [spec, c] : internal) m += c;
        return m;
    }
    int edges() const { return leaves() + internal_vertices() - 1; }

    std::string describe() const {
        std::string s = name + "[";
        bool first = true;
        for (auto& [spec, c] : internal) {
            if (!first) s += ",";
            first = false;
            s += std::to_string(c) + "x" + std::to_string(spec.valence) + (spec.marked ? "m" : "");
        }
        return s + "]";
    }
};

// Profiles whose internal vertices all have odd valence, for trees with at
// most max_edges edges (every such tree has an odd number of edges).
inline std::vector<TreeProfile> odd_valence_profiles(int max_edges) {
    std::vector<TreeProfile> out;
    // a tree's edge count is 1 + sum (k_i - 1); choose multisets of k >= 3 odd
    std::vector<std::pair<int, int>> current;  // (valence, count)
    std::function<void(int, int)> rec = [&](int min_k, int budget) {
        std::map<VertexSpec, int> counts;
        for (auto& [k, c] : current) counts[VertexSpec{k, false}] = c;
        out.push_back(TreeProfile::from_counts(counts, "odd"));
        for (int k = min_k; k - 1 <= budget; k += 2) {
            if (!current.empty() && current.back().first == k) {
                ++current.back().second;
                rec(k, budget - (k - 1));
                --current.back().second;
            } else {
                current.emplace_back(k, 1);
                rec(k, budget - (k - 1));
                current.pop_back();
            }
        }
    };
    rec(3, max_edges - 1);
    return out;
}

struct PlanarTree {
    Fatgraph graph;
    int leaves = 0;
    std::optional<HalfEdge> root;  // half-edge at the root leaf, when rooted
};

// Check the tree invariants and wrap.
inline PlanarTree make_planar_tree(Fatgraph g, std::optional<HalfEdge> root = std::nullopt) {
    if (g.num_edges() != g.num_vertices() - 1 || g.num_boundaries() != 1) {
        throw WrongType("not a planar tree: " + serialize(g));
    }
    int leaves = 0;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (g.valence(v) == 1) {
            if (g.kind(v) != VertexKind::delta) throw MalformedGraph("tree leaves must be delta-labeled");
            ++leaves;
        }
    }
    if (root && (*root < 0 || *root >= g.num_half_edges() || g.valence(g.vertex_of(*root)) != 1)) {
        throw MalformedGraph("root must be a leaf half-edge");
    }
    return PlanarTree{std::move(g), leaves, root};
}

// A single internal vertex with `leaves` leaves; marked makes the center
// delta-labeled.
inline PlanarTree star_tree(int leaves, bool marked = false) {
    if (leaves < 2) throw BadLeafCount("a star needs at least 2 leaves");
    std::vector<std::vector<HalfEdge>> rot(1);
    std::vector<std::pair<HalfEdge, HalfEdge>> edges;
    std::vector<VertexKind> kinds{marked || leaves < 3 ? VertexKind::delta : VertexKind::ordinary};
    for (int i = 0; i < leaves; ++i) {
        rot[0].push_back(i);
        rot.push_back({leaves + i});
        edges.emplace_back(i, leaves + i);
        kinds.push_back(VertexKind::delta);
    }
    return make_planar_tree(Fatgraph::from_rotations(rot, edges, kinds));
}

enum class Rooting { rooted, unrooted };

namespace detail {

// Preorder token sequence of a subtree: -1 = leaf, s >= 0 = internal vertex
// of profile spec s followed by its valence-1 child subtrees.
using TreeCode = std::vector<int>;

class RootedTreeGenerator {
public:
    explicit RootedTreeGenerator(const TreeProfile& p) : profile_(p) {}

    std::vector<TreeCode> subtrees(const std::vector<int>& counts) {
        if (auto it = memo_.find(counts); it != memo_.end()) return it->second;
        std::vector<TreeCode> out;
        bool empty = true;
        for (int c : counts) empty = empty && c == 0;
        if (empty) {
            out.push_back({-1});
        } else {
            for (std::size_t s = 0; s < counts.size(); ++s) {
                if (counts[s] == 0) continue;
                std::vector<int> rest = counts;
                --rest[s];
                const int slots = profile_.internal[s].first.valence - 1;
                for (const auto& tail : distribute(rest, slots)) {
                    TreeCode code{static_cast<int>(s)};
                    code.insert(code.end(), tail.begin(), tail.end());
                    out.push_back(std::move(code));
                }
            }
        }
        memo_.emplace(counts, out);
        return out;
    }

private:
    // Concatenations of `slots` subtrees using exactly `counts` internal vertices.
    std::vector<TreeCode> distribute(const std::vector<int>& counts, int slots) {
        if (slots == 1) return subtrees(counts);
        std::vector<TreeCode> out;
        std::vector<int> part(counts.size(), 0);
        std::function<void(std::size_t)> choose = [&](std::size_t i) {
            if (i == counts.size()) {
                std::vector<int> rest(counts.size());
                for (std::size_t j = 0; j < counts.size(); ++j) rest[j] = counts[j] - part[j];
                const auto heads = subtrees(part);
                const auto tails = distribute(rest, slots - 1);
                for (const auto& h : heads) {
                    for (const auto& t : tails) {
                        TreeCode code = h;
                        code.insert(code.end(), t.begin(), t.end());
                        out.push_back(std::move(code));
                    }
                }
                return;
            }
            for (int c = 0; c <= counts[i]; ++c) {
                part[i] = c;
                choose(i + 1);
            }
            part[i] = 0;
        };
        choose(0);
        return out;
    }

    const TreeProfile& profile_;
    std::map<std::vector<int>, std::vector<TreeCode>> memo_;
};

inline Fatgraph build_rooted_tree(const TreeProfile& profile, const TreeCode& code) {
    std::vector<std::vector<HalfEdge>> rotations{{0}};
    std::vector<VertexKind> kinds{VertexKind::delta};
    std::vector<std::pair<HalfEdge, HalfEdge>> edges;
    int next = 1;
    std::size_t pos = 0;
    std::function<void(HalfEdge)> attach = [&](HalfEdge parent) {
        const int token = code[pos++];
        const HalfEdge up = next++;
        edges.emplace_back(parent, up);
        const std::size_t me = rotations.size();
        rotations.push_back({up});
        if (token < 0) {
            kinds.push_back(VertexKind::delta);
            return;
        }
        const VertexSpec spec = profile.internal[token].first;
        kinds.push_back(spec.marked ? VertexKind::delta : VertexKind::ordinary);
        for (int c = 1; c < spec.valence; ++c) {
            const HalfEdge down = next++;
            rotations[me].push_back(down);
            attach(down);
        }
    };
    attach(0);
    return Fatgraph::from_rotations(rotations, edges, kinds);
}

}  // namespace detail

inline std::string tree_descriptor(const TreeProfile& profile, Rooting rooting) {
    return "trees leaves=" + std::to_string(profile.leaves()) + " profile=" + profile.describe() +
           (rooting == Rooting::rooted ? " rooted" : " unrooted");
}

// Rooted planar trees with the given profile, each rooted at half-edge 0
// (a leaf). Rooted planar trees have no automorphisms.
inline std::vector<PlanarTree> rooted_trees(const TreeProfile& profile, const EnumerationLimits& limits = {}) {
    if (profile.leaves() > limits.max_leaves) {
        throw ResourceLimit(std::to_string(profile.leaves()) + " leaves exceeds cap " +
                            std::to_string(limits.max_leaves));
    }
    detail::RootedTreeGenerator gen(profile);
    std::vector<int> counts;
    for (auto& [spec, c] : profile.internal) counts.push_back(c);
    std::vector<PlanarTree> out;
    for (const auto& code : gen.subtrees(counts)) {
        out.push_back(make_planar_tree(detail::build_rooted_tree(profile, code), HalfEdge{0}));
    }
    return out;
}

// Key of a rooted tree: the breadth-first code read from the root.
inline CanonicalKey rooted_key(const PlanarTree& t) {
    std::vector<int> code, label;
    std::vector<HalfEdge> order;
    detail::encode_from(t.graph, t.root.value_or(0), code, nullptr, label, order);
    return CanonicalKey{std::move(code)};
}

inline OrbifoldCensus enumerate_trees(const TreeProfile& profile, Rooting rooting,
                                      const EnumerationLimits& limits = {}) {
    OrbifoldCensus out;
    out.descriptor = tree_descriptor(profile, rooting);
    const auto rooted = rooted_trees(profile, limits);
    if (rooting == Rooting::rooted) {
        for (const auto& t : rooted) out.entries.push_back(CensusEntry{rooted_key(t), t.graph, 1});
    } else {
        std::map<CanonicalKey, const PlanarTree*> seen;
        for (const auto& t : rooted) seen.emplace(canonical_form(t.graph), &t);
        for (auto& [key, t] : seen) out.entries.push_back(make_entry(t->graph));
    }
    sort_entries(out);
    return out;
}

inline OrbifoldCensus enumerate_trees(int leaves, const TreeProfile& profile, Rooting rooting,
                                      const EnumerationLimits& limits = {}) {
    if (profile.leaves() != leaves) {
        throw BadLeafCount("profile " + profile.describe() + " has " + std::to_string(profile.leaves()) +
                           " leaves, not " + std::to_string(leaves));
    }
    return enumerate_trees(profile, rooting, limits);
}

}  // namespace fatmod
