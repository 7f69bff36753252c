#pragma once

// The integrals, each evaluated twice: once from its closed form and once
// assembled from censuses and cell volumes. A report matches only if the two
// (and every recorded cross-check) agree exactly.
//
// Assembly kinds:
//   enumeration   the assembled value is built from enumerated censuses
//   substitution  no census is touched; the assembled value composes the
//                 closed forms of the ingredients (counts, volumes, lower
//                 integrals). Used beyond the enumeration caps.

#include "fatmod/cache.hpp"
#include "fatmod/catalan.hpp"
#include "fatmod/census.hpp"
#include "fatmod/errors.hpp"
#include "fatmod/hyperelliptic.hpp"
#include "fatmod/kontsevich.hpp"
#include "fatmod/rational.hpp"
#include "fatmod/trees.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fatmod {

enum class Assembly { enumeration, substitution };

inline const char* assembly_name(Assembly a) { return a == Assembly::enumeration ? "enumeration" : "substitution"; }

struct CrossCheck {
    std::string name;
    Rational expected;
    Rational actual;
    bool ok() const { return expected == actual; }
};

struct IntegralReport {
    std::string name;
    std::string index_name = "g";  // "n" for the genus-0 family
    int index = 0;
    Rational value_closed;
    Rational value_assembled;
    bool match = false;
    Assembly assembly = Assembly::enumeration;
    std::vector<CrossCheck> cross_checks;
    std::vector<std::string> notes;  // which censuses and volumes fed the assembled value

    void finish() {
        match = value_closed == value_assembled;
        for (const auto& c : cross_checks) match = match && c.ok();
    }
};

// Constants taken from the geometry rather than computed here.
inline const Rational kKappaDuality = Rational(1, 12);       // kappa_1 = (1/12)([W_1] + [boundary])
inline const Rational kEllipticTail = Rational(1, 24);       // integral of psi over M_{1,1}
inline const Rational kGenusOneBoundaryPoint = Rational(1, 2);  // a point with automorphism group of order 2

// Censuses built on demand and memoized, optionally backed by a cache
// directory. `mutator`, when set, is applied to every census as it is first
// produced (fault injection for the mutation tests).
class CensusStore {
public:
    using Mutator = std::function<void(OrbifoldCensus&)>;

    explicit CensusStore(EnumerationLimits limits = {}, std::optional<std::filesystem::path> cache_dir = std::nullopt,
                         bool allow_build = true)
        : limits_(limits), cache_dir_(std::move(cache_dir)), allow_build_(allow_build) {}

    const EnumerationLimits& limits() const { return limits_; }
    Mutator mutator;

    const OrbifoldCensus& fatgraphs(int g, int n, ValenceFilter f) {
        const bool labeled = n > 1;
        const std::string desc = fatgraph_descriptor(g, n, f, labeled);
        if (auto it = plain_.find(desc); it != plain_.end()) return it->second;
        auto c = load_or_build<OrbifoldCensus>(
            desc, [&](const auto& file) { return load_census(file, desc); },
            [&] {
                // every filter shares the same level-by-level construction
                OrbifoldCensus out = enumerate_from_levels(g, n, f);
                return out;
            },
            [](const auto& file, const OrbifoldCensus& c) { save_census(file, c); });
        mutate(c);
        return plain_.emplace(desc, std::move(c)).first->second;
    }

    const OrbifoldCensus& trees(const TreeProfile& profile, Rooting rooting) {
        const std::string desc = tree_descriptor(profile, rooting);
        if (auto it = plain_.find(desc); it != plain_.end()) return it->second;
        auto c = load_or_build<OrbifoldCensus>(
            desc, [&](const auto& file) { return load_census(file, desc, rooting == Rooting::rooted); },
            [&] { return enumerate_trees(profile, rooting, limits_); },
            [](const auto& file, const OrbifoldCensus& c) { save_census(file, c); });
        mutate(c);
        return plain_.emplace(desc, std::move(c)).first->second;
    }

    const HyperellipticCensus& hyperelliptic(int g) {
        check_hyperelliptic_genus(g, 1, limits_);
        return doubled(hyperelliptic_descriptor(g, "maximal"), TreeProfile::trivalent(2 * g + 1));
    }

    // component 1 (one 5-valent vertex) and component 2 (marked trivalent)
    const HyperellipticCensus& w1h_component(int g, int which) {
        check_hyperelliptic_genus(g, 2, limits_);
        if (which == 1) return doubled(hyperelliptic_descriptor(g, "five-valent"), TreeProfile::one_five_valent(2 * g + 1));
        return doubled(hyperelliptic_descriptor(g, "six-valent"), TreeProfile::marked_trivalent(2 * g));
    }

    // Number of censuses produced by enumeration (not loaded from cache).
    int built() const { return built_; }

private:
    template <class T, class Load, class Build, class Save>
    T load_or_build(const std::string& desc, Load load, Build build, Save save) {
        std::optional<std::filesystem::path> file;
        if (cache_dir_) {
            file = *cache_dir_ / cache_file_name(desc);
            if (auto c = load(*file)) return std::move(*c);
        }
        if (!allow_build_) {
            throw CacheError("no cached census for '" + desc + "'" +
                             (cache_dir_ ? " in " + cache_dir_->string() : std::string(" (no cache directory)")));
        }
        T c = build();
        ++built_;
        if (file) save(*file, c);
        return c;
    }

    OrbifoldCensus enumerate_from_levels(int g, int n, ValenceFilter f) {
        const auto key = std::make_pair(g, n);
        auto it = levels_.find(key);
        if (it == levels_.end()) it = levels_.emplace(key, detail::unlabeled_levels(g, n, limits_)).first;
        return detail::census_from_levels(it->second, g, n, f, n > 1);
    }

    const HyperellipticCensus& doubled(const std::string& desc, const TreeProfile& profile) {
        if (auto it = doubled_.find(desc); it != doubled_.end()) return it->second;
        auto h = load_or_build<HyperellipticCensus>(
            desc, [&](const auto& file) { return load_hyperelliptic_census(file, desc); },
            [&] { return double_census(enumerate_trees(profile, Rooting::unrooted, limits_), desc); },
            [](const auto& file, const HyperellipticCensus& h) { save_hyperelliptic_census(file, h); });
        if (mutator) {
            std::map<CanonicalKey, HyperellipticCell> by_key;
            for (std::size_t i = 0; i < h.cells.size(); ++i) by_key.emplace(h.census.entries[i].key, h.cells[i]);
            mutator(h.census);
            h.cells.clear();
            for (const auto& e : h.census.entries) h.cells.push_back(by_key.at(e.key));
        }
        return doubled_.emplace(desc, std::move(h)).first->second;
    }

    void mutate(OrbifoldCensus& c) {
        if (mutator) mutator(c);
    }

    EnumerationLimits limits_;
    std::optional<std::filesystem::path> cache_dir_;
    bool allow_build_ = true;
    int built_ = 0;
    std::map<std::string, OrbifoldCensus> plain_;
    std::map<std::string, HyperellipticCensus> doubled_;
    std::map<std::pair<int, int>, std::vector<std::vector<CensusEntry>>> levels_;
};

// ---------------------------------------------------------------------------
// closed forms

// (n-2)! C_{n-3} (n-3)! / (2n-6)!
inline Rational genus0_closed(int n) {
    return Rational(factorial(n - 2) * catalan(n - 3) * factorial(n - 3)) / Rational(factorial(2 * n - 6));
}

// Witten-Kontsevich one-point number 1/(24^g g!).
inline Rational psi_top_closed(int g) {
    Integer d = factorial(g);
    for (int i = 0; i < g; ++i) d *= 24;
    return Rational(Integer(1), d);
}

// (3g-2)! / (2^g (6g-4)!) times the orbifold count of trivalent graphs.
inline Rational psi_top_census_form(int g, const Rational& trivalent_count) {
    return Rational(factorial(3 * g - 2)) / Rational(pow2(g) * factorial(6 * g - 4)) * trivalent_count;
}

inline Rational hevol_closed(int g) { return Rational(Integer(1), pow2(2 * g) * factorial(2 * g + 1)); }

inline Rational w1h_closed(int g) {
    return Rational(Integer(10 * g * g - 13 * g + 3), pow2(2 * g - 2) * factorial(2 * g + 1));
}

inline Rational boundary_closed(int g) { return Rational(Integer(1), pow2(2 * g - 1) * factorial(2 * g - 1)); }

inline Rational main_theorem_closed(int g) {
    return Rational(Integer((2 * g - 1) * (2 * g - 1)), pow2(2 * g) * factorial(2 * g + 1));
}

inline Rational corollary_closed(int g) {
    return Rational(Integer(14 * g * g - 11 * g + 3), 3 * pow2(2 * g) * factorial(2 * g + 1));
}

inline Rational elliptic_tail_term(int g) {
    return kEllipticTail / Rational(pow2(2 * g - 2) * factorial(2 * g - 1));
}

// ---------------------------------------------------------------------------
// reports

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw WrongType(what);
}

inline Rational volume_sum(const OrbifoldCensus& c) {
    return orbifold_sum(c, [](const CensusEntry& e) { return cell_volume(e.graph).value; });
}

// Sum of vol/|Aut| over a hyperelliptic census, checking the two volume
// paths cell by cell.
inline Rational hyperelliptic_volume_sum(const HyperellipticCensus& h, int d, IntegralReport& r,
                                         const std::string& label) {
    Rational total = 0;
    bool paths_agree = true, formula = true;
    for (std::size_t i = 0; i < h.cells.size(); ++i) {
        const auto v = hyperelliptic_cell_volume(h.cells[i]);
        paths_agree = paths_agree && v.agree();
        formula = formula && v.value() == hyperelliptic_volume_formula(d);
        total += v.value() / h.census.entries[i].aut_order;
    }
    r.notes.push_back(label + ": " + std::to_string(h.census.size()) + " cells, pulled-back and tree volumes " +
                      (paths_agree ? "agree" : "DISAGREE") + ", every cell " +
                      (formula ? "equals" : "does NOT equal") + " d!/(2^d (2d)!) at d=" + std::to_string(d));
    if (!paths_agree || !formula) {
        r.cross_checks.push_back({label + " cell volumes", Rational(1), Rational(0)});
    }
    return total;
}

}  // namespace detail

inline IntegralReport psi_top_genus0(int n, CensusStore& store, Assembly mode = Assembly::enumeration) {
    detail::require(n >= 3, "genus-0 integral needs n >= 3");
    IntegralReport r;
    r.name = "genus0";
    r.index_name = "n";
    r.index = n;
    r.assembly = mode;
    r.value_closed = genus0_closed(n);
    r.cross_checks.push_back({"string-equation value", Rational(1), r.value_closed});
    if (n == 3) {
        r.value_assembled = 1;
        r.notes.push_back("M_{0,3} is a point without automorphisms");
    } else if (mode == Assembly::enumeration) {
        if (n > 9) throw ResourceLimit("assembled genus-0 path is capped at n=9");
        const auto& c = store.trees(TreeProfile::trivalent(n - 1), Rooting::unrooted);
        // leaf labelings of a tree T number (n-1)!/|Aut T|
        r.value_assembled = Rational(factorial(n - 1)) * detail::volume_sum(c);
        r.notes.push_back(c.descriptor + ": " + std::to_string(c.size()) + " classes, Pfaffian volumes x (n-1)! labelings");
    } else {
        const int d = n - 3;
        r.value_assembled = Rational(factorial(n - 1)) * Rational(catalan(n - 3)) / (n - 1) *
                            Rational(factorial(d)) / Rational(factorial(2 * d));
        r.notes.push_back("(n-1)! x C_{n-3}/(n-1) trees x d!/(2d)!");
    }
    r.finish();
    return r;
}

inline IntegralReport psi_top_moduli(int g, CensusStore& store, Assembly mode = Assembly::enumeration) {
    detail::require(g >= 1, "psi-top needs g >= 1");
    if (mode == Assembly::substitution) {
        throw ResourceLimit("psi-top has no substitution path: the trivalent count needs a census");
    }
    IntegralReport r;
    r.name = "psi-top";
    r.index = g;
    r.value_closed = psi_top_closed(g);
    const auto& c = store.fatgraphs(g, 1, ValenceFilter::trivalent());
    r.value_assembled = detail::volume_sum(c);
    const Rational count = orbifold_sum(c);
    r.cross_checks.push_back({"(3g-2)!/(2^g (6g-4)!) x sum 1/|Aut|", r.value_assembled, psi_top_census_form(g, count)});
    r.notes.push_back(c.descriptor + ": " + std::to_string(c.size()) + " classes, sum 1/|Aut| = " +
                      to_display_string(count));
    r.finish();
    return r;
}

inline IntegralReport psi_top_hyperelliptic(int g, CensusStore& store, Assembly mode = Assembly::enumeration) {
    detail::require(g >= 1, "hevol needs g >= 1");
    IntegralReport r;
    r.name = "hevol";
    r.index = g;
    r.assembly = mode;
    r.value_closed = hevol_closed(g);
    const int d = 2 * g - 1;
    const Rational count_closed = Rational(catalan(2 * g - 1)) / (2 * (2 * g + 1));
    if (mode == Assembly::enumeration) {
        const auto& h = store.hyperelliptic(g);
        r.value_assembled = detail::hyperelliptic_volume_sum(h, d, r, h.census.descriptor);
        r.cross_checks.push_back({"C_{2g-1}/(2(2g+1)) cells", count_closed, orbifold_sum(h.census)});
    } else {
        r.value_assembled = count_closed * hyperelliptic_volume_formula(d);
        r.notes.push_back("C_{2g-1}/(2(2g+1)) x d!/(2^d (2d)!) at d=" + std::to_string(d));
    }
    r.finish();
    return r;
}

inline IntegralReport w1_h_integral(int g, CensusStore& store, Assembly mode = Assembly::enumeration) {
    detail::require(g >= 2, "w1h needs g >= 2");
    IntegralReport r;
    r.name = "w1h";
    r.index = g;
    r.assembly = mode;
    r.value_closed = w1h_closed(g);
    const int d = 2 * g - 2;
    const Rational m1 = kMultiplicityFiveValent, m2 = kMultiplicitySixValent;
    if (mode == Assembly::enumeration) {
        const auto& c1 = store.w1h_component(g, 1);
        const auto& c2 = store.w1h_component(g, 2);
        r.value_assembled = m1 * detail::hyperelliptic_volume_sum(c1, d, r, c1.census.descriptor) +
                            m2 * detail::hyperelliptic_volume_sum(c2, d, r, c2.census.descriptor);
        r.cross_checks.push_back({"count_T1", count_T1(g), orbifold_sum(c1.census)});
        r.cross_checks.push_back({"count_T2", count_T2(g), orbifold_sum(c2.census)});
    } else {
        r.value_assembled = hyperelliptic_volume_formula(d) * (m1 * count_T1(g) + m2 * count_T2(g));
        r.notes.push_back("d!/(2^d (2d)!) x (2 count_T1 + 3 count_T2)");
    }
    r.finish();
    return r;
}

// Rooted trivalent trees with 2g leaves, the root leaf sitting at the node:
// each contributes half the doubled volume of the remaining cell.
inline Rational boundary_from_rooted_trees(int g, CensusStore& store) {
    const auto& c = store.trees(TreeProfile::trivalent(2 * g), Rooting::rooted);
    const int d = 2 * g - 2;
    return orbifold_sum(c, [&](const CensusEntry& e) {
        return Rational(1, 2) * cell_volume(e.graph).value / Rational(pow2(d));
    });
}

inline IntegralReport boundary_integral(int g, CensusStore& store, Assembly mode = Assembly::enumeration) {
    detail::require(g >= 2, "boundary needs g >= 2");
    IntegralReport r;
    r.name = "boundary";
    r.index = g;
    r.assembly = mode;
    r.value_closed = boundary_closed(g);
    const IntegralReport lower = psi_top_hyperelliptic(g - 1, store, mode);
    r.value_assembled = Rational(1, 2) * lower.value_assembled;
    r.notes.push_back("1/2 x hevol(" + std::to_string(g - 1) + ") [" + assembly_name(mode) + "]");
    if (!lower.match) r.cross_checks.push_back({"hevol(g-1) closed", lower.value_closed, lower.value_assembled});
    if (mode == Assembly::enumeration) {
        r.cross_checks.push_back({"rooted trees with 2g leaves", r.value_assembled, boundary_from_rooted_trees(g, store)});
    }
    r.finish();
    return r;
}

inline IntegralReport main_theorem(int g, CensusStore& store, Assembly mode = Assembly::enumeration) {
    detail::require(g >= 1, "main-theorem needs g >= 1");
    IntegralReport r;
    r.name = "main-theorem";
    r.index = g;
    r.assembly = mode;
    r.value_closed = main_theorem_closed(g);
    if (g == 1) {
        // W_1 meets nothing in genus one: no (1,1) graph has a 5-valent vertex
        Rational w1 = 0;
        if (mode == Assembly::enumeration) {
            const auto& all = store.fatgraphs(1, 1, ValenceFilter::all());
            w1 = orbifold_sum(all, [](const CensusEntry& e) {
                for (int v = 0; v < e.graph.num_vertices(); ++v) {
                    if (e.graph.valence(v) >= 5) return Rational(1);
                }
                return Rational(0);
            });
            r.notes.push_back(all.descriptor + ": W_1 cells counted");
        }
        r.value_assembled = kKappaDuality * (w1 + kGenusOneBoundaryPoint);
        r.notes.push_back("(1/12)(W_1 + 1/2), the boundary a point with automorphisms of order 2");
    } else {
        const IntegralReport w = w1_h_integral(g, store, mode);
        const IntegralReport b = boundary_integral(g, store, mode);
        r.value_assembled = kKappaDuality * (w.value_assembled + b.value_assembled);
        for (const auto* part : {&w, &b}) {
            for (const auto& c : part->cross_checks) r.cross_checks.push_back({part->name + ": " + c.name, c.expected, c.actual});
        }
        r.notes.push_back("(1/12)(w1h + boundary)");
    }
    const Rational G = g;
    r.cross_checks.push_back({"10g^2-13g+3 + g(2g+1) = 3(2g-1)^2", 3 * (2 * G - 1) * (2 * G - 1),
                              10 * G * G - 13 * G + 3 + G * (2 * G + 1)});
    r.finish();
    return r;
}

inline IntegralReport hodge_corollary(int g, CensusStore& store, Assembly mode = Assembly::enumeration) {
    detail::require(g >= 2, "corollary needs g >= 2");
    IntegralReport r;
    r.name = "corollary";
    r.index = g;
    r.assembly = mode;
    r.value_closed = corollary_closed(g);
    const IntegralReport m = main_theorem(g, store, mode);
    r.value_assembled = m.value_assembled + elliptic_tail_term(g);
    r.cross_checks = m.cross_checks;
    const Rational G = g;
    r.cross_checks.push_back({"6(2g-1)^2 + 2g(2g+1) = 2(14g^2-11g+3)", 2 * (14 * G * G - 11 * G + 3),
                              6 * (2 * G - 1) * (2 * G - 1) + 2 * G * (2 * G + 1)});
    r.notes.push_back("main-theorem + (1/24)/(2^{2g-2}(2g-1)!)");
    r.finish();
    return r;
}

inline IntegralReport euler_report(int g, CensusStore& store, Assembly mode = Assembly::enumeration) {
    detail::require(g >= 1, "euler needs g >= 1");
    if (mode == Assembly::substitution) throw ResourceLimit("euler has no substitution path");
    IntegralReport r;
    r.name = "euler";
    r.index = g;
    r.value_closed = zeta_one_minus_2g(g);
    const auto& c = store.fatgraphs(g, 1, ValenceFilter::all());
    r.value_assembled = euler_characteristic(c);
    r.notes.push_back(c.descriptor + ": " + std::to_string(c.size()) + " cells, sign (-1)^(E-1)");
    r.finish();
    return r;
}

inline const std::vector<std::string>& identity_names() {
    static const std::vector<std::string> names{"genus0",   "psi-top",      "hevol",     "w1h",
                                                "boundary", "main-theorem", "corollary", "euler"};
    return names;
}

// Smallest admissible index of an identity.
inline int identity_min_index(const std::string& name) {
    if (name == "genus0") return 3;
    if (name == "w1h" || name == "boundary" || name == "corollary") return 2;
    return 1;
}

inline IntegralReport run_identity(const std::string& name, int index, CensusStore& store,
                                   Assembly mode = Assembly::enumeration) {
    if (name == "genus0") return psi_top_genus0(index, store, mode);
    if (name == "psi-top") return psi_top_moduli(index, store, mode);
    if (name == "hevol") return psi_top_hyperelliptic(index, store, mode);
    if (name == "w1h") return w1_h_integral(index, store, mode);
    if (name == "boundary") return boundary_integral(index, store, mode);
    if (name == "main-theorem") return main_theorem(index, store, mode);
    if (name == "corollary") return hodge_corollary(index, store, mode);
    if (name == "euler") return euler_report(index, store, mode);
    throw std::invalid_argument("unknown identity '" + name + "'");
}

}  // namespace fatmod
