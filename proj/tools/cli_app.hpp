#pragma once

// The fatmod command line, as a function so tests can drive it in-process.
//
//   fatmod enumerate  --type G,N [--trivalent|--all|--k-valent K] [--list]
//   fatmod enumerate  --trees --leaves L [--profile trivalent|five|marked] [--rooted]
//   fatmod enumerate  --hyperelliptic --g A..B
//   fatmod verify     [--identity NAME]... [--g A..B] [--n A..B] [--closed-only]
//   fatmod report     [--g A..B] [--n A..B] [--no-build]
//
// Exit codes: 0 ok, 1 cache problem, 2 resource limit, 3 mismatch, 64 usage.

#include "fatmod/fatmod.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace fatmod::cli {

enum Exit : int { kOk = 0, kCacheError = 1, kResourceLimit = 2, kMismatch = 3, kUsage = 64 };

using Json = nlohmann::ordered_json;

struct Range {
    int lo = 0, hi = -1;
    bool empty() const { return hi < lo; }
};

// "A..B" or "A"
inline Range parse_range(const std::string& text) {
    Range r;
    const auto dots = text.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
        } else {
            r.lo = std::stoi(text.substr(0, dots), &used);
            if (used != dots) throw std::invalid_argument(text);
            const auto tail = text.substr(dots + 2);
            r.hi = std::stoi(tail, &used);
            if (used != tail.size()) throw std::invalid_argument(text);
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("range", "expected A..B or A, got '" + text + "'");
    }
    if (r.empty()) throw CLI::ValidationError("range", "empty range '" + text + "'");
    return r;
}

struct RunConfig {
    std::string command;
    std::string g_range, n_range, type;
    std::vector<std::string> identities;
    std::string cache_dir;
    std::string format = "human";
    int cap_edges = EnumerationLimits{}.max_edges;
    int cap_leaves = EnumerationLimits{}.max_leaves;
    bool no_build = false;
    std::uint64_t seed = 1;
    std::uint64_t mc_samples = 0;
    bool closed_only = false;

    // enumerate
    bool trivalent = false, all_valences = false, trees = false, rooted = false, hyperelliptic = false, list = false;
    int k_valent = 0;
    int leaves = 0;
    std::string profile = "trivalent";

    EnumerationLimits limits() const {
        EnumerationLimits l;
        l.max_edges = cap_edges;
        l.max_leaves = cap_leaves;
        return l;
    }
};

inline std::string rational(const Rational& r) { return to_fraction_string(r); }

// ---------------------------------------------------------------------------
// enumerate

inline Json census_json(const OrbifoldCensus& c, bool list) {
    Json j;
    j["descriptor"] = c.descriptor;
    j["classes"] = c.size();
    j["orbifold_count"] = rational(orbifold_sum(c));
    if (list) {
        j["entries"] = Json::array();
        for (const auto& e : c.entries) j["entries"].push_back(Json{{"graph", serialize(e.graph)}, {"aut_order", e.aut_order}});
    }
    return j;
}

inline int cmd_enumerate(const RunConfig& cfg, CensusStore& store, std::ostream& out) {
    std::vector<const OrbifoldCensus*> results;
    if (cfg.hyperelliptic) {
        const Range g = parse_range(cfg.g_range.empty() ? "1..3" : cfg.g_range);
        for (int i = g.lo; i <= g.hi; ++i) results.push_back(&store.hyperelliptic(i).census);
    } else if (cfg.trees) {
        if (cfg.leaves < 2) throw CLI::ValidationError("--leaves", "need --leaves >= 2");
        TreeProfile p = cfg.profile == "five"     ? TreeProfile::one_five_valent(cfg.leaves)
                        : cfg.profile == "marked" ? TreeProfile::marked_trivalent(cfg.leaves)
                                                  : TreeProfile::trivalent(cfg.leaves);
        results.push_back(&store.trees(p, cfg.rooted ? Rooting::rooted : Rooting::unrooted));
    } else {
        if (cfg.type.empty()) throw CLI::ValidationError("--type", "enumerate needs --type G,N, --trees or --hyperelliptic");
        const auto comma = cfg.type.find(',');
        int g = 0, n = 0;
        try {
            if (comma == std::string::npos) throw std::invalid_argument("comma");
            g = std::stoi(cfg.type.substr(0, comma));
            n = std::stoi(cfg.type.substr(comma + 1));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--type", "expected G,N, got '" + cfg.type + "'");
        }
        const ValenceFilter f = cfg.all_valences ? ValenceFilter::all()
                                : cfg.k_valent  ? ValenceFilter::single(cfg.k_valent)
                                                : ValenceFilter::trivalent();
        results.push_back(&store.fatgraphs(g, n, f));
    }

    if (cfg.format == "json") {
        Json j;
        j["command"] = "enumerate";
        j["censuses"] = Json::array();
        for (const auto* c : results) j["censuses"].push_back(census_json(*c, cfg.list));
        out << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "descriptor,classes,orbifold_count\n";
        for (const auto* c : results) out << '"' << c->descriptor << "\"," << c->size() << ',' << rational(orbifold_sum(*c)) << "\n";
    } else {
        for (const auto* c : results) {
            out << c->descriptor << "\n  classes: " << c->size() << "\n  sum 1/|Aut|: " << to_display_string(orbifold_sum(*c))
                << "\n";
            if (cfg.list) {
                for (const auto& e : c->entries) out << "  " << serialize(e.graph) << "  aut=" << e.aut_order << "\n";
            }
        }
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// verify / report

struct Row {
    std::string identity;
    std::string index_name;
    int index = 0;
    std::string status;  // ok | mismatch | not-applicable | resource-limit
    std::optional<IntegralReport> report;
    std::string message;
};

inline Json row_json(const Row& row) {
    Json j;
    j["identity"] = row.identity;
    j["index_name"] = row.index_name;
    j["index"] = row.index;
    j["status"] = row.status;
    if (row.report) {
        const auto& r = *row.report;
        j["value_closed"] = rational(r.value_closed);
        j["value_assembled"] = rational(r.value_assembled);
        j["match"] = r.match;
        j["assembly"] = assembly_name(r.assembly);
        j["cross_checks"] = Json::array();
        for (const auto& c : r.cross_checks) {
            j["cross_checks"].push_back(
                Json{{"name", c.name}, {"expected", rational(c.expected)}, {"actual", rational(c.actual)}, {"ok", c.ok()}});
        }
        j["notes"] = r.notes;
    } else {
        j["value_closed"] = nullptr;
        j["value_assembled"] = nullptr;
        j["match"] = nullptr;
        j["assembly"] = nullptr;
        j["cross_checks"] = Json::array();
        j["notes"] = Json::array({row.message});
    }
    return j;
}

inline std::string csv_quote(const std::string& s) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

inline void print_rows(const std::vector<Row>& rows, const std::string& command, const std::string& format, std::ostream& out) {
    if (format == "json") {
        Json j;
        j["command"] = command;
        j["format_version"] = 1;
        bool all = true;
        for (const auto& r : rows) all = all && r.status != "mismatch";
        j["all_match"] = all;
        j["reports"] = Json::array();
        for (const auto& r : rows) j["reports"].push_back(row_json(r));
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "identity,index_name,index,status,value_closed,value_assembled,match,assembly\n";
        for (const auto& r : rows) {
            out << r.identity << ',' << r.index_name << ',' << r.index << ',' << r.status << ',';
            if (r.report) {
                out << rational(r.report->value_closed) << ',' << rational(r.report->value_assembled) << ','
                    << (r.report->match ? "true" : "false") << ',' << assembly_name(r.report->assembly);
            } else {
                out << ",,,";
            }
            out << "\n";
        }
    } else {
        for (const auto& r : rows) {
            out << std::left << std::setw(13) << r.identity << ' ' << r.index_name << '=' << std::setw(3) << r.index << ' ';
            if (!r.report) {
                out << r.status << ": " << r.message << "\n";
                continue;
            }
            const auto& rep = *r.report;
            out << (rep.match ? "match    " : "MISMATCH ") << "closed " << to_display_string(rep.value_closed)
                << "  assembled " << to_display_string(rep.value_assembled) << "  [" << assembly_name(rep.assembly) << "]\n";
            for (const auto& c : rep.cross_checks) {
                if (!c.ok()) out << "    failed check " << c.name << ": " << to_display_string(c.expected) << " vs " << to_display_string(c.actual) << "\n";
            }
        }
    }
}

inline Row evaluate(const std::string& name, int index, CensusStore& store, const RunConfig& cfg, bool soft_limits) {
    Row row{name, name == "genus0" ? "n" : "g", index, "", std::nullopt, ""};
    if (index < identity_min_index(name)) {
        row.status = "not-applicable";
        row.message = name + " needs " + row.index_name + " >= " + std::to_string(identity_min_index(name));
        return row;
    }
    try {
        auto r = run_identity(name, index, store, cfg.closed_only ? Assembly::substitution : Assembly::enumeration);
        if (cfg.mc_samples > 0 && name == "psi-top") {
            const auto& c = store.fatgraphs(index, 1, ValenceFilter::trivalent());
            const auto& first = c.entries.front();
            const double mc = monte_carlo_cell_volume(omega_matrix(first.graph), cfg.mc_samples, cfg.seed);
            std::ostringstream os;
            os << std::setprecision(6) << "monte carlo volume of first cell: " << mc << " (exact "
               << cell_volume(first.graph).value.convert_to<double>() << ", seed " << cfg.seed << ")";
            r.notes.push_back(os.str());
        }
        row.status = r.match ? "ok" : "mismatch";
        row.report = std::move(r);
    } catch (const ResourceLimit& e) {
        if (!soft_limits) throw;
        row.status = "resource-limit";
        row.message = e.what();
    }
    return row;
}

inline std::vector<std::string> selected_identities(const RunConfig& cfg) {
    if (cfg.identities.empty()) return identity_names();
    for (const auto& id : cfg.identities) {
        bool known = false;
        for (const auto& n : identity_names()) known = known || n == id;
        if (!known) throw CLI::ValidationError("--identity", "unknown identity '" + id + "'");
    }
    return cfg.identities;
}

inline std::vector<Row> evaluate_all(const RunConfig& cfg, CensusStore& store, bool soft_limits,
                                     const std::string& default_g, const std::string& default_n) {
    std::vector<Row> rows;
    const Range g = parse_range(cfg.g_range.empty() ? default_g : cfg.g_range);
    const Range n = parse_range(cfg.n_range.empty() ? default_n : cfg.n_range);
    for (const auto& id : selected_identities(cfg)) {
        const Range r = id == "genus0" ? n : g;
        for (int i = r.lo; i <= r.hi; ++i) rows.push_back(evaluate(id, i, store, cfg, soft_limits));
    }
    return rows;
}

inline int cmd_verify(const RunConfig& cfg, CensusStore& store, std::ostream& out) {
    const auto rows = evaluate_all(cfg, store, false, "1..2", "4..9");
    print_rows(rows, "verify", cfg.format, out);
    for (const auto& r : rows) {
        if (r.status == "mismatch") return kMismatch;
    }
    return kOk;
}

inline int cmd_report(const RunConfig& cfg, CensusStore& store, std::ostream& out) {
    const auto rows = evaluate_all(cfg, store, true, "1..3", "3..9");
    print_rows(rows, "report", cfg.format == "human" ? "json" : cfg.format, out);
    for (const auto& r : rows) {
        if (r.status == "mismatch") return kMismatch;
    }
    return kOk;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const CensusStore::Mutator& mutator = nullptr) {
    RunConfig cfg;
    CLI::App app{"Fatgraph censuses, Kontsevich volumes and hyperelliptic integrals, in exact arithmetic.", "fatmod"};
    app.require_subcommand(1);
    if (const char* env = std::getenv("FATMOD_CACHE")) cfg.cache_dir = env;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--g", cfg.g_range, "genus range A..B");
        sub->add_option("--cache", cfg.cache_dir, "census cache directory (default $FATMOD_CACHE)");
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"human", "json", "csv"}));
        sub->add_option("--cap-edges", cfg.cap_edges, "largest fatgraph census, in edges")->check(CLI::PositiveNumber);
        sub->add_option("--cap-leaves", cfg.cap_leaves, "largest tree census, in leaves")->check(CLI::PositiveNumber);
        sub->add_flag("--no-build", cfg.no_build, "fail instead of enumerating a census missing from the cache");
        sub->add_option("--seed", cfg.seed, "seed for Monte Carlo cross-checks");
    };

    auto* enumerate = app.add_subcommand("enumerate", "enumerate a census and print its summary");
    common(enumerate);
    enumerate->add_option("--type", cfg.type, "fatgraph type G,N");
    auto* tri = enumerate->add_flag("--trivalent", cfg.trivalent, "trivalent graphs only (default)");
    auto* all = enumerate->add_flag("--all", cfg.all_valences, "all valences");
    auto* kv = enumerate->add_option("--k-valent", cfg.k_valent, "one K-valent vertex, the rest trivalent");
    tri->excludes(all)->excludes(kv);
    all->excludes(kv);
    enumerate->add_flag("--trees", cfg.trees, "planar trees");
    enumerate->add_option("--leaves", cfg.leaves, "tree leaf count");
    enumerate->add_option("--profile", cfg.profile, "tree profile")->check(CLI::IsMember({"trivalent", "five", "marked"}));
    enumerate->add_flag("--rooted", cfg.rooted, "rooted trees");
    enumerate->add_flag("--hyperelliptic", cfg.hyperelliptic, "maximal hyperelliptic cells for each g");
    enumerate->add_flag("--list", cfg.list, "print every class");

    auto* verify = app.add_subcommand("verify", "check identities; exit 3 on any mismatch");
    common(verify);
    verify->add_option("--identity", cfg.identities, "identity (repeatable); default all")
        ->check(CLI::IsMember(identity_names()));
    verify->add_option("--n", cfg.n_range, "point range A..B for genus0");
    verify->add_flag("--closed-only", cfg.closed_only, "compose closed forms instead of enumerating");
    verify->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo samples for a psi-top cell volume");

    auto* report = app.add_subcommand("report", "all identities over a range as JSON or CSV");
    common(report);
    report->add_option("--identity", cfg.identities, "identity (repeatable); default all")
        ->check(CLI::IsMember(identity_names()));
    report->add_option("--n", cfg.n_range, "point range A..B for genus0");
    report->add_flag("--closed-only", cfg.closed_only, "compose closed forms instead of enumerating");

    std::vector<const char*> argv{"fatmod"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        std::optional<std::filesystem::path> cache;
        if (!cfg.cache_dir.empty()) cache = std::filesystem::path(cfg.cache_dir);
        CensusStore store(cfg.limits(), cache, !cfg.no_build);
        store.mutator = mutator;
        if (enumerate->parsed()) return cmd_enumerate(cfg, store, out);
        if (verify->parsed()) return cmd_verify(cfg, store, out);
        return cmd_report(cfg, store, out);
    } catch (const CLI::ValidationError& e) {
        err << "fatmod: " << e.what() << "\n";
        return kUsage;
    } catch (const ResourceLimit& e) {
        err << "fatmod: " << e.what() << "\n";
        return kResourceLimit;
    } catch (const CacheError& e) {
        err << "fatmod: " << e.what() << "\n";
        return kCacheError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "fatmod: CacheError: " << e.what() << "\n";
        return kCacheError;
    } catch (const Error& e) {
        err << "fatmod: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace fatmod::cli
