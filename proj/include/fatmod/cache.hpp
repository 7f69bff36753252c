#pragma once

// On-disk census cache.
//
//   # fatmod census v1
//   # descriptor: <what was enumerated>
//   # entries: <N>
//   <one serialized graph per line, in key order>
//
// Hyperelliptic censuses append ` || <tree> || <involution>` to each line:
// the doubled graph as built (not the canonical representative), the tree it
// came from, and the involution as space-separated images. Loading re-derives
// keys, representatives and automorphism orders, and re-doubles every tree,
// so a cache file can only ever be trusted as far as it re-verifies.

#include "fatmod/census.hpp"
#include "fatmod/errors.hpp"
#include "fatmod/hyperelliptic.hpp"
#include "fatmod/trees.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fatmod {

inline constexpr const char* kCacheMagic = "# fatmod census v1";

inline std::string cache_file_name(const std::string& descriptor) {
    std::string name;
    for (char c : descriptor) {
        const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-';
        name += keep ? c : '_';
    }
    return name + ".census";
}

namespace detail {

inline void write_atomically(const std::filesystem::path& file, const std::string& text) {
    std::filesystem::create_directories(file.parent_path());
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheError("cannot write " + tmp);
        out << text;
        if (!out) throw CacheError("short write to " + tmp);
    }
    std::filesystem::rename(tmp, file);
}

struct CacheContents {
    std::string descriptor;
    std::vector<std::string> lines;
};

// nullopt: no file. Throws CacheError on a malformed header.
inline std::optional<CacheContents> read_cache_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    std::string magic, desc, count;
    if (!std::getline(in, magic) || magic != kCacheMagic) throw CacheError(file.string() + ": bad magic line");
    if (!std::getline(in, desc) || desc.rfind("# descriptor: ", 0) != 0) {
        throw CacheError(file.string() + ": missing descriptor");
    }
    if (!std::getline(in, count) || count.rfind("# entries: ", 0) != 0) {
        throw CacheError(file.string() + ": missing entry count");
    }
    CacheContents c;
    c.descriptor = desc.substr(14);
    std::size_t n = 0;
    try {
        std::size_t used = 0;
        n = std::stoul(count.substr(11), &used);
        if (used != count.size() - 11) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw CacheError(file.string() + ": bad entry count");
    }
    std::string line;
    while (std::getline(in, line)) c.lines.push_back(line);
    if (c.lines.size() != n) {
        throw CacheError(file.string() + ": header says " + std::to_string(n) + " entries, found " +
                         std::to_string(c.lines.size()));
    }
    return c;
}

inline std::string cache_header(const std::string& descriptor, std::size_t entries) {
    return std::string(kCacheMagic) + "\n# descriptor: " + descriptor + "\n# entries: " + std::to_string(entries) + "\n";
}

inline void check_sorted_unique(const OrbifoldCensus& c, const std::filesystem::path& file) {
    for (std::size_t i = 1; i < c.entries.size(); ++i) {
        if (!(c.entries[i - 1].key < c.entries[i].key)) {
            throw CacheError(file.string() + ": entries out of order or duplicated at line " + std::to_string(i + 4));
        }
    }
}

}  // namespace detail

inline void save_census(const std::filesystem::path& file, const OrbifoldCensus& c) {
    std::string text = detail::cache_header(c.descriptor, c.size());
    for (const auto& e : c.entries) text += serialize(e.graph) + "\n";
    detail::write_atomically(file, text);
}

// nullopt if the file is absent or describes something else (stale cache).
// Rooted tree censuses keep the root at half-edge 0 and are keyed from it.
inline std::optional<OrbifoldCensus> load_census(const std::filesystem::path& file, const std::string& descriptor,
                                                 bool rooted = false) {
    auto contents = detail::read_cache_file(file);
    if (!contents || contents->descriptor != descriptor) return std::nullopt;
    OrbifoldCensus c;
    c.descriptor = descriptor;
    for (std::size_t i = 0; i < contents->lines.size(); ++i) {
        try {
            Fatgraph g = deserialize(contents->lines[i]);
            if (rooted) {
                PlanarTree t = make_planar_tree(g, HalfEdge{0});
                c.entries.push_back(CensusEntry{rooted_key(t), std::move(t.graph), 1});
            } else {
                c.entries.push_back(make_entry(g));
            }
        } catch (const Error& e) {
            throw CacheError(file.string() + ": line " + std::to_string(i + 4) + ": " + e.what());
        }
    }
    detail::check_sorted_unique(c, file);
    return c;
}

inline void save_hyperelliptic_census(const std::filesystem::path& file, const HyperellipticCensus& h) {
    std::string text = detail::cache_header(h.census.descriptor, h.cells.size());
    for (const auto& cell : h.cells) {
        text += serialize(cell.doubled) + " || " + serialize(cell.tree.graph) + " ||";
        for (HalfEdge x : cell.involution) text += " " + std::to_string(x);
        text += "\n";
    }
    detail::write_atomically(file, text);
}

inline std::optional<HyperellipticCensus> load_hyperelliptic_census(const std::filesystem::path& file,
                                                                    const std::string& descriptor) {
    auto contents = detail::read_cache_file(file);
    if (!contents || contents->descriptor != descriptor) return std::nullopt;
    HyperellipticCensus h;
    h.census.descriptor = descriptor;
    for (std::size_t i = 0; i < contents->lines.size(); ++i) {
        const std::string where = file.string() + ": line " + std::to_string(i + 4) + ": ";
        const auto parts = detail::split(contents->lines[i], " || ");
        if (parts.size() != 3) throw CacheError(where + "expected graph || tree || involution");
        try {
            HyperellipticCell cell = double_tree(make_planar_tree(deserialize(parts[1])));
            if (serialize(cell.doubled) != parts[0]) throw CacheError(where + "doubled graph does not match its tree");
            std::string iota;
            for (HalfEdge x : cell.involution) iota += " " + std::to_string(x);
            if (iota != std::string(" ") + std::string(parts[2]) && !(iota.empty() && parts[2].empty())) {
                throw CacheError(where + "involution does not match");
            }
            h.census.entries.push_back(make_entry(cell.doubled));
            h.cells.push_back(std::move(cell));
        } catch (const CacheError&) {
            throw;
        } catch (const Error& e) {
            throw CacheError(where + e.what());
        }
    }
    detail::check_sorted_unique(h.census, file);
    return h;
}

}  // namespace fatmod
