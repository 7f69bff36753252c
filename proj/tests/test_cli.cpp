#include "cli_app.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <unistd.h>

namespace fs = std::filesystem;
using fatmod::cli::Json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result fatmod_run(std::vector<std::string> args, const fatmod::CensusStore::Mutator& m = nullptr) {
    ::unsetenv("FATMOD_CACHE");
    std::ostringstream out, err;
    const int code = fatmod::cli::run(args, out, err, m);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("fatmod-cli-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, VerifyDefaultsPass) {
    const auto r = fatmod_run({"verify"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_EQ(r.out.find("MISMATCH"), std::string::npos);
}

TEST(Cli, ResourceLimitExitCode) {
    const auto r = fatmod_run({"verify", "--identity", "hevol", "--g", "5"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("ResourceLimit"), std::string::npos) << r.err;
    EXPECT_EQ(fatmod_run({"verify", "--identity", "psi-top", "--g", "2", "--cap-edges", "8"}).code, 2);
}

TEST(Cli, ReportTurnsResourceLimitsIntoRows) {
    const auto r = fatmod_run({"report", "--identity", "hevol", "--g", "4..5", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    ASSERT_EQ(j["reports"].size(), 2u);
    EXPECT_EQ(j["reports"][0]["status"], "ok");
    EXPECT_EQ(j["reports"][1]["status"], "resource-limit");
    EXPECT_TRUE(j["reports"][1]["value_closed"].is_null());
    EXPECT_TRUE(j["all_match"].get<bool>());
}

TEST(Cli, MissingCacheWithNoBuild) {
    const fs::path dir = fresh_dir("missing");
    const auto r = fatmod_run({"verify", "--identity", "psi-top", "--g", "1", "--cache", dir.string(), "--no-build"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("CacheError"), std::string::npos) << r.err;
    fs::remove_all(dir);
}

TEST(Cli, CorruptCacheExitCode) {
    const fs::path dir = fresh_dir("corrupt");
    ASSERT_EQ(fatmod_run({"verify", "--identity", "psi-top", "--g", "2", "--cache", dir.string()}).code, 0);
    for (const auto& f : fs::directory_iterator(dir)) {
        std::ofstream(f.path(), std::ios::app) << "garbage line\n";
    }
    EXPECT_EQ(fatmod_run({"verify", "--identity", "psi-top", "--g", "2", "--cache", dir.string()}).code, 1);
    fs::remove_all(dir);
}

TEST(Cli, MismatchExitCode) {
    auto drop = [](fatmod::OrbifoldCensus& c) {
        if (!c.entries.empty()) c.entries.pop_back();
    };
    const auto r = fatmod_run({"verify", "--identity", "psi-top", "--g", "2"}, drop);
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("MISMATCH"), std::string::npos);
    const auto rep = fatmod_run({"report", "--identity", "hevol", "--g", "2", "--format", "json"}, drop);
    EXPECT_EQ(rep.code, 3);
    EXPECT_FALSE(Json::parse(rep.out)["all_match"].get<bool>());
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(fatmod_run({}).code, 64);
    EXPECT_EQ(fatmod_run({"verify", "--format", "xml"}).code, 64);
    EXPECT_EQ(fatmod_run({"verify", "--identity", "nope"}).code, 64);
    EXPECT_EQ(fatmod_run({"verify", "--g", "3..1"}).code, 64);
    EXPECT_EQ(fatmod_run({"enumerate", "--type", "0,1"}).code, 64);
    EXPECT_EQ(fatmod_run({"--help"}).code, 0);
}

TEST(Cli, ReportJsonRoundTrip) {
    const auto r = fatmod_run({"report", "--g", "1..2", "--n", "3..6", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["command"], "report");
    EXPECT_EQ(j["format_version"], 1);
    EXPECT_TRUE(j["all_match"].get<bool>());
    // 4 genus0 rows + 7 identities x 2 genera
    ASSERT_EQ(j["reports"].size(), 4u + 14u);
    for (const auto& row : j["reports"]) {
        for (const char* key : {"identity", "index_name", "index", "status", "value_closed", "value_assembled", "match",
                                "assembly", "cross_checks", "notes"}) {
            EXPECT_TRUE(row.contains(key)) << key;
        }
        if (row["status"] == "ok") {
            const auto closed = fatmod::parse_rational(row["value_closed"].get<std::string>());
            EXPECT_EQ(closed, fatmod::parse_rational(row["value_assembled"].get<std::string>()));
            for (const auto& c : row["cross_checks"]) EXPECT_EQ(c["expected"], c["actual"]);
        } else {
            EXPECT_EQ(row["status"], "not-applicable");
        }
    }
    // dump and re-parse is the identity
    EXPECT_EQ(Json::parse(j.dump()), j);
}

TEST(Cli, ReportCsv) {
    const auto r = fatmod_run({"report", "--identity", "main-theorem", "--identity", "corollary", "--g", "1..3",
                               "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count_lines(r.out), 1 + 6);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
              "identity,index_name,index,status,value_closed,value_assembled,match,assembly");
    EXPECT_NE(r.out.find("main-theorem,g,3,ok,5/64512,5/64512,true,enumeration"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("corollary,g,1,not-applicable,,,,"), std::string::npos) << r.out;
}

TEST(Cli, DeterministicAndCacheIndependent) {
    const fs::path dir = fresh_dir("determinism");
    const std::vector<std::string> args{"report", "--g", "1..2", "--n", "3..7", "--format", "json"};
    const auto a = fatmod_run(args);
    const auto b = fatmod_run(args);
    EXPECT_EQ(a.out, b.out);
    auto cached = args;
    cached.insert(cached.end(), {"--cache", dir.string()});
    const auto c = fatmod_run(cached);  // builds and saves
    cached.push_back("--no-build");
    const auto d = fatmod_run(cached);  // loads only
    EXPECT_EQ(d.code, 0) << d.err;
    EXPECT_EQ(a.out, c.out);
    EXPECT_EQ(a.out, d.out);
    fs::remove_all(dir);
}

TEST(Cli, ClosedOnlyLargeGenus) {
    const auto r = fatmod_run({"report", "--identity", "hevol", "--g", "50", "--closed-only", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    const auto v = fatmod::parse_rational(j["reports"][0]["value_closed"].get<std::string>());
    EXPECT_EQ(v, fatmod::Rational(fatmod::Integer(1), fatmod::pow2(100) * fatmod::factorial(101)));
    EXPECT_EQ(j["reports"][0]["assembly"], "substitution");
}

TEST(Cli, Enumerate) {
    auto r = fatmod_run({"enumerate", "--type", "1,1", "--all", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["censuses"][0]["classes"], 2);
    EXPECT_EQ(j["censuses"][0]["descriptor"], "fatgraphs g=1 n=1 valence=all boundaries=unlabeled");

    r = fatmod_run({"enumerate", "--type", "2,1", "--format", "json"});
    j = Json::parse(r.out);
    EXPECT_EQ(j["censuses"][0]["classes"], 9);
    EXPECT_EQ(j["censuses"][0]["orbifold_count"], "35/6");

    r = fatmod_run({"enumerate", "--trees", "--leaves", "7", "--profile", "five", "--rooted", "--format", "json"});
    j = Json::parse(r.out);
    EXPECT_EQ(j["censuses"][0]["classes"], 28);

    r = fatmod_run({"enumerate", "--hyperelliptic", "--g", "1..3", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count_lines(r.out), 4);

    r = fatmod_run({"enumerate", "--type", "1,1", "--list"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("aut=6"), std::string::npos) << r.out;
}

TEST(Cli, MonteCarloNoteIsSeeded) {
    const std::vector<std::string> args{"verify", "--identity", "psi-top", "--g", "1", "--mc-samples", "20000",
                                        "--seed", "9", "--format", "json"};
    const auto a = fatmod_run(args);
    const auto b = fatmod_run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("monte carlo"), std::string::npos);
}
