#include "porc/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sys/wait.h>

using namespace porc;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + PORC_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) throw std::runtime_error("popen failed");
    std::string out;
    char buf[4096];
    for (std::size_t k; (k = fread(buf, 1, sizeof buf, f)) > 0;) out.append(buf, k);
    const int status = pclose(f);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> counts(const std::string& json) {
    std::vector<std::string> out;
    const Json j = Json::parse(json);
    for (const auto& r : j.at("results")) out.push_back(r.at("count").get<std::string>());
    return out;
}

std::string temp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / ("porc_cli_test_" + name)).string(); }

// A census record with the given (p, value) samples at order n.
std::string write_samples(const std::string& name, int n, const std::vector<std::pair<std::uint64_t, int>>& samples) {
    ResultRecord rec;
    rec.command = "census";
    for (const auto& [p, v] : samples) {
        Json row;
        row["n"] = n;
        row["p"] = p;
        row["count"] = std::to_string(v);
        rec.results.push_back(row);
    }
    const auto path = temp_path(name);
    std::ofstream(path) << rec.dump();
    return path;
}

const std::vector<std::uint64_t> kPrimes{5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

TEST(Cli, CensusExamples) {
    auto r = run("census --n 3 --primes 3,5,7");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(counts(r.out), (std::vector<std::string>{"5", "5", "5"}));
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j.at("results")[1].at("p").get<int>(), 5);
    EXPECT_EQ(j.at("diagnostics").at("engine").get<std::string>(), "typed");
    r = run("census --n 1 --primes 2");
    EXPECT_EQ(counts(r.out), std::vector<std::string>{"1"});
    r = run("census --n 2 --primes 2,3 --engine naive");
    EXPECT_EQ(counts(r.out), (std::vector<std::string>{"2", "2"}));
}

TEST(Cli, CsvHasOneRowPerPrime) {
    const auto r = run("--format csv census --n 2 --primes 2,3");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "n,p,count\n2,2,2\n2,3,2\n");
}

TEST(Cli, HallAutcountTypeof) {
    auto r = run("hall --lambda 1,1 --mu 1 --nu 1 --q 2");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(counts(r.out), std::vector<std::string>{"3"});
    r = run("autcount --lambda 1,1 --q 2");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(counts(r.out), std::vector<std::string>{"6"});
    r = run("typeof --q 3 --matrix '1,0;0,1'");
    ASSERT_EQ(r.code, 0);
    const auto res = Json::parse(r.out).at("results");
    ASSERT_EQ(res.size(), 1u);
    EXPECT_EQ(res[0].at("degree").get<int>(), 1);
    EXPECT_EQ(res[0].at("partitions").get<std::string>(), "(1,1)");
}

TEST(Cli, OracleMatchesCensus) {
    const auto a = run("oracle --n 3 --primes 2,3");
    const auto b = run("census --n 3 --primes 2,3");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(counts(a.out), counts(b.out));
    EXPECT_EQ(Json::parse(a.out).at("diagnostics").at("engine").get<std::string>(), "oracle");
}

TEST(Cli, PorcFitConstant) {
    std::vector<std::pair<std::uint64_t, int>> s;
    for (auto p : kPrimes) s.emplace_back(p, 5);
    const auto r = run("porc-fit --input " + write_samples("const.json", 3, s) + " --modulus 1 --degmax 0");
    ASSERT_EQ(r.code, 0);
    const auto f = Json::parse(r.out).at("results")[0];
    EXPECT_TRUE(f.at("accepted").get<bool>());
    EXPECT_EQ(f.at("classes")[0].at("coefficients"), Json::array({"5/1"}));
}

TEST(Cli, PorcFitGcdClasses) {
    std::vector<std::pair<std::uint64_t, int>> s;
    for (auto p : kPrimes) s.emplace_back(p, static_cast<int>(std::gcd(p - 1, std::uint64_t{3})));
    const auto r = run("porc-fit --input " + write_samples("gcd.json", 4, s) + " --modulus 3 --degmax 0");
    ASSERT_EQ(r.code, 0);
    const auto f = Json::parse(r.out).at("results")[0];
    ASSERT_TRUE(f.at("accepted").get<bool>());
    std::map<int, std::string> by_residue;
    for (const auto& c : f.at("classes")) by_residue[c.at("residue").get<int>()] = c.at("coefficients")[0].get<std::string>();
    EXPECT_EQ(by_residue, (std::map<int, std::string>{{1, "3/1"}, {2, "1/1"}}));
}

TEST(Cli, PorcFitRejectsTooSmallModulus) {
    std::vector<std::pair<std::uint64_t, int>> s;
    for (auto p : kPrimes) s.emplace_back(p, static_cast<int>(std::gcd(p - 1, std::uint64_t{4})));
    const auto path = write_samples("mixed.json", 4, s);
    auto r = run("porc-fit --input " + path + " --modulus 2 --degmax 0");
    ASSERT_EQ(r.code, 0);
    const auto f = Json::parse(r.out).at("results")[0];
    EXPECT_FALSE(f.at("accepted").get<bool>());
    EXPECT_FALSE(f.at("reason").get<std::string>().empty());
    // Too few samples for the degree is a refusal, not a rejection.
    r = run("porc-fit --input " + path + " --modulus 4 --degmax 4");
    EXPECT_EQ(r.code, 3);
}

TEST(Cli, JsonRoundTripIsByteIdentical) {
    for (const std::string args : {"census --n 3 --primes 3,5", "hall --lambda 2,1 --mu 1 --nu 2 --q 3 --polynomial", "autcount --lambda 2,1 --q 3"}) {
        const auto r = run(args);
        ASSERT_EQ(r.code, 0) << args;
        EXPECT_EQ(ResultRecord::parse(r.out).dump(), r.out) << args;
    }
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
    const auto a = run("census --n 4 --primes 2,3,5 --no-timing --threads 1");
    const auto b = run("census --n 4 --primes 2,3,5 --no-timing --threads 3");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExitCodesDistinguishRefusalFromBadInput) {
    EXPECT_EQ(run("census --n 3 --primes 4").code, 2);
    EXPECT_EQ(run("--cap-table-count 5 oracle --n 4 --primes 3").code, 3);
    EXPECT_EQ(run("oracle --n 4 --primes 3", "PORC_CAP_TABLE_COUNT=5").code, 3);
    EXPECT_EQ(run("census --n 3").code, 2);
    EXPECT_EQ(run("--cap-group-size 0 census --n 1 --primes 2").code, 2);
    const auto r = run("--cap-table-count 5 oracle --n 4 --primes 3");
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j.at("diagnostics").at("status").get<std::string>(), "refused");
    EXPECT_FALSE(j.at("diagnostics").at("estimate").get<std::string>().empty());
}

TEST(Cli, OutFlagWritesFile) {
    const auto path = temp_path("out.csv");
    std::filesystem::remove(path);
    ASSERT_EQ(run("--format csv --out " + path + " census --n 1 --primes 3").code, 0);
    std::ifstream f(path);
    const std::string text((std::istreambuf_iterator<char>(f)), {});
    EXPECT_EQ(text, "n,p,count\n1,3,1\n");
}

TEST(Cli, SelftestSubset) {
    const auto r = run("selftest --criteria 1,7 --format csv");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("PASS   1"), std::string::npos);
    EXPECT_NE(r.out.find("PASS   7"), std::string::npos);
    EXPECT_NE(r.out.find("2/2 criteria passed"), std::string::npos);
}
