#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" LCMLAB_CLI_PATH "' " + args + " 2>&1";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int raw = ::pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("lcmlab_cli_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, AnalyzeEmitsMassRow) {
    const auto r = run("analyze --poly \"X^4-2\" --N 500 --c 2 --no-timestamp");
    ASSERT_EQ(r.status, 0) << r.out;
    std::istringstream in(r.out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header, "poly,N,c,logQ,logL,logell,small_mass,large_mass,h,margin,normalized_gap");
    EXPECT_EQ(row.rfind("\"X^4-2\",500,2,", 0), 0u);
    EXPECT_EQ(row.substr(row.size() - 3), ",,,");
}

TEST(Cli, AnalyzeRejectsReducible) {
    const auto r = run("analyze --poly \"X^2-1\" --N 100");
    EXPECT_EQ(r.status, 3);
    EXPECT_TRUE(contains(r.out, "reducible: factor X-1")) << r.out;
}

TEST(Cli, AnalyzeRejectsUncertifiedUnlessOverridden) {
    EXPECT_EQ(run("analyze --poly \"X^4+1\" --N 100 --prime-budget 200").status, 3);
    EXPECT_EQ(run("analyze --poly \"X^4+1\" --N 100 --prime-budget 200 --allow-unknown --no-timestamp").status, 0);
}

TEST(Cli, InputErrorsExitThree) {
    EXPECT_EQ(run("analyze --poly \"2X^2+1\" --N 100").status, 3);
    EXPECT_EQ(run("analyze --poly \"X^2+1\" --grid 200,100").status, 3);
    EXPECT_EQ(run("analyze --poly \"X^2+1\" --N 100 --c 1/2").status, 3);
    EXPECT_EQ(run("analyze --N 100").status, 3);
    EXPECT_EQ(run("frobnicate").status, 3);
    EXPECT_EQ(run("verify --theorem 2 --poly \"X^2+X+1\" --N 200").status, 3);
}

TEST(Cli, FactoringBudgetExitsFour) {
    // f(1) is a product of two primes near 10^18
    const auto r = run("analyze --poly \"X^2+1000000000000000012000000000000000026\" --N 2 --rho-budget 100 --allow-unknown");
    EXPECT_EQ(r.status, 4) << r.out;
}

TEST(Cli, WarmCacheIsByteIdentical) {
    const auto dir = scratch("cache");
    const std::string args = "analyze --poly \"X^4-2\" --grid 100,300,600 --c 2 --no-timestamp --cache '" + dir.string() + "'";
    const auto cold = run(args);
    ASSERT_EQ(cold.status, 0) << cold.out;
    ASSERT_FALSE(std::filesystem::is_empty(dir));
    const auto warm = run(args);
    ASSERT_EQ(warm.status, 0);
    EXPECT_EQ(cold.out, warm.out);
    const auto plain = run("analyze --poly \"X^4-2\" --grid 100,300,600 --c 2 --no-timestamp");
    EXPECT_EQ(plain.out, cold.out);
    const auto env = run("analyze --poly \"X^4-2\" --grid 100,300,600 --c 2 --no-timestamp", "LCMLAB_CACHE='" + dir.string() + "'");
    EXPECT_EQ(env.out, cold.out);
    std::filesystem::remove_all(dir);
}

TEST(Cli, TimestampLineIsTheOnlyDifference) {
    const auto with = run("analyze --poly \"X^2+1\" --N 200");
    const auto without = run("analyze --poly \"X^2+1\" --N 200 --no-timestamp");
    ASSERT_EQ(with.status, 0);
    EXPECT_EQ(with.out.rfind("# lcmlab report generated ", 0), 0u);
    EXPECT_EQ(with.out.substr(with.out.find('\n') + 1), without.out);
}

TEST(Cli, JsonReportToFile) {
    const auto dir = scratch("json");
    std::filesystem::create_directories(dir);
    const auto path = dir / "r.json";
    const auto r = run("analyze --poly \"X^6-3\" --grid 200,400 --format json --no-timestamp --out '" + path.string() + "'");
    ASSERT_EQ(r.status, 0) << r.out;
    const auto j = nlohmann::json::parse(slurp(path));
    ASSERT_EQ(j["reports"].size(), 2u);
    EXPECT_EQ(j["reports"][1]["N"], 400);
    EXPECT_EQ(j["reports"][0]["poly"], "X^6-3");
    EXPECT_FALSE(j.contains("generated"));
    std::filesystem::remove_all(dir);
}

TEST(Cli, VerifyTheoremTwo) {
    const auto r = run("verify --theorem 2 --poly \"X^4-2\" --N 500");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_TRUE(contains(r.out, "h=2")) << r.out;
    EXPECT_TRUE(contains(r.out, "[ok]"));
}

TEST(Cli, VerifyTheoremThreeExact) {
    const auto r = run("verify --theorem 3 --poly \"X^4-2\" --N 300 --c 2 --exact");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_TRUE(contains(r.out, "h=5"));
    EXPECT_TRUE(contains(r.out, "exact=holds"));
}

TEST(Cli, VerifyTheoremFour) {
    const auto r = run("verify --theorem 4 --eta 2 --N 400");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_TRUE(contains(r.out, "h=4")) << r.out;
}

TEST(Cli, VerifyAlgNT) {
    const auto r = run("verify --lemma algnt --poly \"X^4-2\" --N 1000");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_TRUE(contains(r.out, "u=3, max mu_p over p>2N: ")) << r.out;
    const auto pos = r.out.find("p>2N: ") + 6;
    EXPECT_LE(std::stoi(r.out.substr(pos)), 2);
    EXPECT_TRUE(contains(r.out, "violations 0"));
}

TEST(Cli, VerifyAlgNTWithTooSmallUReportsViolation) {
    const auto r = run("verify --lemma algnt --poly \"X^4-2\" --N 500 --u 2");
    EXPECT_EQ(r.status, 2) << r.out;
    EXPECT_TRUE(contains(r.out, "mu_p=2"));
}

TEST(Cli, VerifySahAndZeroSum) {
    auto r = run("verify --lemma sah --poly \"X^6-3\" --N 500");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_TRUE(contains(r.out, "minimal violation-free c' = "));
    r = run("verify --lemma zerosum --poly \"X^6-2\"");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_TRUE(contains(r.out, "minimal u via pairing: 4"));
}

TEST(Cli, TuplesSah) {
    const auto r = run("tuples --filter sah --d 4");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(contains(r.out, "profiles: 13\n")) << r.out;
    EXPECT_TRUE(contains(r.out, "max-weight: 6\n"));
    EXPECT_TRUE(contains(r.out, "│   │       │   └── (3,2,1)\n"));
}

TEST(Cli, TuplesBaierDey) {
    const auto r = run("tuples --filter baierdey --eta 2");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(contains(r.out, "profiles: 6\n")) << r.out;
    EXPECT_TRUE(contains(r.out, "max-weight: 4\n"));
    EXPECT_TRUE(contains(r.out, "max-ratio: 2\n"));
}

TEST(Cli, TuplesGeneric) {
    const auto r = run("tuples --filter generic --d 4 --u 3");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(contains(r.out, "max-weight: 5\n")) << r.out;
    EXPECT_TRUE(contains(r.out, "exponent (d-u/2)(u-1): 5\n"));
}

TEST(Cli, TuplesJsonAndDot) {
    const auto j = nlohmann::json::parse(run("tuples --filter sah --d 4 --format json").out);
    EXPECT_EQ(j["count"], 13);
    EXPECT_EQ(j["max_weight"], 6);
    EXPECT_EQ(j["max_ratio"], "3");
    EXPECT_EQ(j["profiles"][0], nlohmann::json::array({1}));
    const auto dot = run("tuples --filter baierdey --eta 2 --format dot");
    EXPECT_EQ(dot.status, 0);
    EXPECT_TRUE(contains(dot.out, "\"(3)\" -> \"(3,1)\";"));
    EXPECT_EQ(run("tuples --filter nope").status, 3);
}

TEST(Cli, RootsShowsAlternatingZeroSum) {
    const auto r = run("roots --poly \"X^6-2\" --support 3");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_TRUE(contains(r.out, "minimal u: 4"));
    EXPECT_TRUE(contains(r.out, "[+1,-1,+1,+0,+0,+0]")) << r.out;
}

TEST(Cli, GrowthPrintsSequences) {
    const auto r = run("growth --poly \"X^2+1\" --grid 200,400");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_TRUE(contains(r.out, "N,q_gap,small_gap,"));
    EXPECT_TRUE(contains(r.out, "\n400,"));
    EXPECT_EQ(run("growth --poly \"X^2+1\" --grid 50,400").status, 3);
}
