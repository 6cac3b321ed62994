#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "nrlab_cli/commands.hpp"

using namespace nrlab;

namespace {

struct Captured {
    int code;
    std::string out;
    std::string err;
};

Captured call(std::vector<std::string> args) {
    args.insert(args.begin(), "nrlab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(NRLAB_TEST_DATA) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Runs the installed binary through the shell and returns its exit status.
int shell(const std::string& args, std::string* output = nullptr) {
    const std::string cmd = std::string(NRLAB_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return -1;
    std::array<char, 4096> buf{};
    std::string text;
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) text += buf.data();
    const int status = pclose(pipe);
    if (output) *output = text;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, HelpAndVersion) {
    EXPECT_EQ(call({"--help"}).code, cli::exit_ok);
    const Captured v = call({"--version"});
    EXPECT_EQ(v.code, cli::exit_ok);
    EXPECT_FALSE(v.out.empty());
}

TEST(Cli, UnknownSubcommandOrFlag) {
    EXPECT_EQ(call({"frobnicate"}).code, cli::exit_usage);
    EXPECT_EQ(call({"certify", "--bogus"}).code, cli::exit_usage);
    EXPECT_EQ(call({}).code, cli::exit_usage);
}

TEST(Cli, CertifyNormSandwich) {
    const Captured c = call({"certify", "--ineq", "norm-sandwich", "--dim", "4", "--trials", "100", "--seed", "7"});
    EXPECT_EQ(c.code, cli::exit_ok) << c.err;
    EXPECT_NE(c.out.find("\"holds\": 100"), std::string::npos);
    EXPECT_NE(c.out.find("\"violated\": 0"), std::string::npos);
    EXPECT_EQ(c.out.find("wall_time_s"), std::string::npos);
}

TEST(Cli, CertifyUnknownIdListsValidIds) {
    const Captured c = call({"certify", "--ineq", "nope"});
    EXPECT_EQ(c.code, cli::exit_usage);
    EXPECT_NE(c.err.find("norm-sandwich"), std::string::npos);
}

TEST(Cli, CertifyCsvToFile) {
    const std::string path = ::testing::TempDir() + "nrlab_cli_report.csv";
    const Captured c =
        call({"certify", "--ineq", "kittaneh-chain", "--trials", "5", "--format", "csv", "--report", path});
    EXPECT_EQ(c.code, cli::exit_ok) << c.err;
    const std::string csv = slurp(path);
    EXPECT_EQ(csv.rfind("id,trials,holds", 0), 0u);
    EXPECT_NE(c.out.find("kittaneh-chain"), std::string::npos);
    std::remove(path.c_str());
}

TEST(Cli, CertifyBadFormat) {
    EXPECT_EQ(call({"certify", "--format", "xml", "--trials", "1"}).code, cli::exit_usage);
}

TEST(Cli, Examples) {
    const Captured c = call({"examples"});
    EXPECT_EQ(c.code, cli::exit_ok);
    EXPECT_NE(c.out.find("example-1"), std::string::npos);
    EXPECT_NE(c.out.find("example-2"), std::string::npos);
    EXPECT_NE(c.out.find("14.520797"), std::string::npos);
}

TEST(Cli, WorkedExampleChains) {
    const auto ex = cli::worked_examples();
    ASSERT_EQ(ex.size(), 2u);
    for (const auto& e : ex) {
        EXPECT_TRUE(e.chain_holds()) << e.name;
        for (const auto& v : e.values) EXPECT_TRUE(v.truncates_to_reference()) << e.name << " " << v.label;
    }
}

TEST(Cli, RadiusOfNilpotent) {
    const Captured c = call({"radius", "--matrix", data("nilpotent.json")});
    EXPECT_EQ(c.code, cli::exit_ok) << c.err;
    EXPECT_NE(c.out.find("0.5"), std::string::npos) << c.out;
}

TEST(Cli, RadiusMalformedFile) {
    const Captured c = call({"radius", "--matrix", data("malformed.json")});
    EXPECT_EQ(c.code, cli::exit_usage);
    EXPECT_NE(c.err.find("line 4, column 3"), std::string::npos) << c.err;
}

TEST(Cli, RadiusMissingFile) {
    EXPECT_EQ(call({"radius", "--matrix", data("absent.json")}).code, cli::exit_usage);
}

TEST(Cli, SearchSeedInstance) {
    const Captured c = call({"search", "--ineq", "norm-sandwich", "--restarts", "0"});
    EXPECT_EQ(c.code, cli::exit_ok) << c.err;
}

TEST(Cli, SearchWritesDocument) {
    const std::string path = ::testing::TempDir() + "nrlab_cli_search.json";
    const Captured c =
        call({"search", "--ineq", "sum-new-bound", "--restarts", "2", "--steps", "5", "--out", path});
    EXPECT_EQ(c.code, cli::exit_ok) << c.err;
    const std::string doc = slurp(path);
    EXPECT_NE(doc.find("\"A\""), std::string::npos);
    EXPECT_NE(doc.find("sum-new-bound"), std::string::npos);
    std::remove(path.c_str());
}

TEST(Cli, SearchFindsGammaViolation) {
    cli::SearchOptions opts;
    opts.id = "gamma-product";
    opts.restarts = 4;
    opts.steps = 30;
    const cli::SearchOutcome outcome = cli::search_min_slack(opts);
    EXPECT_LT(outcome.normalized_slack, 1.0);
    const Captured c = call({"search", "--ineq", "gamma-product", "--restarts", "10", "--steps", "20"});
    EXPECT_EQ(c.code, cli::exit_violated) << c.out << c.err;
}

TEST(Cli, BinaryExitCodes) {
    std::string text;
    EXPECT_EQ(shell("--version", &text), 0) << text;
    EXPECT_EQ(shell("certify --ineq nope", &text), 1) << text;
    EXPECT_EQ(shell("radius --matrix " + data("nilpotent.json"), &text), 0) << text;
    EXPECT_EQ(shell("radius --matrix " + data("malformed.json"), &text), 1) << text;
    EXPECT_EQ(shell("certify --ineq norm-sandwich --trials 3", &text), 0) << text;
    EXPECT_EQ(shell("search --ineq gamma-product --restarts 10 --steps 20", &text), 2) << text;
}

TEST(Cli, SeedEnvironmentVariable) {
    std::string a, b, c;
    EXPECT_EQ(shell("certify --ineq power-mix --trials 3", &a), 0);
    EXPECT_EQ(shell("certify --ineq power-mix --trials 3 --seed 11", &b), 0);
    const std::string env = "NUMRAD_SEED=11 ";
    FILE* pipe = popen((env + NRLAB_CLI_PATH + " certify --ineq power-mix --trials 3").c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) c += buf.data();
    EXPECT_EQ(pclose(pipe), 0);
    EXPECT_EQ(b, c);
    EXPECT_NE(a, b);
    FILE* bad = popen((std::string("NUMRAD_SEED=abc ") + NRLAB_CLI_PATH + " examples 2>/dev/null").c_str(), "r");
    ASSERT_NE(bad, nullptr);
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), bad)) {
    }
    const int status = pclose(bad);
    EXPECT_EQ(WEXITSTATUS(status), 1);
}
