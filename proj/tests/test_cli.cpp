#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mmc/io.hpp"
#include "mmc/oracle.hpp"

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args) {
    std::string cmd = std::string(MMC_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(MMC_DATA_DIR) + "/" + name; }

size_t lines(const std::string& s) {
    size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

std::string tmp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("mmc_cli_test_" + name)).string();
}

}  // namespace

TEST(Cli, SolveYesAndNo) {
    CliRun yes = run("solve --ell 3 " + data("c6.gr"));
    EXPECT_EQ(yes.code, 0);
    EXPECT_EQ(yes.out.rfind("parts 3\n", 0), 0u);
    for (const char* engine : {"branching", "treewidth", "oracle"}) {
        CliRun no = run(std::string("solve --engine ") + engine + " --ell 2 " + data("k3.gr"));
        EXPECT_EQ(no.code, 1) << engine;
        EXPECT_EQ(no.out, "NO\n");
    }
}

TEST(Cli, EnginesAgreeOnMaxParts) {
    for (const char* f : {"c6.gr", "k4.gr", "q3.gr", "cluster12.gr"}) {
        CliRun a = run(std::string("maxparts --engine branching ") + data(f));
        CliRun b = run(std::string("maxparts --engine treewidth ") + data(f));
        EXPECT_EQ(a.code, 0);
        EXPECT_EQ(a.out.substr(0, a.out.find('\n')), b.out.substr(0, b.out.find('\n'))) << f;
    }
}

TEST(Cli, UsageAndFileErrors) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("bogus").code, 2);
    EXPECT_EQ(run("solve --ell 2 /nonexistent/file.gr").code, 2);
    EXPECT_EQ(run("solve --engine nope --ell 2 " + data("c6.gr")).code, 2);
    EXPECT_EQ(run("enumerate --ell 2 --param cluster --modulator x " + data("c6.gr")).code, 2);
}

TEST(Cli, EnumerationIsByteStable) {
    CliRun a = run("enumerate --ell 3 " + data("cluster12.gr"));
    CliRun b = run("enumerate --ell 3 " + data("cluster12.gr"));
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    std::ifstream in(data("cluster12.gr"));
    std::stringstream ss;
    ss << in.rdbuf();
    mmc::Graph g = mmc::parse_graph(ss.str(), mmc::GraphFormat::PaceGr);
    EXPECT_EQ(lines(a.out), mmc::all_multicuts(g, 3).size());
}

TEST(Cli, ParameterisedEnumerationsMatch) {
    CliRun plain = run("enumerate --ell 3 " + data("cluster12.gr"));
    for (const char* param : {"vc", "cocluster", "cluster"}) {
        CliRun r = run(std::string("enumerate --ell 3 --param ") + param + " " + data("cluster12.gr"));
        EXPECT_EQ(r.code, 0) << param;
        // streams differ in order only
        std::vector<std::string> x, y;
        std::istringstream a(plain.out), b(r.out);
        for (std::string l; std::getline(a, l);) x.push_back(l);
        for (std::string l; std::getline(b, l);) y.push_back(l);
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        EXPECT_EQ(x, y) << param;
    }
}

TEST(Cli, EmptyEnumerationExitsOne) {
    CliRun r = run("enumerate --ell 2 " + data("k4.gr"));
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, KernelizeSubcubic) {
    CliRun k = run("kernelize --subcubic --ell 2 " + data("k4.gr"));
    EXPECT_EQ(k.code, 0);
    EXPECT_EQ(k.out.rfind("KERNEL 4<", 0), 0u);
    CliRun s = run("kernelize --subcubic --ell 1 " + data("k4.gr"));
    EXPECT_EQ(s.code, 0);
    EXPECT_EQ(s.out.rfind("SOLVED", 0), 0u);
}

TEST(Cli, GenerateThenVerify) {
    std::string out = tmp_path("k4_is.gr");
    CliRun g = run("generate is2mmc --k 1 -o " + out + " " + data("k4.gr"));
    EXPECT_EQ(g.code, 0);
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "p tw 48 60");
    CliRun v = run("verify --reduction is2mmc --k 1 " + data("k4.gr"));
    EXPECT_EQ(v.code, 0);
    EXPECT_EQ(v.out.rfind("PASS", 0), 0u);
    EXPECT_EQ(run("verify --reduction sp2mmc " + data("sp_no.sp")).code, 0);
    std::filesystem::remove(out);
}

TEST(Cli, RandomGeneratorIsSeeded) {
    CliRun a = run("generate random --n 12 --p 0.3 --seed 5");
    CliRun b = run("generate random --n 12 --p 0.3 --seed 5");
    CliRun c = run("generate random --n 12 --p 0.3 --seed 6");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, c.out);
}

TEST(Cli, VerifyAcrossJobs) {
    std::string files;
    for (const char* f : {"c6.gr", "k3.gr", "k4.gr", "q3.gr", "cluster12.gr"}) files += " " + data(f);
    CliRun one = run("verify --jobs 1" + files);
    CliRun four = run("verify --jobs 4" + files);
    EXPECT_EQ(one.code, 0);
    EXPECT_EQ(one.out, four.out);
    EXPECT_EQ(lines(one.out), 5u);
}
