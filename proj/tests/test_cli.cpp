// Runs the command-line tool and checks exit codes and output.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <sys/wait.h>

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run(const std::string& args) {
    const std::string cmd = std::string(COHOMOLAB_CLI) + " " + args + " 2>/dev/null";
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST(Cli, CheckRelation) {
    const CliResult r = run("check-relation --dim 3");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"command\": \"check-relation\""), std::string::npos);
    EXPECT_NE(r.out.find("\"ok\": true"), std::string::npos);
}

TEST(Cli, ClassifyCocycleLine) {
    const CliResult r = run("classify-equivariant --dim 2 --order 3 --delta 2 --cocycle --solver both");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"matched_paper_case\": \"c\""), std::string::npos);
    EXPECT_NE(r.out.find("\"solvers_agree\": true"), std::string::npos);
    EXPECT_NE(r.out.find("\"dimension\": 1"), std::string::npos);
}

TEST(Cli, TextFormat) {
    const CliResult r = run("classify-equivariant --dim 2 --order 4 --delta 1 --format text");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("dimension 1, case b"), std::string::npos);
}

TEST(Cli, TableIsByteIdentical) {
    const CliResult a = run("cohomology-table --dim 2 --kmax 2 --max-vf-degree 3");
    const CliResult b = run("cohomology-table --dim 2 --kmax 2 --max-vf-degree 3");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.find("millis"), std::string::npos);
    EXPECT_NE(run("cohomology-table --dim 2 --kmax 1 --timing").out.find("millis"), std::string::npos);
}

TEST(Cli, VerifyAndCoboundary) {
    EXPECT_EQ(run("verify-cocycle --name c2 --dim 2 --order 3 --max-vf-degree 3").code, 0);
    EXPECT_EQ(run("coboundary-test --name c1 --dim 2 --order 2").code, 0);
}

TEST(Cli, CandidateFile) {
    const std::string path = testing::TempDir() + "cohomolab_candidates.txt";
    {
        std::ofstream f(path);
        f << "# only D\n(1) * dx1 * dxi1 + (1) * dx2 * dxi2\n";
    }
    const CliResult r = run("coboundary-test --name c1 --dim 2 --order 2 --candidates " + path);
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"candidate_count\": 1"), std::string::npos);
    EXPECT_EQ(run("coboundary-test --name c1 --dim 2 --order 2 --candidates /nonexistent/file").code, 2);
}

TEST(Cli, Quantization) {
    const CliResult half = run("quantization-cocycle --dim 2 --order 2 --lambda 1/2 --max-vf-degree 3");
    EXPECT_EQ(half.code, 0);
    EXPECT_NE(half.out.find("\"second\""), std::string::npos);
    EXPECT_EQ(run("quantization-cocycle --dim 2 --order 2 --lambda 0 --max-vf-degree 3").code, 0);
}

TEST(Cli, Properties) { EXPECT_EQ(run("properties --seed 3").code, 0); }

TEST(Cli, ConfigurationErrors) {
    EXPECT_EQ(run("check-relation --dim 1").code, 2);
    EXPECT_EQ(run("check-relation --dim 9").code, 2);
    EXPECT_EQ(run("classify-equivariant --dim 2 --order 2 --delta 3").code, 2);
    EXPECT_EQ(run("verify-cocycle --name nope --order 2").code, 2);
    EXPECT_EQ(run("quantization-cocycle --order 2 --lambda 1/0").code, 2);
    EXPECT_EQ(run("no-such-command").code, 2);
    EXPECT_EQ(run("").code, 2);
}
