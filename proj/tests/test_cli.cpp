#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "alfeld/mesh.hpp"

namespace {

struct CliRun {
    int status = -1;
    std::string out;
};

/// Runs the CLI with the given arguments, capturing stdout and stderr together.
CliRun cli(const std::string& args) {
    const std::string cmd = std::string(ALFELD_CLI_PATH) + " " + args + " 2>&1";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, UsageErrorsExitWithTwo) {
    EXPECT_EQ(cli("").status, 2);
    EXPECT_EQ(cli("frobnicate").status, 2);
    EXPECT_EQ(cli("convergence").status, 2);  // --method is required
    EXPECT_EQ(cli("convergence --method bdm --levels 1").status, 2);
    EXPECT_EQ(cli("convergence --method jkm --levels 2,1").status, 2);
    EXPECT_EQ(cli("solve --method jkm").status, 2);
    EXPECT_EQ(cli("solve --method jkm --cube 1 --material iso:E=1,nu=0.7").status, 2);
    EXPECT_EQ(cli("solve --method jkm --mesh /nonexistent.mesh").status, 2);
    EXPECT_EQ(cli("--help").status, 0);
}

TEST(Cli, ConvergenceCsvToStdoutAndFile) {
    CliRun r = cli("convergence --method p0 --levels 1,2");
    ASSERT_EQ(r.status, 0) << r.out;
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line.rfind("level,n,h,", 0), 0u) << line;
    int rows = 0;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#') ++rows;
    EXPECT_EQ(rows, 2);

    const std::string path = ::testing::TempDir() + "alfeld_cli_conv.csv";
    r = cli("--threads 2 convergence --method reduced --levels 1,2 --out " + path);
    ASSERT_EQ(r.status, 0) << r.out;
    const std::string csv = slurp(path);
    EXPECT_EQ(csv.rfind("level,n,h,", 0), 0u);
    EXPECT_NE(r.out.find("rate_sA"), std::string::npos);  // table on stdout
    std::remove(path.c_str());
}

TEST(Cli, SolveOnMeshFileWritesVtk) {
    const std::string mesh = ::testing::TempDir() + "alfeld_cli.mesh";
    const std::string vtk = ::testing::TempDir() + "alfeld_cli.vtk";
    {
        std::ofstream f(mesh);
        alfeld::write_mesh(f, alfeld::generate_cube_mesh(1));
    }
    const CliRun r = cli("solve --method jkm --mesh " + mesh + " --postprocess --vtk " + vtk);
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("err_sigma_A"), std::string::npos);
    EXPECT_NE(r.out.find("err_ustar_L2"), std::string::npos);
    EXPECT_EQ(slurp(vtk).rfind("# vtk DataFile Version 3.0", 0), 0u);
    std::remove(mesh.c_str());
    std::remove(vtk.c_str());

    // malformed mesh: parse error, usage exit status
    {
        std::ofstream f(mesh);
        f << "3 4 1\n0 0 0\n1 0 0\n";
    }
    const CliRun bad = cli("solve --method jkm --mesh " + mesh);
    EXPECT_EQ(bad.status, 2);
    EXPECT_NE(bad.out.find("line 3"), std::string::npos) << bad.out;
    std::remove(mesh.c_str());
}

TEST(Cli, VerifySummary) {
    const std::string path = ::testing::TempDir() + "alfeld_cli_summary.txt";
    const CliRun r = cli("verify --ndim 2 --trials 5 --bgg-fields 5 --no-infsup --seed 3 --summary " + path);
    ASSERT_EQ(r.status, 0) << r.out;
    const std::string s = slurp(path);
    EXPECT_FALSE(s.empty());
    EXPECT_EQ(s.find(" FAIL "), std::string::npos) << s;
    std::remove(path.c_str());
}
