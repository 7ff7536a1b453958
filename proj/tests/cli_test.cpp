#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "polarity_mc/cli.hpp"
#include "polarity_mc/model_io.hpp"
#include "support/generators.hpp"

using namespace polarity_mc;
using namespace polarity_mc::testing;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("polarity_mc_cli_" + name);
}

}  // namespace

TEST(Cli, SatOnSecondFigureModel) {
    const Result r = run_cli({"sat", "--model", fixture("fig1_m2.json"), "--point", "x2", "--formula", "q", "--side", "x"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "true\n");
    const Result f = run_cli({"sat", "--model", fixture("fig1_m1.json"), "--point", "y1", "--formula", "q", "--side", "x"});
    EXPECT_EQ(f.code, 1);
    EXPECT_EQ(f.out, "false\n");
}

TEST(Cli, SatNeedsAValidSide) {
    EXPECT_EQ(run_cli({"sat", "--model", fixture("fig1_m1.json"), "--point", "a1", "--formula", "p"}).code, 2);
    const Result r = run_cli({"sat", "--model", fixture("fig1_m1.json"), "--point", "a1", "--formula", "p", "--side", "q"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("--side"), std::string::npos);
    // a point of the other sort
    EXPECT_EQ(run_cli({"sat", "--model", fixture("fig1_m1.json"), "--point", "x1", "--formula", "p", "--side", "a"}).code,
              2);
}

TEST(Cli, CheckSequent) {
    const Result r = run_cli({"check", "--model", fixture("fig1_m1.json"), "--sequent", "p |- q"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "false\n");
    EXPECT_EQ(run_cli({"check", "--model", fixture("fig1_m1.json"), "--sequent", "q |- p"}).code, 0);
    EXPECT_EQ(run_cli({"check", "--model", fixture("fig1_m1.json"), "--sequent", "q"}).code, 2);
}

TEST(Cli, HmVerifyFigureOne) {
    const Result r = run_cli({"hm-verify", "--left", fixture("fig1_m1.json"), "--right", fixture("fig1_m2.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "agreement\n");
    const Result j =
        run_cli({"hm-verify", "--json", "--left", fixture("fig1_m1.json"), "--right", fixture("fig1_m2.json")});
    EXPECT_EQ(j.out, "{\n  \"agreement\": true,\n  \"discrepancies\": []\n}\n");
}

TEST(Cli, LatticeGolden) {
    const Result r = run_cli({"lattice", "--model", fixture("fig1_m1.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out,
              "3 concepts\n"
              "c0: {} {x1,y1}\n"
              "c1: {b1} {x1}\n"
              "c2: {a1,b1} {}\n"
              "c0 < c1\n"
              "c1 < c2\n");
}

TEST(Cli, LatticeDot) {
    const auto dot = temp_path("lattice.dot");
    const Result r = run_cli({"lattice", "--model", fixture("chain3.json"), "--dot", dot.string()});
    EXPECT_EQ(r.code, 0);
    const std::string text = read_file(dot);
    EXPECT_EQ(text.rfind("digraph", 0), 0U);
    std::filesystem::remove(dot);
}

TEST(Cli, SimulationGolden) {
    const Result r =
        run_cli({"sim", "--left", fixture("kripke_a_lifted.json"), "--right", fixture("kripke_b_lifted.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "S = {(v_A,t_A)}\nT = {(v_X,t_X)}\n");
    const Result b = run_cli({"bisim", "--left", fixture("fig1_m1.json"), "--right", fixture("fig1_m2.json")});
    EXPECT_EQ(b.out, "S = {}\nT = {}\n");
    const Result j = run_cli({"sim", "--json", "--left", fixture("chain3.json"), "--right", fixture("chain3.json")});
    EXPECT_NE(j.out.find("\"S\""), std::string::npos);
    EXPECT_NE(j.out.find("\"T\""), std::string::npos);
}

TEST(Cli, Bisimilar) {
    const Result r = run_cli({"bisimilar", "--left", fixture("chain3.json"), "--right", fixture("chain3.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "objects = {(a,a), (b,b), (c,c)}\nattributes = {(x,x), (y,y)}\n");
}

TEST(Cli, TranslateGolden) {
    EXPECT_EQ(run_cli({"translate", "--formula", "dia p", "--sort", "m"}).out, "forall g0:G. (PA_p(g0) -> Rdia(m,g0))\n");
    EXPECT_EQ(run_cli({"translate", "--formula", "box p", "--sort", "g"}).out, "forall m0:M. (PX_p(m0) -> Rbox(g,m0))\n");
    EXPECT_EQ(run_cli({"translate", "--formula", "p", "--sort", "x"}).code, 2);
}

TEST(Cli, ParseCommand) {
    EXPECT_EQ(run_cli({"parse", "--formula", "((p)) | q & r"}).out, "p | q & r\n");
    EXPECT_EQ(run_cli({"parse", "--sequent", "p|-q"}).out, "p |- q\n");
    const Result bad = run_cli({"parse", "--formula", "p &"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("1:4"), std::string::npos);
}

TEST(Cli, ValidateAndInvalidModels) {
    EXPECT_EQ(run_cli({"validate", "--model", fixture("fig1_m1.json")}).out, "ok\n");
    const Result v = run_cli({"validate", "--model", fixture("bad_compat.json")});
    EXPECT_EQ(v.code, 1);
    EXPECT_NE(v.out.find("R_box^(0)[x]"), std::string::npos);
    const Result s = run_cli({"sat", "--model", fixture("bad_compat.json"), "--point", "a", "--formula", "top", "--side", "a"});
    EXPECT_EQ(s.code, 2);
    EXPECT_NE(s.err.find("bad_compat.json"), std::string::npos);
    const Result missing = run_cli({"validate", "--model", fixture("nope.json")});
    EXPECT_EQ(missing.code, 2);
}

TEST(Cli, MalformedModelNamesLine) {
    const auto path = temp_path("broken.json");
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        std::fputs("{\n  \"A\": [\"a\"],\n  \"X\": [\"x\"\n}\n", f);
        std::fclose(f);
    }
    const Result r = run_cli({"validate", "--model", path.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("broken.json:4:"), std::string::npos) << r.err;
    std::filesystem::remove(path);
}

TEST(Cli, FilterIdealRoundTrip) {
    const auto out = temp_path("fi.json");
    const Result r = run_cli({"fi-extend", "--model", fixture("chain3.json"), "--out", out.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(run_cli({"validate", "--model", out.string()}).out, "ok\n");
    EXPECT_TRUE(std::filesystem::exists(out.string() + ".legend.json"));
    EXPECT_EQ(run_cli({"lattice", "--model", out.string()}).code, 0);
    std::filesystem::remove(out);
    std::filesystem::remove(out.string() + ".legend.json");
}

TEST(Cli, LiftMatchesFixture) {
    const Result r = run_cli({"lift", "--kripke", fixture("kripke_a.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, read_file(fixture("kripke_a_lifted.json")));
}

TEST(Cli, Ultrapower) {
    const auto out = temp_path("up.json");
    const Result r = run_cli({"ultrapower", "--model", fixture("fig1_m2.json"), "--k", "2", "--k0", "0", "--out", out.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "[a2,a2] -> a2\n[x2,x2] -> x2\n");
    EXPECT_EQ(run_cli({"validate", "--model", out.string()}).out, "ok\n");
    std::filesystem::remove(out);
    EXPECT_EQ(run_cli({"ultrapower", "--model", fixture("fig1_m2.json"), "--k", "2", "--k0", "5"}).code, 2);
}

TEST(Cli, CapsFromEnvironment) {
    ::setenv("POLARITY_MC_CAPS", "lattice=2", 1);
    const Result r = run_cli({"lattice", "--model", fixture("fig1_m1.json")});
    ::unsetenv("POLARITY_MC_CAPS");
    EXPECT_EQ(r.code, 2);
    ::setenv("POLARITY_MC_CAPS", "lattice=oops", 1);
    const Result bad = run_cli({"lattice", "--model", fixture("fig1_m1.json")});
    ::unsetenv("POLARITY_MC_CAPS");
    EXPECT_EQ(bad.code, 2);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"bogus"}).code, 2);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, OutputIsDeterministic) {
    const std::vector<std::string> args{"sim", "--json", "--left", fixture("kripke_a_lifted.json"), "--right",
                                        fixture("kripke_b_lifted.json")};
    EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST(Cli, InstalledBinary) {
    const std::string cmd = std::string(POLARITY_MC_BIN) + " sat --model " + fixture("fig1_m2.json") +
                            " --point x2 --formula q --side x";
    std::FILE* pipe = ::popen(cmd.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    char buffer[64] = {};
    const std::size_t n = std::fread(buffer, 1, sizeof buffer - 1, pipe);
    const int status = ::pclose(pipe);
    EXPECT_EQ(std::string(buffer, n), "true\n");
    EXPECT_EQ(WEXITSTATUS(status), 0);
}
