#include "ensys_cli/cli.hpp"

#include "ensys/atomic_system.hpp"
#include "ensys/compiler.hpp"
#include "ensys/generators.hpp"
#include "ensys/normalize.hpp"
#include "ensys/parser.hpp"
#include "ensys/solver.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace ensys;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name, const std::string& content) {
    fs::path p = fs::temp_directory_path() / ("ensys_cli_" + name);
    std::ofstream(p) << content;
    return p;
}

// Compares against tests/cli/golden/<name>; ENSYS_UPDATE_GOLDEN=1 rewrites it.
void golden(const std::string& name, const std::string& actual) {
    const fs::path path = fs::path(ENSYS_GOLDEN_DIR) / name;
    if (std::getenv("ENSYS_UPDATE_GOLDEN")) {
        std::ofstream(path) << actual;
        return;
    }
    ASSERT_TRUE(fs::exists(path)) << path;
    EXPECT_EQ(actual, read(path)) << name;
}

}  // namespace

TEST(CliGolden, CompileFlatten) {
    auto r = run({"compile", "x^2-1", "--mode", "flatten"});
    EXPECT_EQ(r.code, 0);
    golden("compile_flatten.txt", r.out);
}

TEST(CliGolden, CompileLemma1) {
    auto r = run({"compile", "x^2-1", "--mode", "lemma1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("@vars 8"), std::string::npos);
    golden("compile_lemma1.txt", r.out);
}

TEST(CliGolden, CompileJson) {
    auto r = run({"compile", "x-y", "--json"});
    EXPECT_EQ(r.code, 0);
    golden("compile_flatten.json", r.out);
}

TEST(CliGolden, GenerateTheorem2) {
    auto r = run({"generate", "thm2", "--n", "5", "--m", "7"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("recommended box: N, B=5"), std::string::npos);
    golden("generate_thm2.txt", r.out);
}

TEST(CliGolden, GenerateObservation) {
    auto r = run({"generate", "observation", "--n", "4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("recommended box: Z, B=256"), std::string::npos);
    golden("generate_observation.txt", r.out);
}

TEST(CliGolden, GenerateTheorem4Json) {
    auto r = run({"generate", "thm4", "--n", "5", "--json"});
    EXPECT_EQ(r.code, 0);
    golden("generate_thm4.json", r.out);
}

TEST(CliGolden, VerifyLemma2) {
    auto r = run({"verify", "lemma2", "--max-k", "4"});
    EXPECT_EQ(r.code, 0);
    golden("verify_lemma2.txt", r.out);
}

TEST(CliGolden, VerifyConjectureBound) {
    auto r = run({"verify", "conjecture-bound", "--n", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("at x3 (equality)"), std::string::npos);
    golden("verify_conjecture_bound.txt", r.out);
}

TEST(Cli, CompileErrors) {
    auto zero = run({"compile", "0"});
    EXPECT_EQ(zero.code, 1);
    EXPECT_NE(zero.err.find("zero polynomial"), std::string::npos);
    EXPECT_EQ(run({"compile", "x +"}).code, 1);
    EXPECT_EQ(run({"compile", "x", "--mode", "other"}).code, 1);
    EXPECT_EQ(run({"compile", "(2*x+1)^2+(2*y)^2-125", "--mode", "lemma1"}).code, 1);
    EXPECT_EQ(run({"compile", "x^2-1", "--pad", "2"}).code, 1);
    EXPECT_EQ(run({"compile", "x^2-1", "--pad", "6"}).code, 0);
}

TEST(Cli, GenerateBoundViolationEchoesInequality) {
    auto r = run({"generate", "thm3", "--n", "2", "--m", "12"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("m >= 11 + 2[log2(2n-1)] = 13"), std::string::npos) << r.err;
    EXPECT_EQ(run({"generate", "thm9", "--n", "2"}).code, 1);
    EXPECT_EQ(run({"generate", "thm2"}).code, 1);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"count"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, CountExamples) {
    auto t2 = scratch("t2.txt", run({"generate", "thm2", "--n", "2", "--m", "3"}).out);
    auto r = run({"count", t2.string(), "--bound", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("count: 2\n"), std::string::npos);

    auto obs = scratch("obs.txt", run({"generate", "observation", "--n", "2"}).out);
    auto o = run({"count", obs.string(), "--domain", "Z", "--bound", "4", "--json"});
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("\"count\": \"2\""), std::string::npos);
    EXPECT_NE(o.out.find("\"bound_flag\": true"), std::string::npos);

    auto en = scratch("en.txt", run({"generate", "fullEn", "--n", "2"}).out);
    EXPECT_NE(run({"count", en.string(), "--bound", "3"}).out.find("count: 0\n"), std::string::npos);

    EXPECT_EQ(run({"count", "/nonexistent/system.txt", "--bound", "3"}).code, 1);
    EXPECT_EQ(run({"count", en.string(), "--bound", "-3"}).code, 1);
    EXPECT_EQ(run({"count", en.string(), "--bound", "3", "--domain", "Q"}).code, 1);
    auto bad = scratch("bad.txt", "x1 ++ x2\n");
    auto b = run({"count", bad.string(), "--bound", "3"});
    EXPECT_EQ(b.code, 1);
    EXPECT_NE(b.err.find("line 1"), std::string::npos);
}

TEST(Cli, BudgetExhaustionExitsTwo) {
    auto free = scratch("free.txt", "@vars 4\nx1 + x2 = x3\n");
    auto r = run({"count", free.string(), "--bound", "50", "--budget", "5"});
    EXPECT_EQ(r.code, 2);
    ::setenv("ENSYS_BUDGET", "5", 1);
    auto e = run({"count", free.string(), "--bound", "50"});
    ::unsetenv("ENSYS_BUDGET");
    EXPECT_EQ(e.code, 2);
}

TEST(Cli, CountReadsJsonSystems) {
    auto js = scratch("t4.json", "{\"n\": 2, \"equations\": [{\"kind\": \"add\", \"i\": 1, \"j\": 1, \"k\": 2},"
                                 " {\"kind\": \"mul\", \"i\": 1, \"j\": 1, \"k\": 2}]}");
    auto r = run({"count", js.string(), "--domain", "Z", "--bound", "4", "--keep"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("(2, 4)"), std::string::npos);
}

TEST(Cli, VerifySuites) {
    auto j = run({"verify", "jacobi", "--max", "50"});
    EXPECT_EQ(j.code, 0);
    EXPECT_EQ(std::count(j.out.begin(), j.out.end(), '\n'), 51);
    EXPECT_NE(j.out.find("jacobi: 50 rows, all PASS"), std::string::npos);
    EXPECT_EQ(run({"verify", "two-squares", "--max", "4"}).code, 0);
    EXPECT_EQ(run({"verify", "thm5", "--max", "16"}).code, 0);
    EXPECT_EQ(run({"verify", "thm5", "--max", "600"}).code, 1);
    EXPECT_EQ(run({"verify", "jacobi", "--max", "20000"}).code, 1);
    EXPECT_EQ(run({"verify", "nothing"}).code, 1);
}

// The CLI is a thin wrapper: its systems and counts are the library's.
TEST(Cli, MatchesLibraryCalls) {
    for (const auto& [family, n] : std::vector<std::pair<std::string, int>>{
             {"thm2", 9}, {"thm3", 2}, {"thm4", 7}, {"observation", 3}, {"thm5", 5}, {"thm1", 18}}) {
        auto r = run({"generate", family, "--n", std::to_string(n)});
        ASSERT_EQ(r.code, 0) << family << r.err;
        EnSystem fromCli = from_text(r.out);
        EnSystem direct;
        if (family == "thm2") direct = gen_theorem2(n, theorem2_min_m(n)).system;
        if (family == "thm3") direct = gen_theorem3(n, theorem3_min_m(n)).system;
        if (family == "thm4") direct = gen_theorem4(n, theorem4_min_m(n)).system;
        if (family == "observation") direct = gen_observation(n).system;
        if (family == "thm5") direct = gen_theorem5(n).system;
        if (family == "thm1") {
            EnSystem psi(3);
            psi.add(AtomicEquation::add(3, 3, 3));
            psi.add(AtomicEquation::add(1, 3, 2));
            direct = gen_theorem1(psi, 1, 2, n).system;
        }
        EXPECT_EQ(fromCli, direct) << family;
    }
    auto flat = from_text(run({"compile", "x^2+y^2-25"}).out);
    EXPECT_EQ(flat, flatten(split_nonneg(parse_polynomial("x^2+y^2-25"))).system);

    auto file = scratch("t3.txt", run({"generate", "thm3", "--n", "3"}).out);
    auto r = run({"count", file.string(), "--bound", "3125"});
    Generated g = gen_theorem3(3, theorem3_min_m(3));
    EXPECT_NE(r.out.find("count: " + to_string(count_solutions(g.system, *g.recommended_box).count) + "\n"),
              std::string::npos);

    auto t4 = scratch("t4.txt", run({"generate", "thm4", "--n", "9"}).out);
    auto c4 = run({"count", t4.string(), "--domain", "Z", "--bound", "9", "--bounded", "3,4"});
    EXPECT_NE(c4.out.find("count: 9\n"), std::string::npos) << c4.out;

    auto pre = scratch("xy.txt", run({"compile", "x-y"}).out);
    auto cx = run({"count", pre.string(), "--bound", "5", "--inputs", "2"});
    EXPECT_NE(cx.out.find("count: 6\n"), std::string::npos) << cx.out;
}

TEST(Cli, ThreadsDoNotChangeOutput) {
    auto file = scratch("t2b.txt", run({"generate", "thm2", "--n", "12"}).out);
    auto one = run({"count", file.string(), "--bound", "12", "--keep", "--threads", "1"});
    auto four = run({"count", file.string(), "--bound", "12", "--keep", "--threads", "4"});
    auto strip = [](std::string s) { return s.substr(0, s.find("nodes:")) + s.substr(s.find('\n', s.find("nodes:"))); };
    EXPECT_EQ(strip(one.out), strip(four.out));
}

TEST(Cli, OutputFile) {
    auto path = fs::temp_directory_path() / "ensys_cli_out.txt";
    auto r = run({"generate", "thm2", "--n", "3", "-o", path.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(from_text(read(path)), gen_theorem2(3, theorem2_min_m(3)).system);
}
