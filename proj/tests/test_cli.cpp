#include "dctfuse/cli.hpp"
#include "dctfuse/fusion.hpp"
#include "dctfuse/harness.hpp"
#include "dctfuse/pgm.hpp"
#include "temp_dir.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace dctfuse;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void expect_single_error_line(const Result& r) {
    EXPECT_EQ(r.err.rfind("error:", 0), 0u) << r.err;
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto pair = make_split_focus_pair(synthesize_texture(64, 64, 3), 5);
        write_pgm(pair.a, dir / "a.pgm");
        write_pgm(pair.b, dir / "b.pgm");
        write_pgm(pair.truth, dir / "truth.pgm");
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    TempDir dir;
};

}  // namespace

TEST_F(CliTest, FuseDefaults) {
    const auto r = run({"fuse", "--inputs", path("a.pgm"), path("b.pgm"), "--output", path("f.pgm")});
    ASSERT_EQ(r.code, 0) << r.err;
    const GrayImage f = read_pgm(path("f.pgm"));
    EXPECT_EQ(f.width(), 64);
}

TEST_F(CliTest, FuseDumpMaps) {
    const auto r = run({"fuse", "--inputs", path("a.pgm"), path("b.pgm"), "--output", path("f.pgm"),
                        "--no-cv", "--measure", "variance-dct", "--threshold", "0.5", "--dump-maps",
                        path("maps")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto decision = parse_grid(slurp(dir / "maps" / "decision.txt"));
    const auto refined = parse_grid(slurp(dir / "maps" / "refined.txt"));
    EXPECT_EQ(decision.rows, 8);
    EXPECT_EQ(decision.cols, 8);
    EXPECT_EQ(decision, refined);  // --no-cv
}

TEST_F(CliTest, FuseThreeInputs) {
    const auto r = run({"fuse", "--inputs", path("a.pgm"), path("b.pgm"), path("truth.pgm"), "--output",
                        path("f.pgm"), "--dump-maps", path("maps")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(std::filesystem::exists(dir / "maps" / "choice.txt"));
}

TEST_F(CliTest, FuseArgumentErrors) {
    auto r = run({"fuse", "--inputs", path("a.pgm"), "--output", path("f.pgm")});
    EXPECT_EQ(r.code, cli::kBadArguments);
    expect_single_error_line(r);
    EXPECT_NE(r.err.find("usage"), std::string::npos);

    r = run({"fuse", "--inputs", path("a.pgm"), path("b.pgm"), "--output", path("f.pgm"), "--measure", "nope"});
    EXPECT_EQ(r.code, cli::kBadArguments);
    expect_single_error_line(r);

    r = run({"fuse", "--bogus-flag"});
    EXPECT_EQ(r.code, cli::kBadArguments);
    expect_single_error_line(r);

    r = run({});
    EXPECT_EQ(r.code, cli::kBadArguments);
    expect_single_error_line(r);
}

TEST_F(CliTest, FuseDimensionErrors) {
    {
        std::ofstream f(dir / "odd.pgm", std::ios::binary);
        f << "P5\n100 100\n255\n" << std::string(10000, '\x10');
    }
    auto r = run({"fuse", "--inputs", path("a.pgm"), path("odd.pgm"), "--output", path("f.pgm")});
    EXPECT_EQ(r.code, cli::kDimensionError);
    expect_single_error_line(r);
    EXPECT_NE(r.err.find("odd.pgm"), std::string::npos);

    write_pgm(GrayImage(32, 32, 5.0), dir / "small.pgm");
    r = run({"fuse", "--inputs", path("a.pgm"), path("small.pgm"), "--output", path("f.pgm")});
    EXPECT_EQ(r.code, cli::kDimensionError);
    EXPECT_NE(r.err.find("small.pgm"), std::string::npos);
}

TEST_F(CliTest, FuseIoErrors) {
    auto r = run({"fuse", "--inputs", path("a.pgm"), path("missing.pgm"), "--output", path("f.pgm")});
    EXPECT_EQ(r.code, cli::kIoError);
    expect_single_error_line(r);
    {
        std::ofstream f(dir / "ascii.pgm");
        f << "P2\n8 8\n255\n";
    }
    r = run({"fuse", "--inputs", path("a.pgm"), path("ascii.pgm"), "--output", path("f.pgm")});
    EXPECT_EQ(r.code, cli::kIoError);
}

TEST_F(CliTest, GenDatasetSynthetic) {
    const auto r = run({"gen-dataset", "--synthetic", "2", "--radii", "5", "--size", "32", "--out", path("ds")});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* f : {"synth0_r5_A.pgm", "synth0_r5_B.pgm", "synth0_r5_truth.pgm", "synth1_r5_truth.pgm"})
        EXPECT_TRUE(std::filesystem::exists(dir / "ds" / f)) << f;
}

TEST_F(CliTest, GenDatasetFromImages) {
    std::filesystem::create_directories(dir / "src");
    write_pgm(synthesize_texture(32, 32, 1), dir / "src" / "one.pgm");
    write_pgm(synthesize_texture(32, 32, 2), dir / "src" / "two.pgm");
    const auto r = run({"gen-dataset", "--images", path("src"), "--radii", "5,7,9", "--out", path("ds")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(load_dataset(dir / "ds").size(), 6u);
}

TEST_F(CliTest, GenDatasetErrors) {
    std::filesystem::create_directories(dir / "empty");
    auto r = run({"gen-dataset", "--images", path("empty"), "--out", path("ds")});
    EXPECT_EQ(r.code, cli::kBadArguments);
    expect_single_error_line(r);
    r = run({"gen-dataset", "--synthetic", "1", "--radii", "5,x", "--out", path("ds")});
    EXPECT_EQ(r.code, cli::kBadArguments);
    r = run({"gen-dataset", "--images", path("does-not-exist"), "--out", path("ds")});
    EXPECT_EQ(r.code, cli::kIoError);
}

TEST_F(CliTest, EvalReferenced) {
    const auto r = run({"eval", "--fused", path("truth.pgm"), "--ref", path("truth.pgm")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "metric,value\nssim,1.0\n");
}

TEST_F(CliTest, EvalUnreferenced) {
    const auto r = run({"eval", "--fused", path("truth.pgm"), "--sources", path("a.pgm"), path("b.pgm")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("metric,value\nmi,", 0), 0u) << r.out;
    EXPECT_NE(r.out.find("\nqabf,"), std::string::npos);
}

TEST_F(CliTest, EvalErrors) {
    auto r = run({"eval", "--fused", path("truth.pgm")});
    EXPECT_EQ(r.code, cli::kBadArguments);
    expect_single_error_line(r);
    r = run({"eval", "--fused", path("missing.pgm"), "--ref", path("truth.pgm")});
    EXPECT_EQ(r.code, cli::kIoError);
    expect_single_error_line(r);
}

TEST_F(CliTest, BenchCsv) {
    ASSERT_EQ(run({"gen-dataset", "--synthetic", "1", "--radii", "5,7", "--size", "64", "--out", path("ds")}).code, 0);
    const auto r = run({"bench", "--dataset", path("ds"), "--repeat", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "image,radius,method,ssim,us_per_block");
    int rows = 0, means = 0;
    while (std::getline(lines, line)) {
        ++rows;
        if (line.rfind("mean,all,", 0) == 0) ++means;
        EXPECT_NE(line.back(), ',');  // runtime column populated
    }
    EXPECT_EQ(rows, 2 * 4 + 4);
    EXPECT_EQ(means, 4);
}

TEST_F(CliTest, BenchDeterministicWithoutRuntime) {
    ASSERT_EQ(run({"gen-dataset", "--synthetic", "1", "--radii", "5", "--size", "32", "--out", path("ds")}).code, 0);
    const auto r1 = run({"bench", "--dataset", path("ds"), "--methods", "sml-dct+cv,ac-max", "--no-runtime"});
    const auto r2 = run({"bench", "--dataset", path("ds"), "--methods", "sml-dct+cv,ac-max", "--no-runtime"});
    ASSERT_EQ(r1.code, 0) << r1.err;
    EXPECT_EQ(r1.out, r2.out);
}

TEST_F(CliTest, BenchErrors) {
    auto r = run({"bench", "--dataset", path("nowhere")});
    EXPECT_EQ(r.code, cli::kIoError);
    r = run({"bench", "--dataset", dir.path().string(), "--repeat", "0"});
    EXPECT_EQ(r.code, cli::kBadArguments);
    r = run({"bench", "--dataset", dir.path().string(), "--methods", "wavelet"});
    EXPECT_EQ(r.code, cli::kBadArguments);
}

TEST_F(CliTest, FuseIsByteDeterministic) {
    ASSERT_EQ(run({"fuse", "--inputs", path("a.pgm"), path("b.pgm"), "--output", path("f1.pgm")}).code, 0);
    ASSERT_EQ(run({"fuse", "--inputs", path("a.pgm"), path("b.pgm"), "--output", path("f2.pgm")}).code, 0);
    EXPECT_EQ(slurp(dir / "f1.pgm"), slurp(dir / "f2.pgm"));
}

TEST_F(CliTest, Help) {
    const auto r = run({"fuse", "--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("--inputs"), std::string::npos);
}
