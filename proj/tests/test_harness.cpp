#include "dctfuse/error.hpp"
#include "dctfuse/focus_measures.hpp"
#include "dctfuse/harness.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace dctfuse;

TEST(DiskKernel, SmallRadii) {
    const Kernel2D k0 = disk_kernel(0);
    ASSERT_EQ(k0.size(), 1);
    EXPECT_EQ(k0.taps, std::vector<double>{1.0});

    const Kernel2D k1 = disk_kernel(1);
    ASSERT_EQ(k1.size(), 3);
    const std::vector<double> cross{0, 0.2, 0, 0.2, 0.2, 0.2, 0, 0.2, 0};
    for (std::size_t i = 0; i < 9; ++i) EXPECT_DOUBLE_EQ(k1.taps[i], cross[i]);
    EXPECT_THROW(disk_kernel(-1), Error);
}

TEST(DiskKernel, NormalisedAndMembership) {
    for (int r = 0; r <= 12; ++r) {
        const Kernel2D k = disk_kernel(r);
        EXPECT_NEAR(std::accumulate(k.taps.begin(), k.taps.end(), 0.0), 1.0, 1e-12);
        for (int dy = -r; dy <= r; ++dy)
            for (int dx = -r; dx <= r; ++dx) EXPECT_EQ(k.at(dy, dx) > 0, dx * dx + dy * dy <= r * r);
    }
}

TEST(Convolve, IdentityAndConstant) {
    std::mt19937_64 rng(61);
    const GrayImage img = oracle::random_image(rng, 24, 16, false);
    EXPECT_EQ(convolve(img, disk_kernel(0)), img);
    const GrayImage flat(24, 16, 37.0);
    EXPECT_LT(max_abs_diff(convolve(flat, disk_kernel(5)), flat), 1e-12);
}

TEST(Convolve, ImpulseStampsKernel) {
    GrayImage img(16, 16, 0.0);
    img.at(8, 8) = 1.0;
    const GrayImage out = convolve(img, disk_kernel(1));
    const Kernel2D k = disk_kernel(1);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) {
            const int dy = r - 8, dx = c - 8;
            const double expect = (std::abs(dy) <= 1 && std::abs(dx) <= 1) ? k.at(dy, dx) : 0.0;
            EXPECT_NEAR(out.at(r, c), expect, 1e-15);
        }
}

TEST(Convolve, MatchesDirectCorrelation) {
    std::mt19937_64 rng(62);
    const GrayImage img = oracle::random_image(rng, 40, 24, false);
    for (int r : {1, 5, 9}) {
        const Kernel2D k = disk_kernel(r);
        EXPECT_LT(max_abs_diff(convolve(img, k), oracle::correlate(img, k)), 1e-10);
    }
}

TEST(SplitFocusPair, Construction) {
    const GrayImage img = synthesize_texture(64, 32, 9);
    const auto p = make_split_focus_pair(img, 5);
    EXPECT_TRUE(p.seamBlockAligned);
    EXPECT_TRUE(p.warning.empty());
    EXPECT_EQ(p.truth, img);
    const GrayImage blurred = convolve(img, disk_kernel(5));
    for (int r = 0; r < 32; ++r)
        for (int c = 0; c < 64; ++c) {
            if (c >= 32) {
                EXPECT_EQ(p.a.at(r, c), img.at(r, c));
                EXPECT_EQ(p.b.at(r, c), blurred.at(r, c));
            } else {
                EXPECT_EQ(p.b.at(r, c), img.at(r, c));
                EXPECT_EQ(p.a.at(r, c), blurred.at(r, c));
            }
        }
}

TEST(SplitFocusPair, ConstantImageUnchanged) {
    const GrayImage flat(32, 16, 90.0);
    const auto p = make_split_focus_pair(flat, 7);
    EXPECT_LT(max_abs_diff(p.a, flat), 1e-12);
    EXPECT_LT(max_abs_diff(p.b, flat), 1e-12);
}

TEST(SplitFocusPair, SeamWarningAndErrors) {
    const auto p = make_split_focus_pair(GrayImage(24, 8, 1.0), 2);
    EXPECT_FALSE(p.seamBlockAligned);
    EXPECT_FALSE(p.warning.empty());
    EXPECT_THROW(make_split_focus_pair(GrayImage(8, 8), 2), Error);
    EXPECT_THROW(make_split_focus_pair(GrayImage(20, 8), 2), Error);
}

TEST(SplitFocusPair, DefocusLowersSmlOnBlurredHalf) {
    const GrayImage img = synthesize_texture(128, 128, 10);
    for (int r : {5, 7, 9}) {
        const auto p = make_split_focus_pair(img, r);
        const auto ga = forward_transform(p.a);
        const auto gt = forward_transform(p.truth);
        double sa = 0, st = 0;
        int n = 0;
        for (int br = 0; br < ga.rows; ++br)
            for (int bc = 0; bc < ga.cols / 2; ++bc, ++n) {
                sa += sml_dct(ga.at(br, bc));
                st += sml_dct(gt.at(br, bc));
            }
        EXPECT_LT(sa / n, st / n) << "radius " << r;
    }
}

TEST(SplitFocusPair, BlurReducesAcEnergy) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const GrayImage img = synthesize_texture(64, 64, seed);
        for (int r : {5, 7, 9}) {
            const auto gs = forward_transform(img);
            const auto gb = forward_transform(convolve(img, disk_kernel(r)));
            double es = 0, eb = 0;
            for (std::size_t i = 0; i < gs.size(); ++i) {
                es += variance_dct(gs.blocks[i]);
                eb += variance_dct(gb.blocks[i]);
            }
            EXPECT_LT(eb, es);
        }
    }
}

TEST(Synthesis, DeterministicAndInRange) {
    const GrayImage a = synthesize_texture(64, 48, 3);
    EXPECT_EQ(a, synthesize_texture(64, 48, 3));
    EXPECT_NE(a, synthesize_texture(64, 48, 4));
    for (double v : a.pixels()) {
        EXPECT_GE(v, 8.0);
        EXPECT_LE(v, 247.0 + 1e-9);
    }
    const auto imgs = synthetic_images(2, 32, 32);
    ASSERT_EQ(imgs.size(), 2u);
    EXPECT_EQ(imgs[1].name, "synth1");
}

TEST(Methods, Parsing) {
    EXPECT_EQ(parse_method("sml-dct+cv"), (Method{FocusMeasure::SmlDct, true}));
    EXPECT_EQ(parse_method("variance-dct"), (Method{FocusMeasure::VarianceDct, false}));
    EXPECT_EQ(parse_method("ac-max+cv").name(), "ac-max+cv");
    EXPECT_THROW(parse_method("+cv"), Error);
    EXPECT_THROW(parse_method("sobel"), Error);
    EXPECT_EQ(parse_method_list("ac-max,sml-dct+cv").size(), 2u);
    EXPECT_THROW(parse_method_list("ac-max,,sml-dct"), Error);
    EXPECT_EQ(default_methods().size(), 4u);
}

TEST(Benchmark, EighteenRowsForSixImagesThreeRadii) {
    BenchOptions opts;
    opts.measureRuntime = false;
    const auto rep = run_benchmark(synthetic_images(6, 64, 64), {5, 7, 9},
                                   {parse_method("sml-dct+cv")}, opts);
    EXPECT_EQ(rep.rows.size(), 18u);
    ASSERT_EQ(rep.summary.size(), 1u);
    EXPECT_GE(rep.summary[0].meanSsim, 0.99);
}

TEST(Benchmark, NoBlurGivesPerfectSsim) {
    BenchOptions opts;
    opts.measureRuntime = false;
    std::vector<Method> all = default_methods();
    all.push_back(parse_method("sml-spatial+cv"));
    const auto rep = run_benchmark(synthetic_images(1, 64, 64), {0}, all, opts);
    for (const auto& row : rep.rows) EXPECT_NEAR(row.ssim, 1.0, 1e-12) << row.method;
}

TEST(Benchmark, VerificationHelpsVariance) {
    BenchOptions opts;
    opts.measureRuntime = false;
    const auto rep = run_benchmark(synthetic_images(3, 128, 128), {5, 7, 9},
                                   parse_method_list("variance-dct,variance-dct+cv"), opts);
    EXPECT_GE(rep.find("variance-dct+cv")->meanSsim, rep.find("variance-dct")->meanSsim);
}

TEST(Benchmark, ReproducibleSsimColumns) {
    BenchOptions opts;
    opts.measureRuntime = false;
    const auto imgs = synthetic_images(2, 64, 64);
    const auto r1 = run_benchmark(imgs, {5}, default_methods(), opts);
    const auto r2 = run_benchmark(imgs, {5}, default_methods(), opts);
    EXPECT_EQ(format_bench_csv(r1, false), format_bench_csv(r2, false));
}

TEST(Benchmark, Errors) {
    EXPECT_THROW(run_benchmark(std::vector<NamedImage>{}, {5}, default_methods()), Error);
    EXPECT_THROW(run_benchmark(synthetic_images(1, 32, 32), {5}, {}), Error);
}

TEST(Benchmark, CsvLayout) {
    BenchReport rep;
    rep.rows.push_back({"img", 5, "sml-dct+cv", 1.0, 2.5});
    rep.summary.push_back({"sml-dct+cv", 1.0, 2.5});
    EXPECT_EQ(format_bench_csv(rep),
              "image,radius,method,ssim,us_per_block\nimg,5,sml-dct+cv,1.0,2.5\nmean,all,sml-dct+cv,1.0,2.5\n");
    EXPECT_EQ(format_bench_csv(rep, false),
              "image,radius,method,ssim,us_per_block\nimg,5,sml-dct+cv,1.0,\nmean,all,sml-dct+cv,1.0,\n");
}

TEST(TimePerBlock, PositiveAndScaleInvariant) {
    const auto small = make_dataset(synthetic_images(2, 128, 128), {5});
    auto doubled = small;
    doubled.insert(doubled.end(), small.begin(), small.end());
    for (const auto& m : default_methods()) {
        const double t1 = time_per_block(m, small, 5);
        const double t2 = time_per_block(m, doubled, 5);
        EXPECT_GT(t1, 0.0);
        EXPECT_GT(t2, 0.0);
        EXPECT_LT(std::max(t1, t2) / std::min(t1, t2), 2.0) << m.name();
    }
    EXPECT_THROW(time_per_block(default_methods()[0], {}, 5), Error);
}

TEST(Dataset, WriteThenLoad) {
    TempDir dir;
    const auto imgs = synthetic_images(2, 32, 32);
    EXPECT_EQ(write_dataset(dir.path(), imgs, {5, 7}), 4u);
    const auto pairs = load_dataset(dir.path());
    ASSERT_EQ(pairs.size(), 4u);
    EXPECT_EQ(pairs[0].name, "synth0");
    EXPECT_EQ(pairs[0].radius, 5);
    EXPECT_EQ(pairs[0].truth, quantized(imgs[0].image));
    EXPECT_TRUE(std::filesystem::exists(dir / "synth1_r7_B.pgm"));
}
