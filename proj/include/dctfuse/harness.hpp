#pragma once

#include "dctfuse/focus_measures.hpp"
#include "dctfuse/fusion.hpp"
#include "dctfuse/image.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dctfuse {

/// Square correlation kernel of side 2*radius + 1, row-major.
struct Kernel2D {
    int radius = 0;
    std::vector<double> taps;

    int size() const noexcept { return 2 * radius + 1; }
    double at(int dy, int dx) const {
        return taps[std::size_t((dy + radius) * size() + (dx + radius))];
    }
};

/// Binary pillbox: tap (dx, dy) is in the disk iff dx^2 + dy^2 <= r^2
/// (pixel-centre membership, no anti-aliased rim), normalised to sum 1.
Kernel2D disk_kernel(int radius);

/// 2-D correlation with replicate-edge padding; output has the input shape.
GrayImage convolve(const GrayImage& img, const Kernel2D& kernel);

enum class BlurRegion { LeftHalf, RightHalf, Whole, CustomMask };

struct BlurSpec {
    int radius = 0;
    BlurRegion region = BlurRegion::Whole;
    std::optional<GrayImage> mask;  // CustomMask: pixels with mask > 0 are blurred
};

/// Blurs `img` with disk_kernel(spec.radius) and keeps the blurred pixels
/// only inside the region. Halves split at column width / 2.
GrayImage apply_blur(const GrayImage& img, const BlurSpec& spec);

struct SplitFocusPair {
    GrayImage a;      // left half defocused
    GrayImage b;      // right half defocused
    GrayImage truth;  // the pristine input
    bool seamBlockAligned = true;
    std::string warning;  // non-empty when the seam splits a block column
};

/// Requires block-aligned dimensions and width >= 16.
SplitFocusPair make_split_focus_pair(const GrayImage& img, int radius);

/// Deterministic textured test image: multi-octave value noise mixed with
/// random flat-shaded shapes, scaled into [8, 247]. Same seed, same pixels.
GrayImage synthesize_texture(int width, int height, std::uint64_t seed);

struct NamedImage {
    std::string name;
    GrayImage image;
};

/// `count` procedural images named synth0, synth1, ... (seed = index).
std::vector<NamedImage> synthetic_images(int count, int width = 512, int height = 512);

// ---------------------------------------------------------------------------
// Benchmark

/// A fusion configuration under comparison. Spelled `<measure>` (no
/// verification) or `<measure>+cv`.
struct Method {
    FocusMeasure measure = FocusMeasure::SmlDct;
    bool cv = false;

    std::string name() const;
    FusionConfig config() const;
    friend bool operator==(const Method&, const Method&) = default;
};

Method parse_method(std::string_view spec);
std::vector<Method> parse_method_list(std::string_view csv);

/// The four compared arms: variance-dct, variance-dct+cv, ac-max, sml-dct+cv.
std::vector<Method> default_methods();

struct DatasetPair {
    std::string name;
    int radius = 0;
    GrayImage a;
    GrayImage b;
    GrayImage truth;
};

std::string dataset_file_stem(const std::string& name, int radius);

/// Writes `<name>_r<r>_A.pgm`, `_B.pgm`, `_truth.pgm` for every (image,
/// radius). Returns the number of triples written.
std::size_t write_dataset(const std::filesystem::path& dir, const std::vector<NamedImage>& images,
                          const std::vector<int>& radii);

/// Loads every complete triple in `dir`, sorted by (name, radius).
std::vector<DatasetPair> load_dataset(const std::filesystem::path& dir);

/// All pairs for images x radii, built in memory.
std::vector<DatasetPair> make_dataset(const std::vector<NamedImage>& images,
                                      const std::vector<int>& radii);

struct BenchRow {
    std::string image;
    int radius = 0;
    std::string method;
    double ssim = 0.0;
    double usPerBlock = 0.0;
};

struct MethodSummary {
    std::string method;
    double meanSsim = 0.0;
    double meanUsPerBlock = 0.0;
};

struct BenchReport {
    std::vector<BenchRow> rows;          // one per (image, radius, method)
    std::vector<MethodSummary> summary;  // one per method, input order

    const MethodSummary* find(std::string_view method) const;
};

struct BenchOptions {
    int repeat = 5;  // runtime is the median over this many runs
    bool measureRuntime = true;
};

BenchReport run_benchmark(const std::vector<DatasetPair>& pairs, const std::vector<Method>& methods,
                          const BenchOptions& opts = {});

/// Synthesises the pairs and benchmarks them.
BenchReport run_benchmark(const std::vector<NamedImage>& images, const std::vector<int>& radii,
                          const std::vector<Method>& methods, const BenchOptions& opts = {});

/// Median wall-clock (over `repeat` runs) of focus measure, decision,
/// verification and selection for all pairs, divided by the number of
/// fused blocks. Forward/inverse DCT and file I/O are excluded.
double time_per_block(const Method& method, const std::vector<DatasetPair>& pairs, int repeat = 5);

/// CSV `image,radius,method,ssim,us_per_block`, followed by one summary
/// row per method with image `mean` and radius `all`. When
/// `includeRuntime` is false the runtime column is left empty.
std::string format_bench_csv(const BenchReport& report, bool includeRuntime = true);

}  // namespace dctfuse
