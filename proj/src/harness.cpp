#include "dctfuse/harness.hpp"

#include "dctfuse/error.hpp"
#include "dctfuse/metrics.hpp"
#include "dctfuse/pgm.hpp"
#include "dctfuse/simd/kernels.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <regex>

namespace dctfuse {
namespace {

// Uniform double in [0, 1) from the top 53 bits; the engine's output
// sequence is fixed by the standard, so images are identical everywhere.
double unit(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

void add_value_noise(GrayImage& img, int cell, double amplitude, std::mt19937_64& rng) {
    const int lw = img.width() / cell + 2;
    const int lh = img.height() / cell + 2;
    std::vector<double> lattice(std::size_t(lw) * std::size_t(lh));
    for (double& v : lattice) v = 2.0 * unit(rng) - 1.0;
    auto node = [&](int r, int c) { return lattice[std::size_t(r) * std::size_t(lw) + std::size_t(c)]; };
    for (int r = 0; r < img.height(); ++r) {
        const int lr = r / cell;
        const double fy = smoothstep(double(r % cell) / cell);
        for (int c = 0; c < img.width(); ++c) {
            const int lc = c / cell;
            const double fx = smoothstep(double(c % cell) / cell);
            const double top = node(lr, lc) * (1 - fx) + node(lr, lc + 1) * fx;
            const double bot = node(lr + 1, lc) * (1 - fx) + node(lr + 1, lc + 1) * fx;
            img.at(r, c) += amplitude * (top * (1 - fy) + bot * fy);
        }
    }
}

void add_shapes(GrayImage& img, int count, std::mt19937_64& rng) {
    const double w = img.width();
    const double h = img.height();
    for (int i = 0; i < count; ++i) {
        const bool disk = unit(rng) < 0.5;
        const double cx = unit(rng) * w;
        const double cy = unit(rng) * h;
        const double sx = (0.05 + 0.25 * unit(rng)) * w;
        const double sy = (0.05 + 0.25 * unit(rng)) * h;
        const double level = 1.2 * unit(rng) - 0.6;
        for (int r = 0; r < img.height(); ++r) {
            for (int c = 0; c < img.width(); ++c) {
                const double dx = (c - cx) / sx;
                const double dy = (r - cy) / sy;
                const bool inside = disk ? dx * dx + dy * dy <= 1.0
                                         : std::abs(dx) <= 1.0 && std::abs(dy) <= 1.0;
                if (inside) img.at(r, c) += level;
            }
        }
    }
}

struct PreparedPair {
    const DatasetPair* pair;
    CoeffBlockGrid ga;
    CoeffBlockGrid gb;
};

std::vector<PreparedPair> prepare(const std::vector<DatasetPair>& pairs) {
    std::vector<PreparedPair> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) {
        require_same_shape(p.a, p.b, p.name.c_str());
        require_same_shape(p.a, p.truth, p.name.c_str());
        out.push_back({&p, forward_transform(p.a), forward_transform(p.b)});
    }
    return out;
}

double timed_per_block(const Method& method, const std::vector<PreparedPair>& prepared,
                       int repeat) {
    if (prepared.empty())
        throw Error(ErrorCode::InvalidArgument, "time_per_block: empty dataset");
    if (repeat < 1) throw Error(ErrorCode::InvalidArgument, "repeat must be >= 1");
    const FusionConfig cfg = method.config();
    std::size_t blocks = 0;
    for (const auto& p : prepared) blocks += p.ga.size();

    std::vector<double> samples;
    samples.reserve(std::size_t(repeat));
    volatile double sink = 0.0;
    for (const auto& p : prepared)  // warm-up, untimed
        sink = sink + fuse_coefficients(p.ga, p.gb, cfg, &p.pair->a, &p.pair->b).fused.blocks.front().v[0];
    for (int rep = 0; rep < repeat; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        for (const auto& p : prepared) {
            CoefficientFusion cf = fuse_coefficients(p.ga, p.gb, cfg, &p.pair->a, &p.pair->b);
            sink = sink + cf.fused.blocks.front().v[0];
        }
        const auto t1 = std::chrono::steady_clock::now();
        samples.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
    }
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    const double median = n % 2 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
    // A timer tick can read as zero on very small inputs.
    return std::max(median, 1e-6) / double(blocks);
}

}  // namespace

Kernel2D disk_kernel(int radius) {
    if (radius < 0) throw Error(ErrorCode::InvalidArgument, "disk radius must be >= 0");
    Kernel2D k;
    k.radius = radius;
    k.taps.assign(std::size_t(k.size()) * std::size_t(k.size()), 0.0);
    int inside = 0;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (dx * dx + dy * dy <= radius * radius) ++inside;
    const double w = 1.0 / inside;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (dx * dx + dy * dy <= radius * radius)
                k.taps[std::size_t((dy + radius) * k.size() + dx + radius)] = w;
    return k;
}

GrayImage convolve(const GrayImage& img, const Kernel2D& kernel) {
    if (kernel.radius < 0 || kernel.taps.size() != std::size_t(kernel.size()) * std::size_t(kernel.size()))
        throw Error(ErrorCode::InvalidArgument, "convolve: malformed kernel");
    const int r = kernel.radius;
    const int pw = img.width() + 2 * r;
    const int ph = img.height() + 2 * r;
    std::vector<double> padded(std::size_t(pw) * std::size_t(ph));
    for (int y = 0; y < ph; ++y)
        for (int x = 0; x < pw; ++x)
            padded[std::size_t(y) * std::size_t(pw) + std::size_t(x)] = img.clamped(y - r, x - r);

    const auto& simd = simd::active();
    GrayImage out(img.width(), img.height());
    const auto width = std::size_t(img.width());
    for (int y = 0; y < img.height(); ++y) {
        double* dst = out.row(y).data();
        for (int dy = -r; dy <= r; ++dy) {
            const double* src = padded.data() + std::size_t(y + dy + r) * std::size_t(pw);
            for (int dx = -r; dx <= r; ++dx) {
                const double w = kernel.at(dy, dx);
                if (w != 0.0) simd.axpy(dst, src + (dx + r), w, width);
            }
        }
    }
    return out;
}

GrayImage apply_blur(const GrayImage& img, const BlurSpec& spec) {
    if (spec.region == BlurRegion::CustomMask && (!spec.mask || !spec.mask->same_shape(img)))
        throw Error(ErrorCode::DimensionMismatch, "apply_blur: mask missing or wrong shape");
    const GrayImage blurred = convolve(img, disk_kernel(spec.radius));
    if (spec.region == BlurRegion::Whole) return blurred;
    GrayImage out = img;
    const int seam = img.width() / 2;
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            bool inside = false;
            switch (spec.region) {
                case BlurRegion::LeftHalf: inside = c < seam; break;
                case BlurRegion::RightHalf: inside = c >= seam; break;
                case BlurRegion::CustomMask: inside = spec.mask->at(r, c) > 0.0; break;
                case BlurRegion::Whole: inside = true; break;
            }
            if (inside) out.at(r, c) = blurred.at(r, c);
        }
    }
    return out;
}

SplitFocusPair make_split_focus_pair(const GrayImage& img, int radius) {
    require_block_aligned(img);
    if (img.width() < 2 * kBlockSize)
        throw Error(ErrorCode::BadDimensions, "split-focus pair needs width >= 16");
    SplitFocusPair p;
    p.a = apply_blur(img, {radius, BlurRegion::LeftHalf, std::nullopt});
    p.b = apply_blur(img, {radius, BlurRegion::RightHalf, std::nullopt});
    p.truth = img;
    const int seam = img.width() / 2;
    p.seamBlockAligned = seam % kBlockSize == 0;
    if (!p.seamBlockAligned)
        p.warning = "focus seam at column " + std::to_string(seam) +
                    " splits block column " + std::to_string(seam / kBlockSize);
    return p;
}

GrayImage synthesize_texture(int width, int height, std::uint64_t seed) {
    std::mt19937_64 rng(0x5eed0000ULL + seed);
    GrayImage img(width, height);
    static constexpr struct { int cell; double amplitude; } kOctaves[] = {
        {64, 1.0}, {32, 0.8}, {16, 0.6}, {8, 0.5}, {4, 0.4}, {2, 0.35}, {1, 0.3},
    };
    for (const auto& o : kOctaves) add_value_noise(img, o.cell, o.amplitude, rng);
    add_shapes(img, 12, rng);
    auto px = img.pixels();
    const auto [lo, hi] = std::minmax_element(px.begin(), px.end());
    const double mn = *lo;
    const double span = std::max(*hi - mn, 1e-12);
    for (double& v : px) v = 8.0 + 239.0 * (v - mn) / span;
    return img;
}

std::vector<NamedImage> synthetic_images(int count, int width, int height) {
    std::vector<NamedImage> out;
    for (int i = 0; i < count; ++i)
        out.push_back({"synth" + std::to_string(i), synthesize_texture(width, height, std::uint64_t(i))});
    return out;
}

std::string Method::name() const {
    std::string n(to_string(measure));
    if (cv) n += "+cv";
    return n;
}

FusionConfig Method::config() const {
    FusionConfig cfg;
    cfg.measure = measure;
    cfg.consistencyVerification = cv;
    return cfg;
}

Method parse_method(std::string_view spec) {
    Method m;
    constexpr std::string_view suffix = "+cv";
    if (spec.size() > suffix.size() && spec.substr(spec.size() - suffix.size()) == suffix) {
        m.cv = true;
        spec.remove_suffix(suffix.size());
    }
    m.measure = parse_focus_measure(spec);
    return m;
}

std::vector<Method> parse_method_list(std::string_view csv) {
    std::vector<Method> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t end = csv.find(',', start);
        if (end == std::string_view::npos) end = csv.size();
        const std::string_view tok = csv.substr(start, end - start);
        if (tok.empty()) throw Error(ErrorCode::InvalidArgument, "empty entry in method list");
        out.push_back(parse_method(tok));
        start = end + 1;
    }
    return out;
}

std::vector<Method> default_methods() {
    return {
        {FocusMeasure::VarianceDct, false},
        {FocusMeasure::VarianceDct, true},
        {FocusMeasure::AcMax, false},
        {FocusMeasure::SmlDct, true},
    };
}

std::string dataset_file_stem(const std::string& name, int radius) {
    return name + "_r" + std::to_string(radius);
}

std::size_t write_dataset(const std::filesystem::path& dir, const std::vector<NamedImage>& images,
                          const std::vector<int>& radii) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::Io, dir.string() + ": " + ec.message());
    std::size_t written = 0;
    for (const auto& img : images) {
        for (int r : radii) {
            const SplitFocusPair p = make_split_focus_pair(img.image, r);
            const std::string stem = dataset_file_stem(img.name, r);
            write_pgm(p.a, dir / (stem + "_A.pgm"));
            write_pgm(p.b, dir / (stem + "_B.pgm"));
            write_pgm(p.truth, dir / (stem + "_truth.pgm"));
            ++written;
        }
    }
    return written;
}

std::vector<DatasetPair> load_dataset(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec))
        throw Error(ErrorCode::Io, dir.string() + ": not a directory");
    static const std::regex pattern(R"(^(.+)_r(\d+)_A\.pgm$)");
    std::map<std::pair<std::string, int>, std::filesystem::path> found;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file()) continue;
        const std::string fname = entry.path().filename().string();
        std::smatch m;
        if (!std::regex_match(fname, m, pattern)) continue;
        found[{m[1].str(), std::stoi(m[2].str())}] = entry.path();
    }
    if (ec) throw Error(ErrorCode::Io, dir.string() + ": " + ec.message());
    std::vector<DatasetPair> out;
    for (const auto& [key, pathA] : found) {
        const std::string stem = dataset_file_stem(key.first, key.second);
        const auto pathB = dir / (stem + "_B.pgm");
        const auto pathT = dir / (stem + "_truth.pgm");
        if (!std::filesystem::exists(pathB) || !std::filesystem::exists(pathT)) continue;
        out.push_back({key.first, key.second, read_pgm(pathA), read_pgm(pathB), read_pgm(pathT)});
    }
    return out;
}

std::vector<DatasetPair> make_dataset(const std::vector<NamedImage>& images,
                                      const std::vector<int>& radii) {
    std::vector<DatasetPair> out;
    for (const auto& img : images) {
        for (int r : radii) {
            SplitFocusPair p = make_split_focus_pair(img.image, r);
            out.push_back({img.name, r, std::move(p.a), std::move(p.b), std::move(p.truth)});
        }
    }
    return out;
}

const MethodSummary* BenchReport::find(std::string_view method) const {
    for (const auto& s : summary)
        if (s.method == method) return &s;
    return nullptr;
}

BenchReport run_benchmark(const std::vector<DatasetPair>& pairs, const std::vector<Method>& methods,
                          const BenchOptions& opts) {
    if (pairs.empty()) throw Error(ErrorCode::InvalidArgument, "benchmark needs at least one pair");
    if (methods.empty()) throw Error(ErrorCode::InvalidArgument, "benchmark needs at least one method");
    if (opts.repeat < 1) throw Error(ErrorCode::InvalidArgument, "repeat must be >= 1");

    const std::vector<PreparedPair> prepared = prepare(pairs);
    BenchReport report;
    std::vector<double> ssimSum(methods.size(), 0.0);
    std::vector<double> timeSum(methods.size(), 0.0);
    for (const auto& p : prepared) {
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            const Method& m = methods[mi];
            try {
                const CoefficientFusion cf =
                    fuse_coefficients(p.ga, p.gb, m.config(), &p.pair->a, &p.pair->b);
                BenchRow row;
                row.image = p.pair->name;
                row.radius = p.pair->radius;
                row.method = m.name();
                row.ssim = ssim(p.pair->truth, inverse_transform(cf.fused));
                if (opts.measureRuntime) row.usPerBlock = timed_per_block(m, {p}, opts.repeat);
                ssimSum[mi] += row.ssim;
                timeSum[mi] += row.usPerBlock;
                report.rows.push_back(std::move(row));
            } catch (const Error& e) {
                throw Error(e.code(), "(" + p.pair->name + ", r=" + std::to_string(p.pair->radius) +
                                          ", " + m.name() + "): " + e.what());
            }
        }
    }
    const double n = double(prepared.size());
    for (std::size_t mi = 0; mi < methods.size(); ++mi)
        report.summary.push_back({methods[mi].name(), ssimSum[mi] / n, timeSum[mi] / n});
    return report;
}

BenchReport run_benchmark(const std::vector<NamedImage>& images, const std::vector<int>& radii,
                          const std::vector<Method>& methods, const BenchOptions& opts) {
    if (images.empty() || radii.empty())
        throw Error(ErrorCode::InvalidArgument, "benchmark needs at least one image and radius");
    return run_benchmark(make_dataset(images, radii), methods, opts);
}

double time_per_block(const Method& method, const std::vector<DatasetPair>& pairs, int repeat) {
    return timed_per_block(method, prepare(pairs), repeat);
}

std::string format_bench_csv(const BenchReport& report, bool includeRuntime) {
    std::string out = "image,radius,method,ssim,us_per_block\n";
    auto runtime = [&](double v) { return includeRuntime ? format_real(v) : std::string(); };
    for (const auto& r : report.rows)
        out += r.image + "," + std::to_string(r.radius) + "," + r.method + "," +
               format_real(r.ssim) + "," + runtime(r.usPerBlock) + "\n";
    for (const auto& s : report.summary)
        out += "mean,all," + s.method + "," + format_real(s.meanSsim) + "," +
               runtime(s.meanUsPerBlock) + "\n";
    return out;
}

}  // namespace dctfuse
