#include "dctfuse/cli.hpp"

#include "dctfuse/error.hpp"
#include "dctfuse/fusion.hpp"
#include "dctfuse/harness.hpp"
#include "dctfuse/metrics.hpp"
#include "dctfuse/pgm.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>

namespace dctfuse::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kUsage =
    "usage: dctfuse <fuse|gen-dataset|eval|bench> [options]; see dctfuse <cmd> --help";

// Argument problems found after CLI11 has parsed successfully.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidArgument: return kBadArguments;
        case ErrorCode::DimensionMismatch:
        case ErrorCode::BadDimensions: return kDimensionError;
        case ErrorCode::Io:
        case ErrorCode::UnsupportedFormat:
        case ErrorCode::MalformedHeader:
        case ErrorCode::BadMaxval: return kIoError;
    }
    return kFailure;
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

std::vector<int> parse_radii(const std::string& csv) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t end = csv.find(',', start);
        if (end == std::string::npos) end = csv.size();
        const std::string tok = csv.substr(start, end - start);
        std::size_t used = 0;
        int v = -1;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (tok.empty() || used != tok.size() || v < 0)
            throw UsageError("--radii expects non-negative integers, got '" + tok + "'");
        out.push_back(v);
        start = end + 1;
    }
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::Io, path.string() + ": cannot open for writing");
    f << text;
    if (!f) throw Error(ErrorCode::Io, path.string() + ": write failed");
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::Io, dir.string() + ": " + ec.message());
}

// ---------------------------------------------------------------------------

struct FuseArgs {
    std::vector<std::string> inputs;
    std::string output;
    std::string measure = "sml-dct";
    double threshold = 0.0;
    bool cv = true;
    std::string dumpMaps;
    int step = 1;
    double mlThreshold = 0.0;
};

int cmd_fuse(const FuseArgs& a, std::ostream& out) {
    if (a.inputs.size() < 2)
        throw UsageError("fuse needs at least two --inputs (usage: dctfuse fuse --inputs A B [C...] "
                         "--output F [--measure M] [--threshold T] [--cv|--no-cv] [--dump-maps DIR])");
    if (a.output.empty()) throw UsageError("fuse needs --output");
    FusionConfig cfg;
    cfg.measure = parse_focus_measure(a.measure);
    cfg.decisionThreshold = a.threshold;
    cfg.consistencyVerification = a.cv;
    cfg.spatialParams = {a.step, a.mlThreshold};
    validate(cfg);

    std::vector<GrayImage> images;
    for (const auto& p : a.inputs) {
        images.push_back(read_pgm(p));
        if (!images.front().same_shape(images.back()))
            throw Error(ErrorCode::DimensionMismatch,
                        p + ": " + std::to_string(images.back().width()) + "x" +
                            std::to_string(images.back().height()) + " does not match " +
                            a.inputs.front() + " (" + std::to_string(images.front().width()) + "x" +
                            std::to_string(images.front().height()) + ")");
    }

    if (images.size() == 2) {
        PairFusion r = fuse_pair(images[0], images[1], cfg);
        write_pgm(r.image, a.output);
        if (!a.dumpMaps.empty()) {
            ensure_dir(a.dumpMaps);
            write_text(fs::path(a.dumpMaps) / "decision.txt", format_grid(r.decision));
            write_text(fs::path(a.dumpMaps) / "refined.txt", format_grid(r.refined));
        }
    } else {
        MultiFusion r = fuse_multi(images, cfg);
        write_pgm(r.image, a.output);
        if (!a.dumpMaps.empty()) {
            ensure_dir(a.dumpMaps);
            write_text(fs::path(a.dumpMaps) / "choice.txt", format_grid(r.choice));
        }
    }
    out << "wrote " << a.output << "\n";
    return kOk;
}

struct GenArgs {
    std::string imagesDir;
    int synthetic = 0;
    std::string radii = "5,7,9";
    std::string outDir;
    int size = 512;
};

int cmd_gen_dataset(const GenArgs& a, std::ostream& out) {
    if (a.outDir.empty()) throw UsageError("gen-dataset needs --out");
    const std::vector<int> radii = parse_radii(a.radii);
    std::vector<NamedImage> images;
    if (!a.imagesDir.empty()) {
        std::error_code ec;
        if (!fs::is_directory(a.imagesDir, ec))
            throw Error(ErrorCode::Io, a.imagesDir + ": not a readable directory");
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(a.imagesDir, ec))
            if (e.is_regular_file() && e.path().extension() == ".pgm") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) images.push_back({f.stem().string(), read_pgm(f)});
    }
    if (a.synthetic > 0) {
        if (a.size < 16 || a.size % kBlockSize)
            throw UsageError("--size must be a multiple of 8 and at least 16");
        for (auto& s : synthetic_images(a.synthetic, a.size, a.size)) images.push_back(std::move(s));
    }
    if (images.empty())
        throw UsageError("gen-dataset found no input images; pass --images DIR with .pgm files or "
                         "--synthetic N");
    const std::size_t n = write_dataset(a.outDir, images, radii);
    out << "wrote " << n << " triples to " << a.outDir << "\n";
    return kOk;
}

struct EvalArgs {
    std::string fused;
    std::string ref;
    std::vector<std::string> sources;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
    if (a.fused.empty()) throw UsageError("eval needs --fused");
    if (a.ref.empty() && a.sources.empty())
        throw UsageError("eval needs --ref and/or --sources A B");
    if (!a.sources.empty() && a.sources.size() != 2)
        throw UsageError("--sources takes exactly two paths");
    const GrayImage f = read_pgm(a.fused, false);
    std::string csv = "metric,value\n";
    if (!a.ref.empty()) {
        const GrayImage ref = read_pgm(a.ref, false);
        require_same_shape(ref, f, (a.ref + " vs " + a.fused).c_str());
        csv += "ssim," + format_real(ssim(ref, f)) + "\n";
    }
    if (!a.sources.empty()) {
        const GrayImage sa = read_pgm(a.sources[0], false);
        const GrayImage sb = read_pgm(a.sources[1], false);
        require_same_shape(sa, f, (a.sources[0] + " vs " + a.fused).c_str());
        require_same_shape(sb, f, (a.sources[1] + " vs " + a.fused).c_str());
        csv += "mi," + format_real(mutual_information(sa, sb, f)) + "\n";
        csv += "qabf," + format_real(petrovic_qabf(sa, sb, f)) + "\n";
    }
    out << csv;
    return kOk;
}

struct BenchArgs {
    std::string dataset;
    std::string methods;
    int repeat = 5;
    bool noRuntime = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    if (a.dataset.empty()) throw UsageError("bench needs --dataset DIR");
    if (a.repeat < 1) throw UsageError("--repeat must be >= 1");
    const std::vector<Method> methods =
        a.methods.empty() ? default_methods() : parse_method_list(a.methods);
    const std::vector<DatasetPair> pairs = load_dataset(a.dataset);
    if (pairs.empty())
        throw Error(ErrorCode::Io, a.dataset + ": no <name>_r<radius>_{A,B,truth}.pgm triples found");
    BenchOptions opts;
    opts.repeat = a.repeat;
    opts.measureRuntime = !a.noRuntime;
    out << format_bench_csv(run_benchmark(pairs, methods, opts), opts.measureRuntime);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-focus image fusion in the 8x8 DCT domain", "dctfuse"};
    app.require_subcommand(1);

    FuseArgs fa;
    auto* fuse = app.add_subcommand("fuse", "Fuse two or more registered grayscale PGM images");
    fuse->add_option("--inputs", fa.inputs, "Source images (2 or more, binary PGM)");
    fuse->add_option("--output", fa.output, "Fused PGM to write");
    fuse->add_option("--measure", fa.measure, "sml-dct | variance-dct | ac-max | sml-spatial")
        ->capture_default_str();
    fuse->add_option("--threshold", fa.threshold, "Decision threshold T >= 0")->capture_default_str();
    fuse->add_flag("--cv,!--no-cv", fa.cv, "Consistency verification (3x3 majority), on by default");
    fuse->add_option("--dump-maps", fa.dumpMaps, "Directory for decision/refined map text dumps");
    fuse->add_option("--step", fa.step, "Pixel step for sml-spatial")->capture_default_str();
    fuse->add_option("--ml-threshold", fa.mlThreshold, "ML threshold for sml-spatial")
        ->capture_default_str();

    GenArgs ga;
    auto* gen = app.add_subcommand("gen-dataset", "Write split-focus source/truth triples");
    gen->add_option("--images", ga.imagesDir, "Directory of pristine PGM images");
    gen->add_option("--synthetic", ga.synthetic, "Number of procedural images to add");
    gen->add_option("--radii", ga.radii, "Comma-separated disk radii")->capture_default_str();
    gen->add_option("--out", ga.outDir, "Output directory");
    gen->add_option("--size", ga.size, "Side of procedural images")->capture_default_str();

    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "Print quality metrics of a fused image as CSV");
    eval->add_option("--fused", ea.fused, "Fused image");
    eval->add_option("--ref", ea.ref, "Ground-truth image (enables SSIM)");
    eval->add_option("--sources", ea.sources, "The two source images (enables MI and Q^AB/F)");

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Benchmark methods over a gen-dataset directory");
    bench->add_option("--dataset", ba.dataset, "Directory written by gen-dataset");
    bench->add_option("--methods", ba.methods,
                      "Comma-separated methods, each <measure> or <measure>+cv "
                      "(default variance-dct,variance-dct+cv,ac-max,sml-dct+cv)");
    bench->add_option("--repeat", ba.repeat, "Timing repetitions; runtime is their median")
        ->capture_default_str();
    bench->add_flag("--no-runtime", ba.noRuntime, "Skip timing; leave us_per_block empty");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << one_line(e.what()) << " (" << kUsage << ")\n";
        return kBadArguments;
    }

    try {
        if (fuse->parsed()) return cmd_fuse(fa, out);
        if (gen->parsed()) return cmd_gen_dataset(ga, out);
        if (eval->parsed()) return cmd_eval(ea, out);
        if (bench->parsed()) return cmd_bench(ba, out);
    } catch (const UsageError& e) {
        err << "error: " << one_line(e.what()) << "\n";
        return kBadArguments;
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << one_line(e.what()) << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << one_line(e.what()) << "\n";
        return kFailure;
    }
    err << "error: no subcommand (" << kUsage << ")\n";
    return kBadArguments;
}

}  // namespace dctfuse::cli
