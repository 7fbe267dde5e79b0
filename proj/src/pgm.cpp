#include "dctfuse/pgm.hpp"

#include "dctfuse/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>

namespace dctfuse {
namespace {

// Header tokens are separated by whitespace; '#' starts a comment that runs
// to end of line.
class HeaderReader {
public:
    HeaderReader(const std::string& bytes, const std::string& name) : s_(bytes), name_(name) {}

    long number(const char* field) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > std::numeric_limits<int>::max())
                throw Error(ErrorCode::MalformedHeader, name_ + ": " + field + " too large");
            ++pos_;
        }
        if (pos_ == start)
            throw Error(ErrorCode::MalformedHeader, name_ + ": missing or invalid " + field);
        return v;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_start() {
        if (pos_ >= s_.size() || !std::isspace(static_cast<unsigned char>(s_[pos_])))
            throw Error(ErrorCode::MalformedHeader, name_ + ": missing whitespace before raster");
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < s_.size()) {
            const char ch = s_[pos_];
            if (std::isspace(static_cast<unsigned char>(ch))) {
                ++pos_;
            } else if (ch == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::string& s_;
    const std::string& name_;
    std::size_t pos_ = 2;
};

}  // namespace

GrayImage decode_pgm(const std::string& bytes, const std::string& name, bool requireBlockAligned) {
    if (bytes.size() < 2 || bytes[0] != 'P')
        throw Error(ErrorCode::UnsupportedFormat, name + ": not a PGM file");
    if (bytes[1] != '5')
        throw Error(ErrorCode::UnsupportedFormat,
                    name + ": unsupported format P" + std::string(1, bytes[1]) +
                        " (only binary P5 is accepted)");
    HeaderReader hdr(bytes, name);
    const long width = hdr.number("width");
    const long height = hdr.number("height");
    const long maxval = hdr.number("maxval");
    if (width <= 0 || height <= 0)
        throw Error(ErrorCode::MalformedHeader, name + ": dimensions must be positive");
    if (maxval != 255)
        throw Error(ErrorCode::BadMaxval,
                    name + ": maxval " + std::to_string(maxval) + " (only 255 is supported)");
    const std::size_t start = hdr.raster_start();
    const std::size_t count = std::size_t(width) * std::size_t(height);
    if (bytes.size() < start + count)
        throw Error(ErrorCode::Io, name + ": truncated pixel data (expected " +
                                       std::to_string(count) + " bytes, found " +
                                       std::to_string(bytes.size() - std::min(bytes.size(), start)) + ")");
    std::vector<double> px(count);
    for (std::size_t i = 0; i < count; ++i) px[i] = static_cast<unsigned char>(bytes[start + i]);
    GrayImage img(int(width), int(height), std::move(px));
    if (requireBlockAligned) require_block_aligned(img, name.c_str());
    return img;
}

GrayImage read_pgm(const std::filesystem::path& path, bool requireBlockAligned) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, path.string() + ": cannot open for reading");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorCode::Io, path.string() + ": read failed");
    return decode_pgm(bytes, path.string(), requireBlockAligned);
}

std::string encode_pgm(const GrayImage& img) {
    std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) +
                      "\n255\n";
    out.reserve(out.size() + img.size());
    for (double v : img.pixels()) out.push_back(static_cast<char>(quantize_u8(v)));
    return out;
}

void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, path.string() + ": cannot open for writing");
    const std::string bytes = encode_pgm(img);
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out) throw Error(ErrorCode::Io, path.string() + ": write failed");
}

}  // namespace dctfuse
