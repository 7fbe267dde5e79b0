#pragma once

#include "dctfuse/image.hpp"

#include <filesystem>
#include <string>

namespace dctfuse {

/// Reads a binary PGM (P5, maxval 255). Error codes:
///   Io                 - file missing or truncated pixel data
///   UnsupportedFormat  - any other magic (including ASCII P2)
///   MalformedHeader    - unparsable header fields
///   BadMaxval          - maxval other than 255
///   BadDimensions      - width or height not a multiple of 8 (when
///                        `requireBlockAligned`)
GrayImage read_pgm(const std::filesystem::path& path, bool requireBlockAligned = true);

/// Parses an in-memory PGM; same rules as read_pgm().
GrayImage decode_pgm(const std::string& bytes, const std::string& name = "<memory>",
                     bool requireBlockAligned = true);

/// Writes binary P5 with maxval 255. Pixels go through quantize_u8().
void write_pgm(const GrayImage& img, const std::filesystem::path& path);

std::string encode_pgm(const GrayImage& img);

}  // namespace dctfuse
