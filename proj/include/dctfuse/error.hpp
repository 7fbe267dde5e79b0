#pragma once

#include <stdexcept>
#include <string>

namespace dctfuse {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    BadDimensions,      // not a multiple of the block size
    Io,
    UnsupportedFormat,  // e.g. ASCII P2 instead of binary P5
    MalformedHeader,
    BadMaxval,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace dctfuse
