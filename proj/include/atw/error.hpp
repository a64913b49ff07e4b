#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace atw {

enum class ErrorCode {
    NonDivisibleDimensions,
    DownscaleNotSupported,
    DimensionMismatch,
    IncompatibleDimensions,
    MalformedPyramid,
    UnsupportedFormat,
    IoFailure,
    BadMagic,
    TruncatedFile,
    AlphaOutOfRange,
    InvalidArgument,
    BadSpec,
    TooFewFrames,
};

std::string_view to_string(ErrorCode code);

/// Thrown by every operation in the library. `code()` identifies the failure
/// class; `what()` carries the human-readable context.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace atw
