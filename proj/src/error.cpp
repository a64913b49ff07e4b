#include "atw/error.hpp"

namespace atw {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NonDivisibleDimensions: return "NonDivisibleDimensions";
    case ErrorCode::DownscaleNotSupported: return "DownscaleNotSupported";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IncompatibleDimensions: return "IncompatibleDimensions";
    case ErrorCode::MalformedPyramid: return "MalformedPyramid";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::TooFewFrames: return "TooFewFrames";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

} // namespace atw
