#include "atw/metrics.hpp"

#include "atw/error.hpp"

#include <string>

namespace atw {

double metric_coherency(std::span<const Image> frames)
{
    if (frames.size() < 2) {
        throw Error(ErrorCode::TooFewFrames,
                    "coherency needs at least 2 frames, got " + std::to_string(frames.size()));
    }
    double total = 0.0;
    for (std::size_t i = 1; i < frames.size(); ++i) {
        total += mean_abs_difference(frames[i - 1], frames[i]);
    }
    return total / static_cast<double>(frames.size() - 1);
}

} // namespace atw
