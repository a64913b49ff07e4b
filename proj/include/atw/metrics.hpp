#pragma once

#include "atw/image.hpp"

#include <span>

namespace atw {

/// Temporal-smoothness proxy: mean over consecutive frame pairs of the mean
/// absolute per-sample difference. Lower is smoother. This is a plain
/// frame-difference measure, not a flow-compensated warping error.
/// Throws TooFewFrames for fewer than two frames.
double metric_coherency(std::span<const Image> frames);

} // namespace atw
