#pragma once

#include "atw/image.hpp"

#include <optional>
#include <string_view>

namespace atw {

enum class ResamplingMethod { Nearest, Bilinear, Bicubic };

std::string_view to_string(ResamplingMethod method);
std::optional<ResamplingMethod> parse_resampling_method(std::string_view name);

/// Averages non-overlapping (width/target_w) x (height/target_h) blocks.
/// Throws NonDivisibleDimensions unless both axes divide evenly.
Image downsample_average(const Image& img, int target_w, int target_h);

/// Enlarges to target size. Sample positions follow the pixel-center
/// convention (src = (dst + 0.5) * src_n / dst_n - 0.5) with clamp-to-edge
/// taps. Bicubic is Catmull-Rom (a = -0.5). Throws DownscaleNotSupported
/// when either target axis is smaller than the source.
Image upsample(const Image& img, int target_w, int target_h,
               ResamplingMethod method = ResamplingMethod::Bilinear);

} // namespace atw
