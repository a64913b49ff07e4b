#pragma once

#include "atw/image.hpp"
#include "atw/resample.hpp"

#include <optional>
#include <vector>

namespace atw {

/// Laplacian pyramid of residual maps. levels.front() is full resolution and
/// each following level is half the size of its predecessor; base holds the
/// final block-averaged image at base_size x base_size.
struct ResidualPyramid {
    std::vector<ResidualMap> levels;
    Image base;

    int depth() const noexcept { return static_cast<int>(levels.size()); }
};

/// Number of halvings K such that width == height == base_size * 2^K, if any.
std::optional<int> pyramid_depth(int width, int height, int base_size);

/// Throws IncompatibleDimensions unless the image is base_size * 2^K on both
/// axes for the same K.
ResidualPyramid build_laplacian_pyramid(const Image& img, int base_size,
                                        ResamplingMethod method = ResamplingMethod::Bilinear);

// Throws MalformedPyramid if level sizes do not double or channels disagree.
void validate_pyramid(const ResidualPyramid& pyr);

Image reconstruct_pyramid(const ResidualPyramid& pyr, ResamplingMethod method = ResamplingMethod::Bilinear);

} // namespace atw
