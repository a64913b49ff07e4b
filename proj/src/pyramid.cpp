#include "atw/pyramid.hpp"

#include "atw/error.hpp"

#include <string>

namespace atw {

std::optional<int> pyramid_depth(int width, int height, int base_size)
{
    if (base_size < 1 || width != height || width < base_size) {
        return std::nullopt;
    }
    int depth = 0;
    int size = width;
    while (size > base_size) {
        if (size % 2 != 0) {
            return std::nullopt;
        }
        size /= 2;
        ++depth;
    }
    if (size != base_size) {
        return std::nullopt;
    }
    return depth;
}

ResidualPyramid build_laplacian_pyramid(const Image& img, int base_size, ResamplingMethod method)
{
    const auto depth = pyramid_depth(img.width(), img.height(), base_size);
    if (!depth) {
        throw Error(ErrorCode::IncompatibleDimensions,
                    std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                        " is not base_size*2^K on both axes (base_size " + std::to_string(base_size) + ")");
    }
    ResidualPyramid pyr;
    pyr.levels.reserve(static_cast<std::size_t>(*depth));
    if (*depth == 0) {
        pyr.base = img;
        return pyr;
    }
    const Image* current = &img;
    Image smaller;
    for (int k = 0; k < *depth; ++k) {
        smaller = downsample_average(*current, current->width() / 2, current->height() / 2);
        // level = current - upsample(smaller), computed in the upsample buffer
        Image level = upsample(smaller, current->width(), current->height(), method);
        auto cur = current->data();
        auto lv = level.data();
        for (std::size_t i = 0; i < lv.size(); ++i) {
            lv[i] = cur[i] - lv[i];
        }
        pyr.levels.push_back(std::move(level));
        current = &pyr.base;
        pyr.base = std::move(smaller);
    }
    return pyr;
}

void validate_pyramid(const ResidualPyramid& pyr)
{
    if (pyr.base.empty()) {
        throw Error(ErrorCode::MalformedPyramid, "pyramid has no base image");
    }
    const Image* below = &pyr.base;
    for (auto it = pyr.levels.rbegin(); it != pyr.levels.rend(); ++it) {
        if (it->width() != 2 * below->width() || it->height() != 2 * below->height() ||
            it->channels() != below->channels()) {
            throw Error(ErrorCode::MalformedPyramid,
                        "level " + std::to_string(std::distance(it, pyr.levels.rend())) + " is " +
                            std::to_string(it->width()) + "x" + std::to_string(it->height()) +
                            ", expected twice " + std::to_string(below->width()) + "x" +
                            std::to_string(below->height()));
        }
        below = &*it;
    }
}

Image reconstruct_pyramid(const ResidualPyramid& pyr, ResamplingMethod method)
{
    validate_pyramid(pyr);
    Image current = pyr.base;
    for (auto it = pyr.levels.rbegin(); it != pyr.levels.rend(); ++it) {
        current = add(upsample(current, it->width(), it->height(), method), *it);
    }
    return current;
}

} // namespace atw
