#pragma once

#include "atw/image.hpp"

#include <filesystem>

namespace atw {

/// Loads an 8-bit PNG (gray or RGB; alpha is dropped) or binary PGM/PPM
/// (P5/P6, maxval 255). The format is detected from the file signature.
Image load_image(const std::filesystem::path& path);

/// Writes .png, .ppm or .pgm by extension. Samples are clamped to [-1, 1]
/// and quantized to 8 bits. One-channel images go out as P5 for PNM paths.
void save_image(const Image& img, const std::filesystem::path& path);

// Residual PNGs store (r + 2) / 4 so the [-2, 2] range fits in 8 bits.
void save_residual_png(const ResidualMap& map, const std::filesystem::path& path);
ResidualMap load_residual_png(const std::filesystem::path& path);

// Lossless float raster: "ATWR", u32 width, height, channels (LE), float32 samples.
void save_raw(const Image& img, const std::filesystem::path& path);
Image load_raw(const std::filesystem::path& path);

} // namespace atw
