#pragma once

#include "atw/image.hpp"

#include <filesystem>

namespace atw {

/// Per-pixel (dx, dy) displacement in pixel units of the field's own grid.
/// Positive dx points right, positive dy points down. Values are finite.
class MotionField {
public:
    MotionField() = default;
    MotionField(int width, int height);
    // Takes a 2-channel raster; throws InvalidArgument on non-finite values.
    explicit MotionField(Image raster);

    int width() const noexcept { return raster_.width(); }
    int height() const noexcept { return raster_.height(); }
    float dx(int x, int y) const { return raster_.at(x, y, 0); }
    float dy(int x, int y) const { return raster_.at(x, y, 1); }

    const Image& raster() const noexcept { return raster_; }
    std::span<const float> data() const noexcept { return raster_.data(); }

    float max_abs_dx() const;
    float max_abs_dy() const;

    bool operator==(const MotionField&) const = default;

private:
    Image raster_;
};

/// Raw motion-head output: components in [-1, 1] plus the pixel scale that
/// turns them into displacements.
class NormalizedField {
public:
    NormalizedField(Image raster, float scale_factor);

    int width() const noexcept { return raster_.width(); }
    int height() const noexcept { return raster_.height(); }
    float scale_factor() const noexcept { return scale_factor_; }
    const Image& raster() const noexcept { return raster_; }

private:
    Image raster_;
    float scale_factor_;
};

MotionField scale_field(const NormalizedField& nf);

/// Bilinear resize of both components followed by rescaling dx by
/// target_w / width and dy by target_h / height.
MotionField upsample_field(const MotionField& f, int target_w, int target_h);

// Multiplies every component by alpha; throws AlphaOutOfRange outside [0, 1].
MotionField interpolate_field(const MotionField& f, double alpha);

/// Backward bilinear warp: out(x, y) = in(x + dx, y + dy) with the source
/// coordinate clamped to the raster. Works for images and residual maps.
Image warp(const Image& img, const MotionField& f);

// dst += warp(img, f), without the temporary.
void warp_accumulate(const Image& img, const MotionField& f, Image& dst);

/// ATWF container contents as stored on disk.
struct FieldRecord {
    Image raster;
    bool normalized = false;
    float scale_factor = 1.0f;
};

FieldRecord read_field_record(const std::filesystem::path& path);
void write_field_record(const FieldRecord& record, const std::filesystem::path& path);

// Normalized records are scaled to pixels on load.
MotionField load_field(const std::filesystem::path& path);
void save_field(const MotionField& f, const std::filesystem::path& path);
void save_normalized_field(const NormalizedField& nf, const std::filesystem::path& path);

} // namespace atw
