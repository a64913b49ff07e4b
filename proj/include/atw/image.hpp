#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace atw {

/// Row-major, channel-interleaved float raster. Pixel samples nominally lie
/// in [-1, 1]; residual rasters use the same container with range [-2, 2].
class Image {
public:
    Image() = default;
    Image(int width, int height, int channels, float fill = 0.0f);
    Image(int width, int height, int channels, std::vector<float> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    float& at(int x, int y, int c)
    {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }
    float at(int x, int y, int c) const
    {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }

    std::span<float> row(int y)
    {
        return {data_.data() + static_cast<std::size_t>(y) * width_ * channels_,
                static_cast<std::size_t>(width_) * channels_};
    }
    std::span<const float> row(int y) const
    {
        return {data_.data() + static_cast<std::size_t>(y) * width_ * channels_,
                static_cast<std::size_t>(width_) * channels_};
    }

    std::span<float> data() noexcept { return data_; }
    std::span<const float> data() const noexcept { return data_; }

    bool same_shape(const Image& other) const noexcept
    {
        return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
    }

    bool operator==(const Image&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<float> data_;
};

// High-frequency difference raster; same layout as Image.
using ResidualMap = Image;

// 8-bit <-> signed range mapping: 0 -> -1, 255 -> +1.
float from_u8(std::uint8_t value) noexcept;
std::uint8_t to_u8(float sample) noexcept;

std::vector<float> from_signed_range(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> to_signed_range_bytes(std::span<const float> samples);

/// Per-sample difference original - approx.
ResidualMap residual(const Image& original, const Image& approx);

/// Per-sample sum; shapes must match.
Image add(const Image& a, const Image& b);

/// Clamps in place to [lo, hi]. Returns the number of samples that were more
/// than `slack` outside the range; rounding-level overshoot is clamped silently.
std::size_t clamp_in_place(Image& img, float lo = -1.0f, float hi = 1.0f, float slack = 1e-5f);

float max_abs_difference(const Image& a, const Image& b);
double mean_abs_difference(const Image& a, const Image& b);
double mean_value(const Image& img);

} // namespace atw
