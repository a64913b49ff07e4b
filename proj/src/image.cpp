#include "atw/image.hpp"

#include "atw/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace atw {

namespace {

void check_dims(int width, int height, int channels)
{
    if (width < 1 || height < 1 || channels < 1) {
        throw Error(ErrorCode::InvalidArgument,
                    "image dimensions must be positive, got " + std::to_string(width) + "x" +
                        std::to_string(height) + "x" + std::to_string(channels));
    }
}

void require_same_shape(const Image& a, const Image& b, const char* op)
{
    if (!a.same_shape(b)) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(op) + ": " + std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                        "x" + std::to_string(a.channels()) + " vs " + std::to_string(b.width()) + "x" +
                        std::to_string(b.height()) + "x" + std::to_string(b.channels()));
    }
}

} // namespace

Image::Image(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels)
{
    check_dims(width, height, channels);
    data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

Image::Image(int width, int height, int channels, std::vector<float> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data))
{
    check_dims(width, height, channels);
    if (data_.size() != static_cast<std::size_t>(width) * height * channels) {
        throw Error(ErrorCode::DimensionMismatch, "sample count " + std::to_string(data_.size()) +
                                                      " does not match " + std::to_string(width) + "x" +
                                                      std::to_string(height) + "x" + std::to_string(channels));
    }
}

float from_u8(std::uint8_t value) noexcept { return static_cast<float>(2 * int{value} - 255) / 255.0f; }

std::uint8_t to_u8(float sample) noexcept
{
    const float scaled = (sample + 1.0f) * 0.5f * 255.0f;
    return static_cast<std::uint8_t>(std::clamp(std::lround(scaled), 0L, 255L));
}

std::vector<float> from_signed_range(std::span<const std::uint8_t> bytes)
{
    std::vector<float> out(bytes.size());
    std::transform(bytes.begin(), bytes.end(), out.begin(), from_u8);
    return out;
}

std::vector<std::uint8_t> to_signed_range_bytes(std::span<const float> samples)
{
    std::vector<std::uint8_t> out(samples.size());
    std::transform(samples.begin(), samples.end(), out.begin(), to_u8);
    return out;
}

ResidualMap residual(const Image& original, const Image& approx)
{
    require_same_shape(original, approx, "residual");
    ResidualMap out(original.width(), original.height(), original.channels());
    auto o = original.data();
    auto a = approx.data();
    auto r = out.data();
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = o[i] - a[i];
    }
    return out;
}

Image add(const Image& a, const Image& b)
{
    require_same_shape(a, b, "add");
    Image out(a.width(), a.height(), a.channels());
    auto x = a.data();
    auto y = b.data();
    auto r = out.data();
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = x[i] + y[i];
    }
    return out;
}

std::size_t clamp_in_place(Image& img, float lo, float hi, float slack)
{
    std::size_t clamped = 0;
    for (float& v : img.data()) {
        if (v < lo) {
            clamped += (lo - v) > slack;
            v = lo;
        } else if (v > hi) {
            clamped += (v - hi) > slack;
            v = hi;
        }
    }
    return clamped;
}

float max_abs_difference(const Image& a, const Image& b)
{
    require_same_shape(a, b, "max_abs_difference");
    float worst = 0.0f;
    auto x = a.data();
    auto y = b.data();
    for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, std::fabs(x[i] - y[i]));
    }
    return worst;
}

double mean_abs_difference(const Image& a, const Image& b)
{
    require_same_shape(a, b, "mean_abs_difference");
    double sum = 0.0;
    auto x = a.data();
    auto y = b.data();
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += std::fabs(static_cast<double>(x[i]) - y[i]);
    }
    return x.empty() ? 0.0 : sum / static_cast<double>(x.size());
}

double mean_value(const Image& img)
{
    double sum = 0.0;
    for (float v : img.data()) {
        sum += v;
    }
    return img.empty() ? 0.0 : sum / static_cast<double>(img.size());
}

} // namespace atw
