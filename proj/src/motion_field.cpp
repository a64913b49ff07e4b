#include "atw/motion_field.hpp"

#include "atw/error.hpp"
#include "atw/parallel.hpp"
#include "atw/resample.hpp"
#include "binary_io.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace atw {

namespace {

constexpr std::uint32_t kNormalizedFlag = 1u;
constexpr std::size_t kHeaderBytes = 20;

float max_abs_channel(const Image& raster, int channel)
{
    float worst = 0.0f;
    auto d = raster.data();
    for (std::size_t i = static_cast<std::size_t>(channel); i < d.size(); i += 2) {
        worst = std::max(worst, std::fabs(d[i]));
    }
    return worst;
}

} // namespace

MotionField::MotionField(int width, int height) : raster_(width, height, 2) {}

MotionField::MotionField(Image raster) : raster_(std::move(raster))
{
    if (raster_.channels() != 2) {
        throw Error(ErrorCode::InvalidArgument,
                    "motion field needs 2 channels, got " + std::to_string(raster_.channels()));
    }
    for (float v : raster_.data()) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::InvalidArgument, "motion field contains a non-finite displacement");
        }
    }
}

float MotionField::max_abs_dx() const { return max_abs_channel(raster_, 0); }
float MotionField::max_abs_dy() const { return max_abs_channel(raster_, 1); }

NormalizedField::NormalizedField(Image raster, float scale_factor)
    : raster_(std::move(raster)), scale_factor_(scale_factor)
{
    if (raster_.channels() != 2) {
        throw Error(ErrorCode::InvalidArgument, "normalized field needs 2 channels");
    }
    if (!(scale_factor_ > 0.0f) || !std::isfinite(scale_factor_)) {
        throw Error(ErrorCode::InvalidArgument, "scale_factor must be positive and finite");
    }
    for (float v : raster_.data()) {
        if (!(v >= -1.0f && v <= 1.0f)) {
            throw Error(ErrorCode::InvalidArgument, "normalized field value outside [-1, 1]");
        }
    }
}

MotionField scale_field(const NormalizedField& nf)
{
    Image out = nf.raster();
    for (float& v : out.data()) {
        v *= nf.scale_factor();
    }
    return MotionField(std::move(out));
}

MotionField upsample_field(const MotionField& f, int target_w, int target_h)
{
    if (target_w < f.width() || target_h < f.height()) {
        throw Error(ErrorCode::DownscaleNotSupported,
                    "cannot upsample field " + std::to_string(f.width()) + "x" + std::to_string(f.height()) +
                        " to " + std::to_string(target_w) + "x" + std::to_string(target_h));
    }
    if (target_w == f.width() && target_h == f.height()) {
        return f;
    }
    Image out = upsample(f.raster(), target_w, target_h, ResamplingMethod::Bilinear);
    const float sx = static_cast<float>(static_cast<double>(target_w) / f.width());
    const float sy = static_cast<float>(static_cast<double>(target_h) / f.height());
    auto d = out.data();
    for (std::size_t i = 0; i < d.size(); i += 2) {
        d[i] *= sx;
        d[i + 1] *= sy;
    }
    return MotionField(std::move(out));
}

MotionField interpolate_field(const MotionField& f, double alpha)
{
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw Error(ErrorCode::AlphaOutOfRange, "alpha " + std::to_string(alpha) + " is outside [0, 1]");
    }
    Image out = f.raster();
    const float a = static_cast<float>(alpha);
    for (float& v : out.data()) {
        v *= a;
    }
    return MotionField(std::move(out));
}

namespace {

// Splits coordinate + displacement into an integer cell and a fraction.
// d - floor(d) is exact in float, so the fraction carries no error from the
// magnitude of the pixel index. Clamping to [0, n - 1] happens on the cell.
struct Tap {
    int i0;
    int i1;
    float frac;
};

inline Tap clamp_tap(int base, float d, int n)
{
    // Anything beyond the raster clamps to the border anyway; bounding d keeps
    // the int conversion defined.
    const float bound = static_cast<float>(n + 1);
    d = std::clamp(d, -bound - static_cast<float>(base), bound);
    int cell = static_cast<int>(d);
    cell -= static_cast<float>(cell) > d;
    const int i0 = base + cell;
    const float frac = d - static_cast<float>(cell);
    if (i0 < 0) {
        return {0, 0, 0.0f};
    }
    if (i0 >= n - 1) {
        return {n - 1, n - 1, 0.0f};
    }
    return {i0, i0 + 1, frac};
}

template <bool Accumulate, int Channels>
void warp_rows(const Image& img, const MotionField& f, Image& dst, std::size_t begin, std::size_t end)
{
    const int w = img.width();
    const int h = img.height();
    const int channels = Channels > 0 ? Channels : img.channels();
    const std::size_t row_stride = static_cast<std::size_t>(w) * channels;
    const float* src = img.data().data();
    const float* flow = f.data().data();

    for (std::size_t y = begin; y < end; ++y) {
        float* out = dst.row(static_cast<int>(y)).data();
        const float* fr = flow + y * static_cast<std::size_t>(w) * 2;
        for (int x = 0; x < w; ++x) {
            const Tap tx = clamp_tap(x, fr[2 * x], w);
            const Tap ty = clamp_tap(static_cast<int>(y), fr[2 * x + 1], h);
            const float* r0 = src + static_cast<std::size_t>(ty.i0) * row_stride;
            const float* r1 = src + static_cast<std::size_t>(ty.i1) * row_stride;
            const float* p00 = r0 + tx.i0 * channels;
            const float* p10 = r0 + tx.i1 * channels;
            const float* p01 = r1 + tx.i0 * channels;
            const float* p11 = r1 + tx.i1 * channels;
            const float fx = tx.frac;
            const float fy = ty.frac;
            float* o = out + static_cast<std::size_t>(x) * channels;
            for (int c = 0; c < channels; ++c) {
                const float top = p00[c] + fx * (p10[c] - p00[c]);
                const float bottom = p01[c] + fx * (p11[c] - p01[c]);
                const float v = top + fy * (bottom - top);
                if constexpr (Accumulate) {
                    o[c] += v;
                } else {
                    o[c] = v;
                }
            }
        }
    }
}

// dst = sample (Accumulate = false) or dst += sample (Accumulate = true).
// The sample is rounded to float before the addition so the fused path
// matches add(dst, warp(img, f)) bit for bit.
template <bool Accumulate>
void warp_kernel(const Image& img, const MotionField& f, Image& dst)
{
    if (img.width() != f.width() || img.height() != f.height()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "warp: image " + std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                        " vs field " + std::to_string(f.width()) + "x" + std::to_string(f.height()));
    }
    parallel_rows(static_cast<std::size_t>(img.height()), [&](std::size_t begin, std::size_t end) {
        switch (img.channels()) {
        case 1: warp_rows<Accumulate, 1>(img, f, dst, begin, end); break;
        case 2: warp_rows<Accumulate, 2>(img, f, dst, begin, end); break;
        case 3: warp_rows<Accumulate, 3>(img, f, dst, begin, end); break;
        default: warp_rows<Accumulate, 0>(img, f, dst, begin, end); break;
        }
    });
}

} // namespace

Image warp(const Image& img, const MotionField& f)
{
    Image out(img.width(), img.height(), img.channels());
    warp_kernel<false>(img, f, out);
    return out;
}

void warp_accumulate(const Image& img, const MotionField& f, Image& dst)
{
    if (!img.same_shape(dst)) {
        throw Error(ErrorCode::DimensionMismatch, "warp_accumulate: destination shape differs from source");
    }
    warp_kernel<true>(img, f, dst);
}

FieldRecord read_field_record(const std::filesystem::path& path)
{
    const auto file = detail::read_file(path);
    if (file.size() < 4 || std::string(file.begin(), file.begin() + 4) != "ATWF") {
        throw Error(ErrorCode::BadMagic, path.string() + ": expected ATWF header");
    }
    if (file.size() < kHeaderBytes) {
        throw Error(ErrorCode::TruncatedFile, path.string() + ": ATWF header incomplete");
    }
    const std::uint32_t width = detail::get_u32(file, 4);
    const std::uint32_t height = detail::get_u32(file, 8);
    const std::uint32_t flags = detail::get_u32(file, 12);
    const float scale = detail::get_f32(file, 16);
    if (width == 0 || height == 0 || width > (1u << 20) || height > (1u << 20)) {
        throw Error(ErrorCode::TruncatedFile, path.string() + ": implausible ATWF dimensions");
    }
    const std::uint64_t count = 2ull * width * height;
    if (file.size() - kHeaderBytes < count * 4) {
        throw Error(ErrorCode::TruncatedFile, path.string() + ": ATWF payload shorter than header declares");
    }
    std::vector<float> samples(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i] = detail::get_f32(file, kHeaderBytes + 4 * i);
    }
    return {Image(static_cast<int>(width), static_cast<int>(height), 2, std::move(samples)),
            (flags & kNormalizedFlag) != 0, scale};
}

void write_field_record(const FieldRecord& record, const std::filesystem::path& path)
{
    if (record.raster.channels() != 2) {
        throw Error(ErrorCode::InvalidArgument, "ATWF raster needs 2 channels");
    }
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderBytes + record.raster.size() * 4);
    out.insert(out.end(), {'A', 'T', 'W', 'F'});
    detail::put_u32(out, static_cast<std::uint32_t>(record.raster.width()));
    detail::put_u32(out, static_cast<std::uint32_t>(record.raster.height()));
    detail::put_u32(out, record.normalized ? kNormalizedFlag : 0u);
    detail::put_f32(out, record.scale_factor);
    for (float v : record.raster.data()) {
        detail::put_f32(out, v);
    }
    detail::write_file(path, out);
}

MotionField load_field(const std::filesystem::path& path)
{
    FieldRecord record = read_field_record(path);
    if (record.normalized) {
        return scale_field(NormalizedField(std::move(record.raster), record.scale_factor));
    }
    return MotionField(std::move(record.raster));
}

void save_field(const MotionField& f, const std::filesystem::path& path)
{
    write_field_record({f.raster(), false, 1.0f}, path);
}

void save_normalized_field(const NormalizedField& nf, const std::filesystem::path& path)
{
    write_field_record({nf.raster(), true, nf.scale_factor()}, path);
}

} // namespace atw
