#include "atw/resample.hpp"

#include "atw/error.hpp"
#include "atw/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace atw {

std::string_view to_string(ResamplingMethod method)
{
    switch (method) {
    case ResamplingMethod::Nearest: return "nearest";
    case ResamplingMethod::Bilinear: return "bilinear";
    case ResamplingMethod::Bicubic: return "bicubic";
    }
    return "unknown";
}

std::optional<ResamplingMethod> parse_resampling_method(std::string_view name)
{
    if (name == "nearest" || name == "nn") {
        return ResamplingMethod::Nearest;
    }
    if (name == "bilinear") {
        return ResamplingMethod::Bilinear;
    }
    if (name == "bicubic") {
        return ResamplingMethod::Bicubic;
    }
    return std::nullopt;
}

Image downsample_average(const Image& img, int target_w, int target_h)
{
    if (target_w < 1 || target_h < 1 || img.width() % target_w != 0 || img.height() % target_h != 0) {
        throw Error(ErrorCode::NonDivisibleDimensions,
                    std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                        " cannot be block-averaged to " + std::to_string(target_w) + "x" +
                        std::to_string(target_h));
    }
    const int bx = img.width() / target_w;
    const int by = img.height() / target_h;
    const int channels = img.channels();
    const double inv_area = 1.0 / (static_cast<double>(bx) * by);

    Image out(target_w, target_h, channels);
    if (bx == 2 && by == 2) {
        // Pyramid halving: four-sample mean, exact enough in float.
        const std::size_t row_len = static_cast<std::size_t>(target_w) * channels;
        parallel_rows(static_cast<std::size_t>(target_h), [&](std::size_t begin, std::size_t end) {
            for (std::size_t ty = begin; ty < end; ++ty) {
                const float* a = img.row(static_cast<int>(2 * ty)).data();
                const float* b = img.row(static_cast<int>(2 * ty + 1)).data();
                float* dst = out.row(static_cast<int>(ty)).data();
                for (std::size_t i = 0, s = 0; i < row_len; i += channels, s += 2 * channels) {
                    for (int c = 0; c < channels; ++c) {
                        const std::size_t s0 = s + c;
                        const std::size_t s1 = s0 + channels;
                        dst[i + c] = ((a[s0] + a[s1]) + (b[s0] + b[s1])) * 0.25f;
                    }
                }
            }
        });
        return out;
    }
    parallel_rows(static_cast<std::size_t>(target_h), [&](std::size_t begin, std::size_t end) {
        std::vector<double> acc(static_cast<std::size_t>(target_w) * channels);
        for (std::size_t ty = begin; ty < end; ++ty) {
            std::fill(acc.begin(), acc.end(), 0.0);
            for (int dy = 0; dy < by; ++dy) {
                auto src = img.row(static_cast<int>(ty) * by + dy);
                std::size_t s = 0;
                for (int tx = 0; tx < target_w; ++tx) {
                    double* cell = acc.data() + static_cast<std::size_t>(tx) * channels;
                    for (int dx = 0; dx < bx; ++dx) {
                        for (int c = 0; c < channels; ++c) {
                            cell[c] += src[s++];
                        }
                    }
                }
            }
            auto dst = out.row(static_cast<int>(ty));
            for (std::size_t i = 0; i < acc.size(); ++i) {
                dst[i] = static_cast<float>(acc[i] * inv_area);
            }
        }
    });
    return out;
}

namespace {

constexpr int kMaxTaps = 4;

struct Taps {
    std::array<int, kMaxTaps> index{};
    std::array<float, kMaxTaps> weight{};
    int count = 0;
};

float catmull_rom(double x)
{
    constexpr double a = -0.5;
    x = std::fabs(x);
    if (x <= 1.0) {
        return static_cast<float>(((a + 2.0) * x - (a + 3.0)) * x * x + 1.0);
    }
    if (x < 2.0) {
        return static_cast<float>(((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a);
    }
    return 0.0f;
}

std::vector<Taps> make_taps(int src_n, int dst_n, ResamplingMethod method)
{
    std::vector<Taps> taps(static_cast<std::size_t>(dst_n));
    const double scale = static_cast<double>(src_n) / dst_n;
    auto clamp_index = [src_n](long i) { return static_cast<int>(std::clamp(i, 0L, static_cast<long>(src_n - 1))); };
    for (int d = 0; d < dst_n; ++d) {
        Taps& t = taps[static_cast<std::size_t>(d)];
        const double pos = (d + 0.5) * scale - 0.5;
        switch (method) {
        case ResamplingMethod::Nearest: {
            t.count = 1;
            t.index[0] = clamp_index(static_cast<long>(std::floor((d + 0.5) * scale)));
            t.weight[0] = 1.0f;
            break;
        }
        case ResamplingMethod::Bilinear: {
            const double p = std::clamp(pos, 0.0, static_cast<double>(src_n - 1));
            const long i0 = static_cast<long>(std::floor(p));
            const float f = static_cast<float>(p - static_cast<double>(i0));
            t.count = 2;
            t.index = {clamp_index(i0), clamp_index(i0 + 1), 0, 0};
            t.weight = {1.0f - f, f, 0.0f, 0.0f};
            break;
        }
        case ResamplingMethod::Bicubic: {
            const long i0 = static_cast<long>(std::floor(pos));
            const double f = pos - static_cast<double>(i0);
            t.count = 4;
            for (int k = 0; k < 4; ++k) {
                t.index[k] = clamp_index(i0 - 1 + k);
                t.weight[k] = catmull_rom(f - (k - 1));
            }
            break;
        }
        }
    }
    return taps;
}

} // namespace

namespace {

template <int N>
void resample_row(const float* src, float* dst, const std::vector<Taps>& taps, int channels)
{
    for (std::size_t x = 0; x < taps.size(); ++x) {
        const Taps& t = taps[x];
        for (int c = 0; c < channels; ++c) {
            float v = t.weight[0] * src[static_cast<std::size_t>(t.index[0]) * channels + c];
            for (int k = 1; k < N; ++k) {
                v += t.weight[k] * src[static_cast<std::size_t>(t.index[k]) * channels + c];
            }
            dst[x * channels + c] = v;
        }
    }
}

void resample_row(const float* src, float* dst, const std::vector<Taps>& taps, int channels)
{
    switch (taps.front().count) {
    case 1: resample_row<1>(src, dst, taps, channels); break;
    case 2: resample_row<2>(src, dst, taps, channels); break;
    default: resample_row<4>(src, dst, taps, channels); break;
    }
}

} // namespace

Image upsample(const Image& img, int target_w, int target_h, ResamplingMethod method)
{
    if (target_w < img.width() || target_h < img.height()) {
        throw Error(ErrorCode::DownscaleNotSupported,
                    "cannot upsample " + std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                        " to " + std::to_string(target_w) + "x" + std::to_string(target_h));
    }
    if (target_w == img.width() && target_h == img.height()) {
        return img;
    }
    const int channels = img.channels();
    const auto xtaps = make_taps(img.width(), target_w, method);
    const auto ytaps = make_taps(img.height(), target_h, method);
    const std::size_t stride = static_cast<std::size_t>(target_w) * channels;

    // Separable: each output row blends horizontally resampled source rows.
    // A small per-worker cache keyed by source row keeps those rows hot.
    Image out(target_w, target_h, channels);
    parallel_rows(static_cast<std::size_t>(target_h), [&](std::size_t begin, std::size_t end) {
        std::array<std::vector<float>, kMaxTaps + 1> cache;
        std::array<int, kMaxTaps + 1> cached_row;
        cached_row.fill(-1);
        std::size_t next_slot = 0;
        for (auto& buf : cache) {
            buf.resize(stride);
        }
        auto horizontal = [&](int sy) -> const float* {
            for (std::size_t s = 0; s < cache.size(); ++s) {
                if (cached_row[s] == sy) {
                    return cache[s].data();
                }
            }
            const std::size_t slot = next_slot;
            next_slot = (next_slot + 1) % cache.size();
            resample_row(img.row(sy).data(), cache[slot].data(), xtaps, channels);
            cached_row[slot] = sy;
            return cache[slot].data();
        };

        for (std::size_t y = begin; y < end; ++y) {
            const Taps& t = ytaps[y];
            std::array<const float*, kMaxTaps> rows{};
            for (int k = 0; k < t.count; ++k) {
                rows[k] = horizontal(t.index[k]);
            }
            float* dst = out.row(static_cast<int>(y)).data();
            const float w0 = t.weight[0];
            const float* r0 = rows[0];
            if (t.count == 1) {
                std::copy_n(r0, stride, dst);
                continue;
            }
            const float w1 = t.weight[1];
            const float* r1 = rows[1];
            for (std::size_t i = 0; i < stride; ++i) {
                dst[i] = w0 * r0[i] + w1 * r1[i];
            }
            for (int k = 2; k < t.count; ++k) {
                const float wk = t.weight[k];
                const float* rk = rows[k];
                for (std::size_t i = 0; i < stride; ++i) {
                    dst[i] += wk * rk[i];
                }
            }
        }
    });
    return out;
}

} // namespace atw
