#include "atw/bench.hpp"

#include "atw/error.hpp"
#include "atw/mock_field.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <string>

namespace atw {

double median(std::vector<double> samples)
{
    if (samples.empty()) {
        throw Error(ErrorCode::InvalidArgument, "median of empty sample set");
    }
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    return n % 2 == 1 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}

double percentile(std::vector<double> samples, double q)
{
    if (samples.empty() || !(q > 0.0 && q <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "percentile needs samples and q in (0, 1]");
    }
    std::sort(samples.begin(), samples.end());
    const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(samples.size())));
    return samples[std::max<std::size_t>(rank, 1) - 1];
}

Image make_textured_image(int width, int height, int channels, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<float> noise(-0.15f, 0.15f);
    Image img(width, height, channels);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double u = static_cast<double>(x) / width;
            const double v = static_cast<double>(y) / height;
            for (int c = 0; c < channels; ++c) {
                const double smooth = 0.35 * std::sin(two_pi * (u + 0.3 * c)) * std::cos(two_pi * v);
                const double stripes = 0.25 * std::sin(two_pi * (x * 0.19 + y * 0.07 + c));
                const float value = static_cast<float>(smooth + stripes) + noise(rng);
                img.at(x, y, c) = std::clamp(value, -1.0f, 1.0f);
            }
        }
    }
    return img;
}

std::vector<BenchRow> run_bench(const std::vector<int>& sizes, const std::vector<ReswarpMode>& modes, int iterations,
                                const ReswarpConfig& base_cfg)
{
    if (iterations < 1) {
        throw Error(ErrorCode::InvalidArgument, "iterations must be at least 1");
    }
    validate_config(base_cfg);
    const double centre = (base_cfg.base_size - 1) / 2.0;
    const MotionField field = generate_mock_field({MockKind::Radial, centre, centre, 0.05}, base_cfg.base_size);

    std::vector<BenchRow> rows;
    for (const int size : sizes) {
        const Image img = make_textured_image(size, size, 3, static_cast<unsigned>(size));
        auto once = [&](ReswarpMode mode) {
            ReswarpConfig cfg = base_cfg;
            cfg.mode = mode;
            const Decomposition d = decompose(img, cfg);
            return reswarp(d.low, d, field, cfg);
        };
        std::vector<std::vector<double>> times(modes.size());
        for (const ReswarpMode mode : modes) {
            once(mode);
        }
        for (int i = 0; i < iterations; ++i) {
            for (std::size_t m = 0; m < modes.size(); ++m) {
                const auto start = std::chrono::steady_clock::now();
                const ReswarpResult result = once(modes[m]);
                times[m].push_back(
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
                if (result.image.empty()) {
                    throw Error(ErrorCode::InvalidArgument, "empty reswarp output");
                }
            }
        }
        for (std::size_t m = 0; m < modes.size(); ++m) {
            rows.push_back({size, modes[m], median(times[m]), percentile(times[m], 0.95), iterations});
        }
    }
    return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out)
{
    out << "size,mode,median_ms,p95_ms\n";
    out << std::fixed << std::setprecision(4);
    for (const auto& r : rows) {
        out << r.size << ',' << to_string(r.mode) << ',' << r.median_ms << ',' << r.p95_ms << '\n';
    }
}

void write_bench_table(const std::vector<BenchRow>& rows, std::ostream& out)
{
    out << std::left << std::setw(8) << "size" << std::setw(12) << "mode" << std::right << std::setw(12)
        << "median_ms" << std::setw(12) << "p95_ms" << std::setw(8) << "iters" << '\n';
    out << std::fixed << std::setprecision(3);
    for (const auto& r : rows) {
        out << std::left << std::setw(8) << r.size << std::setw(12) << to_string(r.mode) << std::right
            << std::setw(12) << r.median_ms << std::setw(12) << r.p95_ms << std::setw(8) << r.iterations << '\n';
    }
}

} // namespace atw
