#pragma once

#include "atw/reswarp.hpp"

#include <ostream>
#include <vector>

namespace atw {

struct BenchRow {
    int size = 0;
    ReswarpMode mode = ReswarpMode::Vanilla;
    double median_ms = 0.0;
    double p95_ms = 0.0;
    int iterations = 0;
};

double median(std::vector<double> samples);
// Nearest-rank percentile, q in (0, 1].
double percentile(std::vector<double> samples, double q);

/// Times decompose + reswarp on a synthetic textured RGB image of each size
/// with a radial mock field. Each mode gets one untimed warm-up run; timed
/// runs alternate between modes.
std::vector<BenchRow> run_bench(const std::vector<int>& sizes, const std::vector<ReswarpMode>& modes,
                                int iterations, const ReswarpConfig& base_cfg);

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);
void write_bench_table(const std::vector<BenchRow>& rows, std::ostream& out);

// Deterministic textured test image (smooth gradients plus fine stripes/noise).
Image make_textured_image(int width, int height, int channels, unsigned seed);

} // namespace atw
