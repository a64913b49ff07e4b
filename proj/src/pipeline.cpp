#include "atw/pipeline.hpp"

#include "atw/error.hpp"
#include "atw/image_io.hpp"
#include "atw/metrics.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>

namespace atw {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr double kIdentityTolerance = 1e-5;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

int reflect_index(int i, int n)
{
    if (n == 1) {
        return 0;
    }
    const int period = 2 * (n - 1);
    i %= period;
    if (i < 0) {
        i += period;
    }
    return i < n ? i : period - i;
}

json padding_json(const Padding& p)
{
    return {{"right", p.right},
            {"bottom", p.bottom},
            {"original_width", p.original_width},
            {"original_height", p.original_height}};
}

void write_json(const json& doc, const fs::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::IoFailure, "cannot create " + path.string());
    }
    out << doc.dump(2) << '\n';
}

std::string frame_name(int index, const char* ext)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%03d.%s", index, ext);
    return buf;
}

std::vector<fs::path> list_fields(const fs::path& dir)
{
    if (!fs::is_directory(dir)) {
        throw Error(ErrorCode::IoFailure, dir.string() + " is not a directory");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".atwf") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no .atwf files in " + dir.string());
    }
    return files;
}

} // namespace

Image reflect_pad(const Image& img, int target_w, int target_h)
{
    if (target_w < img.width() || target_h < img.height()) {
        throw Error(ErrorCode::InvalidArgument, "padding target smaller than image");
    }
    Image out(target_w, target_h, img.channels());
    for (int y = 0; y < target_h; ++y) {
        const int sy = reflect_index(y, img.height());
        for (int x = 0; x < target_w; ++x) {
            const int sx = reflect_index(x, img.width());
            for (int c = 0; c < img.channels(); ++c) {
                out.at(x, y, c) = img.at(sx, sy, c);
            }
        }
    }
    return out;
}

Image crop(const Image& img, int width, int height)
{
    if (width > img.width() || height > img.height()) {
        throw Error(ErrorCode::InvalidArgument, "crop larger than image");
    }
    if (width == img.width() && height == img.height()) {
        return img;
    }
    Image out(width, height, img.channels());
    for (int y = 0; y < height; ++y) {
        auto src = img.row(y);
        std::copy_n(src.begin(), static_cast<std::size_t>(width) * img.channels(), out.row(y).begin());
    }
    return out;
}

Image prepare_input(const Image& raw, const ReswarpConfig& cfg, Padding& padding)
{
    padding = {0, 0, raw.width(), raw.height()};
    if (cfg.mode == ReswarpMode::Vanilla) {
        return raw;
    }
    int size = cfg.base_size;
    while (size < std::max(raw.width(), raw.height())) {
        size *= 2;
    }
    padding.right = size - raw.width();
    padding.bottom = size - raw.height();
    return padding.any() ? reflect_pad(raw, size, size) : raw;
}

DecomposeSummary write_decomposition(const Image& raw, const ReswarpConfig& cfg, const fs::path& dir,
                                     const std::string& source_name)
{
    DecomposeSummary summary;
    const Image prepared = prepare_input(raw, cfg, summary.padding);
    const Decomposition d = decompose(prepared, cfg);

    fs::create_directories(dir);
    save_image(d.low, dir / "low.png");
    save_raw(d.low, dir / "low.atwr");
    json files = {{"low", "low.png"}, {"low_raw", "low.atwr"}};
    if (d.mode == ReswarpMode::Vanilla) {
        save_raw(d.residual, dir / "residual.atwr");
        save_residual_png(d.residual, dir / "residual.png");
        files["residual_raw"] = "residual.atwr";
        files["residual_preview"] = "residual.png";
    } else {
        fs::create_directories(dir / "pyramid");
        json levels = json::array();
        for (std::size_t k = 0; k < d.pyramid.levels.size(); ++k) {
            const std::string stem = "level_" + std::to_string(k + 1);
            save_raw(d.pyramid.levels[k], dir / "pyramid" / (stem + ".atwr"));
            save_residual_png(d.pyramid.levels[k], dir / "pyramid" / (stem + ".png"));
            levels.push_back({{"raw", "pyramid/" + stem + ".atwr"},
                              {"preview", "pyramid/" + stem + ".png"},
                              {"width", d.pyramid.levels[k].width()},
                              {"height", d.pyramid.levels[k].height()}});
        }
        save_image(d.pyramid.base, dir / "pyramid" / "base.png");
        files["levels"] = levels;
        files["base"] = "pyramid/base.png";
    }
    summary.levels = d.mode == ReswarpMode::Vanilla ? 1 : d.pyramid.depth();

    json manifest = {{"source", source_name},
                     {"mode", to_string(cfg.mode)},
                     {"base_size", cfg.base_size},
                     {"upsample", to_string(cfg.upsample_method)},
                     {"width", prepared.width()},
                     {"height", prepared.height()},
                     {"channels", prepared.channels()},
                     {"levels", summary.levels},
                     {"padding", padding_json(summary.padding)},
                     {"residual_png_encoding", "value = (r + 2) / 4"},
                     {"files", files}};
    write_json(manifest, dir / "manifest.json");

    // Self-check against what is actually on disk.
    ReswarpConfig reread_cfg;
    Padding reread_padding;
    const Decomposition reread = read_decomposition(dir, reread_cfg, reread_padding);
    summary.reconstruction_error = max_abs_difference(recompose(reread, reread_cfg), prepared);
    manifest["reconstruction_error"] = summary.reconstruction_error;
    write_json(manifest, dir / "manifest.json");
    return summary;
}

Decomposition read_decomposition(const fs::path& dir, ReswarpConfig& cfg, Padding& padding)
{
    json manifest;
    {
        std::ifstream in(dir / "manifest.json");
        if (!in) {
            throw Error(ErrorCode::IoFailure, "cannot open " + (dir / "manifest.json").string());
        }
        try {
            in >> manifest;
        } catch (const json::exception& e) {
            throw Error(ErrorCode::UnsupportedFormat, "manifest.json: " + std::string(e.what()));
        }
    }
    try {
        const auto mode = parse_reswarp_mode(manifest.at("mode").get<std::string>());
        const auto method = parse_resampling_method(manifest.at("upsample").get<std::string>());
        if (!mode || !method) {
            throw Error(ErrorCode::UnsupportedFormat, "manifest.json: unknown mode or upsample method");
        }
        cfg.mode = *mode;
        cfg.upsample_method = *method;
        cfg.base_size = manifest.at("base_size").get<int>();
        const json& p = manifest.at("padding");
        padding = {p.at("right").get<int>(), p.at("bottom").get<int>(), p.at("original_width").get<int>(),
                   p.at("original_height").get<int>()};

        Decomposition d;
        d.mode = cfg.mode;
        const json& files = manifest.at("files");
        d.low = load_raw(dir / files.at("low_raw").get<std::string>());
        if (d.mode == ReswarpMode::Vanilla) {
            d.residual = load_raw(dir / files.at("residual_raw").get<std::string>());
        } else {
            for (const json& level : files.at("levels")) {
                d.pyramid.levels.push_back(load_raw(dir / level.at("raw").get<std::string>()));
            }
            d.pyramid.base = d.low;
            validate_pyramid(d.pyramid);
        }
        return d;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::UnsupportedFormat, "manifest.json: " + std::string(e.what()));
    }
}

const std::vector<double>& default_alpha_schedule()
{
    static const std::vector<double> schedule{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
    return schedule;
}

void validate_job(const AnimationJob& job)
{
    validate_config(job.cfg);
    const int sources = int(job.field_path.has_value()) + int(job.mock.has_value()) + int(job.field_dir.has_value());
    if (sources != 1) {
        throw Error(ErrorCode::InvalidArgument, "exactly one of field, mock or field-dir must be given");
    }
    if (job.alpha_schedule) {
        const auto& alphas = *job.alpha_schedule;
        if (alphas.empty()) {
            throw Error(ErrorCode::InvalidArgument, "alpha schedule is empty");
        }
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            if (!(alphas[i] >= 0.0 && alphas[i] <= 1.0)) {
                throw Error(ErrorCode::AlphaOutOfRange, "alpha " + std::to_string(alphas[i]) + " outside [0, 1]");
            }
            if (i > 0 && alphas[i] < alphas[i - 1]) {
                throw Error(ErrorCode::InvalidArgument, "alpha schedule must be nondecreasing");
            }
        }
    }
}

AnimationReport run_animation(const AnimationJob& job)
{
    validate_job(job);
    const ReswarpConfig& cfg = job.cfg;
    AnimationReport report;

    const Image raw = load_image(job.input_path);
    const Image prepared = prepare_input(raw, cfg, report.padding);

    auto start = Clock::now();
    const Decomposition d = decompose(prepared, cfg);
    report.decompose_ms = elapsed_ms(start);
    report.reconstruction_error = max_abs_difference(recompose(d, cfg), prepared);
    if (!(report.reconstruction_error <= kIdentityTolerance)) {
        report.failed_checks.push_back("decomposition round trip error " +
                                       std::to_string(report.reconstruction_error));
    }

    std::vector<MotionField> fields;
    std::vector<double> alphas;
    if (job.field_dir) {
        for (const auto& path : list_fields(*job.field_dir)) {
            fields.push_back(load_field(path));
        }
        alphas = job.alpha_schedule.value_or(std::vector<double>(fields.size(), 1.0));
        if (alphas.size() != fields.size()) {
            throw Error(ErrorCode::InvalidArgument, "alpha schedule has " + std::to_string(alphas.size()) +
                                                        " entries for " + std::to_string(fields.size()) +
                                                        " per-frame fields");
        }
    } else {
        fields.push_back(job.field_path ? load_field(*job.field_path) : generate_mock_field(*job.mock, cfg.base_size));
        alphas = job.alpha_schedule.value_or(default_alpha_schedule());
    }

    Image base_low = d.low;
    if (job.low_result_path) {
        base_low = load_image(*job.low_result_path);
    }

    fs::create_directories(job.out_dir);
    Image previous;
    double coherency_sum = 0.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const double alpha = alphas[i];
        FrameRecord rec;
        rec.index = static_cast<int>(i);
        rec.alpha = alpha;
        Image frame;
        try {
            const MotionField& source = fields[fields.size() == 1 ? 0 : i];
            const MotionField field = interpolate_field(source, alpha);

            start = Clock::now();
            Image low = job.low_policy == LowResultPolicy::Warp ? warp(base_low, field) : base_low;
            rec.low_result_ms = elapsed_ms(start);

            start = Clock::now();
            ReswarpResult result = reswarp(low, d, field, cfg);
            rec.reswarp_ms = elapsed_ms(start);
            rec.clamped = result.clamped;
            frame = crop(result.image, raw.width(), raw.height());

            start = Clock::now();
            rec.path = job.out_dir / frame_name(rec.index, "png");
            save_image(frame, rec.path);
            rec.write_ms = elapsed_ms(start);

            write_json({{"frame", rec.index},
                        {"alpha", alpha},
                        {"mode", to_string(cfg.mode)},
                        {"base_size", cfg.base_size},
                        {"upsample", to_string(cfg.upsample_method)},
                        {"clamped_samples", rec.clamped},
                        {"padding", padding_json(report.padding)},
                        {"timings_ms",
                         {{"low_result", rec.low_result_ms}, {"reswarp", rec.reswarp_ms}, {"write", rec.write_ms}}}},
                       job.out_dir / frame_name(rec.index, "json"));
        } catch (const Error& e) {
            throw Error(e.code(), "frame " + std::to_string(i) + " (alpha=" + std::to_string(alpha) + "): " + e.what());
        }

        const auto [lo, hi] = std::minmax_element(frame.data().begin(), frame.data().end());
        if (*lo < -1.0f || *hi > 1.0f) {
            report.failed_checks.push_back("frame " + std::to_string(i) + " out of range");
        }
        if (alpha == 0.0 && !job.low_result_path && !job.field_dir) {
            const double err = max_abs_difference(frame, raw);
            report.identity_error = std::max(report.identity_error, err);
            if (!(err <= kIdentityTolerance)) {
                report.failed_checks.push_back("alpha=0 frame differs from input by " + std::to_string(err));
            }
        }
        if (!previous.empty()) {
            const Image pair[2] = {previous, frame};
            coherency_sum += metric_coherency(pair);
        }
        report.frames.push_back(rec);
        if (job.keep_frames) {
            report.kept_frames.push_back(frame);
        }
        previous = std::move(frame);
    }
    if (alphas.size() > 1) {
        report.coherency = coherency_sum / static_cast<double>(alphas.size() - 1);
    }
    report.self_checks_passed = report.failed_checks.empty();

    json frames = json::array();
    for (const auto& f : report.frames) {
        frames.push_back({{"frame", f.index},
                          {"alpha", f.alpha},
                          {"path", f.path.filename().string()},
                          {"clamped_samples", f.clamped},
                          {"timings_ms", {{"low_result", f.low_result_ms}, {"reswarp", f.reswarp_ms}, {"write", f.write_ms}}}});
    }
    write_json({{"input", job.input_path.string()},
                {"mode", to_string(cfg.mode)},
                {"base_size", cfg.base_size},
                {"upsample", to_string(cfg.upsample_method)},
                {"low_result", job.low_result_path ? job.low_result_path->string()
                                                   : (job.low_policy == LowResultPolicy::Warp ? "warped-low" : "identity")},
                {"mock", job.mock ? to_string(*job.mock) : ""},
                {"padding", padding_json(report.padding)},
                {"decompose_ms", report.decompose_ms},
                {"reconstruction_error", report.reconstruction_error},
                {"coherency", {{"value", report.coherency}, {"metric", "mean absolute frame difference (proxy, not flow-compensated)"}}},
                {"self_checks_passed", report.self_checks_passed},
                {"failed_checks", report.failed_checks},
                {"frames", frames}},
               job.out_dir / "report.json");
    return report;
}

} // namespace atw
