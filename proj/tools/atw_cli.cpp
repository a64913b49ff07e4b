// atw: command-line front end for decomposition, residual warping, animation
// sequences, mock motion fields and benchmarks.

#include "atw/bench.hpp"
#include "atw/error.hpp"
#include "atw/image_io.hpp"
#include "atw/mock_field.hpp"
#include "atw/parallel.hpp"
#include "atw/pipeline.hpp"
#include "atw/reswarp.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

constexpr int kExitSpecError = 2;
constexpr int kExitSelfCheck = 3;

struct SharedOptions {
    std::string mode = "vanilla";
    int base = 128;
    std::string upsample = "bilinear";
    int threads = 1;
    std::string out;
};

void add_shared(CLI::App* cmd, SharedOptions& opts, bool out_required = true)
{
    cmd->add_option("--mode", opts.mode, "vanilla or multiscale")
        ->check(CLI::IsMember({"vanilla", "multiscale"}))
        ->capture_default_str();
    cmd->add_option("--base", opts.base, "low-resolution size")->capture_default_str();
    cmd->add_option("--upsample", opts.upsample, "nearest, bilinear or bicubic")
        ->check(CLI::IsMember({"nearest", "bilinear", "bicubic"}))
        ->capture_default_str();
    cmd->add_option("--threads", opts.threads, "worker threads (ATW_THREADS overrides)")->capture_default_str();
    auto* out = cmd->add_option("--out", opts.out, "output location");
    if (out_required) {
        out->required();
    }
}

atw::ReswarpConfig make_config(const SharedOptions& opts)
{
    atw::ReswarpConfig cfg;
    cfg.mode = *atw::parse_reswarp_mode(opts.mode);
    cfg.base_size = opts.base;
    cfg.upsample_method = *atw::parse_resampling_method(opts.upsample);
    atw::validate_config(cfg);
    return cfg;
}

void apply_threads(const SharedOptions& opts)
{
    int threads = opts.threads;
    if (const char* env = std::getenv("ATW_THREADS"); env != nullptr && *env != '\0') {
        try {
            threads = std::stoi(env);
        } catch (const std::exception&) {
            throw atw::Error(atw::ErrorCode::InvalidArgument, std::string("ATW_THREADS is not an integer: ") + env);
        }
    }
    atw::set_num_threads(threads);
}

std::vector<double> parse_alphas(const std::string& text)
{
    std::vector<double> alphas;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            std::size_t used = 0;
            alphas.push_back(std::stod(token, &used));
            if (used != token.size()) {
                throw std::invalid_argument(token);
            }
        } catch (const std::exception&) {
            throw atw::Error(atw::ErrorCode::InvalidArgument, "bad alpha '" + token + "'");
        }
    }
    return alphas;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& text, Parse parse)
{
    std::vector<T> values;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        values.push_back(parse(token));
    }
    return values;
}

int cmd_decompose(const SharedOptions& opts, const std::string& input)
{
    const atw::ReswarpConfig cfg = make_config(opts);
    const atw::Image raw = atw::load_image(input);
    const auto summary = atw::write_decomposition(raw, cfg, opts.out, input);
    std::cout << "decomposed " << input << " (" << raw.width() << "x" << raw.height() << ", "
              << atw::to_string(cfg.mode) << ", " << summary.levels << " residual level(s)) into " << opts.out
              << "\nreconstruction_error " << summary.reconstruction_error << '\n';
    if (!(summary.reconstruction_error <= 1e-5)) {
        std::cerr << "self-check failed: reconstruction error above 1e-5\n";
        return kExitSelfCheck;
    }
    return 0;
}

struct FieldOptions {
    std::string field;
    std::string mock;
    std::string field_dir;
    std::string low_result;
    std::string low_policy = "identity";
};

void add_field_options(CLI::App* cmd, FieldOptions& opts, bool allow_dir)
{
    auto* field = cmd->add_option("--field", opts.field, "ATWF motion field at base resolution");
    auto* mock = cmd->add_option("--mock", opts.mock, "analytic field: zero | translate:dx,dy | radial:cx,cy,gain | shear:band,gain");
    field->excludes(mock);
    if (allow_dir) {
        auto* dir = cmd->add_option("--field-dir", opts.field_dir, "directory with one ATWF per frame");
        dir->excludes(field)->excludes(mock);
    }
    cmd->add_option("--low-result", opts.low_result, "generated low-resolution result (defaults to the decomposed low component)");
    cmd->add_option("--low-policy", opts.low_policy, "stand-in generator when no low result is given")
        ->check(CLI::IsMember({"identity", "warp"}))
        ->capture_default_str();
}

atw::MotionField resolve_field(const FieldOptions& opts, int base_size)
{
    if (!opts.field.empty()) {
        return atw::load_field(opts.field);
    }
    if (!opts.mock.empty()) {
        return atw::generate_mock_field(atw::parse_mock_spec(opts.mock), base_size);
    }
    throw atw::Error(atw::ErrorCode::InvalidArgument, "one of --field or --mock is required");
}

int cmd_reswarp(const SharedOptions& opts, const std::string& input, const std::string& decomposition_dir,
                const FieldOptions& fopts, double alpha)
{
    atw::ReswarpConfig cfg = make_config(opts);
    atw::Padding padding;
    atw::Decomposition d;
    if (!decomposition_dir.empty()) {
        d = atw::read_decomposition(decomposition_dir, cfg, padding);
    } else {
        const atw::Image raw = atw::load_image(input);
        d = atw::decompose(atw::prepare_input(raw, cfg, padding), cfg);
    }
    const atw::MotionField field = atw::interpolate_field(resolve_field(fopts, cfg.base_size), alpha);
    atw::Image low = fopts.low_result.empty() ? d.low : atw::load_image(fopts.low_result);
    if (fopts.low_policy == "warp") {
        low = atw::warp(low, field);
    }
    const atw::ReswarpResult result = atw::reswarp(low, d, field, cfg);
    const atw::Image out = atw::crop(result.image, padding.original_width, padding.original_height);

    fs::create_directories(opts.out);
    atw::save_image(out, fs::path(opts.out) / "output.png");
    nlohmann::json side = {{"mode", atw::to_string(cfg.mode)},
                           {"base_size", cfg.base_size},
                           {"upsample", atw::to_string(cfg.upsample_method)},
                           {"alpha", alpha},
                           {"clamped_samples", result.clamped},
                           {"padding", {{"right", padding.right}, {"bottom", padding.bottom}}}};
    std::ofstream(fs::path(opts.out) / "output.json") << side.dump(2) << '\n';
    std::cout << "wrote " << (fs::path(opts.out) / "output.png").string() << " (" << result.clamped
              << " clamped samples)\n";
    return 0;
}

int cmd_animate(const SharedOptions& opts, const std::string& input, const FieldOptions& fopts,
                const std::string& alphas)
{
    atw::AnimationJob job;
    job.input_path = input;
    job.cfg = make_config(opts);
    job.out_dir = opts.out;
    if (!fopts.field.empty()) {
        job.field_path = fopts.field;
    }
    if (!fopts.mock.empty()) {
        job.mock = atw::parse_mock_spec(fopts.mock);
    }
    if (!fopts.field_dir.empty()) {
        job.field_dir = fopts.field_dir;
    }
    if (!fopts.low_result.empty()) {
        job.low_result_path = fopts.low_result;
    }
    job.low_policy = fopts.low_policy == "warp" ? atw::LowResultPolicy::Warp : atw::LowResultPolicy::Identity;
    if (!alphas.empty()) {
        job.alpha_schedule = parse_alphas(alphas);
    }

    const atw::AnimationReport report = atw::run_animation(job);
    for (const auto& f : report.frames) {
        std::cout << f.path.filename().string() << "  alpha=" << f.alpha << "  reswarp " << f.reswarp_ms
                  << " ms  clamped " << f.clamped << '\n';
    }
    std::cout << "coherency (mean abs frame difference, proxy) " << report.coherency << '\n';
    if (!report.self_checks_passed) {
        for (const auto& msg : report.failed_checks) {
            std::cerr << "self-check failed: " << msg << '\n';
        }
        return kExitSelfCheck;
    }
    return 0;
}

int cmd_mockgen(const SharedOptions& opts, const std::string& spec_text, double max_displacement)
{
    atw::MockFieldSpec spec = atw::parse_mock_spec(spec_text);
    spec.max_displacement = max_displacement;
    const atw::MotionField field = atw::generate_mock_field(spec, opts.base);
    fs::path out = opts.out;
    if (out.extension() != ".atwf") {
        fs::create_directories(out);
        out /= "mock.atwf";
    }
    atw::save_field(field, out);
    std::cout << "wrote " << out.string() << " (" << atw::to_string(spec) << ", " << opts.base << "x" << opts.base
              << ")\n";
    return 0;
}

int cmd_bench(const SharedOptions& opts, const std::string& sizes, const std::string& modes, int iterations)
{
    atw::ReswarpConfig cfg = make_config(opts);
    const auto size_list = parse_list<int>(sizes, [](const std::string& s) { return std::stoi(s); });
    const auto mode_list = parse_list<atw::ReswarpMode>(modes, [](const std::string& s) {
        const auto m = atw::parse_reswarp_mode(s);
        if (!m) {
            throw atw::Error(atw::ErrorCode::InvalidArgument, "unknown mode '" + s + "'");
        }
        return *m;
    });
    const auto rows = atw::run_bench(size_list, mode_list, iterations, cfg);
    atw::write_bench_table(rows, std::cout);
    if (!opts.out.empty()) {
        fs::path out = opts.out;
        if (out.extension() != ".csv") {
            fs::create_directories(out);
            out /= "bench.csv";
        }
        std::ofstream csv(out);
        atw::write_bench_csv(rows, csv);
        std::cout << "wrote " << out.string() << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    atw::retain_large_allocations();
    CLI::App app{"High-resolution animation through residual warping"};
    app.require_subcommand(1);

    SharedOptions dec_opts;
    std::string dec_input;
    auto* dec = app.add_subcommand("decompose", "split an image into low-resolution and residual components");
    add_shared(dec, dec_opts);
    dec->add_option("--input,input", dec_input, "PNG or PPM image")->required();

    SharedOptions rw_opts;
    FieldOptions rw_field;
    std::string rw_input;
    std::string rw_dec;
    double rw_alpha = 1.0;
    auto* rw = app.add_subcommand("reswarp", "recompose one HD frame from a low-resolution result and a field");
    add_shared(rw, rw_opts);
    auto* rw_in = rw->add_option("--input", rw_input, "raw HD image");
    auto* rw_d = rw->add_option("--decomposition", rw_dec, "directory written by 'decompose'");
    rw_in->excludes(rw_d);
    rw->add_option("--alpha", rw_alpha, "field scale in [0, 1]")->capture_default_str();
    add_field_options(rw, rw_field, false);

    SharedOptions an_opts;
    FieldOptions an_field;
    std::string an_input;
    std::string an_alphas;
    auto* an = app.add_subcommand("animate", "render an alpha-scheduled animation sequence");
    add_shared(an, an_opts);
    an->add_option("--input", an_input, "raw HD image")->required();
    an->add_option("--alphas", an_alphas, "comma-separated schedule (default 0,0.2,0.4,0.6,0.8,1)");
    add_field_options(an, an_field, true);

    SharedOptions mg_opts;
    std::string mg_spec = "zero";
    double mg_max = 0.0;
    auto* mg = app.add_subcommand("mockgen", "write an analytic motion field as ATWF");
    add_shared(mg, mg_opts);
    mg->add_option("--mock,spec", mg_spec, "zero | translate:dx,dy | radial:cx,cy,gain | shear:band,gain")
        ->capture_default_str();
    mg->add_option("--max-displacement", mg_max, "declared bound on |component| (0 = base size)");

    SharedOptions bn_opts;
    std::string bn_sizes = "1024";
    std::string bn_modes = "vanilla,multiscale";
    int bn_iterations = 10;
    auto* bn = app.add_subcommand("bench", "time decompose + reswarp per size and mode");
    add_shared(bn, bn_opts, false);
    bn->add_option("--sizes", bn_sizes, "comma-separated square sizes")->capture_default_str();
    bn->add_option("--modes", bn_modes, "comma-separated modes")->capture_default_str();
    bn->add_option("--iterations", bn_iterations, "timed runs per cell")->capture_default_str()->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    const char* running = "";
    try {
        if (*dec) {
            running = "decompose";
            apply_threads(dec_opts);
            return cmd_decompose(dec_opts, dec_input);
        }
        if (*rw) {
            running = "reswarp";
            apply_threads(rw_opts);
            if (rw_input.empty() && rw_dec.empty()) {
                throw atw::Error(atw::ErrorCode::InvalidArgument, "one of --input or --decomposition is required");
            }
            return cmd_reswarp(rw_opts, rw_input, rw_dec, rw_field, rw_alpha);
        }
        if (*an) {
            running = "animate";
            apply_threads(an_opts);
            return cmd_animate(an_opts, an_input, an_field, an_alphas);
        }
        if (*mg) {
            running = "mockgen";
            apply_threads(mg_opts);
            return cmd_mockgen(mg_opts, mg_spec, mg_max);
        }
        if (*bn) {
            running = "bench";
            apply_threads(bn_opts);
            return cmd_bench(bn_opts, bn_sizes, bn_modes, bn_iterations);
        }
    } catch (const atw::Error& e) {
        std::cerr << "atw " << running << ": " << e.what() << '\n';
        return kExitSpecError;
    } catch (const std::exception& e) {
        std::cerr << "atw " << running << ": " << e.what() << '\n';
        return 1;
    }
    return 1;
}
