#include "atw/reswarp.hpp"

#include "atw/error.hpp"

#include <string>

namespace atw {

namespace {

std::string dims(int w, int h) { return std::to_string(w) + "x" + std::to_string(h); }

void require_base_inputs(const Image& low_result, const MotionField& field, const ReswarpConfig& cfg)
{
    if (low_result.width() != cfg.base_size || low_result.height() != cfg.base_size) {
        throw Error(ErrorCode::DimensionMismatch, "low-resolution result is " +
                                                      dims(low_result.width(), low_result.height()) +
                                                      ", expected " + dims(cfg.base_size, cfg.base_size));
    }
    if (field.width() != low_result.width() || field.height() != low_result.height()) {
        throw Error(ErrorCode::DimensionMismatch, "motion field is " + dims(field.width(), field.height()) +
                                                      ", expected " +
                                                      dims(low_result.width(), low_result.height()));
    }
}

} // namespace

std::string_view to_string(ReswarpMode mode)
{
    return mode == ReswarpMode::Vanilla ? "vanilla" : "multiscale";
}

std::optional<ReswarpMode> parse_reswarp_mode(std::string_view name)
{
    if (name == "vanilla") {
        return ReswarpMode::Vanilla;
    }
    if (name == "multiscale") {
        return ReswarpMode::Multiscale;
    }
    return std::nullopt;
}

void validate_config(const ReswarpConfig& cfg)
{
    int b = cfg.base_size;
    if (b >= 16 && b % 16 == 0) {
        b /= 16;
        if ((b & (b - 1)) == 0) {
            return;
        }
    }
    throw Error(ErrorCode::InvalidArgument,
                "base_size must be 16 * 2^k, got " + std::to_string(cfg.base_size));
}

int Decomposition::width() const noexcept
{
    if (mode == ReswarpMode::Vanilla) {
        return residual.width();
    }
    return pyramid.levels.empty() ? pyramid.base.width() : pyramid.levels.front().width();
}

int Decomposition::height() const noexcept
{
    if (mode == ReswarpMode::Vanilla) {
        return residual.height();
    }
    return pyramid.levels.empty() ? pyramid.base.height() : pyramid.levels.front().height();
}

Decomposition decompose(const Image& raw, const ReswarpConfig& cfg)
{
    validate_config(cfg);
    Decomposition d;
    d.mode = cfg.mode;
    if (cfg.mode == ReswarpMode::Vanilla) {
        d.low = downsample_average(raw, cfg.base_size, cfg.base_size);
        d.residual = residual(raw, upsample(d.low, raw.width(), raw.height(), cfg.upsample_method));
    } else {
        d.pyramid = build_laplacian_pyramid(raw, cfg.base_size, cfg.upsample_method);
        d.low = d.pyramid.base;
    }
    return d;
}

Image recompose(const Decomposition& d, const ReswarpConfig& cfg)
{
    if (d.mode == ReswarpMode::Vanilla) {
        return add(upsample(d.low, d.residual.width(), d.residual.height(), cfg.upsample_method), d.residual);
    }
    return reconstruct_pyramid(d.pyramid, cfg.upsample_method);
}

ReswarpResult vanilla_reswarp(const Image& low_result, const ResidualMap& residual, const MotionField& field,
                              const ReswarpConfig& cfg)
{
    require_base_inputs(low_result, field, cfg);
    if (residual.channels() != low_result.channels()) {
        throw Error(ErrorCode::DimensionMismatch, "residual has " + std::to_string(residual.channels()) +
                                                      " channels, low-resolution result has " +
                                                      std::to_string(low_result.channels()));
    }
    const MotionField full = upsample_field(field, residual.width(), residual.height());
    ReswarpResult result{upsample(low_result, residual.width(), residual.height(), cfg.upsample_method), 0};
    warp_accumulate(residual, full, result.image);
    result.clamped = clamp_in_place(result.image);
    return result;
}

ReswarpResult multiscale_reswarp(const Image& low_result, const ResidualPyramid& pyr, const MotionField& field,
                                 const ReswarpConfig& cfg)
{
    require_base_inputs(low_result, field, cfg);
    validate_pyramid(pyr);
    if (!low_result.same_shape(pyr.base)) {
        throw Error(ErrorCode::DimensionMismatch,
                    "pyramid base is " + dims(pyr.base.width(), pyr.base.height()) + "x" +
                        std::to_string(pyr.base.channels()) + ", low-resolution result is " +
                        dims(low_result.width(), low_result.height()) + "x" +
                        std::to_string(low_result.channels()));
    }
    Image current = low_result;
    for (auto level = pyr.levels.rbegin(); level != pyr.levels.rend(); ++level) {
        const MotionField level_field = upsample_field(field, level->width(), level->height());
        current = upsample(current, level->width(), level->height(), cfg.upsample_method);
        warp_accumulate(*level, level_field, current);
    }
    ReswarpResult result{std::move(current), 0};
    result.clamped = clamp_in_place(result.image);
    return result;
}

ReswarpResult reswarp(const Image& low_result, const Decomposition& d, const MotionField& field,
                      const ReswarpConfig& cfg)
{
    if (d.mode != cfg.mode) {
        throw Error(ErrorCode::InvalidArgument, "decomposition mode " + std::string(to_string(d.mode)) +
                                                    " does not match config mode " +
                                                    std::string(to_string(cfg.mode)));
    }
    if (d.mode == ReswarpMode::Vanilla) {
        return vanilla_reswarp(low_result, d.residual, field, cfg);
    }
    return multiscale_reswarp(low_result, d.pyramid, field, cfg);
}

} // namespace atw
