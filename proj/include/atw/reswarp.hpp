#pragma once

#include "atw/image.hpp"
#include "atw/motion_field.hpp"
#include "atw/pyramid.hpp"
#include "atw/resample.hpp"

#include <cstddef>
#include <optional>
#include <string_view>

namespace atw {

enum class ReswarpMode { Vanilla, Multiscale };

std::string_view to_string(ReswarpMode mode);
std::optional<ReswarpMode> parse_reswarp_mode(std::string_view name);

struct ReswarpConfig {
    ReswarpMode mode = ReswarpMode::Vanilla;
    int base_size = 128;
    // Image up-sampling kernel for both decomposition and recomposition.
    // Motion fields are always resized bilinearly.
    ResamplingMethod upsample_method = ResamplingMethod::Bilinear;
};

// Throws InvalidArgument unless base_size is 16 * 2^k.
void validate_config(const ReswarpConfig& cfg);

/// Split of an HD image into its base_size low-frequency component and the
/// residual detail (one full-resolution map, or a Laplacian pyramid).
struct Decomposition {
    ReswarpMode mode = ReswarpMode::Vanilla;
    Image low;
    ResidualMap residual;    // vanilla only
    ResidualPyramid pyramid; // multiscale only; pyramid.base == low

    int width() const noexcept;
    int height() const noexcept;
};

/// Vanilla requires both axes to be multiples of base_size
/// (NonDivisibleDimensions); multiscale requires base_size * 2^K square
/// input (IncompatibleDimensions).
Decomposition decompose(const Image& raw, const ReswarpConfig& cfg);

// Inverse of decompose with no motion.
Image recompose(const Decomposition& d, const ReswarpConfig& cfg);

struct ReswarpResult {
    Image image;
    std::size_t clamped = 0; // samples pulled back into [-1, 1]
};

/// O^u = upsample(low_result); R^w = warp(residual, upsample_field(field));
/// returns clamp(O^u + R^w).
ReswarpResult vanilla_reswarp(const Image& low_result, const ResidualMap& residual, const MotionField& field,
                              const ReswarpConfig& cfg);

/// Coarse-to-fine: from the base, repeatedly up-sample 2x and add the level's
/// residual warped by the base field resized to that level.
ReswarpResult multiscale_reswarp(const Image& low_result, const ResidualPyramid& pyr, const MotionField& field,
                                 const ReswarpConfig& cfg);

// Dispatches on d.mode.
ReswarpResult reswarp(const Image& low_result, const Decomposition& d, const MotionField& field,
                      const ReswarpConfig& cfg);

} // namespace atw
