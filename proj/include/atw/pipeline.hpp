#pragma once

#include "atw/image.hpp"
#include "atw/mock_field.hpp"
#include "atw/reswarp.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace atw {

struct Padding {
    int right = 0;
    int bottom = 0;
    int original_width = 0;
    int original_height = 0;

    bool any() const noexcept { return right > 0 || bottom > 0; }
};

// Mirror padding (edge sample not repeated) on the right and bottom.
Image reflect_pad(const Image& img, int target_w, int target_h);
Image crop(const Image& img, int width, int height);

/// Brings raw to a size the configured mode accepts. Multiscale pads to the
/// smallest square base_size * 2^K covering the image; vanilla never pads.
Image prepare_input(const Image& raw, const ReswarpConfig& cfg, Padding& padding);

/// Writes low.png/low.atwr, the residual (residual.atwr + offset-encoded
/// residual.png) or pyramid/ (base + level_k.{png,atwr}) and manifest.json.
/// Returns the reconstruction error measured after reading the files back.
struct DecomposeSummary {
    int levels = 0;
    double reconstruction_error = 0.0;
    Padding padding;
};
DecomposeSummary write_decomposition(const Image& raw, const ReswarpConfig& cfg, const std::filesystem::path& dir,
                                     const std::string& source_name = {});
Decomposition read_decomposition(const std::filesystem::path& dir, ReswarpConfig& cfg, Padding& padding);

enum class LowResultPolicy {
    Identity, // O^r = decomposed low component
    Warp,     // O^r = low component warped by the alpha-scaled field
};

const std::vector<double>& default_alpha_schedule();

struct AnimationJob {
    std::filesystem::path input_path;
    std::optional<std::filesystem::path> field_path;
    std::optional<MockFieldSpec> mock;
    std::optional<std::filesystem::path> field_dir; // one ATWF per frame, alpha 1
    std::optional<std::filesystem::path> low_result_path;
    LowResultPolicy low_policy = LowResultPolicy::Identity;
    std::optional<std::vector<double>> alpha_schedule;
    ReswarpConfig cfg;
    std::filesystem::path out_dir;
    bool keep_frames = false; // retain full-precision frames in the report
};

// Throws InvalidArgument/AlphaOutOfRange for an inconsistent job.
void validate_job(const AnimationJob& job);

struct FrameRecord {
    int index = 0;
    double alpha = 0.0;
    std::filesystem::path path;
    std::size_t clamped = 0;
    double low_result_ms = 0.0;
    double reswarp_ms = 0.0;
    double write_ms = 0.0;
};

struct AnimationReport {
    std::vector<FrameRecord> frames;
    double decompose_ms = 0.0;
    double reconstruction_error = 0.0;
    double coherency = 0.0; // 0 when only one frame
    double identity_error = -1.0; // alpha == 0 frame vs input; -1 if not applicable
    Padding padding;
    bool self_checks_passed = true;
    std::vector<std::string> failed_checks;
    std::vector<Image> kept_frames; // cropped float frames when keep_frames
};

/// Decomposes the input once, then writes frame_%03d.png plus a JSON
/// side-car per alpha and report.json into out_dir. Errors carry the alpha
/// of the failing frame.
AnimationReport run_animation(const AnimationJob& job);

} // namespace atw
