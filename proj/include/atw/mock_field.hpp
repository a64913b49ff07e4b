#pragma once

#include "atw/motion_field.hpp"

#include <string>
#include <string_view>

namespace atw {

enum class MockKind { Zero, Translate, Radial, Shear };

/// Analytic stand-in for a generator's motion field, sampled on the
/// base_size grid (pixel-index coordinates, origin top-left).
///   zero                    d = 0
///   translate(dx, dy)       d = (dx, dy)
///   radial(cx, cy, gain)    d = gain * (p - c)
///   shear(band, gain)       dx = gain * clamp(y - (H-1)/2, -band, band), dy = 0
struct MockFieldSpec {
    MockKind kind = MockKind::Zero;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    // Largest |component| the spec may produce; 0 means "base_size".
    double max_displacement = 0.0;
};

/// Parses "zero", "translate:dx,dy", "radial:cx,cy,gain", "shear:band,gain".
/// Throws BadSpec.
MockFieldSpec parse_mock_spec(std::string_view text);
std::string to_string(const MockFieldSpec& spec);

// Analytic bound on max |dx|, |dy| for the spec on a size x size grid.
double mock_peak_displacement(const MockFieldSpec& spec, int size);

// Throws BadSpec on non-finite parameters or when the peak exceeds the bound.
MotionField generate_mock_field(const MockFieldSpec& spec, int base_size);

} // namespace atw
