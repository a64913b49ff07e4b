#include "atw/error.hpp"
#include "atw/metrics.hpp"
#include "atw/mock_field.hpp"

#include "doctest.h"

#include <cmath>
#include <vector>

using namespace atw;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an atw::Error");
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("mock spec parsing")
{
    CHECK(parse_mock_spec("zero").kind == MockKind::Zero);
    const MockFieldSpec t = parse_mock_spec("translate:3,-2");
    CHECK(t.kind == MockKind::Translate);
    CHECK(t.a == 3.0);
    CHECK(t.b == -2.0);
    const MockFieldSpec r = parse_mock_spec("radial:64,64,0.1");
    CHECK(r.kind == MockKind::Radial);
    CHECK(r.c == doctest::Approx(0.1));
    CHECK(parse_mock_spec("shear:10,0.5").kind == MockKind::Shear);
    CHECK(parse_mock_spec(to_string(r)).kind == MockKind::Radial);

    for (const char* bad : {"", "spin:1", "translate:1", "translate:1,2,3", "radial:a,b,c", "zero:1", "translate:1,,2"}) {
        CAPTURE(bad);
        CHECK(code_of([&] { parse_mock_spec(bad); }) == ErrorCode::BadSpec);
    }
}

TEST_CASE("mock field examples")
{
    SUBCASE("zero")
    {
        const MotionField f = generate_mock_field(parse_mock_spec("zero"), 128);
        CHECK(f.width() == 128);
        CHECK(f.height() == 128);
        CHECK(f.max_abs_dx() == 0.0f);
        CHECK(f.max_abs_dy() == 0.0f);
    }
    SUBCASE("translate")
    {
        const MotionField f = generate_mock_field(parse_mock_spec("translate:3,-2"), 128);
        for (int y = 0; y < 128; y += 17) {
            for (int x = 0; x < 128; x += 13) {
                CHECK(f.dx(x, y) == 3.0f);
                CHECK(f.dy(x, y) == -2.0f);
            }
        }
    }
    SUBCASE("radial is zero at the centre and grows linearly")
    {
        const MotionField f = generate_mock_field(parse_mock_spec("radial:64,64,0.1"), 128);
        CHECK(f.dx(64, 64) == 0.0f);
        CHECK(f.dy(64, 64) == 0.0f);
        for (int k = 1; k < 60; k += 7) {
            CHECK(f.dx(64 + k, 64) == doctest::Approx(0.1 * k));
            CHECK(f.dy(64, 64 - k) == doctest::Approx(-0.1 * k));
            CHECK(f.dx(64 + k, 64 + k) == doctest::Approx(f.dy(64 + k, 64 + k)));
        }
    }
    SUBCASE("shear saturates outside the band")
    {
        const MotionField f = generate_mock_field(parse_mock_spec("shear:8,0.5"), 64);
        CHECK(f.dx(0, 0) == doctest::Approx(-4.0));
        CHECK(f.dx(5, 63) == doctest::Approx(4.0));
        CHECK(f.dx(5, 32) == doctest::Approx(0.25));
        CHECK(f.max_abs_dy() == 0.0f);
    }
    SUBCASE("peak stays within the bound")
    {
        for (const char* s : {"translate:3,-2", "radial:64,64,0.1", "radial:0,0,0.5", "shear:20,1.5"}) {
            const MockFieldSpec spec = parse_mock_spec(s);
            const MotionField f = generate_mock_field(spec, 128);
            CHECK(std::max(f.max_abs_dx(), f.max_abs_dy()) <= mock_peak_displacement(spec, 128) + 1e-4);
        }
    }
}

TEST_CASE("mock field errors")
{
    CHECK(code_of([] { generate_mock_field(parse_mock_spec("translate:200,0"), 128); }) == ErrorCode::BadSpec);
    MockFieldSpec bounded = parse_mock_spec("translate:5,0");
    bounded.max_displacement = 4.0;
    CHECK(code_of([&] { generate_mock_field(bounded, 128); }) == ErrorCode::BadSpec);
    CHECK(code_of([] { generate_mock_field(parse_mock_spec("shear:0,1"), 128); }) == ErrorCode::BadSpec);
    MockFieldSpec nan = parse_mock_spec("translate:1,1");
    nan.a = std::nan("");
    CHECK(code_of([&] { generate_mock_field(nan, 128); }) == ErrorCode::BadSpec);
}

TEST_CASE("metric_coherency examples")
{
    const Image a(8, 8, 3, 0.25f);
    const std::vector<Image> same{a, a, a};
    CHECK(metric_coherency(same) == 0.0);

    const std::vector<Image> flip{Image(4, 4, 1, -1.0f), Image(4, 4, 1, 1.0f)};
    CHECK(metric_coherency(flip) == doctest::Approx(2.0));

    const std::vector<Image> ramp{Image(4, 4, 1, 0.0f), Image(4, 4, 1, 0.5f), Image(4, 4, 1, 0.25f)};
    CHECK(metric_coherency(ramp) == doctest::Approx(0.375));

    const std::vector<Image> one{a};
    CHECK(code_of([&] { metric_coherency(one); }) == ErrorCode::TooFewFrames);
    CHECK(code_of([] { metric_coherency({}); }) == ErrorCode::TooFewFrames);

    const std::vector<Image> mismatch{Image(4, 4, 1), Image(4, 5, 1)};
    CHECK(code_of([&] { metric_coherency(mismatch); }) == ErrorCode::DimensionMismatch);
}
