#include "atw/error.hpp"
#include "atw/motion_field.hpp"
#include "atw/parallel.hpp"
#include "atw/resample.hpp"
#include "oracles.hpp"

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

using namespace atw;
namespace fs = std::filesystem;

namespace {

MotionField uniform_field(int w, int h, float dx, float dy)
{
    Image raster(w, h, 2);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            raster.at(x, y, 0) = dx;
            raster.at(x, y, 1) = dy;
        }
    }
    return MotionField(std::move(raster));
}

MotionField random_field(std::mt19937& rng, int w, int h, float range)
{
    return MotionField(oracle::random_image(rng, w, h, 2, -range, range));
}

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

fs::path scratch_dir()
{
    const fs::path dir = fs::temp_directory_path() / "atw_test_motion_field";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("motion field validation")
{
    CHECK(code_of([] { MotionField(Image(4, 4, 3)); }) == ErrorCode::InvalidArgument);
    Image bad(2, 2, 2);
    bad.at(1, 1, 0) = std::numeric_limits<float>::quiet_NaN();
    CHECK(code_of([&] { MotionField{bad}; }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { NormalizedField(Image(2, 2, 2, 1.5f), 10.0f); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { NormalizedField(Image(2, 2, 2, 0.5f), 0.0f); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("scale_field")
{
    CHECK(scale_field(NormalizedField(Image(4, 4, 2, 0.0f), 7.0f)).max_abs_dx() == 0.0f);
    const MotionField ten = scale_field(NormalizedField(Image(4, 4, 2, 1.0f), 10.0f));
    CHECK(ten.dx(3, 3) == 10.0f);
    CHECK(ten.dy(0, 0) == 10.0f);
    const MotionField neg = scale_field(NormalizedField(Image(2, 2, 2, -0.5f), 8.0f));
    CHECK(neg.dx(1, 0) == -4.0f);
    CHECK(neg.width() == 2);
}

TEST_CASE("upsample_field")
{
    CHECK(upsample_field(MotionField(128, 128), 1024, 1024).max_abs_dx() == 0.0f);

    const MotionField up = upsample_field(uniform_field(128, 128, 1.0f, 0.0f), 1024, 1024);
    for (int y = 0; y < 1024; y += 37) {
        for (int x = 0; x < 1024; x += 29) {
            CHECK(up.dx(x, y) == 8.0f);
            CHECK(up.dy(x, y) == 0.0f);
        }
    }

    std::mt19937 rng(1);
    const MotionField f = random_field(rng, 128, 128, 5.0f);
    CHECK(upsample_field(f, 128, 128) == f);

    // anisotropic ratios scale each component by its own axis
    const MotionField aniso = upsample_field(uniform_field(8, 8, 1.0f, 1.0f), 32, 16);
    CHECK(aniso.dx(5, 5) == 4.0f);
    CHECK(aniso.dy(5, 5) == 2.0f);

    CHECK(code_of([&] { upsample_field(f, 64, 256); }) == ErrorCode::DownscaleNotSupported);
}

TEST_CASE("upsample_field never exceeds the scaled source bound")
{
    std::mt19937 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const MotionField f = random_field(rng, 16, 16, 6.0f);
        const int factor = 1 << (1 + trial % 3);
        const MotionField up = upsample_field(f, 16 * factor, 16 * factor);
        CHECK(up.max_abs_dx() <= factor * f.max_abs_dx() * (1.0f + 1e-6f));
        CHECK(up.max_abs_dy() <= factor * f.max_abs_dy() * (1.0f + 1e-6f));
    }
}

TEST_CASE("interpolate_field")
{
    std::mt19937 rng(3);
    const MotionField f = random_field(rng, 16, 16, 10.0f);
    CHECK(interpolate_field(f, 0.0).max_abs_dx() == 0.0f);
    CHECK(interpolate_field(f, 1.0) == f);
    const MotionField half = interpolate_field(uniform_field(4, 4, 4.0f, -2.0f), 0.5);
    CHECK(half.dx(2, 2) == 2.0f);
    CHECK(half.dy(2, 2) == -1.0f);
    CHECK(code_of([&] { interpolate_field(f, 1.5); }) == ErrorCode::AlphaOutOfRange);
    CHECK(code_of([&] { interpolate_field(f, -0.1); }) == ErrorCode::AlphaOutOfRange);
    CHECK(code_of([&] { interpolate_field(f, std::nan("")); }) == ErrorCode::AlphaOutOfRange);
}

TEST_CASE("interpolate_field is linear in alpha")
{
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> alpha(0.0, 1.0);
    const MotionField f = random_field(rng, 8, 8, 20.0f);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = alpha(rng);
        const MotionField g = interpolate_field(f, a);
        for (std::size_t i = 0; i < f.data().size(); ++i) {
            REQUIRE(g.data()[i] == static_cast<float>(a) * f.data()[i]);
        }
    }
}

TEST_CASE("warp examples")
{
    std::mt19937 rng(5);
    SUBCASE("zero field is the identity")
    {
        const Image img = oracle::random_image(rng, 37, 21, 3);
        CHECK(warp(img, MotionField(37, 21)) == img);
    }
    SUBCASE("unit shift on a ramp moves interior columns left")
    {
        Image ramp(8, 8, 1);
        for (int y = 0; y < 8; ++y) {
            for (int x = 0; x < 8; ++x) {
                ramp.at(x, y, 0) = 2.0f * x / 7.0f - 1.0f;
            }
        }
        const MotionField shift = uniform_field(8, 8, 1.0f, 0.0f);
        const Image out = warp(ramp, shift);
        const Image ref = oracle::warp(ramp, shift.raster());
        for (int y = 0; y < 8; ++y) {
            for (int x = 0; x < 7; ++x) {
                CHECK(out.at(x, y, 0) == ramp.at(x + 1, y, 0));
            }
            CHECK(out.at(7, y, 0) == ramp.at(7, y, 0));
        }
        CHECK(max_abs_difference(out, ref) == 0.0f);
    }
    SUBCASE("constant image stays constant")
    {
        const Image img(20, 20, 3, 0.42f);
        const Image out = warp(img, random_field(rng, 20, 20, 30.0f));
        for (float v : out.data()) {
            CHECK(v == doctest::Approx(0.42f).epsilon(1e-6));
        }
    }
    SUBCASE("dimension mismatch")
    {
        CHECK(code_of([] { warp(Image(4, 4, 1), MotionField(4, 5)); }) == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("warp matches the nested-loop sampler on small rasters")
{
    std::mt19937 rng(6);
    std::uniform_int_distribution<int> dim(1, 16);
    std::uniform_int_distribution<int> chans(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
        const int w = dim(rng);
        const int h = dim(rng);
        const Image img = oracle::random_image(rng, w, h, chans(rng));
        const MotionField f = random_field(rng, w, h, 20.0f);
        REQUIRE(max_abs_difference(warp(img, f), oracle::warp(img, f.raster())) <= 1e-6f);
    }
}

TEST_CASE("uniform translation commutes with content-equivalent upscaling")
{
    std::mt19937 rng(7);
    const Image low = oracle::random_image(rng, 16, 16, 3);
    const Image high = upsample(low, 64, 64, ResamplingMethod::Nearest);
    for (auto [dx, dy] : {std::pair{1.0f, 0.0f}, std::pair{-2.0f, 1.0f}, std::pair{0.0f, 3.0f}}) {
        const MotionField f = uniform_field(16, 16, dx, dy);
        const Image warped_high = warp(high, upsample_field(f, 64, 64));
        const Image expected = upsample(warp(low, f), 64, 64, ResamplingMethod::Nearest);
        CHECK(max_abs_difference(warped_high, expected) == 0.0f);
    }
}

TEST_CASE("warp_accumulate equals add(dst, warp(...)) bit for bit")
{
    std::mt19937 rng(8);
    const Image img = oracle::random_image(rng, 64, 48, 3);
    const Image base = oracle::random_image(rng, 64, 48, 3);
    const MotionField f = random_field(rng, 64, 48, 9.0f);
    Image fused = base;
    warp_accumulate(img, f, fused);
    CHECK(fused == add(base, warp(img, f)));
}

TEST_CASE("warp is bit-identical across thread counts")
{
    std::mt19937 rng(9);
    const Image img = oracle::random_image(rng, 200, 131, 3);
    const MotionField f = random_field(rng, 200, 131, 12.0f);
    set_num_threads(1);
    const Image serial = warp(img, f);
    set_num_threads(3);
    const Image threaded = warp(img, f);
    set_num_threads(1);
    CHECK(serial == threaded);
}

TEST_CASE("ATWF files")
{
    const fs::path dir = scratch_dir();
    std::mt19937 rng(10);
    const MotionField f = random_field(rng, 128, 128, 15.0f);
    save_field(f, dir / "f.atwf");
    CHECK(load_field(dir / "f.atwf") == f);
    CHECK(fs::file_size(dir / "f.atwf") == 20 + 128 * 128 * 8);

    const FieldRecord rec = read_field_record(dir / "f.atwf");
    CHECK_FALSE(rec.normalized);

    SUBCASE("normalized records are scaled on load")
    {
        save_normalized_field(NormalizedField(Image(4, 4, 2, 0.5f), 6.0f), dir / "n.atwf");
        const FieldRecord n = read_field_record(dir / "n.atwf");
        CHECK(n.normalized);
        CHECK(n.scale_factor == 6.0f);
        CHECK(load_field(dir / "n.atwf").dx(1, 1) == 3.0f);
    }
    SUBCASE("header layout")
    {
        std::ifstream in(dir / "f.atwf", std::ios::binary);
        unsigned char header[20];
        in.read(reinterpret_cast<char*>(header), 20);
        CHECK(std::string(reinterpret_cast<char*>(header), 4) == "ATWF");
        CHECK(header[4] == 128);
        CHECK(header[5] == 0);
        CHECK(header[8] == 128);
        CHECK(header[12] == 0);
    }
    SUBCASE("wrong magic")
    {
        std::ofstream(dir / "bad.atwf", std::ios::binary) << "FWTA" << std::string(40, '\0');
        CHECK(code_of([&] { load_field(dir / "bad.atwf"); }) == ErrorCode::BadMagic);
    }
    SUBCASE("short payload")
    {
        fs::copy_file(dir / "f.atwf", dir / "short.atwf", fs::copy_options::overwrite_existing);
        fs::resize_file(dir / "short.atwf", 20 + 1000);
        CHECK(code_of([&] { load_field(dir / "short.atwf"); }) == ErrorCode::TruncatedFile);
        fs::resize_file(dir / "short.atwf", 10);
        CHECK(code_of([&] { load_field(dir / "short.atwf"); }) == ErrorCode::TruncatedFile);
    }
}
