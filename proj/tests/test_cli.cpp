#include "atw/image_io.hpp"
#include "atw/motion_field.hpp"
#include "oracles.hpp"

#include "doctest.h"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <sys/wait.h>

using namespace atw;
namespace fs = std::filesystem;

#ifndef ATW_CLI_PATH
#error "ATW_CLI_PATH must point at the built atw binary"
#endif

namespace {

fs::path scratch_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "atw_test_cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args)
{
    const std::string cmd = std::string("\"") + ATW_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

nlohmann::json read_json(const fs::path& path)
{
    std::ifstream in(path);
    REQUIRE(in);
    return nlohmann::json::parse(in);
}

} // namespace

TEST_CASE("help and usage errors")
{
    CHECK(run("--help") == 0);
    CHECK(run("") != 0);
    CHECK(run("decompose") != 0);
    CHECK(run("frobnicate") != 0);
}

TEST_CASE("decompose rejects non-divisible vanilla input with exit code 2")
{
    const fs::path dir = scratch_dir("nondiv");
    save_image(Image(130, 130, 3), dir / "in.png");
    CHECK(run("decompose " + q(dir / "in.png") + " --mode vanilla --out " + q(dir / "d")) == 2);
}

TEST_CASE("multiscale decompose of a 4096 image writes five levels")
{
    const fs::path dir = scratch_dir("pyramid");
    std::mt19937 rng(21);
    save_image(oracle::random_image(rng, 4096, 4096, 1), dir / "in.pgm");
    REQUIRE(run("decompose " + q(dir / "in.pgm") + " --mode multiscale --out " + q(dir / "d")) == 0);
    const auto manifest = read_json(dir / "d" / "manifest.json");
    CHECK(manifest.at("files").at("levels").size() == 5);
    CHECK(manifest.at("reconstruction_error").get<double>() <= 1e-5);
    for (int k = 1; k <= 5; ++k) {
        CHECK(fs::exists(dir / "d" / "pyramid" / ("level_" + std::to_string(k) + ".png")));
    }
    CHECK(load_image(dir / "d" / "low.png").width() == 128);
}

TEST_CASE("mockgen writes a loadable field")
{
    const fs::path dir = scratch_dir("mockgen");
    REQUIRE(run("mockgen translate:3,-2 --out " + q(dir / "t.atwf")) == 0);
    const MotionField f = load_field(dir / "t.atwf");
    CHECK(f.width() == 128);
    CHECK(f.dx(10, 10) == 3.0f);
    CHECK(f.dy(10, 10) == -2.0f);

    REQUIRE(run("mockgen --mock radial:32,32,0.1 --base 64 --out " + q(dir / "fields")) == 0);
    CHECK(load_field(dir / "fields" / "mock.atwf").width() == 64);

    CHECK(run("mockgen spin:1 --out " + q(dir / "x.atwf")) == 2);
    CHECK(run("mockgen translate:300,0 --out " + q(dir / "x.atwf")) == 2);
}

TEST_CASE("animate renders frames, side-cars and a report")
{
    const fs::path dir = scratch_dir("animate");
    std::mt19937 rng(22);
    save_image(oracle::random_image(rng, 256, 256, 3), dir / "in.png");
    REQUIRE(run("animate --input " + q(dir / "in.png") + " --mode multiscale --mock translate:2,1 --low-policy warp --out " +
                q(dir / "out")) == 0);
    for (int i = 0; i < 6; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%03d", i);
        CHECK(fs::exists(dir / "out" / (std::string(name) + ".png")));
        CHECK(read_json(dir / "out" / (std::string(name) + ".json")).at("mode") == "multiscale");
    }
    const auto report = read_json(dir / "out" / "report.json");
    CHECK(report.at("self_checks_passed") == true);
    CHECK(report.at("frames").size() == 6);

    CHECK(run("animate --input " + q(dir / "in.png") + " --mock zero --alphas 0,2 --out " + q(dir / "bad")) == 2);
    CHECK(run("animate --input " + q(dir / "missing.png") + " --mock zero --out " + q(dir / "bad")) == 2);
}

TEST_CASE("reswarp from a stored decomposition")
{
    const fs::path dir = scratch_dir("reswarp");
    std::mt19937 rng(23);
    const Image input = oracle::random_image(rng, 256, 256, 3);
    save_image(input, dir / "in.png");
    REQUIRE(run("decompose " + q(dir / "in.png") + " --out " + q(dir / "d")) == 0);
    REQUIRE(run("reswarp --decomposition " + q(dir / "d") + " --mock zero --out " + q(dir / "r")) == 0);
    CHECK(load_image(dir / "r" / "output.png") == load_image(dir / "in.png"));
    CHECK(read_json(dir / "r" / "output.json").at("clamped_samples") == 0);
}

TEST_CASE("bench writes CSV")
{
    const fs::path dir = scratch_dir("bench");
    REQUIRE(run("bench --sizes 128 --modes vanilla,multiscale --iterations 1 --out " + q(dir / "b.csv")) == 0);
    std::ifstream in(dir / "b.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "size,mode,median_ms,p95_ms");
}
