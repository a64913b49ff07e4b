#include "atw/error.hpp"
#include "atw/image_io.hpp"
#include "atw/metrics.hpp"
#include "atw/mock_field.hpp"
#include "atw/motion_field.hpp"
#include "atw/parallel.hpp"
#include "atw/pyramid.hpp"
#include "atw/reswarp.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>

namespace py = pybind11;

namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;

// Accepts (H, W) or (H, W, C) arrays.
atw::Image to_image(const FloatArray& arr)
{
    if (arr.ndim() != 2 && arr.ndim() != 3) {
        throw py::value_error("expected an array of shape (H, W) or (H, W, C)");
    }
    const int h = static_cast<int>(arr.shape(0));
    const int w = static_cast<int>(arr.shape(1));
    const int c = arr.ndim() == 3 ? static_cast<int>(arr.shape(2)) : 1;
    std::vector<float> data(arr.data(), arr.data() + arr.size());
    return atw::Image(w, h, c, std::move(data));
}

FloatArray to_array(const atw::Image& img)
{
    FloatArray out({img.height(), img.width(), img.channels()});
    std::copy(img.data().begin(), img.data().end(), out.mutable_data());
    return out;
}

atw::MotionField to_field(const FloatArray& arr)
{
    if (arr.ndim() != 3 || arr.shape(2) != 2) {
        throw py::value_error("motion fields are arrays of shape (H, W, 2)");
    }
    return atw::MotionField(to_image(arr));
}

atw::ResamplingMethod method_from(const std::string& name)
{
    const auto m = atw::parse_resampling_method(name);
    if (!m) {
        throw py::value_error("unknown resampling method '" + name + "'");
    }
    return *m;
}

atw::ReswarpConfig config_from(const std::string& mode, int base_size, const std::string& upsample)
{
    const auto m = atw::parse_reswarp_mode(mode);
    if (!m) {
        throw py::value_error("unknown mode '" + mode + "'");
    }
    atw::ReswarpConfig cfg{*m, base_size, method_from(upsample)};
    atw::validate_config(cfg);
    return cfg;
}

atw::ResidualPyramid to_pyramid(const std::vector<FloatArray>& levels, const FloatArray& base)
{
    atw::ResidualPyramid pyr;
    for (const auto& level : levels) {
        pyr.levels.push_back(to_image(level));
    }
    pyr.base = to_image(base);
    return pyr;
}

} // namespace

PYBIND11_MODULE(_atw, m)
{
    m.doc() = "Residual-warping engine for high-resolution animation";

    py::register_exception<atw::Error>(m, "AtwError", PyExc_RuntimeError);

    m.def("set_num_threads", &atw::set_num_threads, py::arg("threads"));
    m.def("num_threads", &atw::num_threads);

    m.def("downsample_average",
          [](const FloatArray& img, int w, int h) { return to_array(atw::downsample_average(to_image(img), w, h)); },
          py::arg("img"), py::arg("target_w"), py::arg("target_h"));
    m.def("upsample",
          [](const FloatArray& img, int w, int h, const std::string& method) {
              return to_array(atw::upsample(to_image(img), w, h, method_from(method)));
          },
          py::arg("img"), py::arg("target_w"), py::arg("target_h"), py::arg("method") = "bilinear");
    m.def("residual", [](const FloatArray& a, const FloatArray& b) {
        return to_array(atw::residual(to_image(a), to_image(b)));
    });

    m.def("build_laplacian_pyramid",
          [](const FloatArray& img, int base_size, const std::string& method) {
              const auto pyr = atw::build_laplacian_pyramid(to_image(img), base_size, method_from(method));
              std::vector<FloatArray> levels;
              for (const auto& level : pyr.levels) {
                  levels.push_back(to_array(level));
              }
              return py::make_tuple(levels, to_array(pyr.base));
          },
          py::arg("img"), py::arg("base_size") = 128, py::arg("method") = "bilinear",
          "Returns (levels, base); levels[0] is full resolution.");
    m.def("reconstruct_pyramid",
          [](const std::vector<FloatArray>& levels, const FloatArray& base, const std::string& method) {
              return to_array(atw::reconstruct_pyramid(to_pyramid(levels, base), method_from(method)));
          },
          py::arg("levels"), py::arg("base"), py::arg("method") = "bilinear");

    py::class_<atw::Decomposition>(m, "Decomposition")
        .def_property_readonly("mode", [](const atw::Decomposition& d) { return std::string(atw::to_string(d.mode)); })
        .def_property_readonly("low", [](const atw::Decomposition& d) { return to_array(d.low); })
        .def_property_readonly("residual", [](const atw::Decomposition& d) -> py::object {
            if (d.residual.empty()) {
                return py::none();
            }
            return to_array(d.residual);
        })
        .def_property_readonly("levels", [](const atw::Decomposition& d) {
            std::vector<FloatArray> levels;
            for (const auto& level : d.pyramid.levels) {
                levels.push_back(to_array(level));
            }
            return levels;
        });

    m.def("decompose",
          [](const FloatArray& raw, const std::string& mode, int base_size, const std::string& upsample) {
              return atw::decompose(to_image(raw), config_from(mode, base_size, upsample));
          },
          py::arg("raw"), py::arg("mode") = "vanilla", py::arg("base_size") = 128, py::arg("upsample") = "bilinear");
    m.def("reswarp",
          [](const FloatArray& low, const atw::Decomposition& d, const FloatArray& field, int base_size,
             const std::string& upsample) {
              const auto cfg = config_from(std::string(atw::to_string(d.mode)), base_size, upsample);
              const auto result = atw::reswarp(to_image(low), d, to_field(field), cfg);
              return py::make_tuple(to_array(result.image), result.clamped);
          },
          py::arg("low_result"), py::arg("decomposition"), py::arg("field"), py::arg("base_size") = 128,
          py::arg("upsample") = "bilinear", "Returns (image, clamped_count).");
    m.def("vanilla_reswarp",
          [](const FloatArray& low, const FloatArray& residual, const FloatArray& field, int base_size,
             const std::string& upsample) {
              const auto result = atw::vanilla_reswarp(to_image(low), to_image(residual), to_field(field),
                                                       config_from("vanilla", base_size, upsample));
              return py::make_tuple(to_array(result.image), result.clamped);
          },
          py::arg("low_result"), py::arg("residual"), py::arg("field"), py::arg("base_size") = 128,
          py::arg("upsample") = "bilinear");
    m.def("multiscale_reswarp",
          [](const FloatArray& low, const std::vector<FloatArray>& levels, const FloatArray& base,
             const FloatArray& field, int base_size, const std::string& upsample) {
              const auto result = atw::multiscale_reswarp(to_image(low), to_pyramid(levels, base), to_field(field),
                                                          config_from("multiscale", base_size, upsample));
              return py::make_tuple(to_array(result.image), result.clamped);
          },
          py::arg("low_result"), py::arg("levels"), py::arg("base"), py::arg("field"), py::arg("base_size") = 128,
          py::arg("upsample") = "bilinear");

    m.def("warp", [](const FloatArray& img, const FloatArray& field) {
        return to_array(atw::warp(to_image(img), to_field(field)));
    });
    m.def("upsample_field", [](const FloatArray& field, int w, int h) {
        return to_array(atw::upsample_field(to_field(field), w, h).raster());
    });
    m.def("interpolate_field", [](const FloatArray& field, double alpha) {
        return to_array(atw::interpolate_field(to_field(field), alpha).raster());
    });
    m.def("scale_field", [](const FloatArray& normalized, float scale_factor) {
        return to_array(atw::scale_field(atw::NormalizedField(to_image(normalized), scale_factor)).raster());
    });
    m.def("mock_field",
          [](const std::string& spec, int base_size, double max_displacement) {
              auto parsed = atw::parse_mock_spec(spec);
              parsed.max_displacement = max_displacement;
              return to_array(atw::generate_mock_field(parsed, base_size).raster());
          },
          py::arg("spec"), py::arg("base_size") = 128, py::arg("max_displacement") = 0.0);

    m.def("load_image", [](const std::filesystem::path& p) { return to_array(atw::load_image(p)); });
    m.def("save_image", [](const FloatArray& img, const std::filesystem::path& p) { atw::save_image(to_image(img), p); });
    m.def("load_field", [](const std::filesystem::path& p) { return to_array(atw::load_field(p).raster()); });
    m.def("save_field", [](const FloatArray& f, const std::filesystem::path& p) { atw::save_field(to_field(f), p); });
    m.def("save_normalized_field", [](const FloatArray& f, float scale, const std::filesystem::path& p) {
        atw::save_normalized_field(atw::NormalizedField(to_image(f), scale), p);
    });

    m.def("metric_coherency", [](const std::vector<FloatArray>& frames) {
        std::vector<atw::Image> images;
        for (const auto& f : frames) {
            images.push_back(to_image(f));
        }
        return atw::metric_coherency(images);
    });
}
