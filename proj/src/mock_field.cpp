#include "atw/mock_field.hpp"

#include "atw/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace atw {

namespace {

std::vector<double> parse_numbers(std::string_view text)
{
    std::vector<double> values;
    while (!text.empty()) {
        const auto comma = text.find(',');
        std::string token(text.substr(0, comma));
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != token.size()) {
            throw Error(ErrorCode::BadSpec, "bad number '" + token + "' in mock spec");
        }
        values.push_back(v);
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return values;
}

} // namespace

MockFieldSpec parse_mock_spec(std::string_view text)
{
    const auto colon = text.find(':');
    const std::string_view kind = text.substr(0, colon);
    const std::vector<double> args =
        colon == std::string_view::npos ? std::vector<double>{} : parse_numbers(text.substr(colon + 1));

    auto expect = [&](std::size_t n) {
        if (args.size() != n) {
            throw Error(ErrorCode::BadSpec, "mock kind '" + std::string(kind) + "' takes " + std::to_string(n) +
                                                " parameters, got " + std::to_string(args.size()));
        }
    };

    MockFieldSpec spec;
    if (kind == "zero") {
        expect(0);
        spec.kind = MockKind::Zero;
    } else if (kind == "translate") {
        expect(2);
        spec = {MockKind::Translate, args[0], args[1], 0.0};
    } else if (kind == "radial") {
        expect(3);
        spec = {MockKind::Radial, args[0], args[1], args[2]};
    } else if (kind == "shear") {
        expect(2);
        spec = {MockKind::Shear, args[0], args[1], 0.0};
    } else {
        throw Error(ErrorCode::BadSpec, "unknown mock kind '" + std::string(kind) + "'");
    }
    return spec;
}

std::string to_string(const MockFieldSpec& spec)
{
    std::ostringstream out;
    switch (spec.kind) {
    case MockKind::Zero: out << "zero"; break;
    case MockKind::Translate: out << "translate:" << spec.a << ',' << spec.b; break;
    case MockKind::Radial: out << "radial:" << spec.a << ',' << spec.b << ',' << spec.c; break;
    case MockKind::Shear: out << "shear:" << spec.a << ',' << spec.b; break;
    }
    return out.str();
}

double mock_peak_displacement(const MockFieldSpec& spec, int size)
{
    const double last = size - 1;
    switch (spec.kind) {
    case MockKind::Zero: return 0.0;
    case MockKind::Translate: return std::max(std::fabs(spec.a), std::fabs(spec.b));
    case MockKind::Radial: {
        const double rx = std::max(std::fabs(spec.a), std::fabs(last - spec.a));
        const double ry = std::max(std::fabs(spec.b), std::fabs(last - spec.b));
        return std::fabs(spec.c) * std::max(rx, ry);
    }
    case MockKind::Shear: return std::fabs(spec.b) * std::min(spec.a, last / 2.0);
    }
    return 0.0;
}

MotionField generate_mock_field(const MockFieldSpec& spec, int base_size)
{
    if (base_size < 1) {
        throw Error(ErrorCode::BadSpec, "base_size must be positive");
    }
    if (!std::isfinite(spec.a) || !std::isfinite(spec.b) || !std::isfinite(spec.c) ||
        !std::isfinite(spec.max_displacement) || spec.max_displacement < 0.0) {
        throw Error(ErrorCode::BadSpec, "mock spec parameters must be finite");
    }
    if (spec.kind == MockKind::Shear && !(spec.a > 0.0)) {
        throw Error(ErrorCode::BadSpec, "shear band must be positive");
    }
    const double bound = spec.max_displacement > 0.0 ? spec.max_displacement : base_size;
    const double peak = mock_peak_displacement(spec, base_size);
    if (peak > bound) {
        throw Error(ErrorCode::BadSpec, to_string(spec) + " reaches " + std::to_string(peak) +
                                            " px, above the declared maximum " + std::to_string(bound));
    }

    Image raster(base_size, base_size, 2);
    const double mid = (base_size - 1) / 2.0;
    for (int y = 0; y < base_size; ++y) {
        for (int x = 0; x < base_size; ++x) {
            double dx = 0.0;
            double dy = 0.0;
            switch (spec.kind) {
            case MockKind::Zero: break;
            case MockKind::Translate:
                dx = spec.a;
                dy = spec.b;
                break;
            case MockKind::Radial:
                dx = spec.c * (x - spec.a);
                dy = spec.c * (y - spec.b);
                break;
            case MockKind::Shear: dx = spec.b * std::clamp(y - mid, -spec.a, spec.a); break;
            }
            raster.at(x, y, 0) = static_cast<float>(dx);
            raster.at(x, y, 1) = static_cast<float>(dy);
        }
    }
    return MotionField(std::move(raster));
}

} // namespace atw
