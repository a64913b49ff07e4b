#include "atw/image_io.hpp"

#include "atw/error.hpp"
#include "binary_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace atw {

namespace {

std::string lower_extension(const std::filesystem::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

struct Raw8 {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> bytes;
};

Raw8 decode_png(const std::vector<std::uint8_t>& file, const std::filesystem::path& path)
{
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, file.data(), file.size())) {
        throw Error(ErrorCode::IoFailure, path.string() + ": " + image.message);
    }
    Raw8 raw;
    raw.channels = (image.format & PNG_FORMAT_FLAG_COLOR) ? 3 : 1;
    image.format = raw.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    raw.width = static_cast<int>(image.width);
    raw.height = static_cast<int>(image.height);
    raw.bytes.resize(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, raw.bytes.data(), 0, nullptr)) {
        const std::string message = image.message;
        png_image_free(&image);
        throw Error(ErrorCode::IoFailure, path.string() + ": " + message);
    }
    return raw;
}

void encode_png(const Raw8& raw, const std::filesystem::path& path)
{
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(raw.width);
    image.height = static_cast<png_uint_32>(raw.height);
    image.format = raw.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, raw.bytes.data(), 0, nullptr)) {
        throw Error(ErrorCode::IoFailure, path.string() + ": " + image.message);
    }
}

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string pnm_token(const std::vector<std::uint8_t>& file, std::size_t& pos)
{
    while (pos < file.size()) {
        if (file[pos] == '#') {
            while (pos < file.size() && file[pos] != '\n') {
                ++pos;
            }
        } else if (std::isspace(file[pos])) {
            ++pos;
        } else {
            break;
        }
    }
    std::string token;
    while (pos < file.size() && !std::isspace(file[pos]) && file[pos] != '#') {
        token.push_back(static_cast<char>(file[pos++]));
    }
    return token;
}

Raw8 decode_pnm(const std::vector<std::uint8_t>& file, const std::filesystem::path& path)
{
    std::size_t pos = 0;
    const std::string magic = pnm_token(file, pos);
    Raw8 raw;
    raw.channels = magic == "P6" ? 3 : 1;
    int maxval = 0;
    try {
        raw.width = std::stoi(pnm_token(file, pos));
        raw.height = std::stoi(pnm_token(file, pos));
        maxval = std::stoi(pnm_token(file, pos));
    } catch (const std::exception&) {
        throw Error(ErrorCode::UnsupportedFormat, path.string() + ": malformed PNM header");
    }
    if (maxval != 255) {
        throw Error(ErrorCode::UnsupportedFormat, path.string() + ": only 8-bit PNM (maxval 255) is supported");
    }
    if (raw.width < 1 || raw.height < 1) {
        throw Error(ErrorCode::UnsupportedFormat, path.string() + ": bad PNM dimensions");
    }
    ++pos; // single whitespace after maxval
    const std::size_t need = static_cast<std::size_t>(raw.width) * raw.height * raw.channels;
    if (pos > file.size() || file.size() - pos < need) {
        throw Error(ErrorCode::TruncatedFile, path.string() + ": PNM payload shorter than header declares");
    }
    raw.bytes.assign(file.begin() + static_cast<std::ptrdiff_t>(pos),
                     file.begin() + static_cast<std::ptrdiff_t>(pos + need));
    return raw;
}

void encode_pnm(const Raw8& raw, const std::filesystem::path& path)
{
    const std::string header = std::string(raw.channels == 3 ? "P6" : "P5") + "\n" + std::to_string(raw.width) +
                               " " + std::to_string(raw.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), raw.bytes.begin(), raw.bytes.end());
    detail::write_file(path, out);
}

Raw8 load_raw8(const std::filesystem::path& path)
{
    const auto file = detail::read_file(path);
    static constexpr std::uint8_t kPngSig[4] = {0x89, 'P', 'N', 'G'};
    if (file.size() >= 4 && std::equal(std::begin(kPngSig), std::end(kPngSig), file.begin())) {
        return decode_png(file, path);
    }
    if (file.size() >= 2 && file[0] == 'P' && (file[1] == '5' || file[1] == '6')) {
        return decode_pnm(file, path);
    }
    throw Error(ErrorCode::UnsupportedFormat, path.string() + ": not a PNG or binary PGM/PPM file");
}

void save_raw8(const Raw8& raw, const std::filesystem::path& path)
{
    const std::string ext = lower_extension(path);
    if (raw.channels != 1 && raw.channels != 3) {
        throw Error(ErrorCode::UnsupportedFormat,
                    "only 1- or 3-channel images can be saved, got " + std::to_string(raw.channels));
    }
    if (ext == ".png") {
        encode_png(raw, path);
    } else if (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") {
        encode_pnm(raw, path);
    } else {
        throw Error(ErrorCode::UnsupportedFormat, path.string() + ": unknown image extension '" + ext + "'");
    }
}

} // namespace

Image load_image(const std::filesystem::path& path)
{
    Raw8 raw = load_raw8(path);
    return Image(raw.width, raw.height, raw.channels, from_signed_range(raw.bytes));
}

void save_image(const Image& img, const std::filesystem::path& path)
{
    save_raw8({img.width(), img.height(), img.channels(), to_signed_range_bytes(img.data())}, path);
}

void save_residual_png(const ResidualMap& map, const std::filesystem::path& path)
{
    Raw8 raw{map.width(), map.height(), map.channels(), {}};
    raw.bytes.reserve(map.size());
    for (float r : map.data()) {
        const float unit = std::clamp((r + 2.0f) / 4.0f, 0.0f, 1.0f);
        raw.bytes.push_back(static_cast<std::uint8_t>(std::lround(unit * 255.0f)));
    }
    save_raw8(raw, path);
}

ResidualMap load_residual_png(const std::filesystem::path& path)
{
    Raw8 raw = load_raw8(path);
    std::vector<float> samples(raw.bytes.size());
    std::transform(raw.bytes.begin(), raw.bytes.end(), samples.begin(),
                   [](std::uint8_t b) { return static_cast<float>(b) / 255.0f * 4.0f - 2.0f; });
    return ResidualMap(raw.width, raw.height, raw.channels, std::move(samples));
}

void save_raw(const Image& img, const std::filesystem::path& path)
{
    std::vector<std::uint8_t> out;
    out.reserve(16 + img.size() * 4);
    out.insert(out.end(), {'A', 'T', 'W', 'R'});
    detail::put_u32(out, static_cast<std::uint32_t>(img.width()));
    detail::put_u32(out, static_cast<std::uint32_t>(img.height()));
    detail::put_u32(out, static_cast<std::uint32_t>(img.channels()));
    for (float v : img.data()) {
        detail::put_f32(out, v);
    }
    detail::write_file(path, out);
}

Image load_raw(const std::filesystem::path& path)
{
    const auto file = detail::read_file(path);
    if (file.size() < 4 || std::string(file.begin(), file.begin() + 4) != "ATWR") {
        throw Error(ErrorCode::BadMagic, path.string() + ": expected ATWR header");
    }
    if (file.size() < 16) {
        throw Error(ErrorCode::TruncatedFile, path.string() + ": ATWR header incomplete");
    }
    const std::uint32_t width = detail::get_u32(file, 4);
    const std::uint32_t height = detail::get_u32(file, 8);
    const std::uint32_t channels = detail::get_u32(file, 12);
    const std::uint64_t count = static_cast<std::uint64_t>(width) * height * channels;
    if (count == 0 || width > (1u << 20) || height > (1u << 20) || channels > 64) {
        throw Error(ErrorCode::UnsupportedFormat, path.string() + ": implausible ATWR dimensions");
    }
    if (file.size() - 16 < count * 4) {
        throw Error(ErrorCode::TruncatedFile, path.string() + ": ATWR payload shorter than header declares");
    }
    std::vector<float> samples(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i] = detail::get_f32(file, 16 + 4 * i);
    }
    return Image(static_cast<int>(width), static_cast<int>(height), static_cast<int>(channels), std::move(samples));
}

} // namespace atw
