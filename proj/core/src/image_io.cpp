// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include "edgediff/image_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/LU>
#include <png.h>

#include "edgediff/errors.hpp"

namespace edgediff {

namespace fs = std::filesystem;

namespace {

constexpr int kMaxDimension = 1 << 15;

[[noreturn]] void format_error(const fs::path& path, const std::string& what)
{
    throw InputError(ErrorCode::Format, path.string() + ": " + what);
}

void check_dimensions(const fs::path& path, long long w, long long h)
{
    if (w < 1 || h < 1 || w > kMaxDimension || h > kMaxDimension)
        format_error(path, "unsupported dimensions " + std::to_string(w) + "x" + std::to_string(h));
}

std::ifstream open_input(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError(ErrorCode::Io, "cannot open '" + path.string() + "'");
    return in;
}

std::ofstream open_output(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError(ErrorCode::Io, "cannot write '" + path.string() + "'");
    return out;
}

// Whitespace-separated netpbm header token, skipping # comments.
std::string pnm_token(std::istream& in)
{
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (std::isspace(ch)) {
            if (!tok.empty())
                break;
            continue;
        }
        tok.push_back(static_cast<char>(ch));
    }
    return tok;
}

long long parse_int(const fs::path& path, const std::string& tok)
{
    try {
        std::size_t used = 0;
        const long long v = std::stoll(tok, &used);
        if (used == tok.size())
            return v;
    } catch (const std::exception&) {
    }
    format_error(path, "bad header field '" + tok + "'");
}

Image3 from_srgb8(const std::uint8_t* data, int w, int h)
{
    std::array<double, 256> lut{};
    for (int i = 0; i < 256; ++i)
        lut[static_cast<std::size_t>(i)] = srgb_to_linear(i / 255.0);
    Image3 out(w, h);
    for (std::size_t i = 0; i < out.pixel_count(); ++i)
        out.set(i, {lut[data[3 * i]], lut[data[3 * i + 1]], lut[data[3 * i + 2]]});
    return out;
}

Image3 load_png_rgb(const fs::path& path)
{
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!fs::exists(path))
        throw InputError(ErrorCode::Io, "cannot open '" + path.string() + "'");
    if (!png_image_begin_read_from_file(&image, path.string().c_str()))
        format_error(path, image.message);
    check_dimensions(path, image.width, image.height);
    image.format = PNG_FORMAT_RGB;
    std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr))
        format_error(path, image.message);
    return from_srgb8(buf.data(), static_cast<int>(image.width), static_cast<int>(image.height));
}

Image3 load_ppm_rgb(const fs::path& path)
{
    std::ifstream in = open_input(path);
    if (pnm_token(in) != "P6")
        format_error(path, "not a binary PPM (P6)");
    const long long w = parse_int(path, pnm_token(in));
    const long long h = parse_int(path, pnm_token(in));
    const long long maxval = parse_int(path, pnm_token(in));
    check_dimensions(path, w, h);
    if (maxval != 255)
        format_error(path, "only 8-bit PPM is supported");
    std::vector<std::uint8_t> buf(static_cast<std::size_t>(w * h * 3));
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() != static_cast<std::streamsize>(buf.size()))
        format_error(path, "truncated pixel data");
    return from_srgb8(buf.data(), static_cast<int>(w), static_cast<int>(h));
}

std::string read_line(std::istream& in)
{
    std::string line;
    std::getline(in, line);
    return line;
}

void rgbe_to_float(const std::uint8_t* rgbe, double* out)
{
    if (rgbe[3] == 0) {
        out[0] = out[1] = out[2] = 0.0;
        return;
    }
    const double f = std::ldexp(1.0, static_cast<int>(rgbe[3]) - (128 + 8));
    for (int k = 0; k < 3; ++k)
        out[k] = rgbe[k] * f;
}

void read_scanline(std::istream& in, const fs::path& path, int w, std::vector<std::uint8_t>& line)
{
    line.assign(static_cast<std::size_t>(w) * 4, 0);
    std::array<std::uint8_t, 4> head{};
    in.read(reinterpret_cast<char*>(head.data()), 4);
    if (!in)
        format_error(path, "truncated scanline");

    const bool rle = w >= 8 && w < 0x8000 && head[0] == 2 && head[1] == 2 && (head[2] & 0x80) == 0;
    if (!rle) {
        // Flat pixels, possibly with old-style (1, 1, 1, n) repeat runs.
        int x = 0;
        int shift = 0;
        std::array<std::uint8_t, 4> px = head;
        for (;;) {
            if (px[0] == 1 && px[1] == 1 && px[2] == 1) {
                if (x == 0)
                    format_error(path, "repeat run at scanline start");
                const int run = px[3] << shift;
                if (x + run > w)
                    format_error(path, "repeat run overflows scanline");
                for (int i = 0; i < run; ++i, ++x)
                    std::copy_n(&line[static_cast<std::size_t>(x - 1) * 4], 4, &line[static_cast<std::size_t>(x) * 4]);
                shift += 8;
            } else {
                std::copy(px.begin(), px.end(), &line[static_cast<std::size_t>(x) * 4]);
                ++x;
                shift = 0;
            }
            if (x >= w)
                return;
            in.read(reinterpret_cast<char*>(px.data()), 4);
            if (!in)
                format_error(path, "truncated scanline");
        }
    }

    if (((head[2] << 8) | head[3]) != w)
        format_error(path, "scanline width mismatch");
    for (int ch = 0; ch < 4; ++ch) {
        int x = 0;
        while (x < w) {
            const int count = in.get();
            if (count == EOF)
                format_error(path, "truncated run-length data");
            if (count > 128) {
                const int run = count - 128;
                const int value = in.get();
                if (value == EOF || x + run > w)
                    format_error(path, "bad run-length data");
                for (int i = 0; i < run; ++i, ++x)
                    line[static_cast<std::size_t>(x) * 4 + ch] = static_cast<std::uint8_t>(value);
            } else {
                if (count == 0 || x + count > w)
                    format_error(path, "bad run-length data");
                for (int i = 0; i < count; ++i, ++x) {
                    const int value = in.get();
                    if (value == EOF)
                        format_error(path, "truncated run-length data");
                    line[static_cast<std::size_t>(x) * 4 + ch] = static_cast<std::uint8_t>(value);
                }
            }
        }
    }
}

Image3 linear_rgb_to_xyz(const Image3& rgb, const ColorTables& tables)
{
    return apply_matrix(rgb, tables.matrix("linear_srgb_to_xyz").entries());
}

}  // namespace

double srgb_to_linear(double v) noexcept
{
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

double linear_to_srgb(double v) noexcept
{
    return v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

ImageFormat format_from_path(const fs::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png")
        return ImageFormat::PNG;
    if (ext == ".ppm")
        return ImageFormat::PPM;
    if (ext == ".pfm")
        return ImageFormat::PFM;
    if (ext == ".hdr" || ext == ".pic" || ext == ".rgbe")
        return ImageFormat::RGBE;
    throw InputError(ErrorCode::Format, "unknown image format for '" + path.string() + "'");
}

TristimulusImage load_image(const fs::path& path, const LoadOptions& options, const ColorTables& tables)
{
    if (!(options.display_luminance > 0.0) || !(options.luminance_scale > 0.0))
        throw InputError(ErrorCode::InvalidConfig, "luminance scales must be positive");
    const ImageFormat format = options.format == ImageFormat::Auto ? format_from_path(path) : options.format;
    TristimulusImage img;
    switch (format) {
    case ImageFormat::PNG:
        img = {linear_rgb_to_xyz(load_png_rgb(path), tables), options.display_luminance};
        break;
    case ImageFormat::PPM:
        img = {linear_rgb_to_xyz(load_ppm_rgb(path), tables), options.display_luminance};
        break;
    case ImageFormat::PFM:
        img = {linear_rgb_to_xyz(load_pfm(path), tables), options.luminance_scale};
        break;
    case ImageFormat::RGBE: {
        bool is_xyz = false;
        Image3 raw = load_rgbe(path, &is_xyz);
        img = {is_xyz ? std::move(raw) : linear_rgb_to_xyz(raw, tables), options.luminance_scale};
        break;
    }
    case ImageFormat::Auto:
        break;
    }
    if (!img.xyz.all_finite())
        format_error(path, "non-finite pixel values");
    // Slightly negative luminance from out-of-gamut float pixels is clipped.
    for (double& y : img.xyz.channel(1).values())
        y = std::max(y, 0.0);
    return img;
}

void save_pfm(const Image3& img, const fs::path& path)
{
    std::ofstream out = open_output(path);
    const bool little = std::endian::native == std::endian::little;
    out << "PF\n" << img.width() << ' ' << img.height() << '\n' << (little ? "-1.0" : "1.0") << '\n';
    std::vector<float> row(static_cast<std::size_t>(img.width()) * 3);
    for (int r = img.height() - 1; r >= 0; --r) {
        for (int c = 0; c < img.width(); ++c)
            for (int k = 0; k < 3; ++k)
                row[static_cast<std::size_t>(c) * 3 + k] = static_cast<float>(img.channel(k)(r, c));
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
    if (!out)
        throw InputError(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

Image3 load_pfm(const fs::path& path)
{
    std::ifstream in = open_input(path);
    const std::string magic = pnm_token(in);
    if (magic != "PF" && magic != "Pf")
        format_error(path, "not a portable float map");
    const int channels = magic == "PF" ? 3 : 1;
    const long long w = parse_int(path, pnm_token(in));
    const long long h = parse_int(path, pnm_token(in));
    check_dimensions(path, w, h);
    double scale = 0.0;
    try {
        scale = std::stod(pnm_token(in));
    } catch (const std::exception&) {
        format_error(path, "bad scale field");
    }
    if (scale == 0.0)
        format_error(path, "zero scale field");
    const bool file_little = scale < 0.0;
    const bool swap = file_little != (std::endian::native == std::endian::little);

    std::vector<float> row(static_cast<std::size_t>(w) * channels);
    Image3 out(static_cast<int>(w), static_cast<int>(h));
    for (long long r = h - 1; r >= 0; --r) {
        in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size() * sizeof(float)));
        if (in.gcount() != static_cast<std::streamsize>(row.size() * sizeof(float)))
            format_error(path, "truncated pixel data");
        if (swap)
            for (float& f : row)
                f = std::bit_cast<float>(__builtin_bswap32(std::bit_cast<std::uint32_t>(f)));
        for (long long c = 0; c < w; ++c)
            for (int k = 0; k < 3; ++k)
                out.channel(k)(static_cast<int>(r), static_cast<int>(c))
                    = row[static_cast<std::size_t>(c) * channels + (channels == 3 ? k : 0)];
    }
    return out;
}

void save_rgbe(const Image3& img, const fs::path& path)
{
    std::ofstream out = open_output(path);
    out << "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y " << img.height() << " +X " << img.width() << '\n';
    std::vector<std::uint8_t> line(static_cast<std::size_t>(img.width()) * 4);
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            const double v[3] = {std::max(0.0, img.channel(0)(r, c)), std::max(0.0, img.channel(1)(r, c)),
                                 std::max(0.0, img.channel(2)(r, c))};
            const double m = std::max({v[0], v[1], v[2]});
            std::uint8_t* px = &line[static_cast<std::size_t>(c) * 4];
            if (m < 1e-32) {
                px[0] = px[1] = px[2] = px[3] = 0;
                continue;
            }
            int e = 0;
            const double scale = std::frexp(m, &e) * 256.0 / m;
            for (int k = 0; k < 3; ++k)
                px[k] = static_cast<std::uint8_t>(std::min(255.0, v[k] * scale));
            px[3] = static_cast<std::uint8_t>(e + 128);
        }
        out.write(reinterpret_cast<const char*>(line.data()), static_cast<std::streamsize>(line.size()));
    }
    if (!out)
        throw InputError(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

Image3 load_rgbe(const fs::path& path, bool* is_xyz)
{
    std::ifstream in = open_input(path);
    const std::string magic = read_line(in);
    if (magic.rfind("#?", 0) != 0)
        format_error(path, "missing Radiance signature");
    bool xyz = false;
    for (;;) {
        if (!in)
            format_error(path, "unterminated header");
        const std::string line = read_line(in);
        if (line.empty())
            break;
        if (line.rfind("FORMAT=", 0) == 0) {
            const std::string fmt = line.substr(7);
            if (fmt == "32-bit_rle_xyze")
                xyz = true;
            else if (fmt != "32-bit_rle_rgbe")
                format_error(path, "unsupported format '" + fmt + "'");
        }
    }
    std::istringstream res(read_line(in));
    std::string ya, xa;
    long long h = 0, w = 0;
    if (!(res >> ya >> h >> xa >> w) || ya != "-Y" || xa != "+X")
        format_error(path, "unsupported resolution line");
    check_dimensions(path, w, h);

    Image3 out(static_cast<int>(w), static_cast<int>(h));
    std::vector<std::uint8_t> line;
    for (int r = 0; r < h; ++r) {
        read_scanline(in, path, static_cast<int>(w), line);
        for (int c = 0; c < w; ++c) {
            double v[3];
            rgbe_to_float(&line[static_cast<std::size_t>(c) * 4], v);
            for (int k = 0; k < 3; ++k)
                out.channel(k)(r, c) = v[k];
        }
    }
    if (is_xyz)
        *is_xyz = xyz;
    return out;
}

void save_srgb_png(const TristimulusImage& img, const fs::path& path, double display_luminance,
                   const ColorTables& tables)
{
    const Eigen::Matrix3d to_rgb = tables.matrix("linear_srgb_to_xyz").entries().inverse();
    const Image3 xyz = img.absolute();
    std::vector<std::uint8_t> buf(xyz.pixel_count() * 3);
    for (std::size_t i = 0; i < xyz.pixel_count(); ++i) {
        const Eigen::Vector3d rgb = to_rgb * xyz.at(i) / display_luminance;
        for (int k = 0; k < 3; ++k)
            buf[3 * i + k] = static_cast<std::uint8_t>(
                std::lround(255.0 * linear_to_srgb(std::clamp(rgb[k], 0.0, 1.0))));
    }
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(xyz.width());
    image.height = static_cast<png_uint_32>(xyz.height());
    image.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, buf.data(), 0, nullptr))
        throw InputError(ErrorCode::Io, "cannot write '" + path.string() + "': " + image.message);
}

fs::path map_sidecar_path(const fs::path& path)
{
    fs::path side = path;
    side += ".minmax.txt";
    return side;
}

void save_map(const ChannelPlane& map, const fs::path& path)
{
    if (map.empty())
        throw InputError(ErrorCode::DimensionMismatch, "cannot save an empty map");
    if (!map.all_finite())
        throw InputError(ErrorCode::Domain, "map contains non-finite values");
    const double lo = map.min();
    const double hi = map.max();
    const double span = hi - lo;
    std::vector<std::uint16_t> buf(map.size());
    auto v = map.values();
    for (std::size_t i = 0; i < buf.size(); ++i)
        buf[i] = span > 0.0 ? static_cast<std::uint16_t>(std::lround((v[i] - lo) / span * 65535.0)) : 0;

    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(map.width());
    image.height = static_cast<png_uint_32>(map.height());
    image.format = PNG_FORMAT_LINEAR_Y;
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, buf.data(), 0, nullptr))
        throw InputError(ErrorCode::Io, "cannot write '" + path.string() + "': " + image.message);

    std::ofstream side = open_output(map_sidecar_path(path));
    side.precision(std::numeric_limits<double>::max_digits10);
    side << "min " << lo << "\nmax " << hi << '\n';
    if (!side)
        throw InputError(ErrorCode::Io, "failed writing sidecar for '" + path.string() + "'");
}

ChannelPlane load_map(const fs::path& path)
{
    std::ifstream side = open_input(map_sidecar_path(path));
    std::string key_lo, key_hi;
    double lo = 0.0, hi = 0.0;
    if (!(side >> key_lo >> lo >> key_hi >> hi) || key_lo != "min" || key_hi != "max")
        format_error(map_sidecar_path(path), "bad min/max sidecar");

    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!fs::exists(path))
        throw InputError(ErrorCode::Io, "cannot open '" + path.string() + "'");
    if (!png_image_begin_read_from_file(&image, path.string().c_str()))
        format_error(path, image.message);
    check_dimensions(path, image.width, image.height);
    image.format = PNG_FORMAT_LINEAR_Y;
    std::vector<std::uint16_t> buf(PNG_IMAGE_SIZE(image) / sizeof(std::uint16_t));
    if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr))
        format_error(path, image.message);

    ChannelPlane out(static_cast<int>(image.width), static_cast<int>(image.height));
    auto v = out.values();
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = lo + (hi - lo) * (buf[i] / 65535.0);
    return out;
}

}  // namespace edgediff
