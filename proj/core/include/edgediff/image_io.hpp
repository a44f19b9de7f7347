// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "edgediff/color.hpp"
#include "edgediff/image.hpp"

namespace edgediff {

enum class ImageFormat {
    Auto,   ///< from the extension: .png .ppm .pfm .hdr/.pic
    PNG,    ///< 8-bit sRGB-encoded
    PPM,    ///< binary P6, 8-bit sRGB-encoded
    PFM,    ///< portable float map, linear sRGB primaries
    RGBE,   ///< Radiance, RGB or XYZ
};

ImageFormat format_from_path(const std::filesystem::path& path);

struct LoadOptions {
    ImageFormat format = ImageFormat::Auto;
    /// cd/m^2 of an sRGB-encoded white (255, 255, 255).
    double display_luminance = 100.0;
    /// cd/m^2 per unit of a float format's luminance.
    double luminance_scale = 1.0;
};

/// Reads an image into XYZ. 8-bit inputs are linearized with the sRGB EOTF
/// and carry Y = 1 for white; float inputs keep their units. Throws
/// InputError(Io) for unreadable files and InputError(Format) otherwise.
TristimulusImage load_image(const std::filesystem::path& path, const LoadOptions& options = {},
                            const ColorTables& tables = *ColorTables::builtin());

/// sRGB EOTF on a code value in [0, 1].
double srgb_to_linear(double v) noexcept;
double linear_to_srgb(double v) noexcept;

/// Raw three-channel float maps. Values are stored as float32, so doubles
/// that are exactly representable in float round-trip bit-identically.
void save_pfm(const Image3& img, const std::filesystem::path& path);
Image3 load_pfm(const std::filesystem::path& path);

/// Flat (uncompressed) Radiance RGBE of raw channel values.
void save_rgbe(const Image3& img, const std::filesystem::path& path);
Image3 load_rgbe(const std::filesystem::path& path, bool* is_xyz = nullptr);

/// Writes absolute XYZ as 8-bit sRGB, with `display_luminance` at code 255.
void save_srgb_png(const TristimulusImage& img, const std::filesystem::path& path, double display_luminance = 100.0,
                   const ColorTables& tables = *ColorTables::builtin());

/// 16-bit grayscale PNG spanning [min, max] of the map, plus a sidecar
/// `<path>.minmax.txt` holding both values.
void save_map(const ChannelPlane& map, const std::filesystem::path& path);

/// Inverse of save_map up to 16-bit quantization.
ChannelPlane load_map(const std::filesystem::path& path);

std::filesystem::path map_sidecar_path(const std::filesystem::path& path);

}  // namespace edgediff
