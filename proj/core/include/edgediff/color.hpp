// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "edgediff/image.hpp"

namespace edgediff {

/// Tag for the linear (and compressed-linear) spaces a 3x3 matrix can map
/// between. LMS tags name the cone/sharpened basis; the same tag is reused for
/// the compressed responses of that basis.
enum class Space {
    XYZ,
    LinearSRGB,
    LMS_CAT02,
    LMS_CAT16,
    LMS_HPE,
    LMS_OKLab,
    ACC,
    IPT,
    OKLab,
};

const char* to_string(Space space);
Space space_from_string(std::string_view name);

/// 3x3 linear map between two tagged spaces.
class ConversionMatrix {
public:
    ConversionMatrix(const Eigen::Matrix3d& entries, Space from, Space to);

    const Eigen::Matrix3d& entries() const noexcept { return entries_; }
    Space from() const noexcept { return from_; }
    Space to() const noexcept { return to_; }

    ConversionMatrix inverse() const;
    Eigen::Vector3d apply(const Eigen::Vector3d& v) const noexcept { return entries_ * v; }

private:
    Eigen::Matrix3d entries_;
    Space from_;
    Space to_;
};

/// Named matrices and illuminants. The built-in table is compiled from
/// core/data/color_tables.yaml; `load` reads a file with the same schema.
class ColorTables {
public:
    static ColorTables parse(std::string_view yaml_text);
    static ColorTables load(const std::filesystem::path& path);
    static std::shared_ptr<const ColorTables> builtin();

    const ConversionMatrix& matrix(std::string_view name) const;
    WhitePoint illuminant(std::string_view name) const;
    bool has_matrix(std::string_view name) const;

    const std::map<std::string, ConversionMatrix, std::less<>>& matrices() const noexcept
    {
        return matrices_;
    }

private:
    std::map<std::string, ConversionMatrix, std::less<>> matrices_;
    std::map<std::string, WhitePoint, std::less<>> illuminants_;
};

/// Image with an explicit linear-space tag; the input/output of `convert`.
struct TaggedImage {
    Image3 data;
    Space space = Space::XYZ;
};

/// Per-pixel out = M * in. Throws InputError(SpaceMismatch) when the image tag
/// differs from the matrix's source space.
TaggedImage convert(const TaggedImage& img, const ConversionMatrix& matrix);

/// Untagged per-pixel 3x3 map.
Image3 apply_matrix(const Image3& img, const Eigen::Matrix3d& m);

inline constexpr double kLabDelta = 6.0 / 29.0;

/// CIELAB compressive nonlinearity: cube root above delta^3, linear segment
/// below. Continuous at t = delta^3.
double lab_f(double t) noexcept;

Eigen::Vector3d xyz_to_lab(const Eigen::Vector3d& xyz, const WhitePoint& white);

/// CIELAB of `img` (in absolute units) relative to `white` (same units).
OpponentImage xyz_to_cielab(const TristimulusImage& img, const WhitePoint& white);

/// Cylindrical (lightness, chroma, hue) form of an opponent triple. Hue is
/// atan2(c2, c1) wrapped to [0, 2pi); zero chroma yields hue 0.
Eigen::Vector3d to_cylindrical(const Eigen::Vector3d& opp) noexcept;
Eigen::Vector3d from_cylindrical(const Eigen::Vector3d& lch) noexcept;

OpponentImage lab_to_lch(const OpponentImage& lab);
OpponentImage lch_to_lab(const OpponentImage& lch);

/// sign(x) * |x|^exponent
inline double signed_pow(double x, double exponent) noexcept
{
    return std::copysign(std::pow(std::abs(x), exponent), x);
}

/// Opponent transforms applied to already-compressed LMS responses.
OpponentImage lms_to_ipt(const TaggedImage& compressed_lms, const ColorTables& tables);
OpponentImage lms_to_oklab(const TaggedImage& compressed_lms, const ColorTables& tables);

}  // namespace edgediff
