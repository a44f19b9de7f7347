// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include "edgediff/color.hpp"

#include <cmath>
#include <numbers>

#include "edgediff/errors.hpp"

namespace edgediff {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

OpponentImage opponent_from_compressed(const TaggedImage& lms, const ConversionMatrix& m, Space expected,
                                       OpponentSpace out_space)
{
    if (lms.space != expected)
        throw InputError(ErrorCode::SpaceMismatch, std::string("expected compressed ") + to_string(expected)
                                                       + " input, got " + to_string(lms.space));
    return {apply_matrix(lms.data, m.entries()), out_space};
}

}  // namespace

TaggedImage convert(const TaggedImage& img, const ConversionMatrix& matrix)
{
    if (img.space != matrix.from())
        throw InputError(ErrorCode::SpaceMismatch, std::string("matrix expects ") + to_string(matrix.from())
                                                       + " input, image is " + to_string(img.space));
    return {apply_matrix(img.data, matrix.entries()), matrix.to()};
}

Image3 apply_matrix(const Image3& img, const Eigen::Matrix3d& m)
{
    Image3 out(img.width(), img.height());
    const std::size_t n = img.pixel_count();
    for (std::size_t i = 0; i < n; ++i)
        out.set(i, m * img.at(i));
    return out;
}

double lab_f(double t) noexcept
{
    constexpr double d3 = kLabDelta * kLabDelta * kLabDelta;
    if (t > d3)
        return std::cbrt(t);
    return t / (3.0 * kLabDelta * kLabDelta) + 4.0 / 29.0;
}

Eigen::Vector3d xyz_to_lab(const Eigen::Vector3d& xyz, const WhitePoint& white)
{
    const double fx = lab_f(xyz[0] / white.X);
    const double fy = lab_f(xyz[1] / white.Y);
    const double fz = lab_f(xyz[2] / white.Z);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

OpponentImage xyz_to_cielab(const TristimulusImage& img, const WhitePoint& white)
{
    white.validate();
    const Image3 abs = img.absolute();
    Image3 out(abs.width(), abs.height());
    for (std::size_t i = 0; i < abs.pixel_count(); ++i)
        out.set(i, xyz_to_lab(abs.at(i), white));
    return {std::move(out), OpponentSpace::CIELAB_Lab};
}

Eigen::Vector3d to_cylindrical(const Eigen::Vector3d& opp) noexcept
{
    const double chroma = std::hypot(opp[1], opp[2]);
    double hue = 0.0;
    if (chroma > 0.0) {
        hue = std::atan2(opp[2], opp[1]);
        if (hue < 0.0)
            hue += kTwoPi;
        if (hue >= kTwoPi)
            hue = 0.0;
    }
    return {opp[0], chroma, hue};
}

Eigen::Vector3d from_cylindrical(const Eigen::Vector3d& lch) noexcept
{
    return {lch[0], lch[1] * std::cos(lch[2]), lch[1] * std::sin(lch[2])};
}

OpponentImage lab_to_lch(const OpponentImage& lab)
{
    if (lab.space != OpponentSpace::CIELAB_Lab)
        throw InputError(ErrorCode::SpaceMismatch,
                         std::string("lab_to_lch expects CIELAB_Lab, got ") + to_string(lab.space));
    Image3 out(lab.width(), lab.height());
    for (std::size_t i = 0; i < lab.data.pixel_count(); ++i)
        out.set(i, to_cylindrical(lab.data.at(i)));
    return {std::move(out), OpponentSpace::CIELAB_LCh};
}

OpponentImage lch_to_lab(const OpponentImage& lch)
{
    if (lch.space != OpponentSpace::CIELAB_LCh)
        throw InputError(ErrorCode::SpaceMismatch,
                         std::string("lch_to_lab expects CIELAB_LCh, got ") + to_string(lch.space));
    Image3 out(lch.width(), lch.height());
    for (std::size_t i = 0; i < lch.data.pixel_count(); ++i)
        out.set(i, from_cylindrical(lch.data.at(i)));
    return {std::move(out), OpponentSpace::CIELAB_Lab};
}

OpponentImage lms_to_ipt(const TaggedImage& compressed_lms, const ColorTables& tables)
{
    return opponent_from_compressed(compressed_lms, tables.matrix("lms_to_ipt"), Space::LMS_HPE,
                                    OpponentSpace::IPT);
}

OpponentImage lms_to_oklab(const TaggedImage& compressed_lms, const ColorTables& tables)
{
    return opponent_from_compressed(compressed_lms, tables.matrix("lms_to_oklab"), Space::LMS_OKLab,
                                    OpponentSpace::OKLab);
}

}  // namespace edgediff
