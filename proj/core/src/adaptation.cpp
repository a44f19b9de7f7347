// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include "edgediff/adaptation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "edgediff/errors.hpp"

namespace edgediff {

const char* to_string(CatVariant variant)
{
    switch (variant) {
    case CatVariant::VonKriesHPE: return "vonkries_hpe";
    case CatVariant::CAT02: return "cat02";
    case CatVariant::CAT16: return "cat16";
    }
    return "unknown";
}

CatVariant cat_variant_from_string(std::string_view name)
{
    for (CatVariant v : {CatVariant::VonKriesHPE, CatVariant::CAT02, CatVariant::CAT16})
        if (name == to_string(v))
            return v;
    throw InputError(ErrorCode::InvalidConfig, "unknown CAT variant '" + std::string(name) + "'");
}

const char* cat_matrix_name(CatVariant variant)
{
    switch (variant) {
    case CatVariant::VonKriesHPE: return "xyz_to_lms_hpe";
    case CatVariant::CAT02: return "xyz_to_lms_cat02";
    case CatVariant::CAT16: return "xyz_to_lms_cat16";
    }
    return "xyz_to_lms_cat16";
}

void AdaptationSpec::validate() const
{
    source_white.validate();
    dest_white.validate();
    if (!(degree >= 0.0 && degree <= 1.0))
        throw InputError(ErrorCode::Domain, "degree of adaptation must lie in [0, 1]");
}

Eigen::Vector3d von_kries_gains(const Eigen::Vector3d& source_lms_white,
                                const Eigen::Vector3d& dest_lms_white, double degree)
{
    if (!(source_lms_white.array() > 0.0).all())
        throw InputError(ErrorCode::DegenerateWhite, "source white has a non-positive cone response");
    return (degree * dest_lms_white.array() / source_lms_white.array() + (1.0 - degree)).matrix();
}

Image3 von_kries_adapt(const Image3& lms, const AdaptationSpec& spec)
{
    if (!(spec.degree >= 0.0 && spec.degree <= 1.0))
        throw InputError(ErrorCode::Domain, "degree of adaptation must lie in [0, 1]");
    const Eigen::Vector3d gains = von_kries_gains(spec.source_white.xyz(), spec.dest_white.xyz(), spec.degree);
    Image3 out(lms.width(), lms.height());
    for (std::size_t i = 0; i < lms.pixel_count(); ++i)
        out.set(i, gains.cwiseProduct(lms.at(i)));
    return out;
}

Image3 cat_adapt(const Image3& xyz, const WhitePointMap& white_map, const WhitePoint& dest_white,
                 const CatOptions& options, const ColorTables& tables)
{
    if (!xyz.same_shape(white_map.xyz))
        throw InputError(ErrorCode::DimensionMismatch, "white map dimensions differ from the image");
    if (!(options.degree >= 0.0 && options.degree <= 1.0))
        throw InputError(ErrorCode::Domain, "degree of adaptation must lie in [0, 1]");
    dest_white.validate();

    const Eigen::Matrix3d& to_lms = tables.matrix(cat_matrix_name(options.variant)).entries();
    const Eigen::Matrix3d to_xyz = to_lms.inverse();
    const Eigen::Vector3d dest_lms = to_lms * dest_white.xyz();

    Image3 out(xyz.width(), xyz.height());
    for (std::size_t i = 0; i < xyz.pixel_count(); ++i) {
        Eigen::Vector3d white_lms = to_lms * white_map.xyz.at(i);
        if (options.white_floor > 0.0)
            white_lms = white_lms.cwiseMax(options.white_floor);
        const Eigen::Vector3d gains = von_kries_gains(white_lms, dest_lms, options.degree);
        out.set(i, to_xyz * gains.cwiseProduct(to_lms * xyz.at(i)));
    }
    return out;
}

Image3 cat_adapt(const Image3& xyz, const AdaptationSpec& spec, const ColorTables& tables)
{
    spec.validate();
    const Eigen::Matrix3d& to_lms = tables.matrix(cat_matrix_name(spec.cat_variant)).entries();
    const Eigen::Matrix3d to_xyz = to_lms.inverse();
    const Eigen::Vector3d gains
        = von_kries_gains(to_lms * spec.source_white.xyz(), to_lms * spec.dest_white.xyz(), spec.degree);
    const Eigen::Matrix3d full = to_xyz * gains.asDiagonal() * to_lms;
    return apply_matrix(xyz, full);
}

LuminanceAdaptation luminance_adaptation_factor(double y_white, bool rescale_to_unity)
{
    if (!(y_white >= 0.0) || !std::isfinite(y_white))
        throw InputError(ErrorCode::Domain, "adapting luminance must be finite and >= 0");
    const double k = 1.0 / (1.0 + y_white);
    const double k4 = k * k * k * k;
    const double one_minus = 1.0 - k4;
    double fl = ((1.0 / 5.0) * k4 * y_white + (1.0 / 10.0) * one_minus * one_minus * std::cbrt(y_white)) / 1.71;
    if (rescale_to_unity)
        fl *= 1.71;
    return {fl, 0.43 * std::max(fl, 0.3)};
}

}  // namespace edgediff
