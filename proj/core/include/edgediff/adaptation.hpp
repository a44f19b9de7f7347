// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include <Eigen/Core>

#include "edgediff/color.hpp"
#include "edgediff/image.hpp"

namespace edgediff {

enum class CatVariant { VonKriesHPE, CAT02, CAT16 };

const char* to_string(CatVariant variant);
CatVariant cat_variant_from_string(std::string_view name);

/// Name of the XYZ -> sharpened-LMS matrix for `variant` in ColorTables.
const char* cat_matrix_name(CatVariant variant);

struct AdaptationSpec {
    WhitePoint source_white;
    WhitePoint dest_white;
    double degree = 1.0;  ///< D in [0, 1]; 1 is complete adaptation.
    CatVariant cat_variant = CatVariant::CAT16;

    void validate() const;
};

/// Per-pixel adapting white, same dimensions as the image it adapts.
struct WhitePointMap {
    Image3 xyz;
};

/// Diagonal gains D * (w2 / w1) + (1 - D). Throws InputError(DegenerateWhite)
/// if any source component is <= 0.
Eigen::Vector3d von_kries_gains(const Eigen::Vector3d& source_lms_white,
                                const Eigen::Vector3d& dest_lms_white, double degree);

/// Diagonal von Kries scaling of an LMS image. The whites in `spec` must
/// already be expressed in the image's LMS basis.
Image3 von_kries_adapt(const Image3& lms, const AdaptationSpec& spec);

struct CatOptions {
    CatVariant variant = CatVariant::CAT16;
    double degree = 1.0;
    /// When > 0, per-pixel source whites are clamped component-wise to this
    /// floor in the sharpened LMS basis instead of raising DegenerateWhite.
    double white_floor = 0.0;
};

/// XYZ -> sharpened LMS -> per-pixel von Kries against `dest_white` -> XYZ.
Image3 cat_adapt(const Image3& xyz, const WhitePointMap& white_map, const WhitePoint& dest_white,
                 const CatOptions& options, const ColorTables& tables);

/// Single-white form of cat_adapt.
Image3 cat_adapt(const Image3& xyz, const AdaptationSpec& spec, const ColorTables& tables);

struct LuminanceAdaptation {
    double fl = 0.0;
    double alpha = 0.0;  ///< modulated compressive exponent, 0.43 * max(F_L, 0.3)
};

/// Luminance-level adaptation factor for an adapting white luminance in
/// cd/m^2, evaluated as k = 1/(1+Y), F_L = (k^4 Y / 5 + (1-k^4)^2 Y^(1/3) / 10) / 1.71.
/// The /1.71 divisor makes F_L(1000) ~= 0.585, not 1; `rescale_to_unity`
/// multiplies F_L by 1.71 for callers that want the CIECAM02 scale.
LuminanceAdaptation luminance_adaptation_factor(double y_white, bool rescale_to_unity = false);

}  // namespace edgediff
