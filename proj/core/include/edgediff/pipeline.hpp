// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string_view>

#include "edgediff/adaptation.hpp"
#include "edgediff/color.hpp"
#include "edgediff/csf.hpp"
#include "edgediff/filtering.hpp"
#include "edgediff/image.hpp"
#include "edgediff/metrics.hpp"

namespace edgediff {

enum class Model { ICAM02, IDIFF, ICAMDIFF };
enum class Ucs { IPT, OKLab };
enum class EdgeChannels { Achromatic, All };

const char* to_string(Model model);
const char* to_string(Ucs ucs);
const char* to_string(EdgeChannels channels);
Model model_from_string(std::string_view name);
Ucs ucs_from_string(std::string_view name);
EdgeChannels edge_channels_from_string(std::string_view name);

struct ViewingConditions {
    double ppd = 60.0;
    double max_luminance = 100.0;  ///< cd/m^2 of a relative luminance of 1
    WhitePoint reference_white{95.047, 100.0, 108.883};

    void validate() const;
};

struct PipelineConfig {
    Model model = Model::ICAMDIFF;
    bool edge_aware_whitepoint = false;
    bool edge_aware_csf = false;

    CatVariant cat_variant = CatVariant::CAT16;
    double adaptation_degree = 1.0;
    bool rescale_fl = false;
    Ucs ucs = Ucs::OKLab;
    ViewingConditions viewing;

    double white_sigma = 0.0;       ///< 0 picks min(H, W) / 8
    double white_floor = 1e-4;      ///< cd/m^2, applied to the white map
    double sigma_r_fraction = 0.1;  ///< range sigma as a fraction of the guide range
    int bins = 32;
    double epsilon = 1e-6;
    int workers = 1;

    std::array<CsfModel, 3> csf_models{CsfModel::achromatic(), CsfModel::red_green(), CsfModel::blue_yellow()};
    bool oblique = true;
    bool edge_enhancement = true;
    EdgeChannels edge_channels = EdgeChannels::Achromatic;
    bool local_contrast = true;
    double contrast_sigma = 0.0;  ///< 0 picks min(H, W) / 8

    double pooling_exponent = 3.0;
    std::shared_ptr<const ColorTables> tables = ColorTables::builtin();

    void validate() const;

    bool edge_aware() const noexcept { return edge_aware_whitepoint || edge_aware_csf; }

    /// Defaults for `model`; `edge_aware` turns on the flags that model uses.
    static PipelineConfig preset(Model model, bool edge_aware);
};

struct PipelineStats {
    std::size_t clamped_white_pixels = 0;
    bool contrast_bypassed = false;
    FilterStats filter;
};

/// Local adaptation of the iCAM stage: adapted XYZ relative to D65 at Y = 1,
/// plus the per-pixel compressive exponent.
struct LocalAdaptation {
    Image3 xyz;
    ChannelPlane alpha;
    WhitePointMap white;
};

/// White map, CAT to D65, per-pixel F_L. Input in cd/m^2.
LocalAdaptation local_adaptation(const Image3& xyz_absolute, const PipelineConfig& cfg,
                                 PipelineStats* stats = nullptr);

/// Compressed-LMS opponent transform of XYZ relative to `white` (Y = 1), which
/// maps to the achromatic axis. `alpha` holds one exponent per pixel.
OpponentImage xyz_to_ucs(const Image3& xyz_relative, const ChannelPlane& alpha, const WhitePoint& white, Ucs ucs,
                         const ColorTables& tables);

/// Native compressive exponent: 0.43 for IPT, 1/3 for OKLab.
double native_exponent(Ucs ucs) noexcept;

OpponentImage icam02_appearance(const TristimulusImage& img, const PipelineConfig& cfg,
                                PipelineStats* stats = nullptr);

/// Per-channel CSF rasters (edge enhancement included) on the padded grid.
std::array<FilterRaster, 3> csf_rasters(int width, int height, const PipelineConfig& cfg);

/// ACC, CSF filtering, local contrast, back to XYZ. Units are preserved.
TristimulusImage idiff_prepare(const TristimulusImage& img, const PipelineConfig& cfg,
                               PipelineStats* stats = nullptr);

/// Same as idiff_prepare with explicit rasters.
Image3 idiff_filter(const Image3& xyz, const std::array<FilterRaster, 3>& rasters, const PipelineConfig& cfg,
                    PipelineStats* stats = nullptr);

/// R * (ACC / R)^beta per channel, beta from the filtered achromatic plane.
OpponentImage local_contrast(const OpponentImage& acc, const ChannelPlane& filtered_a, const PipelineConfig& cfg,
                             PipelineStats* stats = nullptr);

/// beta = clip(2^((median - mask) / median), -10, 10).
double contrast_exponent(double median, double mask) noexcept;

/// Opponent image the chosen model compares.
OpponentImage model_appearance(const TristimulusImage& img, const PipelineConfig& cfg,
                               PipelineStats* stats = nullptr);

/// Maps and pooled aggregates between two appearances.
DifferenceResult compare_appearances(const OpponentImage& ref, const OpponentImage& test,
                                     const PipelineConfig& cfg);

DifferenceResult run_model(const TristimulusImage& ref, const TristimulusImage& test, const PipelineConfig& cfg);

}  // namespace edgediff
