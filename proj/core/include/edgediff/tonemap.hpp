// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "edgediff/color.hpp"
#include "edgediff/image.hpp"

namespace edgediff {

/// Fast bilateral tone mapping (Durand and Dorsey 2002). Defaults follow
/// their published settings: log10 luminance, spatial sigma 2% of the image
/// diagonal, range sigma 0.4 decades.
struct DurandParams {
    double sigma_s_fraction = 0.02;
    double sigma_r = 0.4;
    int bins = 32;
    double display_max = 100.0;      ///< cd/m^2 of the brightest base value
    double luminance_floor = 1e-6;   ///< cd/m^2, applied before the log
    double desaturation = 0.0;       ///< color exponent s = 1 - desaturation
    int workers = 1;
};

/// Photographic global operator (Reinhard et al. 2002).
struct ReinhardParams {
    double key = 0.18;
    double display_max = 100.0;
    double delta = 1e-6;   ///< offset inside the log-average
};

/// Base layer of log10 luminance compressed so its range is
/// log10(base_contrast), detail re-added, colors carried by ratio. Output is
/// absolute XYZ with luminance in [0, display_max].
TristimulusImage tonemap_durand(const TristimulusImage& hdr, double base_contrast, const DurandParams& params = {},
                                const ColorTables& tables = *ColorTables::builtin());

/// Key-scaled L(1 + L / Lw^2) / (1 + L) on luminance; linear sRGB channels
/// follow (C / L)^(1 - d) * L_d. Zero-luminance pixels come out black.
TristimulusImage tonemap_reinhard(const TristimulusImage& hdr, double desaturation, const ReinhardParams& params = {},
                                  const ColorTables& tables = *ColorTables::builtin());

/// Log10 base layer used by tonemap_durand, for inspection.
ChannelPlane durand_base_layer(const TristimulusImage& hdr, const DurandParams& params = {});

}  // namespace edgediff
