// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "edgediff/image.hpp"

namespace edgediff {

/// Per-pixel difference maps between two opponent images plus their pooled
/// aggregates. Signed maps (delta_i, delta_c, delta_h) are first minus second.
struct DifferenceResult {
    ChannelPlane delta_e;
    ChannelPlane delta_i;
    ChannelPlane delta_c;
    ChannelPlane delta_h;
    double agg_e = 0.0;
    double agg_i = 0.0;
    double agg_c = 0.0;
    double agg_h = 0.0;
    double pooling_exponent = 3.0;
};

/// Euclidean total difference, achromatic difference, chroma difference and
/// hue difference 2 sqrt(C1 C2) sin(dh / 2) with dh wrapped to (-pi, pi].
/// Channel 0 is the achromatic axis; channels 1 and 2 form the chroma plane.
/// Aggregates are left at zero; see pool_differences.
DifferenceResult difference_maps(const OpponentImage& a, const OpponentImage& b);

/// ((1/MN) sum |v|^p)^(1/p). Throws InputError for an empty map or p < 1.
double minkowski_pool(const ChannelPlane& map, double exponent = 3.0);

/// Fills the aggregates of `result` with minkowski_pool at `exponent`.
void pool_differences(DifferenceResult& result, double exponent = 3.0);

}  // namespace edgediff
