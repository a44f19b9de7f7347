// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "edgediff/csf.hpp"
#include "edgediff/image.hpp"

namespace edgediff {

/// Parameters shared by the direct and binned bilateral filters.
struct BilateralParams {
    double sigma_s = 1.0;   ///< spatial std-dev, pixels
    double sigma_r = 0.1;   ///< range std-dev, guide units
    int bins = 32;          ///< K, uniform over [min, max] of the guide
    double epsilon = 1e-6;  ///< denominator floor
    int workers = 1;        ///< threads for per-bin work

    void validate() const;
};

/// Diagnostics collected by the binned filters.
struct FilterStats {
    std::size_t floored_pixels = 0;  ///< pixel-bin pairs whose denominator hit the floor
    std::size_t bins_evaluated = 0;
};

/// Kernel half-width for a Gaussian truncated at 3 sigma.
int gaussian_radius(double sigma);

/// Truncated, renormalized 1-D Gaussian of length 2 * radius + 1.
std::vector<double> gaussian_kernel(double sigma);

/// Separable Gaussian convolution with mirror (half-sample symmetric)
/// boundaries. Large kernels are applied in the transform domain; the result
/// matches gaussian_blur_spatial to rounding.
ChannelPlane gaussian_blur(const ChannelPlane& plane, double sigma);
ChannelPlane gaussian_blur_spatial(const ChannelPlane& plane, double sigma);

/// Transfer function of the truncated Gaussian on a padded_width x
/// padded_height transform grid. Sampled so that frequency_filter with this
/// raster reproduces gaussian_blur exactly.
FilterRaster gaussian_raster(int padded_width, int padded_height, double sigma);

/// Mirror-pads to double size: [P, flipX(P); flipY(P), flipXY(P)].
ChannelPlane mirror_pad(const ChannelPlane& plane);

/// Transform grid matching the padded size of a width x height plane.
FrequencyGrid padded_grid(int width, int height, double ppd);

/// Mirror-pad to 2W x 2H, multiply the spectrum by `raster`, invert, crop.
/// The raster must be 2W x 2H and point-symmetric. Rasters that are even
/// along each axis take an equivalent DCT-II/DCT-III path on the unpadded
/// plane; others take the padded FFT path.
ChannelPlane frequency_filter(const ChannelPlane& plane, const FilterRaster& raster);

/// The padded-FFT path unconditionally.
ChannelPlane frequency_filter_fft(const ChannelPlane& plane, const FilterRaster& raster);

/// Cross-bilateral filter evaluated by direct summation over a
/// (2r+1)^2 window, r = ceil(3 sigma_s), range weights taken from `guide`.
ChannelPlane bilateral_direct(const ChannelPlane& plane, const ChannelPlane& guide, const BilateralParams& params);

/// Binned bilateral approximation: K linear Gaussian filterings of
/// range-weighted planes, per-bin ratios interpolated (hat functions) at the
/// guide value.
ChannelPlane bilateral_fast(const ChannelPlane& plane, const ChannelPlane& guide, const BilateralParams& params,
                            FilterStats* stats = nullptr);

/// Several planes sharing one guide; weight maps and denominators are shared.
std::vector<ChannelPlane> bilateral_fast(std::span<const ChannelPlane> planes, const ChannelPlane& guide,
                                         const BilateralParams& params, FilterStats* stats = nullptr);

/// Edge-aware CSF filter: the binned bilateral structure with the Gaussian
/// replaced by per-channel frequency-domain filtering. All channels use the
/// same guide, bins and interpolation. Denominators are floored at
/// epsilon * max|denominator| per bin. `params.sigma_s` is unused.
OpponentImage edge_aware_csf_filter(const OpponentImage& opponent, const ChannelPlane& guide,
                                    const std::array<FilterRaster, 3>& rasters, const BilateralParams& params,
                                    FilterStats* stats = nullptr);

}  // namespace edgediff
