// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include "edgediff/tonemap.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "edgediff/errors.hpp"
#include "edgediff/filtering.hpp"

namespace edgediff {

namespace {

ChannelPlane log_luminance(const Image3& xyz, double floor)
{
    ChannelPlane out(xyz.width(), xyz.height());
    auto y = xyz.channel(1).values();
    auto dst = out.values();
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] = std::log10(std::max(y[i], floor));
    return out;
}

// Scales linear sRGB channels toward luminance: C' = (C / L)^s * L_out.
Image3 recolor(const Image3& xyz, const std::vector<double>& l_in, const std::vector<double>& l_out, double s,
               const ColorTables& tables)
{
    const Eigen::Matrix3d& to_xyz = tables.matrix("linear_srgb_to_xyz").entries();
    const Eigen::Matrix3d to_rgb = to_xyz.inverse();
    Image3 out(xyz.width(), xyz.height());
    for (std::size_t i = 0; i < xyz.pixel_count(); ++i) {
        if (!(l_in[i] > 0.0)) {
            out.set(i, Eigen::Vector3d::Zero());
            continue;
        }
        if (s == 1.0) {
            out.set(i, xyz.at(i) * (l_out[i] / l_in[i]));
            continue;
        }
        Eigen::Vector3d rgb = to_rgb * xyz.at(i);
        for (int k = 0; k < 3; ++k)
            rgb[k] = signed_pow(rgb[k] / l_in[i], s) * l_out[i];
        out.set(i, to_xyz * rgb);
    }
    return out;
}

void check_desaturation(double d)
{
    if (!(d >= 0.0 && d <= 1.0))
        throw InputError(ErrorCode::Domain, "desaturation must lie in [0, 1]");
}

}  // namespace

ChannelPlane durand_base_layer(const TristimulusImage& hdr, const DurandParams& params)
{
    hdr.validate();
    if (!(params.sigma_s_fraction > 0.0) || !(params.sigma_r > 0.0) || !(params.luminance_floor > 0.0))
        throw InputError(ErrorCode::InvalidConfig, "Durand sigmas and luminance floor must be positive");
    const ChannelPlane log_l = log_luminance(hdr.absolute(), params.luminance_floor);
    BilateralParams bp;
    bp.sigma_s = std::max(0.5, params.sigma_s_fraction * std::hypot(hdr.width(), hdr.height()));
    bp.sigma_r = params.sigma_r;
    bp.bins = params.bins;
    bp.workers = params.workers;
    return bilateral_fast(log_l, log_l, bp);
}

TristimulusImage tonemap_durand(const TristimulusImage& hdr, double base_contrast, const DurandParams& params,
                                const ColorTables& tables)
{
    if (!(base_contrast > 1.0))
        throw InputError(ErrorCode::Domain, "base contrast must exceed 1");
    if (!(params.display_max > 0.0))
        throw InputError(ErrorCode::InvalidConfig, "display_max must be positive");
    check_desaturation(params.desaturation);

    const Image3 xyz = hdr.absolute();
    const ChannelPlane log_l = log_luminance(xyz, params.luminance_floor);
    const ChannelPlane base = durand_base_layer(hdr, params);
    const double base_max = base.max();
    const double range = base_max - base.min();
    const double gamma = range > 0.0 ? std::min(1.0, std::log10(base_contrast) / range) : 1.0;

    std::vector<double> l_in(xyz.pixel_count());
    std::vector<double> l_out(xyz.pixel_count());
    for (std::size_t i = 0; i < l_in.size(); ++i) {
        l_in[i] = xyz.channel(1).values()[i];
        const double b = base.values()[i];
        const double detail = log_l.values()[i] - b;
        l_out[i] = std::min(params.display_max, params.display_max * std::pow(10.0, gamma * (b - base_max) + detail));
    }
    return {recolor(xyz, l_in, l_out, 1.0 - params.desaturation, tables), 1.0};
}

TristimulusImage tonemap_reinhard(const TristimulusImage& hdr, double desaturation, const ReinhardParams& params,
                                  const ColorTables& tables)
{
    hdr.validate();
    check_desaturation(desaturation);
    if (!(params.key > 0.0) || !(params.display_max > 0.0) || !(params.delta > 0.0))
        throw InputError(ErrorCode::InvalidConfig, "Reinhard key, display_max and delta must be positive");

    const Image3 xyz = hdr.absolute();
    auto y = xyz.channel(1).values();
    double log_sum = 0.0;
    for (double v : y)
        log_sum += std::log(params.delta + v);
    const double log_average = std::exp(log_sum / static_cast<double>(y.size()));
    const double scale = params.key / log_average;

    double white = 0.0;
    for (double v : y)
        white = std::max(white, scale * v);
    const double white2 = white > 0.0 ? white * white : 1.0;

    std::vector<double> l_in(y.begin(), y.end());
    std::vector<double> l_out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double l = scale * y[i];
        l_out[i] = params.display_max * l * (1.0 + l / white2) / (1.0 + l);
    }
    return {recolor(xyz, l_in, l_out, 1.0 - desaturation, tables), 1.0};
}

}  // namespace edgediff
