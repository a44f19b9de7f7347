// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include "edgediff/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>
#include <vector>

#include <Eigen/LU>
#include <spdlog/spdlog.h>

#include "edgediff/errors.hpp"

namespace edgediff {

namespace {

Image3 scaled(const Image3& img, double s)
{
    Image3 out = img;
    for (int c = 0; c < 3; ++c)
        for (double& v : out.channel(c).values())
            v *= s;
    return out;
}

double default_sigma(double configured, int width, int height)
{
    if (configured > 0.0)
        return configured;
    return std::max(1.0, std::min(width, height) / 8.0);
}

BilateralParams range_params(const PipelineConfig& cfg, const ChannelPlane& guide, double sigma_s)
{
    const double range = guide.max() - guide.min();
    BilateralParams p;
    p.sigma_s = sigma_s;
    // A flat guide takes the plain linear path, so any positive sigma_r works.
    p.sigma_r = range > 0.0 ? cfg.sigma_r_fraction * range : 1.0;
    p.bins = cfg.bins;
    p.epsilon = cfg.epsilon;
    p.workers = cfg.workers;
    return p;
}

double median(std::span<const double> values)
{
    std::vector<double> v(values.begin(), values.end());
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1)
        return upper;
    const double lower = *std::max_element(v.begin(), v.begin() + mid);
    return 0.5 * (lower + upper);
}

WhitePoint d65_relative(const PipelineConfig& cfg)
{
    return cfg.tables->illuminant("D65").scaled_to(1.0);
}

}  // namespace

const char* to_string(Model model)
{
    switch (model) {
    case Model::ICAM02: return "icam02";
    case Model::IDIFF: return "idiff";
    case Model::ICAMDIFF: return "icamdiff";
    }
    return "unknown";
}

const char* to_string(Ucs ucs)
{
    return ucs == Ucs::IPT ? "ipt" : "oklab";
}

const char* to_string(EdgeChannels channels)
{
    return channels == EdgeChannels::All ? "all" : "achromatic";
}

Model model_from_string(std::string_view name)
{
    for (Model m : {Model::ICAM02, Model::IDIFF, Model::ICAMDIFF})
        if (name == to_string(m))
            return m;
    throw InputError(ErrorCode::InvalidConfig, "unknown model '" + std::string(name) + "'");
}

Ucs ucs_from_string(std::string_view name)
{
    for (Ucs u : {Ucs::IPT, Ucs::OKLab})
        if (name == to_string(u))
            return u;
    throw InputError(ErrorCode::InvalidConfig, "unknown UCS '" + std::string(name) + "'");
}

EdgeChannels edge_channels_from_string(std::string_view name)
{
    for (EdgeChannels e : {EdgeChannels::Achromatic, EdgeChannels::All})
        if (name == to_string(e))
            return e;
    throw InputError(ErrorCode::InvalidConfig, "unknown edge channel selection '" + std::string(name) + "'");
}

void ViewingConditions::validate() const
{
    if (!(ppd > 0.0) || !std::isfinite(ppd))
        throw InputError(ErrorCode::InvalidConfig, "ppd must be positive");
    if (!(max_luminance > 0.0) || !std::isfinite(max_luminance))
        throw InputError(ErrorCode::InvalidConfig, "max_luminance must be positive");
    reference_white.validate();
}

void PipelineConfig::validate() const
{
    viewing.validate();
    if (edge_aware_csf && model == Model::ICAM02)
        throw InputError(ErrorCode::InvalidConfig, "edge-aware CSF filtering needs the idiff or icamdiff model");
    if (edge_aware_whitepoint && model == Model::IDIFF)
        throw InputError(ErrorCode::InvalidConfig, "edge-aware white point needs the icam02 or icamdiff model");
    if (!(adaptation_degree >= 0.0 && adaptation_degree <= 1.0))
        throw InputError(ErrorCode::InvalidConfig, "adaptation_degree must lie in [0, 1]");
    if (!(white_sigma >= 0.0) || !(contrast_sigma >= 0.0))
        throw InputError(ErrorCode::InvalidConfig, "filter sigmas must be >= 0");
    if (!(white_floor > 0.0))
        throw InputError(ErrorCode::InvalidConfig, "white_floor must be positive");
    if (!(sigma_r_fraction > 0.0))
        throw InputError(ErrorCode::InvalidConfig, "sigma_r_fraction must be positive");
    if (bins < 2)
        throw InputError(ErrorCode::InvalidConfig, "bins must be at least 2");
    if (!(epsilon > 0.0))
        throw InputError(ErrorCode::InvalidConfig, "epsilon must be positive");
    if (workers < 1)
        throw InputError(ErrorCode::InvalidConfig, "workers must be at least 1");
    if (!(pooling_exponent >= 1.0))
        throw InputError(ErrorCode::InvalidConfig, "pooling_exponent must be >= 1");
    if (!tables)
        throw InputError(ErrorCode::InvalidConfig, "color tables are missing");
    for (const auto& m : csf_models)
        m.validate();
}

PipelineConfig PipelineConfig::preset(Model model, bool edge_aware)
{
    PipelineConfig cfg;
    cfg.model = model;
    if (edge_aware) {
        cfg.edge_aware_whitepoint = model != Model::IDIFF;
        cfg.edge_aware_csf = model != Model::ICAM02;
    }
    return cfg;
}

double native_exponent(Ucs ucs) noexcept
{
    return ucs == Ucs::IPT ? 0.43 : 1.0 / 3.0;
}

LocalAdaptation local_adaptation(const Image3& xyz_absolute, const PipelineConfig& cfg, PipelineStats* stats)
{
    const int w = xyz_absolute.width();
    const int h = xyz_absolute.height();
    const double sigma = default_sigma(cfg.white_sigma, w, h);

    std::array<ChannelPlane, 3> white;
    if (cfg.edge_aware_whitepoint) {
        const ChannelPlane& guide = xyz_absolute.channel(1);
        const std::array<ChannelPlane, 3> planes{xyz_absolute.channel(0), xyz_absolute.channel(1),
                                                 xyz_absolute.channel(2)};
        FilterStats fs;
        auto filtered = bilateral_fast(planes, guide, range_params(cfg, guide, sigma), &fs);
        for (int c = 0; c < 3; ++c)
            white[c] = std::move(filtered[c]);
        if (stats) {
            stats->filter.floored_pixels += fs.floored_pixels;
            stats->filter.bins_evaluated += fs.bins_evaluated;
        }
    } else {
        for (int c = 0; c < 3; ++c)
            white[c] = gaussian_blur(xyz_absolute.channel(c), sigma);
    }

    std::size_t clamped = 0;
    for (std::size_t i = 0; i < xyz_absolute.pixel_count(); ++i) {
        bool hit = false;
        for (auto& plane : white) {
            double& v = plane.values()[i];
            if (!(v >= cfg.white_floor)) {
                v = cfg.white_floor;
                hit = true;
            }
        }
        clamped += hit ? 1 : 0;
    }
    if (clamped > 0)
        spdlog::debug("white map: {} pixels clamped to {} cd/m^2", clamped, cfg.white_floor);
    if (stats)
        stats->clamped_white_pixels += clamped;

    LocalAdaptation out;
    out.alpha = ChannelPlane(w, h);
    for (std::size_t i = 0; i < xyz_absolute.pixel_count(); ++i)
        out.alpha.values()[i] = luminance_adaptation_factor(white[1].values()[i], cfg.rescale_fl).alpha;

    out.white.xyz = Image3(std::move(white));
    const double to_relative = 1.0 / cfg.viewing.max_luminance;
    CatOptions options;
    options.variant = cfg.cat_variant;
    options.degree = cfg.adaptation_degree;
    options.white_floor = cfg.white_floor * to_relative;
    out.xyz = cat_adapt(scaled(xyz_absolute, to_relative), WhitePointMap{scaled(out.white.xyz, to_relative)},
                        d65_relative(cfg), options, *cfg.tables);
    return out;
}

OpponentImage xyz_to_ucs(const Image3& xyz_relative, const ChannelPlane& alpha, const WhitePoint& white, Ucs ucs,
                         const ColorTables& tables)
{
    if (alpha.width() != xyz_relative.width() || alpha.height() != xyz_relative.height())
        throw InputError(ErrorCode::DimensionMismatch, "exponent plane dimensions differ from the image");
    white.validate();
    const Eigen::Matrix3d& to_lms
        = tables.matrix(ucs == Ucs::IPT ? "xyz_to_lms_hpe" : "xyz_to_lms_oklab").entries();
    const Eigen::Matrix3d& to_opp = tables.matrix(ucs == Ucs::IPT ? "lms_to_ipt" : "lms_to_oklab").entries();
    const Eigen::Vector3d lms_white = to_lms * white.xyz();
    if (!(lms_white.array() > 0.0).all())
        throw InputError(ErrorCode::DegenerateWhite, "UCS white has a non-positive cone response");

    OpponentImage out{Image3(xyz_relative.width(), xyz_relative.height()),
                      ucs == Ucs::IPT ? OpponentSpace::IPT : OpponentSpace::OKLab};
    for (std::size_t i = 0; i < xyz_relative.pixel_count(); ++i) {
        Eigen::Vector3d lms = (to_lms * xyz_relative.at(i)).cwiseQuotient(lms_white);
        const double a = alpha.values()[i];
        for (int k = 0; k < 3; ++k)
            lms[k] = signed_pow(lms[k], a);
        out.data.set(i, to_opp * lms);
    }
    return out;
}

OpponentImage icam02_appearance(const TristimulusImage& img, const PipelineConfig& cfg, PipelineStats* stats)
{
    cfg.validate();
    img.validate();
    const LocalAdaptation la = local_adaptation(img.absolute(), cfg, stats);
    return xyz_to_ucs(la.xyz, la.alpha, d65_relative(cfg), cfg.ucs, *cfg.tables);
}

std::array<FilterRaster, 3> csf_rasters(int width, int height, const PipelineConfig& cfg)
{
    const FrequencyGrid grid = padded_grid(width, height, cfg.viewing.ppd);
    std::array<FilterRaster, 3> rasters;
    for (int c = 0; c < 3; ++c)
        rasters[c] = build_csf_raster(cfg.csf_models[c], grid, cfg.oblique);
    if (cfg.edge_enhancement) {
        const FilterRaster edge = edge_enhancement_raster(grid, cfg.oblique);
        const int last = cfg.edge_channels == EdgeChannels::All ? 3 : 1;
        for (int c = 0; c < last; ++c)
            rasters[c] = rasters[c] * edge;
    }
    return rasters;
}

double contrast_exponent(double median, double mask) noexcept
{
    return std::clamp(std::exp2((median - mask) / median), -10.0, 10.0);
}

OpponentImage local_contrast(const OpponentImage& acc, const ChannelPlane& filtered_a, const PipelineConfig& cfg,
                             PipelineStats* stats)
{
    if (!filtered_a.same_shape(acc.data.channel(0)))
        throw InputError(ErrorCode::DimensionMismatch, "contrast mask dimensions differ from the image");
    const double med = median(filtered_a.values());
    const double scale = std::max(std::abs(filtered_a.min()), std::abs(filtered_a.max()));
    if (!(std::abs(med) > 1e-12 * scale) || !std::isfinite(med)) {
        spdlog::warn("local contrast skipped: median of the achromatic channel is zero");
        if (stats)
            stats->contrast_bypassed = true;
        return acc;
    }

    const ChannelPlane mask
        = gaussian_blur(filtered_a, default_sigma(cfg.contrast_sigma, filtered_a.width(), filtered_a.height()));
    std::vector<double> beta(mask.size());
    for (std::size_t i = 0; i < beta.size(); ++i)
        beta[i] = contrast_exponent(med, mask.values()[i]);

    OpponentImage out = acc;
    for (int c = 0; c < 3; ++c) {
        const ChannelPlane& in = acc.data.channel(c);
        const double range = in.max() - in.min();
        if (!(range > 0.0))
            continue;
        auto dst = out.data.channel(c).values();
        auto src = in.values();
        for (std::size_t i = 0; i < dst.size(); ++i)
            dst[i] = range * signed_pow(src[i] / range, beta[i]);
    }
    return out;
}

Image3 idiff_filter(const Image3& xyz, const std::array<FilterRaster, 3>& rasters, const PipelineConfig& cfg,
                    PipelineStats* stats)
{
    const Eigen::Matrix3d& to_acc = cfg.tables->matrix("xyz_to_acc").entries();
    const OpponentImage acc{apply_matrix(xyz, to_acc), OpponentSpace::ACC};

    OpponentImage filtered;
    if (cfg.edge_aware_csf) {
        const ChannelPlane& guide = acc.data.channel(0);
        FilterStats fs;
        filtered = edge_aware_csf_filter(acc, guide, rasters, range_params(cfg, guide, 1.0), &fs);
        if (stats) {
            stats->filter.floored_pixels += fs.floored_pixels;
            stats->filter.bins_evaluated += fs.bins_evaluated;
        }
    } else {
        filtered.space = OpponentSpace::ACC;
        filtered.data = Image3(std::array<ChannelPlane, 3>{frequency_filter(acc.data.channel(0), rasters[0]),
                                                           frequency_filter(acc.data.channel(1), rasters[1]),
                                                           frequency_filter(acc.data.channel(2), rasters[2])});
    }

    if (cfg.local_contrast)
        filtered = local_contrast(filtered, filtered.data.channel(0), cfg, stats);
    return apply_matrix(filtered.data, to_acc.inverse());
}

TristimulusImage idiff_prepare(const TristimulusImage& img, const PipelineConfig& cfg, PipelineStats* stats)
{
    cfg.validate();
    img.validate();
    const auto rasters = csf_rasters(img.width(), img.height(), cfg);
    return {idiff_filter(img.xyz, rasters, cfg, stats), img.luminance_scale};
}

OpponentImage model_appearance(const TristimulusImage& img, const PipelineConfig& cfg, PipelineStats* stats)
{
    cfg.validate();
    img.validate();
    switch (cfg.model) {
    case Model::ICAM02:
        return icam02_appearance(img, cfg, stats);
    case Model::IDIFF: {
        const TristimulusImage prepared = idiff_prepare(img, cfg, stats);
        const Image3 rel = scaled(prepared.absolute(), 1.0 / cfg.viewing.max_luminance);
        const ChannelPlane alpha(img.width(), img.height(), native_exponent(cfg.ucs));
        return xyz_to_ucs(rel, alpha, cfg.viewing.reference_white.scaled_to(1.0), cfg.ucs, *cfg.tables);
    }
    case Model::ICAMDIFF: {
        const LocalAdaptation la = local_adaptation(img.absolute(), cfg, stats);
        const auto rasters = csf_rasters(img.width(), img.height(), cfg);
        const Image3 filtered = idiff_filter(la.xyz, rasters, cfg, stats);
        return xyz_to_ucs(filtered, la.alpha, d65_relative(cfg), cfg.ucs, *cfg.tables);
    }
    }
    throw InputError(ErrorCode::InvalidConfig, "unknown model");
}

DifferenceResult compare_appearances(const OpponentImage& ref, const OpponentImage& test, const PipelineConfig& cfg)
{
    DifferenceResult result = difference_maps(ref, test);
    pool_differences(result, cfg.pooling_exponent);
    return result;
}

DifferenceResult run_model(const TristimulusImage& ref, const TristimulusImage& test, const PipelineConfig& cfg)
{
    cfg.validate();
    ref.validate();
    test.validate();
    if (ref.width() != test.width() || ref.height() != test.height())
        throw InputError(ErrorCode::DimensionMismatch, "reference and test images differ in size");

    if (cfg.workers > 1) {
        auto ref_future = std::async(std::launch::async, [&] { return model_appearance(ref, cfg); });
        const OpponentImage b = model_appearance(test, cfg);
        return compare_appearances(ref_future.get(), b, cfg);
    }
    const OpponentImage a = model_appearance(ref, cfg);
    const OpponentImage b = model_appearance(test, cfg);
    return compare_appearances(a, b, cfg);
}

}  // namespace edgediff
