// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include "edgediff/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "edgediff/errors.hpp"
#include "fft.hpp"
#include "parallel.hpp"

namespace edgediff {

namespace {

// Kernels up to this radius run spatially; larger ones go through the DCT.
constexpr int kSpatialRadiusLimit = 24;

enum class FloorMode { Absolute, RelativeToMax };

// Half-sample symmetric reflection with period 2n.
inline int reflect_index(int i, int n) noexcept
{
    const int period = 2 * n;
    int m = i % period;
    if (m < 0)
        m += period;
    return m < n ? m : period - 1 - m;
}

void require_same_shape(const ChannelPlane& a, const ChannelPlane& b, const char* what)
{
    if (!a.same_shape(b))
        throw InputError(ErrorCode::DimensionMismatch, std::string(what) + ": plane dimensions differ");
}

void require_padded_raster(const ChannelPlane& plane, const FilterRaster& raster)
{
    if (raster.width() != 2 * plane.width() || raster.height() != 2 * plane.height())
        throw InputError(ErrorCode::DimensionMismatch,
                         "filter raster must be " + std::to_string(2 * plane.width()) + "x"
                             + std::to_string(2 * plane.height()) + " (padded size), got "
                             + std::to_string(raster.width()) + "x" + std::to_string(raster.height()));
}

// First quadrant of an axis-even padded raster: the DCT-domain gains.
std::vector<double> quadrant_gains(const FilterRaster& raster)
{
    const int w = raster.width() / 2;
    const int h = raster.height() / 2;
    std::vector<double> g(static_cast<std::size_t>(w) * h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            g[static_cast<std::size_t>(r) * w + c] = raster(r, c);
    return g;
}

// 1-D transfer function of the truncated kernel at frequencies u / (2n).
std::vector<double> gaussian_transfer_1d(int n, double sigma)
{
    const std::vector<double> k = gaussian_kernel(sigma);
    const int radius = static_cast<int>(k.size() / 2);
    std::vector<double> g(static_cast<std::size_t>(2 * n));
    for (int u = 0; u < 2 * n; ++u) {
        double acc = k[radius];
        for (int d = 1; d <= radius; ++d)
            acc += 2.0 * k[radius + d] * std::cos(std::numbers::pi * u * d / n);
        g[u] = acc;
    }
    return g;
}

std::vector<double> gaussian_quadrant_gains(int width, int height, double sigma)
{
    const auto gx = gaussian_transfer_1d(width, sigma);
    const auto gy = gaussian_transfer_1d(height, sigma);
    std::vector<double> g(static_cast<std::size_t>(width) * height);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c)
            g[static_cast<std::size_t>(r) * width + c] = gy[r] * gx[c];
    return g;
}

// y = DCT-III(gains * DCT-II(x)) / (4 W H), i.e. the mirror-padded circular
// convolution restricted to the original support.
ChannelPlane dct_filter(const ChannelPlane& plane, const std::vector<double>& gains)
{
    const int w = plane.width();
    const int h = plane.height();
    const std::size_t n = plane.size();
    const auto& plan = detail::DctPlan::get(w, h);
    auto a = detail::make_real_buffer(n);
    auto b = detail::make_real_buffer(n);
    std::copy(plane.values().begin(), plane.values().end(), a.get());
    plan.forward(a.get(), b.get());
    for (std::size_t i = 0; i < n; ++i)
        b[i] *= gains[i];
    plan.inverse(b.get(), a.get());
    ChannelPlane out(w, h);
    auto v = out.values();
    const double norm = plan.normalization();
    for (std::size_t i = 0; i < n; ++i)
        v[i] = a[i] * norm;
    return out;
}

struct WorkerScratch {
    detail::RealBuffer weight, weight_spec, tmp, spec, num;
    std::vector<detail::RealBuffer> den;
    std::vector<std::vector<double>> acc;
    std::size_t floored = 0;
    std::size_t bins = 0;
};

// Shared engine behind bilateral_fast and edge_aware_csf_filter. `gains[c]`
// are the DCT-domain gains for plane c; planes pointing at the same gain
// vector share one denominator per bin.
std::vector<ChannelPlane> binned_filter(std::span<const ChannelPlane> planes, const ChannelPlane& guide,
                                        const BilateralParams& params,
                                        std::span<const std::vector<double>* const> gains, FloorMode floor_mode,
                                        FilterStats* stats)
{
    const int w = guide.width();
    const int h = guide.height();
    const std::size_t n = guide.size();
    const std::size_t channels = planes.size();

    const double lo = guide.min();
    const double hi = guide.max();
    if (!(hi > lo)) {
        std::vector<ChannelPlane> out;
        for (std::size_t c = 0; c < channels; ++c)
            out.push_back(dct_filter(planes[c], *gains[c]));
        return out;
    }

    // Distinct gain sets; den_index[c] picks the denominator for plane c.
    std::vector<const std::vector<double>*> distinct;
    std::vector<std::size_t> den_index(channels);
    std::vector<bool> counts_floor(channels, false);  // first plane per denominator
    for (std::size_t c = 0; c < channels; ++c) {
        auto it = std::find(distinct.begin(), distinct.end(), gains[c]);
        den_index[c] = static_cast<std::size_t>(it - distinct.begin());
        if (it == distinct.end()) {
            distinct.push_back(gains[c]);
            counts_floor[c] = true;
        }
    }

    const int bins = params.bins;
    const double step = (hi - lo) / (bins - 1);
    const double inv_two_var = 1.0 / (2.0 * params.sigma_r * params.sigma_r);
    const auto g = guide.values();

    std::vector<double> position(n);  // guide value in bin units
    for (std::size_t i = 0; i < n; ++i)
        position[i] = (g[i] - lo) / step;

    // Bins no pixel interpolates from are skipped.
    std::vector<char> used(static_cast<std::size_t>(bins), 0);
    for (double t : position) {
        const int k0 = std::clamp(static_cast<int>(std::floor(t)), 0, bins - 1);
        used[k0] = 1;
        if (k0 + 1 < bins && t > k0)
            used[k0 + 1] = 1;
    }

    const int workers = std::clamp(params.workers, 1, bins);
    std::vector<WorkerScratch> scratch(static_cast<std::size_t>(workers));
    for (auto& s : scratch) {
        s.weight = detail::make_real_buffer(n);
        s.weight_spec = detail::make_real_buffer(n);
        s.tmp = detail::make_real_buffer(n);
        s.spec = detail::make_real_buffer(n);
        s.num = detail::make_real_buffer(n);
        for (std::size_t j = 0; j < distinct.size(); ++j)
            s.den.push_back(detail::make_real_buffer(n));
        s.acc.assign(channels, std::vector<double>(n, 0.0));
    }

    const auto& plan = detail::DctPlan::get(w, h);
    const double norm = plan.normalization();

    detail::parallel_for(bins, workers, [&](int k, int worker) {
        if (!used[k])
            return;
        WorkerScratch& s = scratch[worker];
        ++s.bins;
        const double level = lo + k * step;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = level - g[i];
            s.weight[i] = std::exp(-d * d * inv_two_var);
        }
        plan.forward(s.weight.get(), s.weight_spec.get());

        std::vector<double> floors(distinct.size());
        for (std::size_t j = 0; j < distinct.size(); ++j) {
            const std::vector<double>& gj = *distinct[j];
            for (std::size_t i = 0; i < n; ++i)
                s.tmp[i] = s.weight_spec[i] * gj[i];
            plan.inverse(s.tmp.get(), s.den[j].get());
            double peak = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                s.den[j][i] *= norm;
                peak = std::max(peak, std::abs(s.den[j][i]));
            }
            floors[j] = floor_mode == FloorMode::Absolute ? params.epsilon : params.epsilon * peak;
        }

        for (std::size_t c = 0; c < channels; ++c) {
            const auto p = planes[c].values();
            for (std::size_t i = 0; i < n; ++i)
                s.tmp[i] = s.weight[i] * p[i];
            plan.forward(s.tmp.get(), s.spec.get());
            const std::vector<double>& gc = *gains[c];
            for (std::size_t i = 0; i < n; ++i)
                s.spec[i] *= gc[i];
            plan.inverse(s.spec.get(), s.num.get());

            const double* den = s.den[den_index[c]].get();
            const double floor = floors[den_index[c]];
            std::vector<double>& acc = s.acc[c];
            for (std::size_t i = 0; i < n; ++i) {
                const double hat = 1.0 - std::abs(position[i] - k);
                if (hat <= 0.0)
                    continue;
                double d = den[i];
                if (d < floor) {
                    d = floor;
                    if (counts_floor[c])
                        ++s.floored;
                }
                acc[i] += hat * (s.num[i] * norm) / d;
            }
        }
    });

    std::vector<ChannelPlane> out;
    out.reserve(channels);
    for (std::size_t c = 0; c < channels; ++c) {
        ChannelPlane plane(w, h);
        auto v = plane.values();
        for (const auto& s : scratch)
            for (std::size_t i = 0; i < n; ++i)
                v[i] += s.acc[c][i];
        out.push_back(std::move(plane));
    }
    if (stats) {
        for (const auto& s : scratch) {
            stats->floored_pixels += s.floored;
            stats->bins_evaluated += s.bins;
        }
    }
    return out;
}

}  // namespace

void BilateralParams::validate() const
{
    if (!(sigma_s > 0.0))
        throw InputError(ErrorCode::InvalidConfig, "bilateral sigma_s must be positive");
    if (!(sigma_r > 0.0))
        throw InputError(ErrorCode::InvalidConfig, "bilateral sigma_r must be positive");
    if (bins < 2)
        throw InputError(ErrorCode::InvalidConfig, "bilateral filter needs at least two bins");
    if (!(epsilon > 0.0))
        throw InputError(ErrorCode::InvalidConfig, "denominator floor epsilon must be positive");
    if (workers < 1)
        throw InputError(ErrorCode::InvalidConfig, "worker count must be at least one");
}

int gaussian_radius(double sigma)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw InputError(ErrorCode::Domain, "Gaussian sigma must be positive and finite");
    return std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
}

std::vector<double> gaussian_kernel(double sigma)
{
    const int radius = gaussian_radius(sigma);
    std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int d = -radius; d <= radius; ++d) {
        k[d + radius] = std::exp(-0.5 * d * d / (sigma * sigma));
        sum += k[d + radius];
    }
    for (double& v : k)
        v /= sum;
    return k;
}

ChannelPlane gaussian_blur_spatial(const ChannelPlane& plane, double sigma)
{
    const std::vector<double> k = gaussian_kernel(sigma);
    const int radius = static_cast<int>(k.size() / 2);
    const int w = plane.width();
    const int h = plane.height();

    ChannelPlane rows(w, h);
    std::vector<int> idx(static_cast<std::size_t>(w + 2 * radius));
    for (int i = 0; i < w + 2 * radius; ++i)
        idx[i] = reflect_index(i - radius, w);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int d = 0; d <= 2 * radius; ++d)
                acc += k[d] * plane(r, idx[c + d]);
            rows(r, c) = acc;
        }

    ChannelPlane out(w, h);
    idx.resize(static_cast<std::size_t>(h + 2 * radius));
    for (int i = 0; i < h + 2 * radius; ++i)
        idx[i] = reflect_index(i - radius, h);
    std::vector<double> column(static_cast<std::size_t>(w));
    for (int r = 0; r < h; ++r) {
        std::fill(column.begin(), column.end(), 0.0);
        for (int d = 0; d <= 2 * radius; ++d) {
            const int src = idx[r + d];
            const double kd = k[d];
            for (int c = 0; c < w; ++c)
                column[c] += kd * rows(src, c);
        }
        for (int c = 0; c < w; ++c)
            out(r, c) = column[c];
    }
    return out;
}

ChannelPlane gaussian_blur(const ChannelPlane& plane, double sigma)
{
    if (gaussian_radius(sigma) <= kSpatialRadiusLimit)
        return gaussian_blur_spatial(plane, sigma);
    return dct_filter(plane, gaussian_quadrant_gains(plane.width(), plane.height(), sigma));
}

FilterRaster gaussian_raster(int padded_width, int padded_height, double sigma)
{
    if (padded_width < 2 || padded_height < 2 || padded_width % 2 || padded_height % 2)
        throw InputError(ErrorCode::DimensionMismatch, "padded raster dimensions must be even");
    const auto gx = gaussian_transfer_1d(padded_width / 2, sigma);
    const auto gy = gaussian_transfer_1d(padded_height / 2, sigma);
    std::vector<double> g(static_cast<std::size_t>(padded_width) * padded_height);
    for (int r = 0; r < padded_height; ++r)
        for (int c = 0; c < padded_width; ++c)
            g[static_cast<std::size_t>(r) * padded_width + c] = gy[r] * gx[c];
    return FilterRaster(padded_width, padded_height, std::move(g));
}

ChannelPlane mirror_pad(const ChannelPlane& plane)
{
    const int w = plane.width();
    const int h = plane.height();
    ChannelPlane out(2 * w, 2 * h);
    for (int r = 0; r < 2 * h; ++r)
        for (int c = 0; c < 2 * w; ++c)
            out(r, c) = plane(reflect_index(r, h), reflect_index(c, w));
    return out;
}

FrequencyGrid padded_grid(int width, int height, double ppd)
{
    return FrequencyGrid(2 * width, 2 * height, ppd);
}

ChannelPlane frequency_filter(const ChannelPlane& plane, const FilterRaster& raster)
{
    require_padded_raster(plane, raster);
    if (raster.axis_even())
        return dct_filter(plane, quadrant_gains(raster));
    return frequency_filter_fft(plane, raster);
}

ChannelPlane frequency_filter_fft(const ChannelPlane& plane, const FilterRaster& raster)
{
    require_padded_raster(plane, raster);
    if (!raster.point_symmetric())
        throw InputError(ErrorCode::Domain, "filter raster must be point-symmetric for a real-valued result");

    const ChannelPlane padded = mirror_pad(plane);
    const int pw = padded.width();
    const int ph = padded.height();
    const auto& plan = detail::RealFftPlan::get(pw, ph);
    const int sw = plan.spectrum_width();

    auto in = detail::make_real_buffer(padded.size());
    auto spec = detail::make_complex_buffer(static_cast<std::size_t>(ph) * sw);
    std::copy(padded.values().begin(), padded.values().end(), in.get());
    plan.forward(in.get(), spec.get());
    for (int r = 0; r < ph; ++r)
        for (int c = 0; c < sw; ++c)
            spec[static_cast<std::size_t>(r) * sw + c] *= raster(r, c);
    plan.inverse(spec.get(), in.get());

    ChannelPlane out(plane.width(), plane.height());
    const double norm = plan.normalization();
    for (int r = 0; r < plane.height(); ++r)
        for (int c = 0; c < plane.width(); ++c)
            out(r, c) = in[static_cast<std::size_t>(r) * pw + c] * norm;
    return out;
}

ChannelPlane bilateral_direct(const ChannelPlane& plane, const ChannelPlane& guide, const BilateralParams& params)
{
    params.validate();
    require_same_shape(plane, guide, "bilateral_direct");
    const int radius = gaussian_radius(params.sigma_s);
    const int w = plane.width();
    const int h = plane.height();
    const int span = 2 * radius + 1;

    std::vector<double> spatial(static_cast<std::size_t>(span) * span);
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            spatial[static_cast<std::size_t>(dy + radius) * span + dx + radius]
                = std::exp(-0.5 * dy * dy / (params.sigma_s * params.sigma_s))
                  * std::exp(-0.5 * dx * dx / (params.sigma_s * params.sigma_s));

    std::vector<int> col_idx(static_cast<std::size_t>(w + 2 * radius));
    for (int i = 0; i < w + 2 * radius; ++i)
        col_idx[i] = reflect_index(i - radius, w);

    const double inv_two_var = 1.0 / (2.0 * params.sigma_r * params.sigma_r);
    ChannelPlane out(w, h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            const double center = guide(r, c);
            double num = 0.0;
            double den = 0.0;
            for (int dy = -radius; dy <= radius; ++dy) {
                const int m = reflect_index(r + dy, h);
                const double* ws = &spatial[static_cast<std::size_t>(dy + radius) * span];
                for (int dx = 0; dx < span; ++dx) {
                    const int nn = col_idx[c + dx];
                    const double diff = center - guide(m, nn);
                    const double wt = ws[dx] * std::exp(-diff * diff * inv_two_var);
                    num += wt * plane(m, nn);
                    den += wt;
                }
            }
            out(r, c) = num / den;
        }
    return out;
}

ChannelPlane bilateral_fast(const ChannelPlane& plane, const ChannelPlane& guide, const BilateralParams& params,
                            FilterStats* stats)
{
    auto out = bilateral_fast(std::span<const ChannelPlane>(&plane, 1), guide, params, stats);
    return std::move(out.front());
}

std::vector<ChannelPlane> bilateral_fast(std::span<const ChannelPlane> planes, const ChannelPlane& guide,
                                         const BilateralParams& params, FilterStats* stats)
{
    params.validate();
    for (const auto& p : planes)
        require_same_shape(p, guide, "bilateral_fast");
    const auto gains = gaussian_quadrant_gains(guide.width(), guide.height(), params.sigma_s);
    std::vector<const std::vector<double>*> per_plane(planes.size(), &gains);
    return binned_filter(planes, guide, params, per_plane, FloorMode::Absolute, stats);
}

OpponentImage edge_aware_csf_filter(const OpponentImage& opponent, const ChannelPlane& guide,
                                    const std::array<FilterRaster, 3>& rasters, const BilateralParams& params,
                                    FilterStats* stats)
{
    params.validate();
    std::array<ChannelPlane, 3> planes;
    std::array<std::vector<double>, 3> gains;
    for (int c = 0; c < 3; ++c) {
        planes[c] = opponent.data.channel(c);
        require_same_shape(planes[c], guide, "edge_aware_csf_filter");
        require_padded_raster(planes[c], rasters[c]);
        if (!rasters[c].axis_even())
            throw InputError(ErrorCode::Domain, "edge-aware CSF filtering needs rasters even along each axis");
        gains[c] = quadrant_gains(rasters[c]);
    }
    const std::array<const std::vector<double>*, 3> per_plane{&gains[0], &gains[1], &gains[2]};
    auto filtered = binned_filter(planes, guide, params, per_plane, FloorMode::RelativeToMax, stats);
    return {Image3({std::move(filtered[0]), std::move(filtered[1]), std::move(filtered[2])}), opponent.space};
}

}  // namespace edgediff
