// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include "edgediff/csf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edgediff/errors.hpp"

namespace edgediff {

namespace {

template<class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template<class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// cos(4 theta) is invariant under axis reflections, so evaluating it on
// |fx|, |fy| keeps rasters exactly symmetric in floating point.
double folded_cos4(double fx, double fy) noexcept
{
    if (fx == 0.0 && fy == 0.0)
        return 1.0;
    return std::cos(4.0 * std::atan2(std::abs(fy), std::abs(fx)));
}

double effective_frequency(const FrequencyGrid& grid, int row, int col, bool oblique) noexcept
{
    const double fr = grid.radial(row, col);
    if (!oblique)
        return fr;
    return fr / (0.15 * folded_cos4(grid.fx(col), grid.fy(row)) + 0.85);
}

// Maximizes a smooth unimodal-on-a-bracket function: coarse scan, then
// golden-section refinement around the best sample.
template<class F>
double argmax_scan(F&& fn, double lo, double hi)
{
    constexpr int kSamples = 4096;
    double best_f = lo;
    double best_v = fn(lo);
    const double step = (hi - lo) / kSamples;
    for (int i = 1; i <= kSamples; ++i) {
        const double f = lo + i * step;
        const double v = fn(f);
        if (v > best_v) {
            best_v = v;
            best_f = f;
        }
    }
    double a = std::max(lo, best_f - step);
    double b = std::min(hi, best_f + step);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 100 && b - a > 1e-12; ++it) {
        const double x1 = b - inv_phi * (b - a);
        const double x2 = a + inv_phi * (b - a);
        if (fn(x1) < fn(x2))
            a = x1;
        else
            b = x2;
    }
    const double mid = 0.5 * (a + b);
    return fn(mid) >= best_v ? mid : best_f;
}

}  // namespace

void CsfModel::validate() const
{
    std::visit(Overloaded{
                   [](const MovshonParams& p) {
                       if (!(p.a > 0.0 && p.b > 0.0 && p.c > 0.0))
                           throw InputError(ErrorCode::InvalidConfig,
                                            "Movshon CSF parameters a, b, c must be positive");
                   },
                   [](const ChromaticLowpassParams& p) {
                       if (p.a1 < 0.0 || p.a2 < 0.0 || p.b1 < 0.0 || p.b2 < 0.0 || p.c1 <= 0.0 || p.c2 <= 0.0
                           || p.a1 + p.a2 <= 0.0)
                           throw InputError(ErrorCode::InvalidConfig,
                                            "chromatic CSF needs non-negative a, b and positive c");
                   },
               },
               kind);
}

CsfModel CsfModel::achromatic()
{
    CsfModel m;
    m.kind = MovshonParams{};
    m.flatten = true;
    return m;
}

CsfModel CsfModel::red_green()
{
    CsfModel m;
    m.kind = ChromaticLowpassParams::red_green();
    return m;
}

CsfModel CsfModel::blue_yellow()
{
    CsfModel m;
    m.kind = ChromaticLowpassParams::blue_yellow();
    return m;
}

double eval_csf(const CsfModel& model, double f)
{
    if (!(f >= 0.0))
        throw InputError(ErrorCode::Domain, "CSF frequency must be >= 0");
    return std::visit(Overloaded{
                          [f](const MovshonParams& p) { return p.a * std::pow(f, p.c) * std::exp(-p.b * f); },
                          [f](const ChromaticLowpassParams& p) {
                              return p.a1 * std::exp(-p.b1 * std::pow(f, p.c1))
                                     + p.a2 * std::exp(-p.b2 * std::pow(f, p.c2));
                          },
                      },
                      model.kind);
}

CsfModel flatten_csf(CsfModel model)
{
    model.flatten = true;
    return model;
}

CsfModel nss_adapt(CsfModel model)
{
    model.nss = true;
    return model;
}

CsfEvaluator::CsfEvaluator(CsfModel model) : model_(std::move(model))
{
    model_.validate();
    if (const auto* p = std::get_if<MovshonParams>(&model_.kind)) {
        // d/df [f^(c+n) e^(-b f)] = 0  =>  f = (c + n) / b
        peak_frequency_ = (p->c + (model_.nss ? 1.0 / 3.0 : 0.0)) / p->b;
    } else if (model_.nss) {
        peak_frequency_ = argmax_scan([this](double f) { return modified(f); }, 0.0, 200.0);
    } else {
        peak_frequency_ = 0.0;
    }
    peak_value_ = modified(peak_frequency_);
    if (model_.peak_normalize && !(peak_value_ > 0.0))
        throw InputError(ErrorCode::InvalidConfig, "CSF peak value must be positive to normalize");
}

double CsfEvaluator::modified(double f) const
{
    const double base = eval_csf(model_, f);
    return model_.nss ? std::cbrt(f) * base : base;
}

double CsfEvaluator::operator()(double f) const
{
    double v = (model_.flatten && f <= peak_frequency_) ? peak_value_ : modified(f);
    if (model_.peak_normalize)
        v /= peak_value_;
    return v;
}

FrequencyGrid::FrequencyGrid(int width, int height, double ppd) : width_(width), height_(height), ppd_(ppd)
{
    if (width < 1 || height < 1)
        throw InputError(ErrorCode::DimensionMismatch, "frequency grid dimensions must be positive");
    if (!(ppd > 0.0))
        throw InputError(ErrorCode::Domain, "pixels per degree must be positive");
}

double FrequencyGrid::fx(int col) const noexcept
{
    const int k = col < (width_ + 1) / 2 ? col : col - width_;
    return static_cast<double>(k) / width_ * ppd_;
}

double FrequencyGrid::fy(int row) const noexcept
{
    const int k = row < (height_ + 1) / 2 ? row : row - height_;
    return static_cast<double>(k) / height_ * ppd_;
}

double FrequencyGrid::radial(int row, int col) const noexcept
{
    return std::hypot(fx(col), fy(row));
}

double FrequencyGrid::orientation(int row, int col) const noexcept
{
    if (row == 0 && col == 0)
        return 0.0;
    return std::atan2(fy(row), fx(col));
}

FilterRaster::FilterRaster(int width, int height, std::vector<double> gains)
    : width_(width), height_(height), gains_(std::move(gains))
{
    if (width < 1 || height < 1
        || gains_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw InputError(ErrorCode::DimensionMismatch, "filter raster size does not match its dimensions");

    double scale = 0.0;
    for (double g : gains_) {
        if (!std::isfinite(g))
            throw InputError(ErrorCode::Domain, "filter raster contains non-finite gains");
        scale = std::max(scale, std::abs(g));
    }
    const double tol = 1e-12 * std::max(scale, 1e-300);
    axis_even_ = true;
    point_symmetric_ = true;
    for (int r = 0; r < height_ && (axis_even_ || point_symmetric_); ++r) {
        const int rm = (height_ - r) % height_;
        for (int c = 0; c < width_; ++c) {
            const int cm = (width_ - c) % width_;
            const double g = (*this)(r, c);
            if (std::abs(g - (*this)(rm, cm)) > tol)
                point_symmetric_ = false;
            if (std::abs(g - (*this)(r, cm)) > tol || std::abs(g - (*this)(rm, c)) > tol)
                axis_even_ = false;
        }
    }
}

FilterRaster FilterRaster::constant(int width, int height, double gain)
{
    return FilterRaster(width, height,
                        std::vector<double>(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), gain));
}

double FilterRaster::max() const
{
    return *std::max_element(gains_.begin(), gains_.end());
}

FilterRaster FilterRaster::operator*(const FilterRaster& other) const
{
    if (width_ != other.width_ || height_ != other.height_)
        throw InputError(ErrorCode::DimensionMismatch, "cannot multiply rasters of different sizes");
    std::vector<double> g(gains_.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = gains_[i] * other.gains_[i];
    return FilterRaster(width_, height_, std::move(g));
}

double oblique_divisor(double theta) noexcept
{
    return 0.15 * std::cos(4.0 * theta) + 0.85;
}

ChannelPlane oblique_frequency(const FrequencyGrid& grid)
{
    ChannelPlane out(grid.width(), grid.height());
    for (int r = 0; r < grid.height(); ++r)
        for (int c = 0; c < grid.width(); ++c)
            out(r, c) = effective_frequency(grid, r, c, true);
    return out;
}

double edge_enhancement_gain(double f_theta) noexcept
{
    const double d = f_theta - 30.0;
    return 1.0 + std::exp(-d * d / 36.0);
}

FilterRaster edge_enhancement_raster(const FrequencyGrid& grid, bool oblique)
{
    std::vector<double> g(static_cast<std::size_t>(grid.width()) * grid.height());
    for (int r = 0; r < grid.height(); ++r)
        for (int c = 0; c < grid.width(); ++c)
            g[static_cast<std::size_t>(r) * grid.width() + c]
                = edge_enhancement_gain(effective_frequency(grid, r, c, oblique));
    return FilterRaster(grid.width(), grid.height(), std::move(g));
}

FilterRaster build_csf_raster(const CsfModel& model, const FrequencyGrid& grid, bool oblique)
{
    const CsfEvaluator csf(model);
    std::vector<double> g(static_cast<std::size_t>(grid.width()) * grid.height());
    double peak = 0.0;
    for (int r = 0; r < grid.height(); ++r)
        for (int c = 0; c < grid.width(); ++c) {
            const double v = csf(effective_frequency(grid, r, c, oblique));
            g[static_cast<std::size_t>(r) * grid.width() + c] = v;
            peak = std::max(peak, v);
        }
    if (model.peak_normalize && peak > 0.0 && peak != 1.0)
        for (double& v : g)
            v /= peak;
    return FilterRaster(grid.width(), grid.height(), std::move(g));
}

std::vector<std::pair<double, double>> sample_csf(const CsfModel& model, double f_max, int samples)
{
    if (samples < 2 || !(f_max > 0.0))
        throw InputError(ErrorCode::Domain, "sample_csf needs f_max > 0 and at least two samples");
    const CsfEvaluator csf(model);
    std::vector<std::pair<double, double>> out;
    out.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const double f = f_max * i / (samples - 1);
        out.emplace_back(f, csf(f));
    }
    return out;
}

}  // namespace edgediff
