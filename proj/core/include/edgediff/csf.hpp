// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "edgediff/image.hpp"

namespace edgediff {

/// Bandpass achromatic CSF a * f^c * exp(-b f).
struct MovshonParams {
    double a = 75.0;
    double b = 0.2;
    double c = 0.8;
};

/// Lowpass chromatic CSF a1 exp(-b1 f^c1) + a2 exp(-b2 f^c2).
struct ChromaticLowpassParams {
    double a1 = 0.0, b1 = 0.0, c1 = 1.0;
    double a2 = 0.0, b2 = 0.0, c2 = 1.0;

    // Johnson and Fairchild (iCAM / iDiff) chromatic CSF fits, with the
    // published exp(b f^c) exponents rewritten as exp(-b f^c).
    static ChromaticLowpassParams red_green()
    {
        return {109.14130, 0.00038, 3.42436, 93.59711, 0.00367, 2.16771};
    }
    static ChromaticLowpassParams blue_yellow()
    {
        return {7.032845, 0.000004, 4.258205, 40.690950, 0.103909, 1.648658};
    }
};

struct CsfModel {
    std::variant<MovshonParams, ChromaticLowpassParams> kind = MovshonParams{};
    bool flatten = false;         ///< hold the peak value for f below the peak frequency
    bool nss = false;             ///< multiply by f^(1/3) before flattening
    bool peak_normalize = true;   ///< divide by the peak so the maximum is 1

    void validate() const;

    static CsfModel achromatic();   ///< flattened Movshon(75, 0.2, 0.8)
    static CsfModel red_green();
    static CsfModel blue_yellow();
};

/// Raw parametric value, no modifiers. Throws InputError(Domain) for f < 0.
double eval_csf(const CsfModel& model, double f);

CsfModel flatten_csf(CsfModel model);
CsfModel nss_adapt(CsfModel model);

/// Evaluates a CsfModel with its modifiers in a fixed order:
/// f^(1/3) product, then flattening, then peak normalization.
class CsfEvaluator {
public:
    explicit CsfEvaluator(CsfModel model);

    double operator()(double f) const;

    /// Frequency (cycles/degree) where the NSS-modified curve peaks.
    double peak_frequency() const noexcept { return peak_frequency_; }
    /// Unnormalized curve value at the peak.
    double peak_value() const noexcept { return peak_value_; }
    const CsfModel& model() const noexcept { return model_; }

private:
    double modified(double f) const;

    CsfModel model_;
    double peak_frequency_ = 0.0;
    double peak_value_ = 1.0;
};

/// Transform-domain sampling grid, in FFT bin order, for a raster of
/// width x height samples at `ppd` pixels per degree.
class FrequencyGrid {
public:
    FrequencyGrid(int width, int height, double ppd);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    double ppd() const noexcept { return ppd_; }

    double fx(int col) const noexcept;  ///< cycles/degree, signed
    double fy(int row) const noexcept;
    double radial(int row, int col) const noexcept;
    /// atan2(fy, fx); defined as 0 at the DC bin.
    double orientation(int row, int col) const noexcept;

private:
    int width_;
    int height_;
    double ppd_;
};

/// Per-bin real gains in FFT bin order.
class FilterRaster {
public:
    FilterRaster() = default;
    FilterRaster(int width, int height, std::vector<double> gains);
    static FilterRaster constant(int width, int height, double gain);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    double operator()(int row, int col) const noexcept
    {
        return gains_[static_cast<std::size_t>(row) * width_ + col];
    }
    const std::vector<double>& gains() const noexcept { return gains_; }

    double max() const;
    double dc() const noexcept { return gains_.front(); }

    /// gain(u) == gain(-u) along each axis independently.
    bool axis_even() const noexcept { return axis_even_; }
    /// gain(u, v) == gain(-u, -v); required for a real-valued filter output.
    bool point_symmetric() const noexcept { return point_symmetric_; }

    FilterRaster operator*(const FilterRaster& other) const;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> gains_;
    bool axis_even_ = false;
    bool point_symmetric_ = false;
};

/// Divisor for the oblique effect: 0.15 cos(4 theta) + 0.85, in [0.7, 1].
double oblique_divisor(double theta) noexcept;

/// Per-bin effective frequency f_theta = f_r / oblique_divisor(theta).
ChannelPlane oblique_frequency(const FrequencyGrid& grid);

/// 1 + exp(-(f - 30)^2 / 36); peaks at 2 for f = 30 cycles/degree.
double edge_enhancement_gain(double f_theta) noexcept;
FilterRaster edge_enhancement_raster(const FrequencyGrid& grid, bool oblique = true);

/// Per-bin CSF gains at f_theta (or f_r when `oblique` is off). When the
/// model asks for peak normalization the raster is divided by its maximum.
FilterRaster build_csf_raster(const CsfModel& model, const FrequencyGrid& grid, bool oblique);

/// Evenly spaced (f, gain) samples on [0, f_max] for plotting.
std::vector<std::pair<double, double>> sample_csf(const CsfModel& model, double f_max, int samples);

}  // namespace edgediff
