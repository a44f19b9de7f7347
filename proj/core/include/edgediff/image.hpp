// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace edgediff {

/// Single-channel raster of doubles, row-major, addressed as (row, col).
class ChannelPlane {
public:
    ChannelPlane() = default;
    ChannelPlane(int width, int height, double fill = 0.0);
    ChannelPlane(int width, int height, std::vector<double> values);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    double& operator()(int row, int col) noexcept
    {
        return values_[static_cast<std::size_t>(row) * width_ + col];
    }
    double operator()(int row, int col) const noexcept
    {
        return values_[static_cast<std::size_t>(row) * width_ + col];
    }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    bool same_shape(const ChannelPlane& other) const noexcept
    {
        return width_ == other.width_ && height_ == other.height_;
    }

    double min() const;
    double max() const;
    double mean() const;
    bool all_finite() const;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> values_;
};

/// Planar three-channel raster. Pixels are triples addressable by (row, col);
/// each channel is stored as its own ChannelPlane so filters can run per
/// channel without strided access.
class Image3 {
public:
    Image3() = default;
    Image3(int width, int height);
    explicit Image3(std::array<ChannelPlane, 3> channels);

    int width() const noexcept { return channels_[0].width(); }
    int height() const noexcept { return channels_[0].height(); }
    std::size_t pixel_count() const noexcept { return channels_[0].size(); }

    ChannelPlane& channel(int c) noexcept { return channels_[c]; }
    const ChannelPlane& channel(int c) const noexcept { return channels_[c]; }

    Eigen::Vector3d pixel(int row, int col) const noexcept
    {
        return {channels_[0](row, col), channels_[1](row, col), channels_[2](row, col)};
    }
    void set_pixel(int row, int col, const Eigen::Vector3d& v) noexcept
    {
        channels_[0](row, col) = v[0];
        channels_[1](row, col) = v[1];
        channels_[2](row, col) = v[2];
    }

    // Flat-index access, i = row * width + col.
    Eigen::Vector3d at(std::size_t i) const noexcept
    {
        return {channels_[0].values()[i], channels_[1].values()[i], channels_[2].values()[i]};
    }
    void set(std::size_t i, const Eigen::Vector3d& v) noexcept
    {
        channels_[0].values()[i] = v[0];
        channels_[1].values()[i] = v[1];
        channels_[2].values()[i] = v[2];
    }

    bool same_shape(const Image3& other) const noexcept
    {
        return channels_[0].same_shape(other.channels_[0]);
    }
    bool all_finite() const;

private:
    std::array<ChannelPlane, 3> channels_;
};

/// Tristimulus values of a reference white.
struct WhitePoint {
    double X = 0.0;
    double Y = 0.0;
    double Z = 0.0;

    Eigen::Vector3d xyz() const noexcept { return {X, Y, Z}; }
    static WhitePoint from(const Eigen::Vector3d& v) noexcept { return {v[0], v[1], v[2]}; }

    /// Same chromaticity, luminance rescaled to `y`.
    WhitePoint scaled_to(double y) const noexcept;

    /// Throws InputError(InvalidWhite) unless every component is > 0.
    void validate() const;
};

/// CIE XYZ raster. Stored Y times `luminance_scale` is luminance in cd/m^2.
struct TristimulusImage {
    Image3 xyz;
    double luminance_scale = 1.0;

    int width() const noexcept { return xyz.width(); }
    int height() const noexcept { return xyz.height(); }

    /// XYZ in absolute units (cd/m^2 on the Y axis).
    Image3 absolute() const;

    /// Non-empty, finite, and Y >= 0 everywhere.
    void validate() const;
};

enum class OpponentSpace { ACC, IPT, OKLab, CIELAB_Lab, CIELAB_LCh };

const char* to_string(OpponentSpace space);

/// Raster in an opponent space: channel 0 is achromatic, channels 1 and 2 are
/// the two color-opponent axes (or C and h for CIELAB_LCh).
struct OpponentImage {
    Image3 data;
    OpponentSpace space = OpponentSpace::CIELAB_Lab;

    int width() const noexcept { return data.width(); }
    int height() const noexcept { return data.height(); }
};

}  // namespace edgediff
