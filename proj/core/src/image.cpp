// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include "edgediff/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "edgediff/errors.hpp"

namespace edgediff {

const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidWhite: return "invalid-white";
    case ErrorCode::DegenerateWhite: return "degenerate-white";
    case ErrorCode::SpaceMismatch: return "space-mismatch";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::InvalidConfig: return "invalid-config";
    case ErrorCode::Io: return "io";
    case ErrorCode::Format: return "format";
    }
    return "unknown";
}

ChannelPlane::ChannelPlane(int width, int height, double fill)
    : ChannelPlane(width, height,
                   std::vector<double>(static_cast<std::size_t>(std::max(width, 0))
                                           * static_cast<std::size_t>(std::max(height, 0)),
                                       fill))
{
}

ChannelPlane::ChannelPlane(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values))
{
    if (width < 1 || height < 1)
        throw InputError(ErrorCode::DimensionMismatch,
                         "plane dimensions must be positive, got " + std::to_string(width)
                             + "x" + std::to_string(height));
    if (values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw InputError(ErrorCode::DimensionMismatch, "plane value count does not match dimensions");
}

double ChannelPlane::min() const
{
    return *std::min_element(values_.begin(), values_.end());
}

double ChannelPlane::max() const
{
    return *std::max_element(values_.begin(), values_.end());
}

double ChannelPlane::mean() const
{
    return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

bool ChannelPlane::all_finite() const
{
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Image3::Image3(int width, int height)
    : channels_{ChannelPlane(width, height), ChannelPlane(width, height), ChannelPlane(width, height)}
{
}

Image3::Image3(std::array<ChannelPlane, 3> channels) : channels_(std::move(channels))
{
    if (!channels_[0].same_shape(channels_[1]) || !channels_[0].same_shape(channels_[2]))
        throw InputError(ErrorCode::DimensionMismatch, "Image3 channels differ in shape");
}

bool Image3::all_finite() const
{
    return channels_[0].all_finite() && channels_[1].all_finite() && channels_[2].all_finite();
}

WhitePoint WhitePoint::scaled_to(double y) const noexcept
{
    const double s = y / Y;
    return {X * s, y, Z * s};
}

void WhitePoint::validate() const
{
    if (!(X > 0.0 && Y > 0.0 && Z > 0.0) || !std::isfinite(X) || !std::isfinite(Y) || !std::isfinite(Z))
        throw InputError(ErrorCode::InvalidWhite,
                         "white point components must be positive and finite (" + std::to_string(X)
                             + ", " + std::to_string(Y) + ", " + std::to_string(Z) + ")");
}

Image3 TristimulusImage::absolute() const
{
    Image3 out = xyz;
    if (luminance_scale != 1.0) {
        for (int c = 0; c < 3; ++c)
            for (double& v : out.channel(c).values())
                v *= luminance_scale;
    }
    return out;
}

void TristimulusImage::validate() const
{
    if (xyz.pixel_count() == 0)
        throw InputError(ErrorCode::DimensionMismatch, "tristimulus image is empty");
    if (!(luminance_scale > 0.0) || !std::isfinite(luminance_scale))
        throw InputError(ErrorCode::Domain, "luminance scale must be positive and finite");
    if (!xyz.all_finite())
        throw InputError(ErrorCode::Domain, "tristimulus image contains non-finite values");
    for (double y : xyz.channel(1).values())
        if (y < 0.0)
            throw InputError(ErrorCode::Domain, "tristimulus image has negative luminance");
}

const char* to_string(OpponentSpace space)
{
    switch (space) {
    case OpponentSpace::ACC: return "ACC";
    case OpponentSpace::IPT: return "IPT";
    case OpponentSpace::OKLab: return "OKLab";
    case OpponentSpace::CIELAB_Lab: return "CIELAB_Lab";
    case OpponentSpace::CIELAB_LCh: return "CIELAB_LCh";
    }
    return "unknown";
}

}  // namespace edgediff
