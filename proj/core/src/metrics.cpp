// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include "edgediff/metrics.hpp"

#include <cmath>
#include <numbers>

#include "edgediff/color.hpp"
#include "edgediff/errors.hpp"

namespace edgediff {

namespace {

bool is_lab_like(OpponentSpace s)
{
    return s == OpponentSpace::IPT || s == OpponentSpace::OKLab || s == OpponentSpace::CIELAB_Lab;
}

// Wraps to (-pi, pi].
double wrap_angle(double a)
{
    constexpr double pi = std::numbers::pi;
    a = std::remainder(a, 2.0 * pi);
    if (a <= -pi)
        a += 2.0 * pi;
    return a;
}

}  // namespace

DifferenceResult difference_maps(const OpponentImage& a, const OpponentImage& b)
{
    if (a.space != b.space)
        throw InputError(ErrorCode::SpaceMismatch, std::string("cannot compare ") + to_string(a.space) + " with "
                                                       + to_string(b.space));
    if (!is_lab_like(a.space))
        throw InputError(ErrorCode::SpaceMismatch,
                         std::string("difference maps need a rectangular opponent space, got ") + to_string(a.space));
    if (!a.data.same_shape(b.data))
        throw InputError(ErrorCode::DimensionMismatch, "difference maps need images of equal size");

    const int w = a.width();
    const int h = a.height();
    DifferenceResult r{ChannelPlane(w, h), ChannelPlane(w, h), ChannelPlane(w, h), ChannelPlane(w, h)};
    auto de = r.delta_e.values();
    auto di = r.delta_i.values();
    auto dc = r.delta_c.values();
    auto dh = r.delta_h.values();
    for (std::size_t i = 0; i < a.data.pixel_count(); ++i) {
        const Eigen::Vector3d p = a.data.at(i);
        const Eigen::Vector3d q = b.data.at(i);
        const Eigen::Vector3d lp = to_cylindrical(p);
        const Eigen::Vector3d lq = to_cylindrical(q);
        de[i] = (p - q).norm();
        di[i] = p[0] - q[0];
        dc[i] = lp[1] - lq[1];
        dh[i] = 2.0 * std::sqrt(lp[1] * lq[1]) * std::sin(0.5 * wrap_angle(lp[2] - lq[2]));
    }
    return r;
}

double minkowski_pool(const ChannelPlane& map, double exponent)
{
    if (map.empty())
        throw InputError(ErrorCode::DimensionMismatch, "cannot pool an empty map");
    if (!(exponent >= 1.0))
        throw InputError(ErrorCode::Domain, "Minkowski exponent must be >= 1");
    double sum = 0.0;
    for (double v : map.values())
        sum += std::pow(std::abs(v), exponent);
    return std::pow(sum / static_cast<double>(map.size()), 1.0 / exponent);
}

void pool_differences(DifferenceResult& result, double exponent)
{
    result.pooling_exponent = exponent;
    result.agg_e = minkowski_pool(result.delta_e, exponent);
    result.agg_i = minkowski_pool(result.delta_i, exponent);
    result.agg_c = minkowski_pool(result.delta_c, exponent);
    result.agg_h = minkowski_pool(result.delta_h, exponent);
}

}  // namespace edgediff
