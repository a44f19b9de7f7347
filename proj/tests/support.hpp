// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "edgediff/image.hpp"

namespace edgediff::testing {

inline ChannelPlane random_plane(int w, int h, std::uint32_t seed, double lo = 0.0, double hi = 1.0)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    ChannelPlane p(w, h);
    for (double& v : p.values())
        v = u(rng);
    return p;
}

inline Image3 random_image(int w, int h, std::uint32_t seed, double lo = 0.0, double hi = 1.0)
{
    return Image3({random_plane(w, h, seed, lo, hi), random_plane(w, h, seed + 101, lo, hi),
                   random_plane(w, h, seed + 202, lo, hi)});
}

inline TristimulusImage uniform_xyz(int w, int h, double x, double y, double z)
{
    return {Image3({ChannelPlane(w, h, x), ChannelPlane(w, h, y), ChannelPlane(w, h, z)}), 1.0};
}

inline double max_abs_diff(const ChannelPlane& a, const ChannelPlane& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

inline double max_abs_diff(const Image3& a, const Image3& b)
{
    return std::max({max_abs_diff(a.channel(0), b.channel(0)), max_abs_diff(a.channel(1), b.channel(1)),
                     max_abs_diff(a.channel(2), b.channel(2))});
}

inline double max_abs(const ChannelPlane& a)
{
    return std::max(std::abs(a.min()), std::abs(a.max()));
}

}  // namespace edgediff::testing
