// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include "edgediff/scenes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "edgediff/color.hpp"
#include "edgediff/errors.hpp"

namespace edgediff {

namespace {

// splitmix64; std distributions are not specified bit-exactly across
// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() noexcept
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

using Rgb = Eigen::Vector3d;

struct Canvas {
    int width;
    int height;
    std::vector<Rgb> px;

    Canvas(int w, int h, const Rgb& fill) : width(w), height(h), px(static_cast<std::size_t>(w) * h, fill) {}

    Rgb& at(int r, int c) { return px[static_cast<std::size_t>(r) * width + c]; }

    void rect(double x0, double y0, double x1, double y1, const Rgb& v)
    {
        const int c0 = std::clamp(static_cast<int>(x0 * width), 0, width);
        const int c1 = std::clamp(static_cast<int>(x1 * width), 0, width);
        const int r0 = std::clamp(static_cast<int>(y0 * height), 0, height);
        const int r1 = std::clamp(static_cast<int>(y1 * height), 0, height);
        for (int r = r0; r < r1; ++r)
            for (int c = c0; c < c1; ++c)
                at(r, c) = v;
    }

    // Multiplies the region by a per-channel factor.
    void tint(double x0, double y0, double x1, double y1, const Rgb& f)
    {
        const int c0 = std::clamp(static_cast<int>(x0 * width), 0, width);
        const int c1 = std::clamp(static_cast<int>(x1 * width), 0, width);
        const int r0 = std::clamp(static_cast<int>(y0 * height), 0, height);
        const int r1 = std::clamp(static_cast<int>(y1 * height), 0, height);
        for (int r = r0; r < r1; ++r)
            for (int c = c0; c < c1; ++c)
                at(r, c) = at(r, c).cwiseProduct(f);
    }

    // Adds an isotropic Gaussian glow; coordinates and radius are fractions
    // of the width.
    void glow(double cx, double cy, double radius, const Rgb& peak)
    {
        const double s = radius * width;
        for (int r = 0; r < height; ++r)
            for (int c = 0; c < width; ++c) {
                const double dx = c + 0.5 - cx * width;
                const double dy = r + 0.5 - cy * height;
                at(r, c) += peak * std::exp(-(dx * dx + dy * dy) / (2.0 * s * s));
            }
    }

    void grain(Rng& rng, double amount)
    {
        for (auto& p : px)
            p *= 1.0 + amount * (rng.uniform() - 0.5);
    }

    TristimulusImage to_xyz() const
    {
        const Eigen::Matrix3d& m = ColorTables::builtin()->matrix("linear_srgb_to_xyz").entries();
        TristimulusImage img{Image3(width, height), 1.0};
        for (std::size_t i = 0; i < px.size(); ++i)
            img.xyz.set(i, m * px[i].cwiseMax(0.0));
        return img;
    }
};

TristimulusImage night_street(int w, int h, Rng& rng)
{
    Canvas cv(w, h, Rgb(0.02, 0.025, 0.05));
    for (int r = 0; r < h; ++r) {
        const double t = static_cast<double>(r) / h;
        for (int c = 0; c < w; ++c)
            cv.at(r, c) = Rgb(0.03, 0.04, 0.12) * (1.0 - 0.6 * t) + Rgb(0.1, 0.06, 0.03) * t;
    }
    const int buildings = 5;
    double x = 0.0;
    for (int b = 0; b < buildings && x < 1.0; ++b) {
        const double bw = rng.uniform(0.14, 0.26);
        const double top = rng.uniform(0.15, 0.45);
        const Rgb facade = Rgb(rng.uniform(0.4, 0.8), rng.uniform(0.35, 0.7), rng.uniform(0.3, 0.6));
        cv.rect(x, top, x + bw, 0.85, facade);
        for (double wy = top + 0.04; wy < 0.8; wy += 0.07)
            for (double wx = x + 0.02; wx < x + bw - 0.03; wx += 0.05)
                if (rng.uniform() < 0.55) {
                    const bool cool = rng.uniform() < 0.3;
                    const double lum = rng.uniform(20.0, 150.0);
                    cv.rect(wx, wy, wx + 0.025, wy + 0.035,
                            cool ? Rgb(0.7, 0.85, 1.0) * lum : Rgb(1.0, 0.72, 0.38) * lum);
                }
        x += bw + rng.uniform(0.0, 0.05);
    }
    cv.rect(0.0, 0.85, 1.0, 1.0, Rgb(0.25, 0.24, 0.22));
    for (int lamp = 0; lamp < 3; ++lamp) {
        const double lx = 0.15 + 0.35 * lamp + rng.uniform(-0.05, 0.05);
        const bool sodium = lamp != 1;
        const Rgb color = sodium ? Rgb(1.0, 0.55, 0.12) : Rgb(0.85, 0.9, 1.0);
        cv.rect(lx - 0.004, 0.55, lx + 0.004, 0.88, Rgb(0.05, 0.05, 0.05));
        cv.glow(lx, 0.86, 0.08, color * 40.0);
        cv.glow(lx, 0.55, 0.015, color * 4000.0);
    }
    cv.grain(rng, 0.1);
    return cv.to_xyz();
}

TristimulusImage sunlit_interior(int w, int h, Rng& rng)
{
    Canvas cv(w, h, Rgb(30.0, 26.0, 20.0));
    cv.rect(0.0, 0.7, 1.0, 1.0, Rgb(22.0, 14.0, 8.0));
    const double wx = rng.uniform(0.5, 0.62);
    cv.rect(wx, 0.12, wx + 0.3, 0.55, Rgb(4500.0, 6000.0, 9000.0));
    cv.rect(wx, 0.38, wx + 0.3, 0.55, Rgb(900.0, 1400.0, 500.0));
    cv.rect(wx + 0.145, 0.12, wx + 0.155, 0.55, Rgb(8.0, 7.0, 6.0));
    cv.rect(wx - 0.1, 0.74, wx + 0.25, 0.92, Rgb(2400.0, 2000.0, 1500.0));
    const std::array<Rgb, 4> furniture{Rgb(0.6, 0.12, 0.08), Rgb(0.1, 0.3, 0.55), Rgb(0.15, 0.45, 0.12),
                                       Rgb(0.7, 0.6, 0.2)};
    for (std::size_t k = 0; k < furniture.size(); ++k) {
        const double fx = 0.04 + 0.11 * static_cast<double>(k) + rng.uniform(0.0, 0.02);
        const double fy = rng.uniform(0.45, 0.6);
        cv.rect(fx, fy, fx + 0.09, 0.82, furniture[k] * 45.0);
    }
    cv.glow(0.2, 0.2, 0.05, Rgb(900.0, 700.0, 400.0));
    cv.grain(rng, 0.06);
    return cv.to_xyz();
}

TristimulusImage spotlit_patches(int w, int h, Rng& rng)
{
    // Linear sRGB reflectances of a classic 24-patch chart.
    static const std::array<Rgb, 24> chart{
        Rgb(0.173, 0.089, 0.061), Rgb(0.546, 0.303, 0.224), Rgb(0.120, 0.198, 0.338), Rgb(0.101, 0.151, 0.061),
        Rgb(0.241, 0.222, 0.441), Rgb(0.130, 0.514, 0.412), Rgb(0.681, 0.196, 0.025), Rgb(0.074, 0.107, 0.393),
        Rgb(0.541, 0.091, 0.117), Rgb(0.108, 0.043, 0.139), Rgb(0.351, 0.498, 0.047), Rgb(0.764, 0.356, 0.020),
        Rgb(0.032, 0.052, 0.289), Rgb(0.061, 0.293, 0.071), Rgb(0.434, 0.031, 0.041), Rgb(0.833, 0.576, 0.010),
        Rgb(0.502, 0.086, 0.292), Rgb(0.000, 0.235, 0.384), Rgb(0.879, 0.881, 0.855), Rgb(0.586, 0.591, 0.589),
        Rgb(0.362, 0.366, 0.367), Rgb(0.191, 0.190, 0.191), Rgb(0.088, 0.089, 0.090), Rgb(0.031, 0.031, 0.032)};
    Canvas cv(w, h, Rgb(0.05, 0.05, 0.05));
    const int cols = 6;
    const int rows = 4;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const double x0 = 0.05 + 0.15 * c;
            const double y0 = 0.08 + 0.22 * r;
            cv.rect(x0 + 0.01, y0 + 0.01, x0 + 0.14, y0 + 0.2, chart[static_cast<std::size_t>(r * cols + c)]);
        }
    // Illumination field: ambient plus two colored spots.
    Canvas light(w, h, Rgb(3.0, 3.0, 3.0));
    light.glow(rng.uniform(0.2, 0.35), rng.uniform(0.25, 0.45), 0.18, Rgb(3000.0, 2600.0, 1800.0));
    light.glow(rng.uniform(0.65, 0.8), rng.uniform(0.55, 0.75), 0.12, Rgb(600.0, 800.0, 1400.0));
    for (std::size_t i = 0; i < cv.px.size(); ++i)
        cv.px[i] = cv.px[i].cwiseProduct(light.px[i]);
    cv.grain(rng, 0.04);
    return cv.to_xyz();
}

}  // namespace

const char* to_string(SceneKind kind)
{
    switch (kind) {
    case SceneKind::NightStreet: return "night_street";
    case SceneKind::SunlitInterior: return "sunlit_interior";
    case SceneKind::SpotlitPatches: return "spotlit_patches";
    }
    return "unknown";
}

SceneKind scene_kind_from_string(std::string_view name)
{
    for (SceneKind k : {SceneKind::NightStreet, SceneKind::SunlitInterior, SceneKind::SpotlitPatches})
        if (name == to_string(k))
            return k;
    throw InputError(ErrorCode::InvalidConfig, "unknown scene kind '" + std::string(name) + "'");
}

TristimulusImage synthetic_scene(SceneKind kind, int width, int height, std::uint64_t seed)
{
    if (width < 8 || height < 8)
        throw InputError(ErrorCode::DimensionMismatch, "synthetic scenes need at least 8x8 pixels");
    Rng rng(seed * 0x2545f4914f6cdd1dULL + static_cast<std::uint64_t>(kind));
    switch (kind) {
    case SceneKind::NightStreet: return night_street(width, height, rng);
    case SceneKind::SunlitInterior: return sunlit_interior(width, height, rng);
    case SceneKind::SpotlitPatches: return spotlit_patches(width, height, rng);
    }
    throw InputError(ErrorCode::InvalidConfig, "unknown scene kind");
}

std::vector<NamedScene> synthetic_scenes(int count, int width, int height)
{
    constexpr std::array kinds{SceneKind::NightStreet, SceneKind::SunlitInterior, SceneKind::SpotlitPatches};
    std::vector<NamedScene> out;
    for (int i = 0; i < count; ++i) {
        const SceneKind kind = kinds[static_cast<std::size_t>(i) % kinds.size()];
        const std::uint64_t seed = static_cast<std::uint64_t>(i / static_cast<int>(kinds.size())) + 1;
        std::string name = to_string(kind);
        if (seed > 1)
            name += "_" + std::to_string(seed);
        out.push_back({std::move(name), synthetic_scene(kind, width, height, seed)});
    }
    return out;
}

}  // namespace edgediff
