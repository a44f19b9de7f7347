// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "edgediff/errors.hpp"
#include "edgediff/filtering.hpp"
#include "support.hpp"

namespace edgediff {
namespace {

// x[r][c] = ((7r + 3c) mod 5) / 4 + r / 10, 6 rows by 8 columns.
ChannelPlane oracle_plane()
{
    ChannelPlane p(8, 6);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 8; ++c)
            p(r, c) = ((r * 7 + c * 3) % 5) * 0.25 + 0.1 * r;
    return p;
}

TEST(Gaussian, MatchesScipyReflect)
{
    // scipy.ndimage.gaussian_filter(x, sigma, mode='reflect', truncate=3.0)
    const ChannelPlane x = oracle_plane();
    const ChannelPlane s2 = gaussian_blur(x, 2.0);
    EXPECT_NEAR(s2(0, 0), 0.5630668283497693, 1e-12);
    EXPECT_NEAR(s2(2, 5), 0.7064264421153541, 1e-12);
    EXPECT_NEAR(s2(5, 7), 0.8913686213094012, 1e-12);
    EXPECT_NEAR(s2(3, 1), 0.7844491467405219, 1e-12);
    const ChannelPlane s1 = gaussian_blur(x, 1.0);
    EXPECT_NEAR(s1(0, 0), 0.35382970181480816, 1e-12);
    EXPECT_NEAR(s1(4, 4), 0.8337449844392061, 1e-12);
}

TEST(Gaussian, KernelIsNormalized)
{
    for (double sigma : {0.3, 1.0, 2.5, 7.0}) {
        const auto k = gaussian_kernel(sigma);
        EXPECT_EQ(static_cast<int>(k.size()), 2 * gaussian_radius(sigma) + 1);
        EXPECT_NEAR(std::accumulate(k.begin(), k.end(), 0.0), 1.0, 1e-15);
    }
    EXPECT_THROW(gaussian_kernel(0.0), InputError);
    EXPECT_THROW(gaussian_kernel(-1.0), InputError);
}

class GaussianSizes : public ::testing::TestWithParam<std::tuple<int, int, double>> {};

TEST_P(GaussianSizes, TransformPathMatchesSpatial)
{
    const auto [w, h, sigma] = GetParam();
    const ChannelPlane x = testing::random_plane(w, h, 17);
    const ChannelPlane spatial = gaussian_blur_spatial(x, sigma);
    const ChannelPlane viaRaster = frequency_filter(x, gaussian_raster(2 * w, 2 * h, sigma));
    const ChannelPlane viaFft = frequency_filter_fft(x, gaussian_raster(2 * w, 2 * h, sigma));
    EXPECT_LT(testing::max_abs_diff(spatial, viaRaster), 1e-12);
    EXPECT_LT(testing::max_abs_diff(spatial, viaFft), 1e-12);
    EXPECT_LT(testing::max_abs_diff(spatial, gaussian_blur(x, sigma)), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Sizes, GaussianSizes,
                         ::testing::Values(std::tuple{16, 16, 1.0}, std::tuple{13, 9, 2.0}, std::tuple{40, 24, 6.0},
                                           std::tuple{64, 64, 12.0}, std::tuple{7, 30, 3.0}));

TEST(FrequencyFilter, IdentityRaster)
{
    const ChannelPlane x = testing::random_plane(21, 14, 2);
    EXPECT_LT(testing::max_abs_diff(frequency_filter(x, FilterRaster::constant(42, 28, 1.0)), x), 1e-13);
    EXPECT_LT(testing::max_abs_diff(frequency_filter_fft(x, FilterRaster::constant(42, 28, 1.0)), x), 1e-13);
}

TEST(FrequencyFilter, DcGainOnFlatField)
{
    const ChannelPlane x(10, 6, 0.4);
    const FilterRaster r = build_csf_raster(CsfModel::red_green(), padded_grid(10, 6, 60.0), true);
    const ChannelPlane y = frequency_filter(x, r);
    for (double v : y.values())
        EXPECT_NEAR(v, 0.4 * r.dc(), 1e-14);
}

TEST(FrequencyFilter, DctPathMatchesPaddedFft)
{
    const ChannelPlane x = testing::random_plane(24, 17, 8);
    const FrequencyGrid grid = padded_grid(24, 17, 60.0);
    const FilterRaster r = build_csf_raster(CsfModel::achromatic(), grid, true) * edge_enhancement_raster(grid);
    EXPECT_LT(testing::max_abs_diff(frequency_filter(x, r), frequency_filter_fft(x, r)), 1e-12);
}

TEST(FrequencyFilter, PointSymmetricRasterTakesFftPath)
{
    // gain depends on fx * fy: point-symmetric but not even per axis.
    const int w = 6, h = 5;
    const FrequencyGrid grid(2 * w, 2 * h, 60.0);
    std::vector<double> g;
    for (int r = 0; r < 2 * h; ++r)
        for (int c = 0; c < 2 * w; ++c)
            g.push_back(1.0 + 1e-4 * grid.fx(c) * grid.fy(r) / (1.0 + std::abs(grid.fx(c) * grid.fy(r)) * 1e-4));
    // The Nyquist row and column would break point symmetry; zero the product there.
    for (int r = 0; r < 2 * h; ++r)
        for (int c = 0; c < 2 * w; ++c)
            if (r == h || c == w)
                g[r * 2 * w + c] = 1.0;
    const FilterRaster raster(2 * w, 2 * h, g);
    ASSERT_TRUE(raster.point_symmetric());
    ASSERT_FALSE(raster.axis_even());
    const ChannelPlane x = testing::random_plane(w, h, 9);
    EXPECT_LT(testing::max_abs_diff(frequency_filter(x, raster), frequency_filter_fft(x, raster)), 1e-15);
}

TEST(FrequencyFilter, Errors)
{
    const ChannelPlane x(4, 4, 1.0);
    EXPECT_THROW(frequency_filter(x, FilterRaster::constant(4, 4, 1.0)), InputError);
    EXPECT_THROW(frequency_filter_fft(x, FilterRaster(8, 1, {0, 1, 2, 3, 4, 5, 6, 7})), InputError);
}

TEST(MirrorPad, Layout)
{
    const ChannelPlane x(3, 2, std::vector<double>{1, 2, 3, 4, 5, 6});
    const ChannelPlane p = mirror_pad(x);
    ASSERT_EQ(p.width(), 6);
    ASSERT_EQ(p.height(), 4);
    const double row0[] = {1, 2, 3, 3, 2, 1};
    const double row3[] = {1, 2, 3, 3, 2, 1};
    for (int c = 0; c < 6; ++c) {
        EXPECT_EQ(p(0, c), row0[c]);
        EXPECT_EQ(p(3, c), row3[c]);
    }
    EXPECT_EQ(p(1, 4), 5);
    EXPECT_EQ(p(2, 0), 4);
}

TEST(Bilateral, DirectMatchesBruteForceOracle)
{
    // Independent double loop in numpy over the reflect-padded plane,
    // sigma_s = 1.5 (radius 5), sigma_r = 0.3, guide = plane.
    const ChannelPlane x = oracle_plane();
    BilateralParams p;
    p.sigma_s = 1.5;
    p.sigma_r = 0.3;
    const ChannelPlane y = bilateral_direct(x, x, p);
    EXPECT_NEAR(y(0, 0), 0.11871595184036286, 1e-12);
    EXPECT_NEAR(y(2, 5), 1.055478622896214, 1e-12);
    EXPECT_NEAR(y(5, 7), 0.7829947227532423, 1e-12);
}

TEST(Bilateral, HugeRangeSigmaIsGaussian)
{
    const ChannelPlane x = testing::random_plane(32, 24, 10);
    BilateralParams p;
    p.sigma_s = 2.0;
    p.sigma_r = 1e6;
    const ChannelPlane g = gaussian_blur(x, 2.0);
    EXPECT_LT(testing::max_abs_diff(bilateral_direct(x, x, p), g), 1e-9);
    EXPECT_LT(testing::max_abs_diff(bilateral_fast(x, x, p), g), 1e-9);
}

TEST(Bilateral, FlatGuideIsGaussian)
{
    const ChannelPlane x = testing::random_plane(20, 20, 11);
    const ChannelPlane guide(20, 20, 3.0);
    BilateralParams p;
    p.sigma_s = 1.5;
    p.sigma_r = 0.05;
    EXPECT_LT(testing::max_abs_diff(bilateral_fast(x, guide, p), gaussian_blur(x, 1.5)), 1e-12);
}

TEST(Bilateral, FastApproximatesDirect)
{
    const ChannelPlane x = testing::random_plane(48, 48, 12);
    BilateralParams p;
    p.sigma_s = 2.0;
    p.sigma_r = 0.1;
    p.bins = 64;
    EXPECT_LT(testing::max_abs_diff(bilateral_fast(x, x, p), bilateral_direct(x, x, p)), 0.02);
}

TEST(Bilateral, PreservesStepEdge)
{
    ChannelPlane x(40, 20, 0.0);
    for (int r = 0; r < 20; ++r)
        for (int c = 20; c < 40; ++c)
            x(r, c) = 1.0;
    BilateralParams p;
    p.sigma_s = 3.0;
    p.sigma_r = 0.1;
    const ChannelPlane y = bilateral_fast(x, x, p);
    EXPECT_LT(y(10, 19), 0.01);
    EXPECT_GT(y(10, 20), 0.99);
    const ChannelPlane g = gaussian_blur(x, 3.0);
    EXPECT_GT(g(10, 19), 0.3);
}

TEST(Bilateral, WorkerCountDoesNotChangeResultBeyondRounding)
{
    const ChannelPlane x = testing::random_plane(33, 27, 13);
    BilateralParams p;
    p.sigma_s = 2.0;
    p.sigma_r = 0.15;
    const ChannelPlane one = bilateral_fast(x, x, p);
    for (int workers : {2, 3, 8}) {
        p.workers = workers;
        const ChannelPlane many = bilateral_fast(x, x, p);
        EXPECT_LT(testing::max_abs_diff(one, many), 1e-12) << workers;
        EXPECT_EQ(bilateral_fast(x, x, p).values()[100], many.values()[100]);
    }
}

TEST(Bilateral, OutputWithinInputRange)
{
    for (std::uint32_t seed = 0; seed < 10; ++seed) {
        const ChannelPlane x = testing::random_plane(24, 16, 100 + seed, -2.0, 5.0);
        BilateralParams p;
        p.sigma_s = 0.5 + seed * 0.3;
        p.sigma_r = 0.2 + seed * 0.5;
        p.bins = 4 + static_cast<int>(seed) * 6;
        const ChannelPlane y = bilateral_fast(x, x, p);
        EXPECT_GE(y.min(), x.min() - 1e-9);
        EXPECT_LE(y.max(), x.max() + 1e-9);
    }
}

TEST(Bilateral, MultiPlaneMatchesSingle)
{
    const ChannelPlane guide = testing::random_plane(16, 12, 14);
    const std::vector<ChannelPlane> planes{testing::random_plane(16, 12, 15), testing::random_plane(16, 12, 16)};
    BilateralParams p;
    p.sigma_s = 1.2;
    p.sigma_r = 0.2;
    const auto both = bilateral_fast(planes, guide, p);
    EXPECT_LT(testing::max_abs_diff(both[1], bilateral_fast(planes[1], guide, p)), 1e-15);
}

TEST(Bilateral, ParameterValidation)
{
    const ChannelPlane x(4, 4, 1.0);
    BilateralParams p;
    p.bins = 1;
    EXPECT_THROW(bilateral_fast(x, x, p), InputError);
    p = {};
    p.sigma_r = 0.0;
    EXPECT_THROW(bilateral_direct(x, x, p), InputError);
    p = {};
    p.epsilon = 0.0;
    EXPECT_THROW(bilateral_fast(x, x, p), InputError);
    EXPECT_THROW(bilateral_fast(x, ChannelPlane(3, 4), BilateralParams{}), InputError);
}

TEST(EdgeAwareCsf, FlatGuideEqualsLinearFilter)
{
    const int w = 20, h = 14;
    const FrequencyGrid grid = padded_grid(w, h, 60.0);
    const std::array<FilterRaster, 3> rasters{build_csf_raster(CsfModel::achromatic(), grid, true),
                                              build_csf_raster(CsfModel::red_green(), grid, true),
                                              build_csf_raster(CsfModel::blue_yellow(), grid, true)};
    const OpponentImage img{testing::random_image(w, h, 20), OpponentSpace::ACC};
    const OpponentImage out = edge_aware_csf_filter(img, ChannelPlane(w, h, 0.5), rasters, BilateralParams{});
    EXPECT_EQ(out.space, OpponentSpace::ACC);
    for (int c = 0; c < 3; ++c)
        EXPECT_LT(testing::max_abs_diff(out.data.channel(c), frequency_filter(img.data.channel(c), rasters[c])),
                  1e-12);
}

TEST(EdgeAwareCsf, LargeRangeSigmaConvergesToLinearFilter)
{
    const int w = 24, h = 24;
    const FrequencyGrid grid = padded_grid(w, h, 60.0);
    const FilterRaster r = build_csf_raster(CsfModel::achromatic(), grid, true);
    const std::array<FilterRaster, 3> rasters{r, r, r};
    const OpponentImage img{testing::random_image(w, h, 21), OpponentSpace::ACC};
    BilateralParams p;
    p.sigma_r = 1e6;
    const OpponentImage out = edge_aware_csf_filter(img, img.data.channel(0), rasters, p);
    for (int c = 0; c < 3; ++c)
        EXPECT_LT(testing::max_abs_diff(out.data.channel(c), frequency_filter(img.data.channel(c), r)), 1e-9);
}

TEST(EdgeAwareCsf, RejectsNonEvenRaster)
{
    const OpponentImage img{testing::random_image(4, 4, 1), OpponentSpace::ACC};
    const FilterRaster bad(8, 8, [] {
        std::vector<double> g(64, 1.0);
        g[1] = 0.5;
        g[7] = 0.5;
        g[8] = 0.7;
        g[56] = 0.7;
        g[9] = 0.2;
        g[63] = 0.2;
        return g;
    }());
    ASSERT_FALSE(bad.axis_even());
    const FilterRaster ok = FilterRaster::constant(8, 8, 1.0);
    EXPECT_THROW(edge_aware_csf_filter(img, img.data.channel(0), {bad, ok, ok}, BilateralParams{}), InputError);
}

}  // namespace
}  // namespace edgediff
