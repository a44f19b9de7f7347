// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "edgediff/csf.hpp"
#include "edgediff/errors.hpp"
#include "edgediff/filtering.hpp"

namespace edgediff {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Csf, MovshonKnownValues)
{
    // 75 * f^0.8 * exp(-0.2 f), evaluated with mpmath.
    const CsfModel m{MovshonParams{}, false, false, false};
    EXPECT_NEAR(eval_csf(m, 4.0), 102.15830320881435, 1e-10);
    EXPECT_NEAR(eval_csf(m, 10.0), 64.043093194085968, 1e-10);
    EXPECT_DOUBLE_EQ(eval_csf(m, 0.0), 0.0);
    EXPECT_THROW(eval_csf(m, -1.0), InputError);
}

TEST(Csf, ChromaticKnownValues)
{
    // Sum of the two exponential terms; at f = 0 both are e^0.
    EXPECT_NEAR(eval_csf(CsfModel::red_green(), 0.0), 109.14130 + 93.59711, 1e-9);
    // mpmath: rg(10) / rg(0) and by(5) / by(0).
    EXPECT_NEAR(CsfEvaluator(CsfModel::red_green())(10.0), 0.46519315273641619, 1e-12);
    EXPECT_NEAR(CsfEvaluator(CsfModel::blue_yellow())(5.0), 0.34172488723369868, 1e-12);
}

TEST(Csf, AchromaticIsFlattenedAndNormalized)
{
    const CsfEvaluator csf(CsfModel::achromatic());
    EXPECT_DOUBLE_EQ(csf.peak_frequency(), 4.0);
    EXPECT_NEAR(csf.peak_value(), 102.15830320881435, 1e-10);
    for (double f : {0.0, 0.5, 1.0, 2.0, 3.9, 4.0})
        EXPECT_DOUBLE_EQ(csf(f), 1.0) << f;
    EXPECT_NEAR(csf(10.0), 64.043093194085968 / 102.15830320881435, 1e-12);
}

TEST(Csf, NssMovesThePeak)
{
    // (0.8 + 1/3) / 0.2
    const CsfEvaluator csf(nss_adapt(CsfModel::achromatic()));
    EXPECT_NEAR(csf.peak_frequency(), 5.6666666666666667, 1e-12);
    EXPECT_DOUBLE_EQ(csf(1.0), 1.0);
    EXPECT_LT(csf(20.0), 1.0);
}

TEST(Csf, NssOnLowpassFindsInteriorPeak)
{
    const CsfEvaluator csf(nss_adapt(CsfModel::red_green()));
    EXPECT_GT(csf.peak_frequency(), 0.0);
    const double f = csf.peak_frequency();
    EXPECT_NEAR(csf(f), 1.0, 1e-12);
    EXPECT_LE(csf(f * 0.9), 1.0);
    EXPECT_LE(csf(f * 1.1), 1.0);
}

class CsfProperties : public ::testing::TestWithParam<CsfModel> {};

TEST_P(CsfProperties, NormalizedCurveIsBoundedByOne)
{
    const CsfEvaluator csf(GetParam());
    double peak = 0.0;
    for (double f = 0.0; f <= 120.0; f += 0.05) {
        const double v = csf(f);
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 1.0 + 1e-12);
        peak = std::max(peak, v);
    }
    EXPECT_NEAR(peak, 1.0, 1e-3);
}

TEST_P(CsfProperties, LowpassAfterPeak)
{
    const CsfEvaluator csf(GetParam());
    double prev = csf(csf.peak_frequency());
    for (double f = csf.peak_frequency() + 0.1; f <= 120.0; f += 0.1) {
        const double v = csf(f);
        ASSERT_LE(v, prev + 1e-15) << f;
        prev = v;
    }
}

INSTANTIATE_TEST_SUITE_P(Models, CsfProperties,
                         ::testing::Values(CsfModel::achromatic(), CsfModel::red_green(), CsfModel::blue_yellow(),
                                           nss_adapt(CsfModel::achromatic()), nss_adapt(CsfModel::blue_yellow())));

TEST(Csf, Validation)
{
    EXPECT_THROW(CsfEvaluator(CsfModel{MovshonParams{0.0, 0.2, 0.8}}), InputError);
    EXPECT_THROW(CsfEvaluator(CsfModel{ChromaticLowpassParams{}}), InputError);
    EXPECT_THROW(CsfEvaluator(CsfModel{ChromaticLowpassParams{1.0, -1.0, 1.0, 0.0, 0.0, 1.0}}), InputError);
}

TEST(Oblique, Divisor)
{
    EXPECT_DOUBLE_EQ(oblique_divisor(0.0), 1.0);
    EXPECT_DOUBLE_EQ(oblique_divisor(kPi / 2), 1.0);
    EXPECT_NEAR(oblique_divisor(kPi / 4), 0.7, 1e-15);
    for (double t = -kPi; t <= kPi; t += 0.01) {
        EXPECT_GE(oblique_divisor(t), 0.7 - 1e-15);
        EXPECT_LE(oblique_divisor(t), 1.0 + 1e-15);
    }
}

TEST(Oblique, DiagonalFrequenciesAreRaised)
{
    const FrequencyGrid grid(16, 16, 32.0);
    const ChannelPlane f = oblique_frequency(grid);
    // (2, 0) is on an axis, (2, 2) on the diagonal.
    EXPECT_DOUBLE_EQ(f(0, 2), grid.radial(0, 2));
    EXPECT_NEAR(f(2, 2), grid.radial(2, 2) / 0.7, 1e-12);
}

TEST(EdgeEnhancement, Gain)
{
    EXPECT_DOUBLE_EQ(edge_enhancement_gain(30.0), 2.0);
    // 1 + e^-1
    EXPECT_NEAR(edge_enhancement_gain(24.0), 1.3678794411714423, 1e-15);
    EXPECT_NEAR(edge_enhancement_gain(36.0), 1.3678794411714423, 1e-15);
    EXPECT_NEAR(edge_enhancement_gain(0.0), 1.0, 1e-10);
}

TEST(FrequencyGrid, BinOrder)
{
    const FrequencyGrid grid(8, 6, 60.0);
    EXPECT_DOUBLE_EQ(grid.fx(0), 0.0);
    EXPECT_DOUBLE_EQ(grid.fx(1), 7.5);
    EXPECT_DOUBLE_EQ(grid.fx(7), -7.5);
    EXPECT_DOUBLE_EQ(std::abs(grid.fx(4)), 30.0);
    EXPECT_DOUBLE_EQ(grid.fy(5), -10.0);
    EXPECT_DOUBLE_EQ(grid.radial(1, 1), std::hypot(7.5, 10.0));
    EXPECT_DOUBLE_EQ(grid.orientation(0, 0), 0.0);
    EXPECT_THROW(FrequencyGrid(0, 4, 60.0), InputError);
    EXPECT_THROW(FrequencyGrid(4, 4, 0.0), InputError);
}

class RasterSizes : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(RasterSizes, CsfRasterIsSymmetricAndNormalized)
{
    const auto [w, h] = GetParam();
    const FrequencyGrid grid = padded_grid(w, h, 60.0);
    for (const CsfModel& m : {CsfModel::achromatic(), CsfModel::red_green(), CsfModel::blue_yellow()}) {
        for (bool oblique : {false, true}) {
            const FilterRaster r = build_csf_raster(m, grid, oblique);
            EXPECT_EQ(r.width(), 2 * w);
            EXPECT_EQ(r.height(), 2 * h);
            EXPECT_TRUE(r.axis_even());
            EXPECT_TRUE(r.point_symmetric());
            EXPECT_NEAR(r.max(), 1.0, 1e-15);
            for (double g : r.gains())
                EXPECT_GE(g, 0.0);
        }
    }
    const FilterRaster e = edge_enhancement_raster(grid);
    EXPECT_TRUE(e.axis_even());
    EXPECT_GE(*std::min_element(e.gains().begin(), e.gains().end()), 1.0);
    EXPECT_LE(e.max(), 2.0);
}

INSTANTIATE_TEST_SUITE_P(Sizes, RasterSizes,
                         ::testing::Values(std::pair{1, 1}, std::pair{5, 3}, std::pair{16, 16}, std::pair{33, 20}));

TEST(FilterRaster, Construction)
{
    EXPECT_THROW(FilterRaster(2, 2, std::vector<double>(3, 1.0)), InputError);
    EXPECT_THROW(FilterRaster(1, 1, {std::nan("")}), InputError);
    const FilterRaster ramp(4, 1, {0.0, 1.0, 2.0, 3.0});
    EXPECT_FALSE(ramp.point_symmetric());
    const FilterRaster sym(4, 1, {5.0, 1.0, 2.0, 1.0});
    EXPECT_TRUE(sym.point_symmetric());
    EXPECT_TRUE(sym.axis_even());
    const FilterRaster prod = sym * FilterRaster::constant(4, 1, 2.0);
    EXPECT_DOUBLE_EQ(prod.dc(), 10.0);
    EXPECT_THROW(sym * FilterRaster::constant(2, 2, 1.0), InputError);
}

TEST(SampleCsf, EvenlySpaced)
{
    const auto s = sample_csf(CsfModel::achromatic(), 60.0, 121);
    ASSERT_EQ(s.size(), 121u);
    EXPECT_DOUBLE_EQ(s.front().first, 0.0);
    EXPECT_DOUBLE_EQ(s.back().first, 60.0);
    EXPECT_DOUBLE_EQ(s[8].first, 4.0);
    EXPECT_DOUBLE_EQ(s[8].second, 1.0);
}

}  // namespace
}  // namespace edgediff
