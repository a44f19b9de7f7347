// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "edgediff/color.hpp"
#include "edgediff/errors.hpp"
#include "support.hpp"

namespace edgediff {
namespace {

const WhitePoint kD65{95.047, 100.0, 108.883};

TEST(Cielab, WhiteIsL100)
{
    const Eigen::Vector3d lab = xyz_to_lab(kD65.xyz(), kD65);
    EXPECT_NEAR(lab[0], 100.0, 1e-9);
    EXPECT_NEAR(lab[1], 0.0, 1e-9);
    EXPECT_NEAR(lab[2], 0.0, 1e-9);
}

TEST(Cielab, KnownColors)
{
    // 30-digit evaluation of the CIE 1976 formulas with mpmath.
    struct Case {
        Eigen::Vector3d xyz;
        Eigen::Vector3d lab;
    };
    const Case cases[] = {
        {{41.24, 21.26, 1.93}, {53.232881785842452, 80.109309529822045, 67.220068310264259}},  // sRGB red
        {{0.5, 0.4, 0.3}, {3.6131851851851852, 4.90799542058919, 1.9385812361961072}},          // linear branch
    };
    for (const auto& c : cases) {
        const Eigen::Vector3d lab = xyz_to_lab(c.xyz, kD65);
        for (int k = 0; k < 3; ++k)
            EXPECT_NEAR(lab[k], c.lab[k], 1e-9) << c.xyz.transpose();
    }
}

TEST(Cielab, BranchIsContinuous)
{
    const double t = kLabDelta * kLabDelta * kLabDelta;
    const double below = t / (3.0 * kLabDelta * kLabDelta) + 4.0 / 29.0;
    EXPECT_LT(std::abs(std::cbrt(t) - below), 1e-9);
    EXPECT_LT(std::abs(lab_f(std::nextafter(t, 0.0)) - lab_f(std::nextafter(t, 1.0))), 1e-9);
}

TEST(Cielab, ImageUsesAbsoluteUnits)
{
    TristimulusImage img = testing::uniform_xyz(3, 2, 0.95047, 1.0, 1.08883);
    img.luminance_scale = 100.0;
    const OpponentImage lab = xyz_to_cielab(img, kD65);
    EXPECT_EQ(lab.space, OpponentSpace::CIELAB_Lab);
    EXPECT_NEAR(lab.data.channel(0)(1, 2), 100.0, 1e-9);
}

TEST(Cylindrical, ChromaAndHue)
{
    const Eigen::Vector3d lch = to_cylindrical({50.0, 3.0, 4.0});
    EXPECT_DOUBLE_EQ(lch[1], 5.0);
    EXPECT_NEAR(lch[2], std::atan2(4.0, 3.0), 1e-15);
    const Eigen::Vector3d neg = to_cylindrical({50.0, 3.0, -4.0});
    EXPECT_NEAR(neg[2], 2.0 * std::numbers::pi - std::atan2(4.0, 3.0), 1e-12);
    EXPECT_EQ(to_cylindrical({20.0, 0.0, 0.0})[2], 0.0);
}

TEST(Cylindrical, RoundTrip)
{
    const Image3 src = testing::random_image(5, 4, 7, -50.0, 50.0);
    const OpponentImage lab{src, OpponentSpace::CIELAB_Lab};
    const OpponentImage lch = lab_to_lch(lab);
    EXPECT_EQ(lch.space, OpponentSpace::CIELAB_LCh);
    for (std::size_t i = 0; i < lch.data.pixel_count(); ++i) {
        EXPECT_GE(lch.data.at(i)[2], 0.0);
        EXPECT_LT(lch.data.at(i)[2], 2.0 * std::numbers::pi);
    }
    EXPECT_LT(testing::max_abs_diff(lch_to_lab(lch).data, src), 1e-12);
}

TEST(Cylindrical, RejectsWrongSpace)
{
    const OpponentImage ipt{testing::random_image(2, 2, 1), OpponentSpace::IPT};
    EXPECT_THROW(lab_to_lch(ipt), InputError);
}

TEST(ColorTables, EveryMatrixRoundTrips)
{
    const auto tables = ColorTables::builtin();
    ASSERT_GE(tables->matrices().size(), 8u);
    const Image3 img = testing::random_image(6, 5, 3, -1.0, 2.0);
    for (const auto& [name, m] : tables->matrices()) {
        const TaggedImage tagged{img, m.from()};
        const TaggedImage there = convert(tagged, m);
        EXPECT_EQ(there.space, m.to()) << name;
        const TaggedImage back = convert(there, m.inverse());
        EXPECT_EQ(back.space, m.from()) << name;
        EXPECT_LT(testing::max_abs_diff(back.data, img), 1e-9) << name;
    }
}

TEST(ColorTables, ConvertChecksTags)
{
    const auto tables = ColorTables::builtin();
    const TaggedImage lms{testing::random_image(2, 2, 1), Space::LMS_CAT02};
    try {
        convert(lms, tables->matrix("xyz_to_lms_cat16"));
        FAIL() << "expected a space mismatch";
    } catch (const InputError& e) {
        EXPECT_EQ(e.code(), ErrorCode::SpaceMismatch);
    }
}

TEST(ColorTables, IlluminantsAndLookupErrors)
{
    const auto tables = ColorTables::builtin();
    const WhitePoint d65 = tables->illuminant("D65");
    EXPECT_DOUBLE_EQ(d65.X, 95.047);
    EXPECT_DOUBLE_EQ(d65.Z, 108.883);
    EXPECT_THROW(tables->matrix("no_such_matrix"), InputError);
    EXPECT_THROW(tables->illuminant("F11"), InputError);
}

TEST(ColorTables, SrgbWhiteMapsToD65)
{
    const auto& m = ColorTables::builtin()->matrix("linear_srgb_to_xyz");
    const Eigen::Vector3d white = m.apply({1.0, 1.0, 1.0}) * 100.0;
    for (int k = 0; k < 3; ++k)
        EXPECT_NEAR(white[k] / kD65.xyz()[k], 1.0, 1e-4);
}

TEST(ColorTables, ParseOverridesAndValidates)
{
    const char* text = R"(
version: 1
matrices:
  xyz_to_acc:
    from: XYZ
    to: ACC
    rows: [[1, 0, 0], [0, 2, 0], [0, 0, 4]]
illuminants:
  D65: [95.047, 100.0, 108.883]
)";
    const ColorTables t = ColorTables::parse(text);
    EXPECT_DOUBLE_EQ(t.matrix("xyz_to_acc").entries()(2, 2), 4.0);
    EXPECT_THROW(ColorTables::parse("matrices: {bad: {from: XYZ, to: ACC, rows: [[1, 0, 0], [0, 0, 0], [0, 0, 1]]}}"),
                 InputError);
    EXPECT_THROW(ColorTables::parse("matrices: {m: {from: XYZ, to: Nowhere, rows: [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}}"),
                 InputError);
    EXPECT_THROW(ColorTables::parse("matrices: [unclosed"), InputError);
}

TEST(Oklab, PublishedSrgbPrimaries)
{
    // Reference values published with the OKLab definition (linear sRGB in,
    // 6 decimals). This path goes through XYZ, so agreement is to ~1e-4.
    const auto tables = ColorTables::builtin();
    const auto& to_xyz = tables->matrix("linear_srgb_to_xyz").entries();
    const auto& to_lms = tables->matrix("xyz_to_lms_oklab").entries();
    struct Case {
        Eigen::Vector3d rgb;
        Eigen::Vector3d lab;
    };
    const Case cases[] = {
        {{1.0, 1.0, 1.0}, {1.0, 0.0, 0.0}},
        {{1.0, 0.0, 0.0}, {0.627955, 0.224863, 0.125846}},
        {{0.0, 1.0, 0.0}, {0.866440, -0.233888, 0.179498}},
        {{0.0, 0.0, 1.0}, {0.452014, -0.032457, -0.311528}},
    };
    for (const auto& c : cases) {
        Eigen::Vector3d lms = to_lms * (to_xyz * c.rgb);
        for (int k = 0; k < 3; ++k)
            lms[k] = signed_pow(lms[k], 1.0 / 3.0);
        TaggedImage img{Image3(1, 1), Space::LMS_OKLab};
        img.data.set(0, lms);
        const OpponentImage lab = lms_to_oklab(img, *tables);
        EXPECT_EQ(lab.space, OpponentSpace::OKLab);
        for (int k = 0; k < 3; ++k)
            EXPECT_NEAR(lab.data.at(0)[k], c.lab[k], 5e-4) << c.rgb.transpose();
    }
}

TEST(Ipt, WhiteIsAchromatic)
{
    const auto tables = ColorTables::builtin();
    const auto& to_lms = tables->matrix("xyz_to_lms_hpe").entries();
    Eigen::Vector3d lms = to_lms * Eigen::Vector3d(0.95047, 1.0, 1.08883);
    for (int k = 0; k < 3; ++k)
        lms[k] = signed_pow(lms[k], 0.43);
    TaggedImage img{Image3(1, 1), Space::LMS_HPE};
    img.data.set(0, lms);
    const Eigen::Vector3d ipt = lms_to_ipt(img, *tables).data.at(0);
    EXPECT_NEAR(ipt[0], 1.0, 1e-3);
    EXPECT_NEAR(ipt[1], 0.0, 1e-3);
    EXPECT_NEAR(ipt[2], 0.0, 1e-3);
    EXPECT_THROW(lms_to_ipt(TaggedImage{Image3(1, 1), Space::LMS_OKLab}, *tables), InputError);
}

TEST(SignedPow, PreservesSign)
{
    EXPECT_DOUBLE_EQ(signed_pow(-8.0, 1.0 / 3.0), -2.0);
    EXPECT_DOUBLE_EQ(signed_pow(0.25, 2.0), 0.0625);
    EXPECT_EQ(signed_pow(0.0, 0.43), 0.0);
}

TEST(WhitePoint, Validation)
{
    EXPECT_NO_THROW(kD65.validate());
    try {
        WhitePoint{95.0, 0.0, 108.0}.validate();
        FAIL() << "expected InvalidWhite";
    } catch (const InputError& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidWhite);
    }
    const WhitePoint half = kD65.scaled_to(50.0);
    EXPECT_DOUBLE_EQ(half.Y, 50.0);
    EXPECT_DOUBLE_EQ(half.X, 95.047 / 2.0);
}

TEST(Image, ConstructionErrors)
{
    EXPECT_THROW(ChannelPlane(0, 3), InputError);
    EXPECT_THROW(ChannelPlane(2, 2, std::vector<double>(3)), InputError);
    TristimulusImage bad = testing::uniform_xyz(2, 2, 1.0, -1.0, 1.0);
    EXPECT_THROW(bad.validate(), InputError);
    TristimulusImage nan = testing::uniform_xyz(2, 2, 1.0, std::nan(""), 1.0);
    EXPECT_THROW(nan.validate(), InputError);
}

}  // namespace
}  // namespace edgediff
