// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "edgediff/errors.hpp"
#include "edgediff/sweep.hpp"
#include "support.hpp"

namespace edgediff {
namespace {

namespace fs = std::filesystem;

std::vector<PipelineConfig> all_configs()
{
    std::vector<PipelineConfig> out;
    for (Model m : {Model::ICAM02, Model::IDIFF, Model::ICAMDIFF})
        for (bool edge : {false, true})
            out.push_back(PipelineConfig::preset(m, edge));
    return out;
}

std::string csv(const ExperimentReport& r)
{
    std::ostringstream s;
    r.write_csv(s);
    return s.str();
}

TEST(SweepSpec, Presets)
{
    const SweepSpec c = SweepSpec::contrast();
    EXPECT_EQ(c.tmo, Tmo::Durand);
    EXPECT_EQ(c.values, (std::vector<double>{10, 100, 10000}));
    EXPECT_EQ(c.reference_value, 1000.0);
    const SweepSpec d = SweepSpec::desaturation();
    EXPECT_EQ(d.tmo, Tmo::Reinhard);
    EXPECT_EQ(d.values, (std::vector<double>{0.25, 0.5, 0.75}));
    EXPECT_EQ(d.reference_value, 0.0);
    c.validate();
    d.validate();
}

TEST(SweepSpec, Validation)
{
    SweepSpec s = SweepSpec::desaturation();
    s.values = {0.5, 0.25};
    EXPECT_THROW(s.validate(), InputError);
    s.values = {};
    EXPECT_THROW(s.validate(), InputError);
    s = SweepSpec::contrast();
    s.tmo = Tmo::Reinhard;
    EXPECT_THROW(s.validate(), InputError);
    s = SweepSpec::contrast();
    s.values = {0.5, 10.0};
    EXPECT_THROW(s.validate(), InputError);
    s = SweepSpec::desaturation();
    s.values = {0.5, 1.5};
    EXPECT_THROW(s.validate(), InputError);
    EXPECT_EQ(tmo_from_string("durand"), Tmo::Durand);
    EXPECT_EQ(sweep_parameter_from_string("desaturation"), SweepParameter::Desaturation);
    EXPECT_THROW(tmo_from_string("drago"), InputError);
}

TEST(Sweep, OneRowPerCellAndZeroReferenceCells)
{
    const auto scenes = synthetic_scenes(2, 24, 20);
    SweepSpec spec = SweepSpec::desaturation();
    spec.values = {0.0, 0.25, 0.5};
    const auto configs = all_configs();
    const ExperimentReport r = run_sweep(scenes, spec, configs);
    ASSERT_EQ(r.rows.size(), scenes.size() * spec.values.size() * configs.size());
    for (const ReportRow& row : r.rows) {
        EXPECT_TRUE(row.error.empty()) << row.error;
        if (row.parameter == spec.reference_value) {
            EXPECT_EQ(row.agg_e, 0.0);
            EXPECT_EQ(row.agg_i, 0.0);
            EXPECT_EQ(row.agg_c, 0.0);
            EXPECT_EQ(row.agg_h, 0.0);
        } else {
            EXPECT_GT(row.agg_e, 0.0);
        }
    }
    // Scene-major, then value, then config.
    EXPECT_EQ(r.rows[0].scene, scenes[0].name);
    EXPECT_EQ(r.rows[1].model, "icam02");
    EXPECT_EQ(r.rows[1].variant, "edge_aware");
    EXPECT_EQ(r.rows[configs.size()].parameter, 0.25);
    EXPECT_EQ(r.rows.back().scene, scenes[1].name);
}

TEST(Sweep, ContrastSweepRunsDurand)
{
    const auto scenes = synthetic_scenes(1, 24, 16);
    const std::vector<PipelineConfig> configs{PipelineConfig::preset(Model::ICAMDIFF, true)};
    const ExperimentReport r = run_sweep(scenes, SweepSpec::contrast(), configs);
    ASSERT_EQ(r.rows.size(), 3u);
    for (const ReportRow& row : r.rows)
        EXPECT_GT(row.agg_e, 0.0);
}

TEST(Sweep, ReportsAreByteIdentical)
{
    const auto scenes = synthetic_scenes(3, 20, 20);
    const auto configs = all_configs();
    SweepOptions serial;
    SweepOptions parallel;
    parallel.workers = 4;
    const std::string a = csv(run_sweep(scenes, SweepSpec::desaturation(), configs, serial));
    const std::string b = csv(run_sweep(scenes, SweepSpec::desaturation(), configs, serial));
    const std::string c = csv(run_sweep(scenes, SweepSpec::desaturation(), configs, parallel));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    EXPECT_EQ(a.substr(0, a.find('\n')), "scene,model,variant,desaturation,agg_e,agg_i,agg_c,agg_h,error,map");
}

TEST(Sweep, FailingSceneIsRecordedNotFatal)
{
    auto scenes = synthetic_scenes(1, 16, 16);
    TristimulusImage bad = testing::uniform_xyz(16, 16, 1.0, -1.0, 1.0);
    scenes.push_back({"broken", bad});
    const std::vector<PipelineConfig> configs{PipelineConfig::preset(Model::IDIFF, false)};
    const ExperimentReport r = run_sweep(scenes, SweepSpec::desaturation(), configs);
    ASSERT_EQ(r.rows.size(), 6u);
    for (const ReportRow& row : r.rows) {
        if (row.scene == "broken")
            EXPECT_FALSE(row.error.empty());
        else
            EXPECT_TRUE(row.error.empty());
    }
}

TEST(Sweep, WritesMapsAndCurves)
{
    const fs::path dir = fs::temp_directory_path() / "edgediff_sweep_maps";
    fs::remove_all(dir);
    const auto scenes = synthetic_scenes(1, 16, 16);
    SweepOptions opt;
    opt.map_dir = dir / "maps";
    const std::vector<PipelineConfig> configs{PipelineConfig::preset(Model::ICAMDIFF, false),
                                              PipelineConfig::preset(Model::ICAMDIFF, true)};
    const ExperimentReport r = run_sweep(scenes, SweepSpec::desaturation(), configs, opt);
    for (const ReportRow& row : r.rows) {
        ASSERT_FALSE(row.map_path.empty());
        EXPECT_TRUE(fs::exists(row.map_path)) << row.map_path;
    }
    r.write_curves(dir);
    EXPECT_TRUE(fs::exists(dir / "curve_icamdiff_baseline.dat"));
    std::ifstream in(dir / "curve_icamdiff_edge_aware.dat");
    std::string line;
    int lines = 0;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#')
            ++lines;
    EXPECT_EQ(lines, 3);
    fs::remove_all(dir);
}

TEST(Sweep, RejectsEmptyInput)
{
    EXPECT_THROW(run_sweep({}, SweepSpec::desaturation(), all_configs()), InputError);
    EXPECT_THROW(run_sweep(synthetic_scenes(1, 16, 16), SweepSpec::desaturation(), {}), InputError);
}

}  // namespace
}  // namespace edgediff
