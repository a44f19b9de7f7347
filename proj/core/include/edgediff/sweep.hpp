// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "edgediff/pipeline.hpp"
#include "edgediff/scenes.hpp"
#include "edgediff/tonemap.hpp"

namespace edgediff {

enum class Tmo { Durand, Reinhard };
enum class SweepParameter { BaseContrast, Desaturation };

const char* to_string(Tmo tmo);
const char* to_string(SweepParameter parameter);
Tmo tmo_from_string(std::string_view name);
SweepParameter sweep_parameter_from_string(std::string_view name);

struct SweepSpec {
    Tmo tmo = Tmo::Reinhard;
    SweepParameter parameter = SweepParameter::Desaturation;
    std::vector<double> values;  ///< strictly increasing
    double reference_value = 0.0;

    void validate() const;

    /// Durand base contrast {10, 100, 10000} against 1000.
    static SweepSpec contrast();
    /// Reinhard desaturation {0.25, 0.5, 0.75} against 0.
    static SweepSpec desaturation();
};

struct SweepOptions {
    DurandParams durand;          ///< base_contrast for desaturation sweeps comes from below
    double durand_base_contrast = 1000.0;
    ReinhardParams reinhard;
    std::optional<std::filesystem::path> map_dir;  ///< ΔE maps are written here when set
    int workers = 1;
};

/// Short name of a configuration's variant: "baseline" or "edge_aware".
std::string variant_name(const PipelineConfig& cfg);

struct ReportRow {
    std::string scene;
    std::string model;
    std::string variant;
    double parameter = 0.0;
    double agg_e = 0.0;
    double agg_i = 0.0;
    double agg_c = 0.0;
    double agg_h = 0.0;
    std::string error;     ///< empty on success
    std::string map_path;  ///< empty unless maps were written
};

struct ExperimentReport {
    SweepSpec spec;
    std::vector<ReportRow> rows;  ///< scene-major, then value, then config

    /// Header plus one comma-separated line per row.
    void write_csv(std::ostream& out) const;
    /// One (parameter, agg_e) file per model and variant, scene column first.
    void write_curves(const std::filesystem::path& dir) const;
};

/// Renders `tmo(scene, value)` for each scene and value, compares it with
/// the reference rendering under every config, and collects aggregates.
/// A failing cell records its error instead of aborting the run.
ExperimentReport run_sweep(const std::vector<NamedScene>& scenes, const SweepSpec& spec,
                           const std::vector<PipelineConfig>& configs, const SweepOptions& options = {});

/// Tone-maps one scene for a sweep value.
TristimulusImage render_sweep_value(const TristimulusImage& hdr, const SweepSpec& spec, double value,
                                    const SweepOptions& options);

}  // namespace edgediff
