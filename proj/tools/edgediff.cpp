// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

// edgediff: compare two images, run tone-mapping sweeps, dump CSF curves.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "edgediff/config.hpp"
#include "edgediff/csf.hpp"
#include "edgediff/errors.hpp"
#include "edgediff/image_io.hpp"
#include "edgediff/pipeline.hpp"
#include "edgediff/scenes.hpp"
#include "edgediff/sweep.hpp"

namespace fs = std::filesystem;
using namespace edgediff;

namespace {

std::string dashed(std::string s)
{
    std::replace(s.begin(), s.end(), '_', '-');
    return s;
}

void apply_edge_aware(PipelineConfig& cfg, bool edge_aware)
{
    if (!edge_aware)
        return;
    cfg.edge_aware_whitepoint = cfg.model != Model::IDIFF;
    cfg.edge_aware_csf = cfg.model != Model::ICAM02;
}

std::vector<NamedScene> load_scene_dir(const fs::path& dir, const LoadOptions& load)
{
    if (!fs::is_directory(dir))
        throw InputError(ErrorCode::Io, "scene directory '" + dir.string() + "' does not exist");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file())
            continue;
        try {
            format_from_path(entry.path());
            files.push_back(entry.path());
        } catch (const InputError&) {
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<NamedScene> scenes;
    for (const auto& f : files)
        scenes.push_back({f.stem().string(), load_image(f, load)});
    if (scenes.empty())
        throw InputError(ErrorCode::Io, "no readable images in '" + dir.string() + "'");
    return scenes;
}

void print_result(const DifferenceResult& r)
{
    std::printf("agg_e %.10g\nagg_i %.10g\nagg_c %.10g\nagg_h %.10g\n", r.agg_e, r.agg_i, r.agg_c, r.agg_h);
}

int run(int argc, char** argv)
{
    CLI::App app{"Edge-aware image difference models"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string log_level = "warn";
    app.add_option("--config", config_path, "YAML file of key: value settings")->check(CLI::ExistingFile);
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off");

    std::map<std::string, std::optional<std::string>> overrides;
    for (const auto& key : config_keys()) {
        auto& slot = overrides[key.name];
        std::string names = "--" + dashed(key.name);
        if (dashed(key.name) != key.name)
            names += ",--" + key.name;
        app.add_option(names, slot, key.help);
    }

    bool edge_aware = false;
    std::string out_dir;

    auto* compare = app.add_subcommand("compare", "Difference maps and aggregates between two images");
    std::string ref_path, test_path;
    compare->add_option("REF", ref_path, "reference image")->required()->check(CLI::ExistingFile);
    compare->add_option("TEST", test_path, "test image")->required()->check(CLI::ExistingFile);
    compare->add_flag("--edge-aware", edge_aware, "use the edge-aware variant of the model");
    compare->add_option("--out", out_dir, "directory for maps and the summary");

    auto* sweep = app.add_subcommand("sweep", "Tone-mapping sweep over scenes");
    std::string scenes_dir;
    int synthetic = 0;
    int size = 256;
    std::string tmo = "reinhard";
    std::string param = "desaturation";
    std::vector<double> values;
    std::optional<double> reference;
    bool all_models = false;
    bool write_maps = false;
    int jobs = 1;
    sweep->add_option("--scenes", scenes_dir, "directory of HDR scenes");
    sweep->add_option("--synthetic", synthetic, "use N generated scenes instead")->check(CLI::Range(1, 1000));
    sweep->add_option("--size", size, "width and height of generated scenes")->check(CLI::Range(8, 8192));
    sweep->add_option("--tmo", tmo, "durand or reinhard");
    sweep->add_option("--param", param, "contrast or desaturation");
    sweep->add_option("--values", values, "parameter values, increasing");
    sweep->add_option("--reference", reference, "reference parameter value");
    sweep->add_flag("--edge-aware", edge_aware, "edge-aware variant only (default: both variants)");
    sweep->add_flag("--all-models", all_models, "every model in both variants");
    sweep->add_flag("--maps", write_maps, "write total-difference maps");
    sweep->add_option("--jobs", jobs, "sweep cells run in parallel")->check(CLI::Range(1, 256));
    sweep->add_option("--out", out_dir, "output directory")->required();

    auto* csf_dump = app.add_subcommand("csf-dump", "Tabulate the configured CSFs");
    double f_max = 60.0;
    int samples = 121;
    csf_dump->add_option("--fmax", f_max, "highest frequency, cycles/degree")->check(CLI::PositiveNumber);
    csf_dump->add_option("--samples", samples, "sample count")->check(CLI::Range(2, 1000000));

    app.add_subcommand("dump-config", "Print every setting as a config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    spdlog::set_level(spdlog::level::from_str(log_level));

    Settings settings;
    if (!config_path.empty())
        apply_config_file(settings, config_path);
    for (const auto& key : config_keys())
        if (const auto& v = overrides[key.name])
            set_config_value(settings, key.name, *v);

    if (app.got_subcommand("dump-config")) {
        std::cout << dump_config(settings);
        return 0;
    }

    if (app.got_subcommand("csf-dump")) {
        std::array<CsfEvaluator, 3> csf{CsfEvaluator(settings.pipeline.csf_models[0]),
                                        CsfEvaluator(settings.pipeline.csf_models[1]),
                                        CsfEvaluator(settings.pipeline.csf_models[2])};
        std::printf("# f achromatic red_green blue_yellow\n");
        for (int i = 0; i < samples; ++i) {
            const double f = f_max * i / (samples - 1);
            std::printf("%.6g %.10g %.10g %.10g\n", f, csf[0](f), csf[1](f), csf[2](f));
        }
        return 0;
    }

    if (app.got_subcommand("compare")) {
        PipelineConfig cfg = settings.pipeline;
        apply_edge_aware(cfg, edge_aware);
        const TristimulusImage ref = load_image(ref_path, settings.load, *cfg.tables);
        const TristimulusImage test = load_image(test_path, settings.load, *cfg.tables);
        const DifferenceResult r = run_model(ref, test, cfg);
        print_result(r);
        if (!out_dir.empty()) {
            fs::create_directories(out_dir);
            save_map(r.delta_e, fs::path(out_dir) / "delta_e.png");
            save_map(r.delta_i, fs::path(out_dir) / "delta_i.png");
            save_map(r.delta_c, fs::path(out_dir) / "delta_c.png");
            save_map(r.delta_h, fs::path(out_dir) / "delta_h.png");
            std::ofstream summary(fs::path(out_dir) / "summary.csv");
            summary.precision(17);
            summary << "model,variant,agg_e,agg_i,agg_c,agg_h\n"
                    << to_string(cfg.model) << ',' << variant_name(cfg) << ',' << r.agg_e << ',' << r.agg_i << ','
                    << r.agg_c << ',' << r.agg_h << '\n';
            if (!summary)
                throw InputError(ErrorCode::Io, "cannot write summary in '" + out_dir + "'");
        }
        return 0;
    }

    // sweep
    SweepSpec spec;
    spec.parameter = sweep_parameter_from_string(param);
    spec.tmo = tmo_from_string(tmo);
    const SweepSpec defaults
        = spec.parameter == SweepParameter::BaseContrast ? SweepSpec::contrast() : SweepSpec::desaturation();
    spec.values = values.empty() ? defaults.values : values;
    spec.reference_value = reference.value_or(defaults.reference_value);

    std::vector<NamedScene> scenes;
    if (!scenes_dir.empty() && synthetic > 0)
        throw InputError(ErrorCode::InvalidConfig, "use either --scenes or --synthetic");
    if (!scenes_dir.empty())
        scenes = load_scene_dir(scenes_dir, settings.load);
    else if (synthetic > 0)
        scenes = synthetic_scenes(synthetic, size, size);
    else
        throw InputError(ErrorCode::InvalidConfig, "sweep needs --scenes DIR or --synthetic N");

    std::vector<PipelineConfig> configs;
    const std::vector<Model> models = all_models ? std::vector<Model>{Model::ICAM02, Model::IDIFF, Model::ICAMDIFF}
                                                 : std::vector<Model>{settings.pipeline.model};
    for (Model m : models)
        for (bool ea : {false, true}) {
            if (edge_aware && !ea)
                continue;
            PipelineConfig cfg = settings.pipeline;
            cfg.model = m;
            cfg.edge_aware_whitepoint = false;
            cfg.edge_aware_csf = false;
            apply_edge_aware(cfg, ea);
            configs.push_back(cfg);
        }

    SweepOptions options = settings.sweep;
    options.workers = jobs;
    const fs::path out(out_dir);
    fs::create_directories(out);
    if (write_maps)
        options.map_dir = out / "maps";
    const ExperimentReport report = run_sweep(scenes, spec, configs, options);
    {
        std::ofstream csv(out / "report.csv");
        report.write_csv(csv);
        if (!csv)
            throw InputError(ErrorCode::Io, "cannot write report in '" + out_dir + "'");
    }
    report.write_curves(out / "curves");
    const auto failed = std::count_if(report.rows.begin(), report.rows.end(),
                                      [](const ReportRow& r) { return !r.error.empty(); });
    std::printf("%zu cells, %td failed, report in %s\n", report.rows.size(), failed,
                (out / "report.csv").string().c_str());
    return failed == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const InputError& e) {
        std::fprintf(stderr, "edgediff: %s (%s)\n", e.what(), to_string(e.code()));
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "edgediff: internal error: %s\n", e.what());
        return 2;
    }
}
