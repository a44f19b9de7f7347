// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include "edgediff/sweep.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include <spdlog/spdlog.h>

#include "edgediff/errors.hpp"
#include "edgediff/image_io.hpp"
#include "parallel.hpp"

namespace edgediff {

namespace fs = std::filesystem;

namespace {

std::string format_value(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string file_safe(std::string s)
{
    for (char& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.')
            c = '_';
    return s;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

const char* to_string(Tmo tmo)
{
    return tmo == Tmo::Durand ? "durand" : "reinhard";
}

const char* to_string(SweepParameter parameter)
{
    return parameter == SweepParameter::BaseContrast ? "contrast" : "desaturation";
}

Tmo tmo_from_string(std::string_view name)
{
    for (Tmo t : {Tmo::Durand, Tmo::Reinhard})
        if (name == to_string(t))
            return t;
    throw InputError(ErrorCode::InvalidConfig, "unknown tone mapper '" + std::string(name) + "'");
}

SweepParameter sweep_parameter_from_string(std::string_view name)
{
    for (SweepParameter p : {SweepParameter::BaseContrast, SweepParameter::Desaturation})
        if (name == to_string(p))
            return p;
    throw InputError(ErrorCode::InvalidConfig, "unknown sweep parameter '" + std::string(name) + "'");
}

void SweepSpec::validate() const
{
    if (values.empty())
        throw InputError(ErrorCode::InvalidConfig, "sweep needs at least one value");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw InputError(ErrorCode::InvalidConfig, "sweep values must be strictly increasing");
    if (tmo == Tmo::Reinhard && parameter == SweepParameter::BaseContrast)
        throw InputError(ErrorCode::InvalidConfig, "the Reinhard operator has no base contrast parameter");
    auto check = [this](double v) {
        if (parameter == SweepParameter::BaseContrast && !(v > 1.0))
            throw InputError(ErrorCode::InvalidConfig, "base contrast values must exceed 1");
        if (parameter == SweepParameter::Desaturation && !(v >= 0.0 && v <= 1.0))
            throw InputError(ErrorCode::InvalidConfig, "desaturation values must lie in [0, 1]");
    };
    for (double v : values)
        check(v);
    check(reference_value);
}

SweepSpec SweepSpec::contrast()
{
    return {Tmo::Durand, SweepParameter::BaseContrast, {10.0, 100.0, 10000.0}, 1000.0};
}

SweepSpec SweepSpec::desaturation()
{
    return {Tmo::Reinhard, SweepParameter::Desaturation, {0.25, 0.5, 0.75}, 0.0};
}

std::string variant_name(const PipelineConfig& cfg)
{
    return cfg.edge_aware() ? "edge_aware" : "baseline";
}

TristimulusImage render_sweep_value(const TristimulusImage& hdr, const SweepSpec& spec, double value,
                                    const SweepOptions& options)
{
    if (spec.tmo == Tmo::Durand) {
        DurandParams p = options.durand;
        if (spec.parameter == SweepParameter::BaseContrast)
            return tonemap_durand(hdr, value, p);
        p.desaturation = value;
        return tonemap_durand(hdr, options.durand_base_contrast, p);
    }
    return tonemap_reinhard(hdr, value, options.reinhard);
}

ExperimentReport run_sweep(const std::vector<NamedScene>& scenes, const SweepSpec& spec,
                           const std::vector<PipelineConfig>& configs, const SweepOptions& options)
{
    if (scenes.empty())
        throw InputError(ErrorCode::InvalidConfig, "sweep needs at least one scene");
    if (configs.empty())
        throw InputError(ErrorCode::InvalidConfig, "sweep needs at least one model configuration");
    spec.validate();
    for (const auto& cfg : configs)
        cfg.validate();
    if (options.map_dir)
        fs::create_directories(*options.map_dir);

    const std::size_t n_values = spec.values.size();
    const std::size_t n_configs = configs.size();
    ExperimentReport report;
    report.spec = spec;
    report.rows.resize(scenes.size() * n_values * n_configs);

    // One job per (scene, config): the reference appearance is shared by
    // every value of that pair.
    const int jobs = static_cast<int>(scenes.size() * n_configs);
    std::vector<std::optional<TristimulusImage>> reference(scenes.size());
    std::vector<std::vector<std::optional<TristimulusImage>>> tests(scenes.size());
    std::vector<std::string> render_error(scenes.size());
    detail::parallel_for(static_cast<int>(scenes.size()), options.workers, [&](int s, int) {
        try {
            reference[s] = render_sweep_value(scenes[s].image, spec, spec.reference_value, options);
            tests[s].resize(n_values);
            for (std::size_t v = 0; v < n_values; ++v)
                tests[s][v] = spec.values[v] == spec.reference_value
                                  ? *reference[s]
                                  : render_sweep_value(scenes[s].image, spec, spec.values[v], options);
        } catch (const std::exception& e) {
            render_error[s] = e.what();
        }
    });

    detail::parallel_for(jobs, options.workers, [&](int job, int) {
        const std::size_t s = static_cast<std::size_t>(job) / n_configs;
        const std::size_t k = static_cast<std::size_t>(job) % n_configs;
        const PipelineConfig& cfg = configs[k];

        std::optional<OpponentImage> ref_appearance;
        std::string ref_error = render_error[s];
        if (ref_error.empty()) {
            try {
                ref_appearance = model_appearance(*reference[s], cfg);
            } catch (const std::exception& e) {
                ref_error = e.what();
            }
        }

        for (std::size_t v = 0; v < n_values; ++v) {
            ReportRow& row = report.rows[(s * n_values + v) * n_configs + k];
            row.scene = scenes[s].name;
            row.model = to_string(cfg.model);
            row.variant = variant_name(cfg);
            row.parameter = spec.values[v];
            if (!ref_error.empty()) {
                row.error = ref_error;
                continue;
            }
            try {
                const OpponentImage test = model_appearance(*tests[s][v], cfg);
                const DifferenceResult diff = compare_appearances(*ref_appearance, test, cfg);
                row.agg_e = diff.agg_e;
                row.agg_i = diff.agg_i;
                row.agg_c = diff.agg_c;
                row.agg_h = diff.agg_h;
                if (options.map_dir) {
                    const fs::path path = *options.map_dir
                                          / file_safe(row.scene + "_" + row.model + "_" + row.variant + "_"
                                                      + format_value(row.parameter) + "_dE.png");
                    save_map(diff.delta_e, path);
                    row.map_path = path.string();
                }
            } catch (const std::exception& e) {
                row.error = e.what();
                spdlog::warn("sweep cell {} / {} / {} / {} failed: {}", row.scene, row.model, row.variant,
                             format_value(row.parameter), row.error);
            }
        }
    });
    return report;
}

void ExperimentReport::write_csv(std::ostream& out) const
{
    out << "scene,model,variant," << to_string(spec.parameter) << ",agg_e,agg_i,agg_c,agg_h,error,map\n";
    for (const auto& r : rows)
        out << csv_field(r.scene) << ',' << r.model << ',' << r.variant << ',' << format_value(r.parameter) << ','
            << format_value(r.agg_e) << ',' << format_value(r.agg_i) << ',' << format_value(r.agg_c) << ','
            << format_value(r.agg_h) << ',' << csv_field(r.error) << ',' << csv_field(r.map_path) << '\n';
}

void ExperimentReport::write_curves(const fs::path& dir) const
{
    fs::create_directories(dir);
    std::map<std::string, std::vector<const ReportRow*>> groups;
    for (const auto& r : rows)
        groups[r.model + "_" + r.variant].push_back(&r);
    for (const auto& [name, group] : groups) {
        const fs::path path = dir / ("curve_" + name + ".dat");
        std::ofstream out(path);
        if (!out)
            throw InputError(ErrorCode::Io, "cannot write '" + path.string() + "'");
        out << "# scene " << to_string(spec.parameter) << " agg_e\n";
        for (const ReportRow* r : group)
            out << r->scene << ' ' << format_value(r->parameter) << ' '
                << (r->error.empty() ? format_value(r->agg_e) : std::string("nan")) << '\n';
    }
}

}  // namespace edgediff
