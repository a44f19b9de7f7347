// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include "edgediff/config.hpp"

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "edgediff/errors.hpp"

namespace edgediff {

namespace {

[[noreturn]] void bad_value(const std::string& key, const std::string& value)
{
    throw InputError(ErrorCode::InvalidConfig, "bad value '" + value + "' for '" + key + "'");
}

YAML::Node scalar_node(const std::string& key, const std::string& value)
{
    try {
        return YAML::Load(value);
    } catch (const YAML::Exception&) {
        bad_value(key, value);
    }
}

template<class T>
T parse(const std::string& key, const std::string& value)
{
    try {
        const YAML::Node node = scalar_node(key, value);
        if (!node.IsScalar())
            bad_value(key, value);
        return node.as<T>();
    } catch (const YAML::Exception&) {
        bad_value(key, value);
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& value, std::size_t count)
{
    std::vector<double> out;
    const YAML::Node node = scalar_node(key, value);
    try {
        if (node.IsSequence()) {
            for (const auto& item : node)
                out.push_back(item.as<double>());
        } else {
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ','))
                out.push_back(parse<double>(key, item));
        }
    } catch (const YAML::Exception&) {
        bad_value(key, value);
    }
    if (out.size() != count)
        throw InputError(ErrorCode::InvalidConfig,
                         "'" + key + "' needs " + std::to_string(count) + " comma-separated numbers");
    return out;
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(bool v)
{
    return v ? "true" : "false";
}

std::string fmt_list(std::initializer_list<double> values)
{
    std::string out = "[";
    for (double v : values) {
        if (out.size() > 1)
            out += ", ";
        out += fmt(v);
    }
    return out + "]";
}

ChromaticLowpassParams& lowpass(CsfModel& model)
{
    if (!std::holds_alternative<ChromaticLowpassParams>(model.kind))
        model.kind = ChromaticLowpassParams{};
    return std::get<ChromaticLowpassParams>(model.kind);
}

MovshonParams& movshon(CsfModel& model)
{
    if (!std::holds_alternative<MovshonParams>(model.kind))
        model.kind = MovshonParams{};
    return std::get<MovshonParams>(model.kind);
}

std::string lowpass_text(const CsfModel& model)
{
    if (const auto* p = std::get_if<ChromaticLowpassParams>(&model.kind))
        return fmt_list({p->a1, p->b1, p->c1, p->a2, p->b2, p->c2});
    return "[]";
}

void set_lowpass(CsfModel& model, const std::string& key, const std::string& value)
{
    const auto v = parse_list(key, value, 6);
    lowpass(model) = {v[0], v[1], v[2], v[3], v[4], v[5]};
}

template<class T>
ConfigKey number_key(std::string name, std::string help, T Settings::*group, double T::*field)
{
    return {name, std::move(help),
            [name, group, field](Settings& s, const std::string& v) { (s.*group).*field = parse<double>(name, v); },
            [group, field](const Settings& s) { return fmt((s.*group).*field); }};
}

ConfigKey pipeline_number(std::string name, std::string help, double PipelineConfig::*field)
{
    return number_key(std::move(name), std::move(help), &Settings::pipeline, field);
}

ConfigKey pipeline_flag(std::string name, std::string help, bool PipelineConfig::*field)
{
    return {name, std::move(help),
            [name, field](Settings& s, const std::string& v) { s.pipeline.*field = parse<bool>(name, v); },
            [field](const Settings& s) { return fmt(s.pipeline.*field); }};
}

ConfigKey pipeline_int(std::string name, std::string help, int PipelineConfig::*field)
{
    return {name, std::move(help),
            [name, field](Settings& s, const std::string& v) { s.pipeline.*field = parse<int>(name, v); },
            [field](const Settings& s) { return std::to_string(s.pipeline.*field); }};
}

std::vector<ConfigKey> make_keys()
{
    std::vector<ConfigKey> keys;
    keys.push_back({"model", "icam02, idiff or icamdiff",
                    [](Settings& s, const std::string& v) { s.pipeline.model = model_from_string(v); },
                    [](const Settings& s) { return std::string(to_string(s.pipeline.model)); }});
    keys.push_back(pipeline_flag("edge_aware_whitepoint", "bilateral white map", &PipelineConfig::edge_aware_whitepoint));
    keys.push_back(pipeline_flag("edge_aware_csf", "bilateral CSF filtering", &PipelineConfig::edge_aware_csf));
    keys.push_back({"cat_variant", "vonkries_hpe, cat02 or cat16",
                    [](Settings& s, const std::string& v) { s.pipeline.cat_variant = cat_variant_from_string(v); },
                    [](const Settings& s) { return std::string(to_string(s.pipeline.cat_variant)); }});
    keys.push_back(pipeline_number("adaptation_degree", "degree of adaptation D", &PipelineConfig::adaptation_degree));
    keys.push_back(pipeline_flag("rescale_fl", "multiply F_L by 1.71", &PipelineConfig::rescale_fl));
    keys.push_back({"ucs", "ipt or oklab",
                    [](Settings& s, const std::string& v) { s.pipeline.ucs = ucs_from_string(v); },
                    [](const Settings& s) { return std::string(to_string(s.pipeline.ucs)); }});
    keys.push_back({"ppd", "pixels per degree of visual angle",
                    [](Settings& s, const std::string& v) { s.pipeline.viewing.ppd = parse<double>("ppd", v); },
                    [](const Settings& s) { return fmt(s.pipeline.viewing.ppd); }});
    keys.push_back({"max_luminance", "cd/m^2 of relative luminance 1",
                    [](Settings& s, const std::string& v) {
                        s.pipeline.viewing.max_luminance = parse<double>("max_luminance", v);
                    },
                    [](const Settings& s) { return fmt(s.pipeline.viewing.max_luminance); }});
    keys.push_back({"reference_white", "X, Y, Z of the reference white",
                    [](Settings& s, const std::string& v) {
                        const auto w = parse_list("reference_white", v, 3);
                        s.pipeline.viewing.reference_white = {w[0], w[1], w[2]};
                    },
                    [](const Settings& s) {
                        const auto& w = s.pipeline.viewing.reference_white;
                        return fmt_list({w.X, w.Y, w.Z});
                    }});
    keys.push_back(pipeline_number("white_sigma", "white map sigma in pixels, 0 for min(H, W) / 8",
                                   &PipelineConfig::white_sigma));
    keys.push_back(pipeline_number("white_floor", "white map floor in cd/m^2", &PipelineConfig::white_floor));
    keys.push_back(pipeline_number("sigma_r_fraction", "bilateral range sigma as a fraction of the guide range",
                                   &PipelineConfig::sigma_r_fraction));
    keys.push_back(pipeline_int("bins", "bilateral range bins", &PipelineConfig::bins));
    keys.push_back(pipeline_number("epsilon", "bilateral denominator floor", &PipelineConfig::epsilon));
    keys.push_back(pipeline_int("workers", "threads for per-bin work", &PipelineConfig::workers));
    keys.push_back(pipeline_flag("oblique", "oblique effect in CSF rasters", &PipelineConfig::oblique));
    keys.push_back(pipeline_flag("edge_enhancement", "edge enhancement gain", &PipelineConfig::edge_enhancement));
    keys.push_back({"edge_channels", "achromatic or all",
                    [](Settings& s, const std::string& v) {
                        s.pipeline.edge_channels = edge_channels_from_string(v);
                    },
                    [](const Settings& s) { return std::string(to_string(s.pipeline.edge_channels)); }});
    keys.push_back(pipeline_flag("local_contrast", "local contrast gamma step", &PipelineConfig::local_contrast));
    keys.push_back(pipeline_number("contrast_sigma", "contrast mask sigma in pixels, 0 for min(H, W) / 8",
                                   &PipelineConfig::contrast_sigma));
    keys.push_back(pipeline_number("pooling_exponent", "Minkowski pooling exponent", &PipelineConfig::pooling_exponent));
    keys.push_back({"csf_achromatic", "a, b, c of the achromatic CSF",
                    [](Settings& s, const std::string& v) {
                        const auto p = parse_list("csf_achromatic", v, 3);
                        movshon(s.pipeline.csf_models[0]) = {p[0], p[1], p[2]};
                    },
                    [](const Settings& s) {
                        if (const auto* p = std::get_if<MovshonParams>(&s.pipeline.csf_models[0].kind))
                            return fmt_list({p->a, p->b, p->c});
                        return std::string("[]");
                    }});
    keys.push_back({"csf_achromatic_flatten", "hold the achromatic CSF peak below its peak frequency",
                    [](Settings& s, const std::string& v) {
                        s.pipeline.csf_models[0].flatten = parse<bool>("csf_achromatic_flatten", v);
                    },
                    [](const Settings& s) { return fmt(s.pipeline.csf_models[0].flatten); }});
    keys.push_back({"csf_red_green", "a1, b1, c1, a2, b2, c2 of the red-green CSF",
                    [](Settings& s, const std::string& v) { set_lowpass(s.pipeline.csf_models[1], "csf_red_green", v); },
                    [](const Settings& s) { return lowpass_text(s.pipeline.csf_models[1]); }});
    keys.push_back({"csf_blue_yellow", "a1, b1, c1, a2, b2, c2 of the blue-yellow CSF",
                    [](Settings& s, const std::string& v) {
                        set_lowpass(s.pipeline.csf_models[2], "csf_blue_yellow", v);
                    },
                    [](const Settings& s) { return lowpass_text(s.pipeline.csf_models[2]); }});
    keys.push_back({"csf_nss", "multiply every CSF by f^(1/3)",
                    [](Settings& s, const std::string& v) {
                        const bool on = parse<bool>("csf_nss", v);
                        for (auto& m : s.pipeline.csf_models)
                            m.nss = on;
                    },
                    [](const Settings& s) { return fmt(s.pipeline.csf_models[0].nss); }});
    keys.push_back({"color_tables", "color table file, or builtin",
                    [](Settings& s, const std::string& v) {
                        s.pipeline.tables = v == "builtin" ? ColorTables::builtin()
                                                           : std::make_shared<const ColorTables>(ColorTables::load(v));
                        s.color_tables = v;
                    },
                    [](const Settings& s) { return s.color_tables; }});
    keys.push_back(number_key("display_luminance", "cd/m^2 of an 8-bit white", &Settings::load,
                              &LoadOptions::display_luminance));
    keys.push_back(number_key("luminance_scale", "cd/m^2 per unit of float image luminance", &Settings::load,
                              &LoadOptions::luminance_scale));
    keys.push_back({"durand_sigma_s_fraction", "Durand spatial sigma as a fraction of the diagonal",
                    [](Settings& s, const std::string& v) {
                        s.sweep.durand.sigma_s_fraction = parse<double>("durand_sigma_s_fraction", v);
                    },
                    [](const Settings& s) { return fmt(s.sweep.durand.sigma_s_fraction); }});
    keys.push_back({"durand_sigma_r", "Durand range sigma in log10 units",
                    [](Settings& s, const std::string& v) {
                        s.sweep.durand.sigma_r = parse<double>("durand_sigma_r", v);
                    },
                    [](const Settings& s) { return fmt(s.sweep.durand.sigma_r); }});
    keys.push_back(number_key("durand_base_contrast", "Durand base contrast during desaturation sweeps",
                              &Settings::sweep, &SweepOptions::durand_base_contrast));
    keys.push_back({"display_max", "tone-mapped display peak in cd/m^2",
                    [](Settings& s, const std::string& v) {
                        const double d = parse<double>("display_max", v);
                        s.sweep.durand.display_max = d;
                        s.sweep.reinhard.display_max = d;
                    },
                    [](const Settings& s) { return fmt(s.sweep.durand.display_max); }});
    keys.push_back({"reinhard_key", "Reinhard key value",
                    [](Settings& s, const std::string& v) { s.sweep.reinhard.key = parse<double>("reinhard_key", v); },
                    [](const Settings& s) { return fmt(s.sweep.reinhard.key); }});
    return keys;
}

}  // namespace

const std::vector<ConfigKey>& config_keys()
{
    static const std::vector<ConfigKey> keys = make_keys();
    return keys;
}

void set_config_value(Settings& settings, std::string_view key, const std::string& value)
{
    for (const auto& k : config_keys())
        if (k.name == key) {
            k.set(settings, value);
            return;
        }
    throw InputError(ErrorCode::InvalidConfig, "unknown config key '" + std::string(key) + "'");
}

void apply_config_text(Settings& settings, std::string_view text)
{
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw InputError(ErrorCode::InvalidConfig, std::string("config is not valid YAML: ") + e.what());
    }
    if (root.IsNull())
        return;
    if (!root.IsMap())
        throw InputError(ErrorCode::InvalidConfig, "config must be a flat key: value mapping");
    for (const auto& entry : root) {
        const std::string key = entry.first.as<std::string>();
        const YAML::Node& value = entry.second;
        if (value.IsScalar()) {
            set_config_value(settings, key, value.Scalar());
        } else if (value.IsSequence()) {
            YAML::Emitter out;
            out << YAML::Flow << value;
            set_config_value(settings, key, out.c_str());
        } else {
            throw InputError(ErrorCode::InvalidConfig, "'" + key + "' must be a scalar or a list");
        }
    }
}

void apply_config_file(Settings& settings, const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError(ErrorCode::Io, "cannot open config '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    apply_config_text(settings, ss.str());
}

std::string dump_config(const Settings& settings)
{
    std::string out;
    for (const auto& k : config_keys())
        out += "# " + k.help + "\n" + k.name + ": " + k.get(settings) + "\n";
    return out;
}

}  // namespace edgediff
