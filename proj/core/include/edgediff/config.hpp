// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "edgediff/image_io.hpp"
#include "edgediff/pipeline.hpp"
#include "edgediff/sweep.hpp"

namespace edgediff {

/// Everything a config file or the command line can set.
struct Settings {
    PipelineConfig pipeline;
    LoadOptions load;
    SweepOptions sweep;
    std::string color_tables = "builtin";
};

struct ConfigKey {
    std::string name;
    std::string help;
    std::function<void(Settings&, const std::string&)> set;
    std::function<std::string(const Settings&)> get;
};

/// Every settable key, in file order.
const std::vector<ConfigKey>& config_keys();

/// Throws InputError(InvalidConfig) for unknown keys or unparsable values.
void set_config_value(Settings& settings, std::string_view key, const std::string& value);

/// Applies a flat YAML mapping of key: value pairs.
void apply_config_text(Settings& settings, std::string_view text);
void apply_config_file(Settings& settings, const std::filesystem::path& path);

/// Flat YAML listing of every key; apply_config_text reads it back.
std::string dump_config(const Settings& settings);

}  // namespace edgediff
