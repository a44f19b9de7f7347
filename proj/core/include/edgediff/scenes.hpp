// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "edgediff/image.hpp"

namespace edgediff {

/// Procedural HDR test scenes in absolute units (cd/m^2).
enum class SceneKind {
    NightStreet,     ///< dark facades, lit windows, sodium and LED lamps
    SunlitInterior,  ///< dim room, bright window, sun patch on the floor
    SpotlitPatches,  ///< colored patch chart under two off-axis spotlights
};

const char* to_string(SceneKind kind);
SceneKind scene_kind_from_string(std::string_view name);

/// Same arguments give the same image on every run.
TristimulusImage synthetic_scene(SceneKind kind, int width, int height, std::uint64_t seed = 1);

struct NamedScene {
    std::string name;
    TristimulusImage image;
};

/// The first `count` scenes, cycling through the kinds with distinct seeds.
std::vector<NamedScene> synthetic_scenes(int count, int width, int height);

}  // namespace edgediff
