#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "raogeo/scene3d.hpp"

namespace raogeo {

enum class Projection { xy, xz, yz };

std::optional<Projection> parse_projection(std::string_view name);

// Static depiction of the scene: four labeled points, the five ray
// segments, and the three view-angle annotations, projected onto the
// chosen coordinate plane. Pure function of its inputs, so the bytes are
// identical across runs.
std::string render_scene_svg(const Scene& s, Projection projection);

}  // namespace raogeo
