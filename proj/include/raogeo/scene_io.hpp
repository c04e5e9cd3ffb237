#pragma once

#include <string>
#include <string_view>

#include "raogeo/scene3d.hpp"

namespace raogeo {

// Line-oriented scene text: one `LABEL = x y z` per label A0, B0, C0, C1
// in any order, `#` starts a comment, whitespace around `=` is free.
// Throws ParseError with 1-based line/column on the first defect.
Scene parse_scene(std::string_view text);

// Emits the format parse_scene reads, full precision, fixed label order.
std::string serialize_scene(const Scene& s);

}  // namespace raogeo
