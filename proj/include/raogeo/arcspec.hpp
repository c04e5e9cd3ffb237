#pragma once

#include <string_view>

#include "raogeo/conformal.hpp"

namespace raogeo {

// Arc descriptor grammar:
//   line x0 y0 x1 y1
//   circle cx cy r t0 t1
//   polyline x0 y0 x1 y1 [x2 y2 ...]
Arc parse_arc_spec(std::string_view spec);

// Built-in complex maps: identity, square, exp, reciprocal, conjugate.
// All but the conjugate carry their analytic derivative.
ComplexMap builtin_map(std::string_view name);

}  // namespace raogeo
