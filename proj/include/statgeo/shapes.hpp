#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "statgeo/geometry.hpp"

namespace statgeo::shapes {

inline constexpr int kCircleSides = 64;

Shape disk(double radius = 1.0, int sides = kCircleSides);
Shape unit_square();
Shape square(double side);
Shape equilateral_triangle(double area);
// Concentric polygonized circles; the inner one is a hole.
Shape annulus(double inner = 1.0, double outer = 2.0, int sides = kCircleSides);
// Two unit squares side by side, `gap` apart.
Shape two_squares(double gap);
// Square of side 1 with a centered square hole of side `hole`.
Shape square_with_hole(double hole = 0.5);
Shape l_shape();
// Two three-toothed combs with the given total area. Non-convex and
// disconnected; a line can cut up to six chords.
Shape statue(double area);

// The five dictionary shapes: disk, square, triangle, annulus, statue.
std::vector<Shape> dictionary_shapes();
std::vector<std::string> builtin_names();
// Any of builtin_names(); throws InvalidArgument otherwise.
Shape builtin(std::string_view name);

}  // namespace statgeo::shapes
