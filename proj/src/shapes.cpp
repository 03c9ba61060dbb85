#include "statgeo/shapes.hpp"

#include <cmath>

#include "statgeo/error.hpp"

namespace statgeo::shapes {
namespace {

// Area shared by the square, triangle and statue entries of the dictionary.
constexpr double kPackedArea = 6.25;

// Comb with three teeth pointing up; area 5.1 at unit scale.
Ring comb(Point origin, double scale) {
  const std::vector<Point> outline = {{0, 0},   {3, 0},     {3, 2.5},   {2.4, 2.5}, {2.4, 0.5}, {1.8, 0.5},
                                      {1.8, 2.5}, {1.2, 2.5}, {1.2, 0.5}, {0.6, 0.5}, {0.6, 2.5}, {0, 2.5}};
  std::vector<Point> vs;
  vs.reserve(outline.size());
  for (Point p : outline) vs.push_back(origin + scale * p);
  return Ring(std::move(vs));
}

}  // namespace

Shape disk(double radius, int sides) { return Shape({regular_polygon({0.0, 0.0}, radius, sides)}, "disk"); }

Shape unit_square() { return Shape({rectangle({0.0, 0.0}, 1.0, 1.0)}, "unit-square"); }

Shape square(double side) { return Shape({rectangle({0.0, 0.0}, side, side)}, "square"); }

Shape equilateral_triangle(double area) {
  const double a = std::sqrt(4.0 * area / std::sqrt(3.0));
  return Shape({Ring({{0.0, 0.0}, {a, 0.0}, {a / 2.0, a * std::sqrt(3.0) / 2.0}})}, "triangle");
}

Shape annulus(double inner, double outer, int sides) {
  return Shape({regular_polygon({0.0, 0.0}, outer, sides), regular_polygon({0.0, 0.0}, inner, sides)}, "annulus");
}

Shape two_squares(double gap) {
  return Shape({rectangle({0.0, 0.0}, 1.0, 1.0), rectangle({1.0 + gap, 0.0}, 1.0, 1.0)}, "two-squares");
}

Shape square_with_hole(double hole) {
  const double lo = 0.5 - hole / 2.0;
  return Shape({rectangle({0.0, 0.0}, 1.0, 1.0), rectangle({lo, lo}, hole, hole)}, "square-with-hole");
}

Shape l_shape() {
  return Shape({Ring({{0.0, 0.0}, {2.0, 0.0}, {2.0, 1.0}, {1.0, 1.0}, {1.0, 3.0}, {0.0, 3.0}})}, "l-shape");
}

Shape statue(double area) {
  const double scale = std::sqrt(area / (2.0 * 5.1));
  return Shape({comb({0.0, 0.0}, scale), comb({3.6 * scale, 0.0}, scale)}, "statue");
}

std::vector<Shape> dictionary_shapes() {
  return {disk(), square(2.5), equilateral_triangle(kPackedArea), annulus(), statue(kPackedArea)};
}

std::vector<std::string> builtin_names() {
  return {"disk", "square", "triangle", "annulus", "statue", "unit-square", "two-squares", "square-with-hole",
          "l-shape"};
}

Shape builtin(std::string_view name) {
  if (name == "disk") return disk();
  if (name == "square") return square(2.5);
  if (name == "triangle") return equilateral_triangle(kPackedArea);
  if (name == "annulus") return annulus();
  if (name == "statue") return statue(kPackedArea);
  if (name == "unit-square") return unit_square();
  if (name == "two-squares") return two_squares(1.0);
  if (name == "square-with-hole") return square_with_hole();
  if (name == "l-shape") return l_shape();
  throw InvalidArgument("unknown built-in shape '" + std::string(name) + "'");
}

}  // namespace statgeo::shapes
