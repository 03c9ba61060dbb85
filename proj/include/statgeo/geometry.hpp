#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace statgeo {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point, Point) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

// A straight piece of exploration path, oriented from `a` to `b`.
struct Segment {
  Point a;
  Point b;

  double length() const { return distance(a, b); }
};

// Closed polygonal boundary piece. The closing edge back to the first vertex
// is implicit.
class Ring {
 public:
  // Throws InvalidShape unless the ring has >= 3 vertices, no repeated
  // consecutive vertex and no self-intersection.
  explicit Ring(std::vector<Point> vertices);

  std::span<const Point> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Point operator[](std::size_t i) const { return vertices_[i]; }

  // Unsigned shoelace area.
  double area() const;
  double length() const;

 private:
  std::vector<Point> vertices_;
};

// Even-odd region bounded by one or more rings. Holes are rings nested inside
// other rings; orientation is ignored.
class Shape {
 public:
  // Validates that rings do not cross each other and that the enclosed area
  // is positive.
  explicit Shape(std::vector<Ring> rings, std::string name = {});

  std::span<const Ring> rings() const { return rings_; }
  const std::string& name() const { return name_; }
  std::size_t vertex_count() const;

  Shape renamed(std::string name) const;

 private:
  std::vector<Ring> rings_;
  std::string name_;
};

struct RigidTransform {
  double rotation = 0.0;  // radians, counter-clockwise
  Point translation;
  bool mirror = false;  // x -> -x, applied before the rotation

  Point apply(Point p) const;
  Segment apply(const Segment& s) const { return {apply(s.a), apply(s.b)}; }
};

struct Circle {
  Point center;
  double radius = 0.0;
};

double exact_area(const Shape& shape);
double exact_perimeter(const Shape& shape);

// Even-odd membership. Membership of points exactly on the boundary is
// unspecified.
bool contains(const Shape& shape, Point pt);

// Smallest circle enclosing every vertex.
Circle bounding_circle(const Shape& shape);

Shape transform(const Shape& shape, const RigidTransform& t);

// Concatenates the rings of shapes with pairwise disjoint closures. Throws
// InvalidShape on overlap or contact.
Shape union_disjoint(std::span<const Shape> shapes, std::string name = {});

// Regular n-gon inscribed in the circle (center, radius), first vertex at angle 0.
Ring regular_polygon(Point center, double radius, int sides);

// Axis-aligned rectangle ring with lower-left corner `origin`.
Ring rectangle(Point origin, double width, double height);

bool segments_intersect(Point p1, Point p2, Point q1, Point q2);

}  // namespace statgeo
