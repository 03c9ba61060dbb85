#include "statgeo/geometry.hpp"

#include <algorithm>
#include <numbers>

#include "statgeo/error.hpp"

namespace statgeo {
namespace {

// Point-in-polygon rays are cast along this direction. The slope is
// irrational so that axis-aligned edges and lattice vertices never lie
// exactly on the ray.
const double kRayAngle = std::numbers::sqrt2 / 10.0;
const double kRayCos = std::cos(kRayAngle);
const double kRaySin = std::sin(kRayAngle);

// Sign of the turn a -> b -> c. Turns within rounding of collinear count as
// collinear, otherwise collinear edges of rotated shapes can get opposite
// signs and look like crossings.
int orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  const double tol = 1e-12 * norm(b - a) * norm(c - a);
  if (v > tol) return 1;
  if (v < -tol) return -1;
  return 0;
}

bool on_segment(Point p, Point q, Point r) {
  // r collinear with pq: is it within the bounding box?
  return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
         r.y <= std::max(p.y, q.y);
}

struct Box {
  double xmin, ymin, xmax, ymax;

  bool overlaps(const Box& o) const {
    return xmin <= o.xmax && o.xmin <= xmax && ymin <= o.ymax && o.ymin <= ymax;
  }
};

Box box_of(const Ring& ring) {
  Box b{ring[0].x, ring[0].y, ring[0].x, ring[0].y};
  for (Point p : ring.vertices()) {
    b.xmin = std::min(b.xmin, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.xmax = std::max(b.xmax, p.x);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

// Crossing parity of the perturbed ray from `pt` against one ring.
bool ring_parity(const Ring& ring, Point pt) {
  bool inside = false;
  const auto vs = ring.vertices();
  const std::size_t n = vs.size();
  auto rot = [&](Point p) {
    const Point d = p - pt;
    // Rotate so the ray direction maps to +x.
    return Point{d.x * kRayCos + d.y * kRaySin, -d.x * kRaySin + d.y * kRayCos};
  };
  Point a = rot(vs[n - 1]);
  for (std::size_t i = 0; i < n; ++i) {
    const Point b = rot(vs[i]);
    if ((a.y > 0.0) != (b.y > 0.0)) {
      const double x = a.x + (0.0 - a.y) * (b.x - a.x) / (b.y - a.y);
      if (x > 0.0) inside = !inside;
    }
    a = b;
  }
  return inside;
}

bool rings_touch(const Ring& r, const Ring& q) {
  if (!box_of(r).overlaps(box_of(q))) return false;
  const std::size_t n = r.size();
  const std::size_t m = q.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a1 = r[i];
    const Point a2 = r[(i + 1) % n];
    for (std::size_t j = 0; j < m; ++j) {
      if (segments_intersect(a1, a2, q[j], q[(j + 1) % m])) return true;
    }
  }
  return false;
}

}  // namespace

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

Ring::Ring(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw InvalidShape("ring needs at least 3 vertices, got " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Point p = vertices_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidShape("non-finite ring vertex");
    if (p == vertices_[(i + 1) % n]) throw InvalidShape("repeated consecutive vertex in ring");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = vertices_[i];
    const Point b = vertices_[(i + 1) % n];
    const Point c = vertices_[(i + 2) % n];
    // Adjacent edges may only share their common vertex.
    if (cross(a - b, c - b) == 0.0 && dot(a - b, c - b) > 0.0) {
      throw InvalidShape("ring folds back on itself");
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing edge
      if (segments_intersect(a, b, vertices_[j], vertices_[(j + 1) % n])) {
        throw InvalidShape("ring is not simple: edges " + std::to_string(i) + " and " +
                           std::to_string(j) + " intersect");
      }
    }
  }
}

double Ring::area() const {
  double twice = 0.0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(vertices_[i], vertices_[(i + 1) % n]);
  }
  return std::abs(twice) / 2.0;
}

double Ring::length() const {
  double total = 0.0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) total += distance(vertices_[i], vertices_[(i + 1) % n]);
  return total;
}

Shape::Shape(std::vector<Ring> rings, std::string name)
    : rings_(std::move(rings)), name_(std::move(name)) {
  if (rings_.empty()) throw InvalidShape("shape has no rings");
  for (std::size_t i = 0; i < rings_.size(); ++i) {
    for (std::size_t j = i + 1; j < rings_.size(); ++j) {
      if (rings_touch(rings_[i], rings_[j])) {
        throw InvalidShape("rings " + std::to_string(i) + " and " + std::to_string(j) + " cross or touch");
      }
    }
  }
  if (!(exact_area(*this) > 0.0)) throw InvalidShape("shape encloses no area");
}

std::size_t Shape::vertex_count() const {
  std::size_t n = 0;
  for (const Ring& r : rings_) n += r.size();
  return n;
}

Shape Shape::renamed(std::string name) const {
  Shape copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

Point RigidTransform::apply(Point p) const {
  if (mirror) p.x = -p.x;
  const double c = std::cos(rotation);
  const double s = std::sin(rotation);
  return Point{c * p.x - s * p.y, s * p.x + c * p.y} + translation;
}

double exact_area(const Shape& shape) {
  const auto rings = shape.rings();
  double area = 0.0;
  for (std::size_t i = 0; i < rings.size(); ++i) {
    int depth = 0;
    for (std::size_t j = 0; j < rings.size(); ++j) {
      if (i != j && ring_parity(rings[j], rings[i][0])) ++depth;
    }
    area += (depth % 2 == 0 ? 1.0 : -1.0) * rings[i].area();
  }
  return area;
}

double exact_perimeter(const Shape& shape) {
  double total = 0.0;
  for (const Ring& r : shape.rings()) total += r.length();
  return total;
}

bool contains(const Shape& shape, Point pt) {
  bool inside = false;
  for (const Ring& r : shape.rings()) {
    if (ring_parity(r, pt)) inside = !inside;
  }
  return inside;
}

namespace {

Circle circle_from(Point a, Point b) {
  const Point c = 0.5 * (a + b);
  return {c, distance(a, c)};
}

Circle circle_from(Point a, Point b, Point c) {
  const Point ab = b - a;
  const Point ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  if (d == 0.0) {
    // Collinear: the farthest pair spans the circle.
    Circle best = circle_from(a, b);
    for (const Circle& cand : {circle_from(a, c), circle_from(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double ab2 = dot(ab, ab);
  const double ac2 = dot(ac, ac);
  const Point u{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
  return {a + u, norm(u)};
}

bool covers(const Circle& c, Point p) { return distance(c.center, p) <= c.radius * (1.0 + 1e-12) + 1e-300; }

}  // namespace

Circle bounding_circle(const Shape& shape) {
  std::vector<Point> pts;
  pts.reserve(shape.vertex_count());
  for (const Ring& r : shape.rings()) {
    for (Point p : r.vertices()) pts.push_back(p);
  }
  // Incremental minimum enclosing circle (Welzl, iterative form).
  Circle c{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (covers(c, pts[i])) continue;
    c = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (covers(c, pts[j])) continue;
      c = circle_from(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (!covers(c, pts[k])) c = circle_from(pts[i], pts[j], pts[k]);
      }
    }
  }
  return c;
}

Shape transform(const Shape& shape, const RigidTransform& t) {
  std::vector<Ring> rings;
  rings.reserve(shape.rings().size());
  for (const Ring& r : shape.rings()) {
    std::vector<Point> vs;
    vs.reserve(r.size());
    for (Point p : r.vertices()) vs.push_back(t.apply(p));
    rings.emplace_back(std::move(vs));
  }
  return Shape(std::move(rings), shape.name());
}

Shape union_disjoint(std::span<const Shape> shapes, std::string name) {
  if (shapes.empty()) throw InvalidShape("union of zero shapes");
  if (shapes.size() == 1) {
    return name.empty() ? shapes[0] : shapes[0].renamed(std::move(name));
  }
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    for (std::size_t j = i + 1; j < shapes.size(); ++j) {
      for (const Ring& a : shapes[i].rings()) {
        if (contains(shapes[j], a[0])) throw InvalidShape("union inputs overlap");
        for (const Ring& b : shapes[j].rings()) {
          if (rings_touch(a, b)) throw InvalidShape("union inputs overlap or touch");
        }
      }
      for (const Ring& b : shapes[j].rings()) {
        if (contains(shapes[i], b[0])) throw InvalidShape("union inputs overlap");
      }
    }
  }
  std::vector<Ring> rings;
  for (const Shape& s : shapes) {
    for (const Ring& r : s.rings()) rings.push_back(r);
  }
  return Shape(std::move(rings), std::move(name));
}

Ring regular_polygon(Point center, double radius, int sides) {
  if (sides < 3) throw InvalidArgument("polygon needs at least 3 sides");
  std::vector<Point> vs;
  vs.reserve(static_cast<std::size_t>(sides));
  for (int i = 0; i < sides; ++i) {
    const double a = 2.0 * std::numbers::pi * i / sides;
    vs.push_back(center + Point{radius * std::cos(a), radius * std::sin(a)});
  }
  return Ring(std::move(vs));
}

Ring rectangle(Point origin, double width, double height) {
  return Ring({origin, origin + Point{width, 0.0}, origin + Point{width, height}, origin + Point{0.0, height}});
}

}  // namespace statgeo
