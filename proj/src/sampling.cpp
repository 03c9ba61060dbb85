#include "statgeo/sampling.hpp"

#include <numbers>
#include <string>

#include "statgeo/error.hpp"

namespace statgeo {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream RandomStream::substream(std::uint64_t seed, std::uint64_t index) {
  return RandomStream(splitmix64(splitmix64(seed) ^ splitmix64(~index)));
}

ArenaCircle arena_for(const Shape& shape, double scale) {
  if (!(scale >= 1.0)) throw InvalidArgument("arena scale must be >= 1");
  const Circle c = bounding_circle(shape);
  return {c.center, c.radius * scale};
}

LineParam line_of(const Segment& seg, Point arena_center) {
  const Point d = seg.b - seg.a;
  // Normal is the tangent rotated clockwise, matching clip_to_arena.
  double theta = std::atan2(-d.x, d.y);
  if (theta < 0.0) theta += std::numbers::pi;
  if (theta >= std::numbers::pi) theta -= std::numbers::pi;
  const Point n{std::cos(theta), std::sin(theta)};
  return {theta, dot(seg.a - arena_center, n), arena_center};
}

std::string_view to_string(SamplerMode mode) {
  switch (mode) {
    case SamplerMode::kIur:
      return "iur";
    case SamplerMode::kBilliardCosine:
      return "billiard-cos";
    case SamplerMode::kBilliardUniform:
      return "billiard-uni";
  }
  return "?";
}

SamplerMode parse_sampler_mode(std::string_view name) {
  if (name == "iur") return SamplerMode::kIur;
  if (name == "billiard-cos" || name == "billiard-cosine") return SamplerMode::kBilliardCosine;
  if (name == "billiard-uni" || name == "billiard-uniform") return SamplerMode::kBilliardUniform;
  throw InvalidArgument("unknown sampler '" + std::string(name) + "'");
}

LineParam sample_iur(RandomStream& rng, const ArenaCircle& arena) {
  LineParam line;
  line.theta = std::numbers::pi * rng.uniform();
  line.p = arena.radius * (2.0 * rng.uniform() - 1.0);
  line.arena_center = arena.center;
  return line;
}

Segment clip_to_arena(const LineParam& line, const ArenaCircle& arena) {
  const double r = arena.radius;
  if (std::abs(line.p) > r) throw InvalidArgument("line misses the arena");
  const Point n{std::cos(line.theta), std::sin(line.theta)};
  const Point u{-n.y, n.x};
  const Point foot = arena.center + line.p * n;
  const double half = std::sqrt(std::max(0.0, r * r - line.p * line.p));
  return {foot - half * u, foot + half * u};
}

namespace {

double draw_reflection(RandomStream& rng, ReflectionPolicy policy) {
  const double u = rng.uniform();
  if (policy == ReflectionPolicy::kCosine) {
    // Inverse CDF of (1/2) cos(phi) on (-pi/2, pi/2).
    return std::asin(2.0 * u - 1.0);
  }
  return std::numbers::pi * (u - 0.5);
}

double inward_angle(Point position, const ArenaCircle& arena) {
  const Point in = arena.center - position;
  return std::atan2(in.y, in.x);
}

}  // namespace

BilliardState initial_billiard(RandomStream& rng, const ArenaCircle& arena, ReflectionPolicy policy) {
  const double a = 2.0 * std::numbers::pi * rng.uniform();
  BilliardState s;
  s.position = arena.center + arena.radius * Point{std::cos(a), std::sin(a)};
  s.heading = inward_angle(s.position, arena) + draw_reflection(rng, policy);
  return s;
}

std::pair<Segment, BilliardState> next_billiard(const BilliardState& state, RandomStream& rng,
                                                ReflectionPolicy policy, const ArenaCircle& arena) {
  const Point d{std::cos(state.heading), std::sin(state.heading)};
  const Point rel = state.position - arena.center;
  // Second root of |rel + t d| = R, the first being t = 0.
  const double travel = std::max(0.0, -2.0 * dot(rel, d));
  Point hit = state.position + travel * d;
  // Snap back onto the rim so round-off does not accumulate over bounces.
  const Point hr = hit - arena.center;
  const double hn = norm(hr);
  if (hn > 0.0) hit = arena.center + (arena.radius / hn) * hr;

  BilliardState next;
  next.position = hit;
  next.heading = inward_angle(hit, arena) + draw_reflection(rng, policy);
  return {Segment{state.position, hit}, next};
}

LineSource::LineSource(SamplerMode mode, const ArenaCircle& arena, RandomStream rng)
    : mode_(mode), arena_(arena), rng_(rng) {}

Segment LineSource::next() {
  if (mode_ == SamplerMode::kIur) return clip_to_arena(sample_iur(rng_, arena_), arena_);
  const ReflectionPolicy policy =
      mode_ == SamplerMode::kBilliardCosine ? ReflectionPolicy::kCosine : ReflectionPolicy::kUniform;
  if (!billiard_) billiard_ = initial_billiard(rng_, arena_, policy);
  auto [seg, state] = next_billiard(*billiard_, rng_, policy, arena_);
  billiard_ = state;
  return seg;
}

}  // namespace statgeo
