#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <utility>

#include "statgeo/geometry.hpp"

namespace statgeo {

// Seeded 64-bit generator. Uniform variates are built from the raw 64-bit
// output so sequences are identical across standard library vendors.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Independent stream number `index` of the family rooted at `seed`.
  static RandomStream substream(std::uint64_t seed, std::uint64_t index);

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct ArenaCircle {
  Point center;
  double radius = 1.0;
};

// Arena concentric with the shape's bounding circle, `scale` times larger.
ArenaCircle arena_for(const Shape& shape, double scale = 1.2);

// The line {q : (q - center) . (cos theta, sin theta) = p}.
struct LineParam {
  double theta = 0.0;
  double p = 0.0;
  Point arena_center;
};

// Parameters of the carrier line of `seg`, normalized to theta in [0, pi).
LineParam line_of(const Segment& seg, Point arena_center);

struct BilliardState {
  Point position;
  double heading = 0.0;
};

enum class SamplerMode { kIur, kBilliardCosine, kBilliardUniform };
enum class ReflectionPolicy { kCosine, kUniform };

std::string_view to_string(SamplerMode mode);
// Accepts "iur", "billiard-cos", "billiard-uni" (and the long spellings
// "billiard-cosine", "billiard-uniform").
SamplerMode parse_sampler_mode(std::string_view name);

struct SamplerConfig {
  SamplerMode mode = SamplerMode::kIur;
  std::uint64_t seed = 0;
  ArenaCircle arena;
};

// theta is drawn before p; both uniform.
LineParam sample_iur(RandomStream& rng, const ArenaCircle& arena);

// Chord of the arena along `line`, oriented along (-sin theta, cos theta).
// Throws InvalidArgument when the line misses the arena.
Segment clip_to_arena(const LineParam& line, const ArenaCircle& arena);

// Random starting point on the arena rim with a heading drawn from `policy`.
BilliardState initial_billiard(RandomStream& rng, const ArenaCircle& arena, ReflectionPolicy policy);

// Straight flight to the next rim hit, then re-emission with an angle to the
// inward normal drawn from `policy`.
std::pair<Segment, BilliardState> next_billiard(const BilliardState& state, RandomStream& rng,
                                                ReflectionPolicy policy, const ArenaCircle& arena);

// Stateful generator of exploration segments for one random stream.
class LineSource {
 public:
  LineSource(SamplerMode mode, const ArenaCircle& arena, RandomStream rng);

  Segment next();
  const ArenaCircle& arena() const { return arena_; }

 private:
  SamplerMode mode_;
  ArenaCircle arena_;
  RandomStream rng_;
  std::optional<BilliardState> billiard_;
};

}  // namespace statgeo
