#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "statgeo/chords.hpp"
#include "statgeo/estimators.hpp"
#include "statgeo/sampling.hpp"

namespace statgeo {

// Lines are generated in fixed-size chunks; chunk c draws from
// RandomStream::substream(seed, c). Results therefore do not depend on how
// chunks are spread over workers.
struct ExploreConfig {
  SamplerMode mode = SamplerMode::kIur;
  std::uint64_t seed = 0;
  ArenaCircle arena;
  AccumulatorConfig accumulator;
  std::uint64_t chunk_lines = 4096;
  // Consecutive degenerate draws tolerated before giving up.
  int max_resamples = 1000;
};

// Arena `arena_scale` times the bounding circle and histogram over its diameter.
ExploreConfig explore_config(const Shape& shape, SamplerMode mode, std::uint64_t seed, double arena_scale = 1.2,
                             std::size_t batches = 100);

// Same, for an explicitly chosen arena.
ExploreConfig explore_config(const ArenaCircle& arena, SamplerMode mode, std::uint64_t seed, std::size_t batches = 100);

// Seed of replicate `index` in an experiment rooted at `seed`.
std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t index);

// Incremental exploration of one shape, one line at a time.
class Exploration {
 public:
  Exploration(Shape shape, ExploreConfig config);

  // Samples lines until one can be classified, folds it into the
  // accumulator and returns it.
  const LineObservation& step();
  void run(std::uint64_t lines);

  const Shape& shape() const { return shape_; }
  const ExploreConfig& config() const { return config_; }
  const Accumulator& accumulator() const { return acc_; }
  std::uint64_t lines() const { return acc_.n_lines(); }
  std::uint64_t rejected() const { return rejected_; }
  const Segment& last_segment() const { return last_segment_; }
  bool has_estimate() const { return acc_.sum_L1() > 0.0; }
  EstimateReport report(std::uint64_t min_batch_lines = kMinBatchLines) const;

 private:
  Shape shape_;
  ExploreConfig config_;
  Accumulator acc_;
  std::optional<LineSource> source_;
  LineObservation obs_;
  Segment last_segment_;
  std::uint64_t rejected_ = 0;
};

struct ExploreResult {
  Accumulator accumulator;
  std::uint64_t rejected = 0;
};

// Explores `lines` lines, splitting chunks over `workers` threads and merging
// in chunk order.
ExploreResult explore(const Shape& shape, const ExploreConfig& config, std::uint64_t lines, unsigned workers = 1);

// Replicate spread of (A_hat, P_hat) after each line count in `line_counts`
// (strictly increasing). Replicate r is one exploration seeded with
// replicate_seed(seed, r), read off at every count, so smaller counts are
// prefixes of larger ones. The power laws are fitted when the counts allow.
ConvergenceSeries convergence(const Shape& shape, std::span<const std::uint64_t> line_counts,
                              std::uint64_t replicates, const ExploreConfig& base, unsigned workers = 1);

}  // namespace statgeo
