#include "statgeo/explore.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "statgeo/error.hpp"

namespace statgeo {

ExploreConfig explore_config(const ArenaCircle& arena, SamplerMode mode, std::uint64_t seed, std::size_t batches) {
  ExploreConfig c;
  c.mode = mode;
  c.seed = seed;
  c.arena = arena;
  c.accumulator.hist_max = 2.0 * arena.radius;
  c.accumulator.batches = batches;
  return c;
}

ExploreConfig explore_config(const Shape& shape, SamplerMode mode, std::uint64_t seed, double arena_scale,
                             std::size_t batches) {
  return explore_config(arena_for(shape, arena_scale), mode, seed, batches);
}

std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x51ed27ULL));
}

Exploration::Exploration(Shape shape, ExploreConfig config)
    : shape_(std::move(shape)), config_(config), acc_(config.accumulator) {
  if (config_.chunk_lines == 0) throw InvalidArgument("chunk size must be positive");
}

const LineObservation& Exploration::step() {
  const std::uint64_t index = acc_.n_lines();
  if (!source_ || index % config_.chunk_lines == 0) {
    source_.emplace(config_.mode, config_.arena, RandomStream::substream(config_.seed, index / config_.chunk_lines));
  }
  for (int attempt = 0;; ++attempt) {
    last_segment_ = source_->next();
    try {
      observe_into(shape_, last_segment_, obs_);
      break;
    } catch (const DegenerateLine&) {
      ++rejected_;
      if (attempt >= config_.max_resamples) throw;
    }
  }
  acc_.add(obs_);
  return obs_;
}

void Exploration::run(std::uint64_t lines) {
  for (std::uint64_t i = 0; i < lines; ++i) step();
}

EstimateReport Exploration::report(std::uint64_t min_batch_lines) const {
  EstimateReport r = make_report(acc_, rejected_, min_batch_lines);
  return r;
}

namespace {

ExploreResult explore_chunk(const Shape& shape, const ExploreConfig& config, std::uint64_t chunk,
                            std::uint64_t lines) {
  LineSource source(config.mode, config.arena, RandomStream::substream(config.seed, chunk));
  ExploreResult out{Accumulator(config.accumulator, chunk * config.chunk_lines), 0};
  LineObservation obs;
  for (std::uint64_t i = 0; i < lines; ++i) {
    for (int attempt = 0;; ++attempt) {
      try {
        observe_into(shape, source.next(), obs);
        break;
      } catch (const DegenerateLine&) {
        ++out.rejected;
        if (attempt >= config.max_resamples) throw;
      }
    }
    out.accumulator.add(obs);
  }
  return out;
}

}  // namespace

ExploreResult explore(const Shape& shape, const ExploreConfig& config, std::uint64_t lines, unsigned workers) {
  if (config.chunk_lines == 0) throw InvalidArgument("chunk size must be positive");
  const std::uint64_t chunks = (lines + config.chunk_lines - 1) / config.chunk_lines;
  auto chunk_size = [&](std::uint64_t c) { return std::min(config.chunk_lines, lines - c * config.chunk_lines); };

  std::vector<ExploreResult> parts;
  parts.reserve(chunks);
  if (workers <= 1 || chunks <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) parts.push_back(explore_chunk(shape, config, c, chunk_size(c)));
  } else {
    std::vector<std::optional<ExploreResult>> slots(chunks);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    const unsigned n_threads = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
    for (unsigned w = 0; w < n_threads; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (std::uint64_t c = w; c < chunks; c += n_threads) slots[c] = explore_chunk(shape, config, c, chunk_size(c));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (auto& s : slots) parts.push_back(std::move(*s));
  }

  ExploreResult total{Accumulator(config.accumulator), 0};
  for (const ExploreResult& p : parts) {
    total.accumulator.merge(p.accumulator);
    total.rejected += p.rejected;
  }
  return total;
}

namespace {

// Runs body(i) for i in [0, n) on up to `workers` threads, striding.
template <class F>
void parallel_for(std::uint64_t n, unsigned workers, F body) {
  const unsigned n_threads = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, std::max<std::uint64_t>(n, 1)));
  if (n_threads == 1) {
    for (std::uint64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n_threads);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < n_threads; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::uint64_t i = w; i < n; i += n_threads) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

ConvergenceSeries convergence(const Shape& shape, std::span<const std::uint64_t> line_counts,
                              std::uint64_t replicates, const ExploreConfig& base, unsigned workers) {
  if (line_counts.empty() || line_counts.front() == 0) throw InvalidArgument("line counts must be positive");
  if (!std::is_sorted(line_counts.begin(), line_counts.end(), std::less_equal<>())) {
    throw InvalidArgument("line counts must be strictly increasing");
  }
  if (replicates < 2) throw InvalidArgument("need at least two replicates");
  const std::size_t m = line_counts.size();
  // estimates[r * m + j] = (A_hat, P_hat) of replicate r after line_counts[j] lines
  std::vector<std::pair<double, double>> estimates(replicates * m);
  parallel_for(replicates, workers, [&](std::uint64_t r) {
    ExploreConfig cfg = base;
    cfg.seed = replicate_seed(base.seed, r);
    Exploration run(shape, cfg);
    for (std::size_t j = 0; j < m; ++j) {
      run.run(line_counts[j] - run.lines());
      estimates[r * m + j] = {estimate_area(run.accumulator()), estimate_perimeter(run.accumulator())};
    }
  });
  std::vector<ConvergenceSample> samples;
  const double n = static_cast<double>(replicates);
  for (std::size_t j = 0; j < m; ++j) {
    double ma = 0.0, mp = 0.0;
    for (std::uint64_t r = 0; r < replicates; ++r) {
      ma += estimates[r * m + j].first / n;
      mp += estimates[r * m + j].second / n;
    }
    double va = 0.0, vp = 0.0;
    for (std::uint64_t r = 0; r < replicates; ++r) {
      va += std::pow(estimates[r * m + j].first - ma, 2) / (n - 1.0);
      vp += std::pow(estimates[r * m + j].second - mp, 2) / (n - 1.0);
    }
    samples.push_back({static_cast<double>(line_counts[j]), std::sqrt(va), std::sqrt(vp)});
  }
  const double decades = std::log10(static_cast<double>(line_counts.back()) / static_cast<double>(line_counts.front()));
  if (m >= 4 && decades >= 2.0) return fit_convergence(std::move(samples));
  ConvergenceSeries out;
  out.samples = std::move(samples);
  return out;
}

}  // namespace statgeo
