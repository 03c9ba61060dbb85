#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "statgeo/chords.hpp"

namespace statgeo {

// Constant of the generalized area invariant: A = (pi/3) <L3> / <L1>.
inline constexpr double kAreaConstant = 3.14159265358979323846 / 3.0;

struct AccumulatorConfig {
  std::size_t hist_bins = 64;
  double hist_max = 2.0;  // usually the arena diameter
  std::size_t batches = 100;

  friend bool operator==(const AccumulatorConfig&, const AccumulatorConfig&) = default;
};

struct BatchSums {
  std::uint64_t lines = 0;
  double sum_L1 = 0.0;
  double sum_L3 = 0.0;
  std::uint64_t chord_count = 0;
  double chord_sum = 0.0;
};

// Streaming sums over exploration lines. Memory is fixed by the config and
// does not grow with the number of lines. Line i (counted from
// `first_line`) is credited to batch (first_line + i) mod batches.
class Accumulator {
 public:
  explicit Accumulator(AccumulatorConfig config = {}, std::uint64_t first_line = 0);

  void add(const LineObservation& obs);
  // Field-wise sum. Throws ConfigMismatch if the binning differs.
  void merge(const Accumulator& other);

  const AccumulatorConfig& config() const { return config_; }
  std::uint64_t n_lines() const { return n_lines_; }
  std::uint64_t n_hit() const { return n_hit_; }
  double sum_L1() const { return sum_L1_; }
  double sum_L3() const { return sum_L3_; }
  std::uint64_t chord_count() const { return chord_count_; }
  double chord_sum() const { return chord_sum_; }
  double chord_sum3() const { return chord_sum3_; }
  double l_max_seen() const { return l_max_seen_; }
  std::span<const std::uint64_t> histogram() const { return histogram_; }
  std::span<const BatchSums> batches() const { return batches_; }

  // Scalars of state held, for frugality checks.
  std::size_t state_scalars() const;

 private:
  AccumulatorConfig config_;
  std::uint64_t n_lines_ = 0;
  std::uint64_t n_hit_ = 0;
  double sum_L1_ = 0.0;
  double sum_L3_ = 0.0;
  std::uint64_t chord_count_ = 0;
  double chord_sum_ = 0.0;
  double chord_sum3_ = 0.0;
  double l_max_seen_ = 0.0;
  std::uint64_t next_batch_ = 0;
  std::vector<std::uint64_t> histogram_;
  std::vector<BatchSums> batches_;
};

Accumulator merge(const Accumulator& a, const Accumulator& b);

struct EstimateReport {
  std::uint64_t N = 0;
  std::uint64_t n_hit = 0;
  double area_hat = 0.0;
  double perim_hat = 0.0;
  double mean_chord = 0.0;
  double stderr_A = 0.0;
  double stderr_P = 0.0;
  double corr_AP = 0.0;
  // True when the batch-means errors above were computable.
  bool stderr_valid = false;
  std::uint64_t rejected_lines = 0;
};

// (pi/3) * sum L3 / sum L1. Throws InsufficientData without hits.
double estimate_area(const Accumulator& acc);
double estimate_mean_chord(const Accumulator& acc);
// Cauchy: pi * A / <l>.
double estimate_perimeter(const Accumulator& acc);
// Crofton-Hostinsky on individual chords; valid only for convex shapes.
double convex_third_moment_area(const Accumulator& acc);

struct BatchErrors {
  double stderr_A = 0.0;
  double stderr_P = 0.0;
  double corr = 0.0;
  std::size_t used_batches = 0;
};

// Batch-means standard errors of (A, P). Batches without chords are skipped;
// throws InsufficientData if fewer than two remain.
BatchErrors stderrs(const Accumulator& acc);

// Below this many lines per batch the per-batch ratio estimates are too
// skewed for their spread to be trusted as an error bar.
inline constexpr std::uint64_t kMinBatchLines = 100;

// Report with estimates; errors are filled when at least `min_batch_lines`
// lines fell in every batch.
EstimateReport make_report(const Accumulator& acc, std::uint64_t rejected = 0,
                           std::uint64_t min_batch_lines = kMinBatchLines);

// Chord histogram rebinned onto `bins` equal bins of l / l_max_seen in [0, 1].
// Each source bin spreads its mass uniformly over its span; the bin holding
// l_max_seen is credited to the last output bin.
std::vector<double> normalized_histogram(const Accumulator& acc, std::size_t bins = 64);

// sum p ln(p / q) with q smoothed by `epsilon` per bin and renormalized.
double kl_divergence(std::span<const double> p, std::span<const double> q, double epsilon = 1e-9);

struct ConvergenceSample {
  double N = 0.0;
  double sigma_A = 0.0;
  double sigma_P = 0.0;
};

struct PowerFit {
  double prefactor = 0.0;
  double exponent = 0.0;
};

// Least squares of ln sigma on ln N.
PowerFit fit_power(std::span<const double> N, std::span<const double> sigma);

struct ConvergenceSeries {
  std::vector<ConvergenceSample> samples;
  PowerFit fit_A;
  PowerFit fit_P;
};

ConvergenceSeries fit_convergence(std::vector<ConvergenceSample> samples);

}  // namespace statgeo
