#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "statgeo/estimators.hpp"
#include "statgeo/explore.hpp"

namespace statgeo {

// Reference point of one shape in the (perimeter, area) plane, with the
// per-line noise prefactors of its estimates: sd(A_hat) ~ sigma0_a / sqrt(N).
struct DictEntry {
  std::string name;
  double p_ref = 0.0;
  double a_ref = 0.0;
  double sigma0_a = 0.0;
  double sigma0_p = 0.0;
  double corr = 0.0;
};

// Throws InvalidArgument unless references and prefactors are positive and
// |corr| < 1.
void validate(const DictEntry& entry);

struct Posterior {
  std::vector<std::pair<std::string, double>> probs;  // dictionary order
  std::string top;
  std::size_t top_index = 0;
  double top_prob = 0.0;

  double probability(const std::string& name) const;
};

enum class NoiseModel {
  kEntry,   // each entry's sigma0 / sqrt(N) and correlation
  kReport,  // the report's own batch-means errors, shared by all entries
  kAuto,    // kReport when the report carries valid errors, else kEntry
};

// Bivariate Gaussian likelihood per entry, uniform prior, normalized.
Posterior classify(const EstimateReport& report, std::span<const DictEntry> dict, NoiseModel noise = NoiseModel::kAuto);

bool should_stop(const Posterior& post, double threshold = 0.95);

// Squared Mahalanobis distance of (p, a) from the entry under its N-line
// covariance.
double mahalanobis2(const DictEntry& entry, double N, double p, double a);

struct Ellipse {
  double center_p = 0.0;
  double center_a = 0.0;
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double angle = 0.0;    // of the major axis from the P axis, radians
  double radius2 = 0.0;  // chi-square(2) quantile of the level
};

// Level set of the entry's N-line Gaussian enclosing probability `level`.
// Levels other than 0.75, 0.95 and 0.99 are rejected.
Ellipse confidence_ellipse(const DictEntry& entry, double N, double level);

struct LandscapeGrid {
  std::vector<double> p_axis;
  std::vector<double> a_axis;
  std::vector<int> labels;  // labels[ia * p_axis.size() + ip]; -1 = unlabeled
  std::vector<std::string> names;
  double N = 0.0;

  int label(std::size_t ip, std::size_t ia) const { return labels[ia * p_axis.size() + ip]; }
};

struct GridSpec {
  double p_min = 0.0;
  double p_max = 1.0;
  double a_min = 0.0;
  double a_max = 1.0;
  std::size_t p_steps = 100;
  std::size_t a_steps = 100;
};

// Bounding box of the entries, padded by `margin` of its extent.
GridSpec grid_around(std::span<const DictEntry> dict, double margin = 0.15, std::size_t steps = 200);

// Classifies a synthetic N-line report at each grid node (entry noise) and
// labels it with the winner when its posterior reaches `threshold`. Nodes
// far from every entry can still be labeled: the posterior is relative.
LandscapeGrid landscape(std::span<const DictEntry> dict, double N, const GridSpec& grid, double threshold = 0.95);

// Replicate covariance of (A_hat, P_hat) over `replicates` runs of `lines`
// lines each, scaled by sqrt(lines). References come from the exact oracles.
DictEntry calibrate(const Shape& shape, std::uint64_t lines, std::uint64_t replicates, const ExploreConfig& base,
                    unsigned workers = 1);

struct StopOptions {
  double threshold = 0.95;
  std::uint64_t max_lines = 100000;
  // No decision is taken before this many lines.
  std::uint64_t min_lines = 1;
  NoiseModel noise = NoiseModel::kAuto;
};

struct StopRun {
  std::uint64_t lines = 0;
  bool censored = false;
  std::string label;  // top label at the end; empty if no estimate exists
  double top_prob = 0.0;
  EstimateReport report;
};

// Steps `run` until the posterior reaches the threshold or max_lines lines
// have been used.
StopRun explore_until_confident(Exploration& run, std::span<const DictEntry> dict, const StopOptions& options);

struct StoppingDistribution {
  std::vector<StopRun> runs;
  double median_lines = 0.0;
  double wrong_fraction = 0.0;  // among runs that stopped
  std::size_t censored = 0;
};

// One exploration per seed of `shape` (whose name must be in the dictionary).
StoppingDistribution lines_to_recognize(const Shape& shape, std::span<const DictEntry> dict,
                                        std::span<const std::uint64_t> seeds, const StopOptions& options,
                                        SamplerMode mode = SamplerMode::kIur, double arena_scale = 1.2);

double median(std::vector<double> values);

}  // namespace statgeo
