#include "statgeo/recognition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "statgeo/error.hpp"

namespace statgeo {
namespace {

// Covariance in (P, A) order.
struct Cov2 {
  double pp = 0.0;
  double aa = 0.0;
  double pa = 0.0;

  double det() const { return pp * aa - pa * pa; }

  // d^T C^-1 d for d = (dp, da).
  double quad(double dp, double da) const { return (aa * dp * dp - 2.0 * pa * dp * da + pp * da * da) / det(); }
};

Cov2 entry_cov(const DictEntry& e, double N) {
  const double sp = e.sigma0_p / std::sqrt(N);
  const double sa = e.sigma0_a / std::sqrt(N);
  return {sp * sp, sa * sa, e.corr * sp * sa};
}

}  // namespace

void validate(const DictEntry& e) {
  if (!(e.p_ref > 0.0 && e.a_ref > 0.0 && e.sigma0_a > 0.0 && e.sigma0_p > 0.0) || !(std::abs(e.corr) < 1.0)) {
    throw InvalidArgument("dictionary entry '" + e.name + "' needs positive references and sigmas and |corr| < 1");
  }
}

double Posterior::probability(const std::string& name) const {
  for (const auto& [n, p] : probs) {
    if (n == name) return p;
  }
  return 0.0;
}

Posterior classify(const EstimateReport& report, std::span<const DictEntry> dict, NoiseModel noise) {
  if (dict.empty()) throw InvalidArgument("cannot classify against an empty dictionary");
  const bool use_report = noise == NoiseModel::kReport || (noise == NoiseModel::kAuto && report.stderr_valid);
  if (use_report && !report.stderr_valid) throw InsufficientData("report carries no error estimate");
  const double N = static_cast<double>(std::max<std::uint64_t>(report.N, 1));

  std::vector<double> loglik(dict.size());
  for (std::size_t i = 0; i < dict.size(); ++i) {
    const DictEntry& e = dict[i];
    Cov2 c;
    if (use_report) {
      c = {report.stderr_P * report.stderr_P, report.stderr_A * report.stderr_A,
           report.corr_AP * report.stderr_P * report.stderr_A};
    } else {
      validate(e);
      c = entry_cov(e, N);
    }
    loglik[i] = -0.5 * c.quad(report.perim_hat - e.p_ref, report.area_hat - e.a_ref) - 0.5 * std::log(c.det());
  }
  const double top = *std::max_element(loglik.begin(), loglik.end());
  double total = 0.0;
  for (double& l : loglik) {
    l = std::exp(l - top);
    total += l;
  }
  Posterior post;
  post.probs.reserve(dict.size());
  for (std::size_t i = 0; i < dict.size(); ++i) {
    const double p = loglik[i] / total;
    post.probs.emplace_back(dict[i].name, p);
    if (i == 0 || p > post.top_prob) {
      post.top_prob = p;
      post.top_index = i;
    }
  }
  post.top = dict[post.top_index].name;
  return post;
}

bool should_stop(const Posterior& post, double threshold) { return post.top_prob >= threshold; }

double mahalanobis2(const DictEntry& entry, double N, double p, double a) {
  return entry_cov(entry, N).quad(p - entry.p_ref, a - entry.a_ref);
}

Ellipse confidence_ellipse(const DictEntry& entry, double N, double level) {
  if (level != 0.75 && level != 0.95 && level != 0.99) {
    throw InvalidArgument("confidence level must be 0.75, 0.95 or 0.99");
  }
  if (!(N > 0.0)) throw InvalidArgument("line count must be positive");
  validate(entry);
  const Cov2 c = entry_cov(entry, N);
  // Eigenvalues of the symmetric 2x2 covariance.
  const double mean = 0.5 * (c.pp + c.aa);
  const double half_diff = 0.5 * (c.pp - c.aa);
  const double root = std::sqrt(half_diff * half_diff + c.pa * c.pa);
  Ellipse e;
  e.center_p = entry.p_ref;
  e.center_a = entry.a_ref;
  e.radius2 = -2.0 * std::log(1.0 - level);  // chi-square, 2 dof
  e.semi_major = std::sqrt((mean + root) * e.radius2);
  e.semi_minor = std::sqrt(std::max(0.0, mean - root) * e.radius2);
  e.angle = 0.5 * std::atan2(2.0 * c.pa, c.pp - c.aa);
  return e;
}

GridSpec grid_around(std::span<const DictEntry> dict, double margin, std::size_t steps) {
  if (dict.empty()) throw InvalidArgument("empty dictionary");
  GridSpec g;
  g.p_min = g.p_max = dict[0].p_ref;
  g.a_min = g.a_max = dict[0].a_ref;
  for (const DictEntry& e : dict) {
    g.p_min = std::min(g.p_min, e.p_ref);
    g.p_max = std::max(g.p_max, e.p_ref);
    g.a_min = std::min(g.a_min, e.a_ref);
    g.a_max = std::max(g.a_max, e.a_ref);
  }
  const double dp = std::max(g.p_max - g.p_min, 0.1 * g.p_max) * margin;
  const double da = std::max(g.a_max - g.a_min, 0.1 * g.a_max) * margin;
  g.p_min = std::max(0.0, g.p_min - dp);
  g.p_max += dp;
  g.a_min = std::max(0.0, g.a_min - da);
  g.a_max += da;
  g.p_steps = g.a_steps = steps;
  return g;
}

LandscapeGrid landscape(std::span<const DictEntry> dict, double N, const GridSpec& grid, double threshold) {
  if (dict.empty()) throw InvalidArgument("empty dictionary");
  if (grid.p_steps < 2 || grid.a_steps < 2 || !(grid.p_max > grid.p_min) || !(grid.a_max > grid.a_min)) {
    throw InvalidArgument("landscape grid needs increasing axes with at least two steps");
  }
  LandscapeGrid out;
  out.N = N;
  for (const DictEntry& e : dict) out.names.push_back(e.name);
  for (std::size_t i = 0; i < grid.p_steps; ++i) {
    out.p_axis.push_back(grid.p_min + (grid.p_max - grid.p_min) * i / (grid.p_steps - 1));
  }
  for (std::size_t i = 0; i < grid.a_steps; ++i) {
    out.a_axis.push_back(grid.a_min + (grid.a_max - grid.a_min) * i / (grid.a_steps - 1));
  }
  out.labels.assign(out.p_axis.size() * out.a_axis.size(), -1);
  EstimateReport probe;
  probe.N = static_cast<std::uint64_t>(std::llround(N));
  for (std::size_t ia = 0; ia < out.a_axis.size(); ++ia) {
    for (std::size_t ip = 0; ip < out.p_axis.size(); ++ip) {
      probe.perim_hat = out.p_axis[ip];
      probe.area_hat = out.a_axis[ia];
      const Posterior post = classify(probe, dict, NoiseModel::kEntry);
      if (should_stop(post, threshold)) out.labels[ia * out.p_axis.size() + ip] = static_cast<int>(post.top_index);
    }
  }
  return out;
}

DictEntry calibrate(const Shape& shape, std::uint64_t lines, std::uint64_t replicates, const ExploreConfig& base,
                    unsigned workers) {
  if (lines < 1000) throw InvalidArgument("calibration needs at least 1000 lines per replicate");
  if (replicates < 30) throw InvalidArgument("calibration needs at least 30 replicates");
  std::vector<double> as;
  std::vector<double> ps;
  for (std::uint64_t r = 0; r < replicates; ++r) {
    ExploreConfig cfg = base;
    cfg.seed = replicate_seed(base.seed, r);
    const ExploreResult res = explore(shape, cfg, lines, workers);
    as.push_back(estimate_area(res.accumulator));
    ps.push_back(estimate_perimeter(res.accumulator));
  }
  const double n = static_cast<double>(replicates);
  double ma = 0.0;
  double mp = 0.0;
  for (std::size_t i = 0; i < as.size(); ++i) {
    ma += as[i] / n;
    mp += ps[i] / n;
  }
  double saa = 0.0;
  double spp = 0.0;
  double sap = 0.0;
  for (std::size_t i = 0; i < as.size(); ++i) {
    saa += (as[i] - ma) * (as[i] - ma);
    spp += (ps[i] - mp) * (ps[i] - mp);
    sap += (as[i] - ma) * (ps[i] - mp);
  }
  DictEntry e;
  e.name = shape.name();
  e.a_ref = exact_area(shape);
  e.p_ref = exact_perimeter(shape);
  const double m = static_cast<double>(lines);
  e.sigma0_a = std::sqrt(saa / (n - 1.0) * m);
  e.sigma0_p = std::sqrt(spp / (n - 1.0) * m);
  e.corr = sap / std::sqrt(saa * spp);
  validate(e);
  return e;
}

StopRun explore_until_confident(Exploration& run, std::span<const DictEntry> dict, const StopOptions& options) {
  if (dict.empty()) throw InvalidArgument("empty dictionary");
  StopRun out;
  auto decide = [&]() -> bool {
    if (!run.has_estimate() || run.accumulator().chord_count() == 0) return false;
    out.report = run.report();
    const Posterior post = classify(out.report, dict, options.noise);
    out.label = post.top;
    out.top_prob = post.top_prob;
    return run.lines() >= options.min_lines && should_stop(post, options.threshold);
  };
  while (run.lines() < options.max_lines) {
    run.step();
    if (decide()) {
      out.lines = run.lines();
      return out;
    }
  }
  out.lines = run.lines();
  out.censored = true;
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

StoppingDistribution lines_to_recognize(const Shape& shape, std::span<const DictEntry> dict,
                                        std::span<const std::uint64_t> seeds, const StopOptions& options,
                                        SamplerMode mode, double arena_scale) {
  if (std::none_of(dict.begin(), dict.end(), [&](const DictEntry& e) { return e.name == shape.name(); })) {
    throw InvalidArgument("shape '" + shape.name() + "' is not in the dictionary");
  }
  StoppingDistribution dist;
  std::vector<double> stop_lines;
  std::size_t wrong = 0;
  for (std::uint64_t seed : seeds) {
    Exploration run(shape, explore_config(shape, mode, seed, arena_scale));
    StopRun r = explore_until_confident(run, dict, options);
    if (r.censored) {
      ++dist.censored;
    } else if (r.label != shape.name()) {
      ++wrong;
    }
    stop_lines.push_back(static_cast<double>(r.lines));
    dist.runs.push_back(std::move(r));
  }
  dist.median_lines = median(stop_lines);
  const std::size_t stopped = dist.runs.size() - dist.censored;
  dist.wrong_fraction = stopped > 0 ? static_cast<double>(wrong) / stopped : 0.0;
  return dist;
}

}  // namespace statgeo
