#include "statgeo/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "statgeo/error.hpp"

namespace statgeo {

Accumulator::Accumulator(AccumulatorConfig config, std::uint64_t first_line)
    : config_(config), histogram_(config.hist_bins, 0), batches_(config.batches) {
  if (config_.hist_bins == 0 || config_.batches == 0 || !(config_.hist_max > 0.0)) {
    throw InvalidArgument("accumulator needs positive bins, batches and histogram range");
  }
  next_batch_ = first_line % config_.batches;
}

void Accumulator::add(const LineObservation& obs) {
  BatchSums& batch = batches_[next_batch_];
  next_batch_ = (next_batch_ + 1) % config_.batches;
  ++n_lines_;
  ++batch.lines;
  if (obs.k == 0) return;
  ++n_hit_;
  sum_L1_ += obs.L1;
  sum_L3_ += obs.L3;
  batch.sum_L1 += obs.L1;
  batch.sum_L3 += obs.L3;
  const double scale = static_cast<double>(config_.hist_bins) / config_.hist_max;
  for (double l : obs.chords) {
    chord_sum_ += l;
    chord_sum3_ += l * l * l;
    batch.chord_sum += l;
    l_max_seen_ = std::max(l_max_seen_, l);
    const auto bin = std::min(static_cast<std::size_t>(l * scale), config_.hist_bins - 1);
    ++histogram_[bin];
  }
  chord_count_ += obs.chords.size();
  batch.chord_count += obs.chords.size();
}

void Accumulator::merge(const Accumulator& other) {
  if (!(config_ == other.config_)) throw ConfigMismatch("cannot merge accumulators with different binning");
  n_lines_ += other.n_lines_;
  n_hit_ += other.n_hit_;
  sum_L1_ += other.sum_L1_;
  sum_L3_ += other.sum_L3_;
  chord_count_ += other.chord_count_;
  chord_sum_ += other.chord_sum_;
  chord_sum3_ += other.chord_sum3_;
  l_max_seen_ = std::max(l_max_seen_, other.l_max_seen_);
  next_batch_ = (next_batch_ + other.n_lines_) % config_.batches;
  for (std::size_t i = 0; i < histogram_.size(); ++i) histogram_[i] += other.histogram_[i];
  for (std::size_t i = 0; i < batches_.size(); ++i) {
    BatchSums& a = batches_[i];
    const BatchSums& b = other.batches_[i];
    a.lines += b.lines;
    a.sum_L1 += b.sum_L1;
    a.sum_L3 += b.sum_L3;
    a.chord_count += b.chord_count;
    a.chord_sum += b.chord_sum;
  }
}

std::size_t Accumulator::state_scalars() const {
  // 10 scalar fields, the histogram and five sums per batch.
  return 10 + histogram_.size() + 5 * batches_.size();
}

Accumulator merge(const Accumulator& a, const Accumulator& b) {
  Accumulator out = a;
  out.merge(b);
  return out;
}

double estimate_area(const Accumulator& acc) {
  if (!(acc.sum_L1() > 0.0)) throw InsufficientData("no line has hit the shape yet");
  return kAreaConstant * acc.sum_L3() / acc.sum_L1();
}

double estimate_mean_chord(const Accumulator& acc) {
  if (acc.chord_count() == 0) throw InsufficientData("no chord observed yet");
  return acc.chord_sum() / static_cast<double>(acc.chord_count());
}

double estimate_perimeter(const Accumulator& acc) {
  return std::numbers::pi * estimate_area(acc) / estimate_mean_chord(acc);
}

double convex_third_moment_area(const Accumulator& acc) {
  if (acc.chord_count() == 0) throw InsufficientData("no chord observed yet");
  return kAreaConstant * acc.chord_sum3() / acc.chord_sum();
}

BatchErrors stderrs(const Accumulator& acc) {
  std::vector<double> as;
  std::vector<double> ps;
  as.reserve(acc.batches().size());
  ps.reserve(acc.batches().size());
  for (const BatchSums& b : acc.batches()) {
    if (b.chord_count == 0 || !(b.sum_L1 > 0.0)) continue;
    const double a = kAreaConstant * b.sum_L3 / b.sum_L1;
    const double mean_chord = b.chord_sum / static_cast<double>(b.chord_count);
    as.push_back(a);
    ps.push_back(std::numbers::pi * a / mean_chord);
  }
  const std::size_t m = as.size();
  if (m < 2) throw InsufficientData("need at least two non-empty batches for error bars");
  const double ma = std::accumulate(as.begin(), as.end(), 0.0) / m;
  const double mp = std::accumulate(ps.begin(), ps.end(), 0.0) / m;
  double saa = 0.0;
  double spp = 0.0;
  double sap = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    saa += (as[i] - ma) * (as[i] - ma);
    spp += (ps[i] - mp) * (ps[i] - mp);
    sap += (as[i] - ma) * (ps[i] - mp);
  }
  BatchErrors e;
  e.used_batches = m;
  const double dm = static_cast<double>(m);
  e.stderr_A = std::sqrt(saa / (dm - 1.0) / dm);
  e.stderr_P = std::sqrt(spp / (dm - 1.0) / dm);
  e.corr = (saa > 0.0 && spp > 0.0) ? sap / std::sqrt(saa * spp) : 0.0;
  return e;
}

EstimateReport make_report(const Accumulator& acc, std::uint64_t rejected, std::uint64_t min_batch_lines) {
  EstimateReport r;
  r.N = acc.n_lines();
  r.n_hit = acc.n_hit();
  r.rejected_lines = rejected;
  r.area_hat = estimate_area(acc);
  r.mean_chord = estimate_mean_chord(acc);
  r.perim_hat = std::numbers::pi * r.area_hat / r.mean_chord;
  if (acc.n_lines() >= min_batch_lines * acc.config().batches) {
    try {
      const BatchErrors e = stderrs(acc);
      r.stderr_A = e.stderr_A;
      r.stderr_P = e.stderr_P;
      r.corr_AP = e.corr;
      r.stderr_valid = e.stderr_A > 0.0 && e.stderr_P > 0.0 && std::abs(e.corr) < 1.0;
    } catch (const InsufficientData&) {
      r.stderr_valid = false;
    }
  }
  return r;
}

std::vector<double> normalized_histogram(const Accumulator& acc, std::size_t bins) {
  if (bins == 0) throw InvalidArgument("histogram needs at least one bin");
  std::vector<double> out(bins, 0.0);
  const double lmax = acc.l_max_seen();
  if (acc.chord_count() == 0 || !(lmax > 0.0)) return out;
  const auto hist = acc.histogram();
  const double width = acc.config().hist_max / static_cast<double>(hist.size());
  const auto top_bin = std::min(static_cast<std::size_t>(lmax / width), hist.size() - 1);
  const double total = static_cast<double>(acc.chord_count());
  for (std::size_t i = 0; i < hist.size(); ++i) {
    if (hist[i] == 0) continue;
    const double mass = static_cast<double>(hist[i]) / total;
    if (i >= top_bin) {
      out[bins - 1] += mass;
      continue;
    }
    const double lo = i * width / lmax * bins;
    const double hi = (i + 1) * width / lmax * bins;
    const double span = hi - lo;
    for (auto j = static_cast<std::size_t>(lo); j < bins && static_cast<double>(j) < hi; ++j) {
      const double overlap = std::min(hi, j + 1.0) - std::max(lo, static_cast<double>(j));
      if (overlap > 0.0) out[j] += mass * overlap / span;
    }
  }
  // Renormalize away round-off.
  const double sum = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& v : out) v /= sum;
  return out;
}

double kl_divergence(std::span<const double> p, std::span<const double> q, double epsilon) {
  if (p.size() != q.size() || p.empty()) throw ConfigMismatch("histograms have different binning");
  const double qsum = std::accumulate(q.begin(), q.end(), 0.0) + epsilon * q.size();
  const double psum = std::accumulate(p.begin(), p.end(), 0.0);
  if (!(psum > 0.0)) throw InsufficientData("empty histogram");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    const double pi = p[i] / psum;
    const double qi = (q[i] + epsilon) / qsum;
    kl += pi * std::log(pi / qi);
  }
  return std::max(0.0, kl);
}

PowerFit fit_power(std::span<const double> N, std::span<const double> sigma) {
  if (N.size() != sigma.size() || N.size() < 2) throw InvalidArgument("power fit needs matching series of >= 2 points");
  const std::size_t n = N.size();
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(N[i] > 0.0) || !(sigma[i] > 0.0)) throw InvalidArgument("power fit needs positive N and sigma");
    sx += std::log(N[i]);
    sy += std::log(sigma[i]);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(N[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(sigma[i]) - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("power fit needs distinct N values");
  PowerFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  return fit;
}

ConvergenceSeries fit_convergence(std::vector<ConvergenceSample> samples) {
  if (samples.size() < 4) throw InsufficientData("convergence fit needs at least 4 sample sizes");
  std::vector<double> n;
  std::vector<double> sa;
  std::vector<double> sp;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i > 0 && !(samples[i].N > samples[i - 1].N)) throw InvalidArgument("N must be strictly increasing");
    n.push_back(samples[i].N);
    sa.push_back(samples[i].sigma_A);
    sp.push_back(samples[i].sigma_P);
  }
  if (n.back() / n.front() < 100.0) throw InsufficientData("convergence fit needs N spanning two decades");
  ConvergenceSeries series;
  series.fit_A = fit_power(n, sa);
  series.fit_P = fit_power(n, sp);
  series.samples = std::move(samples);
  return series;
}

}  // namespace statgeo
