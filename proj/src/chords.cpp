#include "statgeo/chords.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "statgeo/error.hpp"

namespace statgeo {
namespace {

// Side-function values within this (relative) band are treated as zero.
constexpr double kSideTolerance = 1e-12;

void check_alternating(std::span<const CrossingEvent> events) {
  if (events.size() % 2 != 0) throw InvalidArgument("odd number of crossing events");
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Crossing want = (i % 2 == 0) ? Crossing::kIngoing : Crossing::kOutgoing;
    if (events[i].kind != want) throw InvalidArgument("crossing events do not alternate from ingoing");
  }
}

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

void LineObservation::clear() {
  events.clear();
  chords.clear();
  k = 0;
  L1 = 0.0;
  L3 = 0.0;
}

void crossings_into(const Shape& shape, const Segment& seg, std::vector<CrossingEvent>& out) {
  out.clear();
  const Point d = seg.b - seg.a;
  const double len = norm(d);
  if (len == 0.0) return;
  const Point u = (1.0 / len) * d;
  const Point n{-u.y, u.x};
  const double offset = dot(n, seg.a);
  const double along0 = dot(u, seg.a);

  for (const Ring& ring : shape.rings()) {
    const auto vs = ring.vertices();
    const std::size_t m = vs.size();
    // Signed distance of each vertex to the carrier line, snapped to zero
    // inside the tolerance band.
    auto side = [&](std::size_t i) {
      const Point v = vs[i];
      const double s = dot(n, v) - offset;
      const double scale = 1.0 + std::abs(dot(n, v)) + std::abs(offset);
      return std::abs(s) <= kSideTolerance * scale ? 0.0 : s;
    };
    double s_prev = side(m - 1);
    double s_cur = side(0);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = (i + 1) % m;
      const double s_next = side(j);
      if (s_cur == 0.0) {
        // Vertex on the line: a crossing iff the neighbours lie on opposite
        // sides; a neighbour also on the line means an edge along the line.
        if (s_prev == 0.0 || s_next == 0.0) throw DegenerateLine("boundary edge lies along the line");
        if ((s_prev > 0.0) != (s_next > 0.0)) {
          out.push_back({dot(u, vs[i]) - along0, Crossing::kIngoing});
        }
      } else if (s_next != 0.0 && (s_cur > 0.0) != (s_next > 0.0)) {
        const double f = s_cur / (s_cur - s_next);
        const double ti = dot(u, vs[i]) - along0;
        const double tj = dot(u, vs[j]) - along0;
        out.push_back({ti + f * (tj - ti), Crossing::kIngoing});
      }
      s_prev = s_cur;
      s_cur = s_next;
    }
  }

  if (out.size() % 2 != 0) {
    throw DegenerateLine("odd number of crossings (" + std::to_string(out.size()) + ")");
  }
  std::sort(out.begin(), out.end(), [](const CrossingEvent& a, const CrossingEvent& b) { return a.t < b.t; });
  if (!out.empty() && (out.front().t <= 0.0 || out.back().t >= len)) {
    throw ArenaTooSmall("shape boundary reaches the end of the exploration segment");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].kind = (i % 2 == 0) ? Crossing::kIngoing : Crossing::kOutgoing;
  }
}

std::vector<CrossingEvent> crossings(const Shape& shape, const Segment& seg) {
  std::vector<CrossingEvent> out;
  crossings_into(shape, seg, out);
  return out;
}

double geometric_function(std::span<const CrossingEvent> events, int n) {
  if (n < 1) throw InvalidArgument("geometric function order must be positive");
  check_alternating(events);
  double total = 0.0;
  for (std::size_t a = 0; a < events.size(); ++a) {
    for (std::size_t b = a + 1; b < events.size(); ++b) {
      const double term = ipow(std::abs(events[b].t - events[a].t), n);
      total += events[a].kind == events[b].kind ? -term : term;
    }
  }
  return total;
}

void observe_into(const Shape& shape, const Segment& seg, LineObservation& obs) {
  obs.clear();
  crossings_into(shape, seg, obs.events);
  const auto& ev = obs.events;
  obs.k = ev.size() / 2;
  for (std::size_t i = 0; i < ev.size(); i += 2) obs.chords.push_back(ev[i + 1].t - ev[i].t);
  // Both orders in one pass over the pairs.
  double l1 = 0.0;
  double l3 = 0.0;
  for (std::size_t a = 0; a < ev.size(); ++a) {
    for (std::size_t b = a + 1; b < ev.size(); ++b) {
      const double dist = ev[b].t - ev[a].t;
      const double sign = ((a ^ b) & 1U) ? 1.0 : -1.0;  // opposite parity = I/O pair
      l1 += sign * dist;
      l3 += sign * dist * dist * dist;
    }
  }
  obs.L1 = l1;
  obs.L3 = l3;
}

LineObservation observe(const Shape& shape, const Segment& seg) {
  LineObservation obs;
  observe_into(shape, seg, obs);
  return obs;
}

}  // namespace statgeo
