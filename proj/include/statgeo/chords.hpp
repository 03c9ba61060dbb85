#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "statgeo/geometry.hpp"

namespace statgeo {

enum class Crossing { kIngoing, kOutgoing };

struct CrossingEvent {
  double t = 0.0;  // arclength from the segment start
  Crossing kind = Crossing::kIngoing;
};

// Everything one exploration line reveals about the shape.
struct LineObservation {
  std::vector<CrossingEvent> events;
  std::vector<double> chords;
  std::size_t k = 0;  // number of chords
  double L1 = 0.0;
  double L3 = 0.0;

  bool hit() const { return k > 0; }
  void clear();
  // Scalars held in memory while this line is being processed.
  std::size_t scratch_scalars() const { return events.size() + chords.size() + 3; }
};

// Boundary crossings of `seg`, sorted along the segment and labeled by parity
// from the (outside) segment start. Tangential contacts are dropped.
//
// Throws ArenaTooSmall when a segment endpoint lies inside the shape and
// DegenerateLine when the crossings cannot be classified (edge running along
// the line, or an odd number of transversal crossings).
std::vector<CrossingEvent> crossings(const Shape& shape, const Segment& seg);

// Allocation-free variant reusing `out`.
void crossings_into(const Shape& shape, const Segment& seg, std::vector<CrossingEvent>& out);

// Signed sum of n-th powers of distances over all ingoing/outgoing pairs,
// minus all outgoing pairs, minus all ingoing pairs. Throws InvalidArgument
// when the events are not an alternating I,O,I,O... sequence.
double geometric_function(std::span<const CrossingEvent> events, int n);

LineObservation observe(const Shape& shape, const Segment& seg);
void observe_into(const Shape& shape, const Segment& seg, LineObservation& obs);

}  // namespace statgeo
