#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "statgeo/chords.hpp"
#include "statgeo/error.hpp"
#include "statgeo/sampling.hpp"
#include "statgeo/shapes.hpp"

using namespace statgeo;

namespace {

using E = CrossingEvent;
constexpr auto I = Crossing::kIngoing;
constexpr auto O = Crossing::kOutgoing;

// Direct pair sums, written independently of the library loop.
double brute_L(const std::vector<E>& ev, int n) {
  double io = 0.0, oo = 0.0, ii = 0.0;
  for (std::size_t a = 0; a < ev.size(); ++a) {
    for (std::size_t b = a + 1; b < ev.size(); ++b) {
      const double d = std::pow(std::abs(ev[b].t - ev[a].t), n);
      if (ev[a].kind != ev[b].kind) io += d;
      else if (ev[a].kind == O) oo += d;
      else ii += d;
    }
  }
  return io - oo - ii;
}

std::vector<E> random_events(std::mt19937_64& gen, int chords) {
  std::uniform_real_distribution<double> gap(0.01, 2.0);
  std::vector<E> ev;
  double t = gap(gen);
  for (int c = 0; c < chords; ++c) {
    ev.push_back({t, I});
    t += gap(gen);
    ev.push_back({t, O});
    t += gap(gen);
  }
  return ev;
}

// Length of the segment lying inside the shape, by dense midpoint sampling.
double sampled_inside_length(const Shape& s, const Segment& seg, int n) {
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    const double u = (i + 0.5) / n;
    inside += contains(s, seg.a + u * (seg.b - seg.a)) ? 1 : 0;
  }
  return seg.length() * inside / n;
}

}  // namespace

TEST_CASE("crossings of a square, a holed square and a miss") {
  const auto sq = crossings(shapes::unit_square(), {{-1, 0.5}, {2, 0.5}});
  REQUIRE(sq.size() == 2);
  CHECK(sq[0].kind == I);
  CHECK(sq[0].t == doctest::Approx(1.0));
  CHECK(sq[1].kind == O);
  CHECK(sq[1].t - sq[0].t == doctest::Approx(1.0));

  const LineObservation h = observe(shapes::square_with_hole(0.5), {{-1, 0.5 + 1e-9}, {2, 0.5 + 1e-9}});
  CHECK(h.k == 2);
  REQUIRE(h.events.size() == 4);
  CHECK(h.events[0].kind == I);
  CHECK(h.events[1].kind == O);
  CHECK(h.events[2].kind == I);
  CHECK(h.events[3].kind == O);
  CHECK(h.L1 == doctest::Approx(0.5));

  CHECK(crossings(shapes::unit_square(), {{-1, 3}, {2, 3}}).empty());
}

TEST_CASE("geometric function examples") {
  const std::vector<E> one = {{0, I}, {2, O}};
  CHECK(geometric_function(one, 1) == doctest::Approx(2.0));
  CHECK(geometric_function(one, 3) == doctest::Approx(8.0));
  const std::vector<E> two = {{0, I}, {1, O}, {2, I}, {3, O}};
  CHECK(geometric_function(two, 1) == doctest::Approx(2.0));
  CHECK(geometric_function(two, 3) == doctest::Approx(14.0));
  const std::vector<E> gap = {{0, I}, {1, O}, {3, I}, {6, O}};
  CHECK(geometric_function(gap, 1) == doctest::Approx(4.0));
  CHECK(geometric_function(gap, 3) == doctest::Approx(100.0));
  CHECK(geometric_function(std::vector<E>{}, 3) == 0.0);
}

TEST_CASE("geometric function rejects non-alternating events") {
  CHECK_THROWS_AS(geometric_function(std::vector<E>{{0, O}, {1, I}}, 1), InvalidArgument);
  CHECK_THROWS_AS(geometric_function(std::vector<E>{{0, I}, {1, I}}, 1), InvalidArgument);
  CHECK_THROWS_AS(geometric_function(std::vector<E>{{0, I}}, 1), InvalidArgument);
}

TEST_CASE("L1 is the total chord length and L_n matches the direct pair sums") {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 300; ++trial) {
    const auto ev = random_events(gen, 1 + trial % 7);
    double total = 0.0;
    for (std::size_t i = 0; i < ev.size(); i += 2) total += ev[i + 1].t - ev[i].t;
    CHECK(geometric_function(ev, 1) == doctest::Approx(total).epsilon(1e-12));
    for (int n : {1, 2, 3, 5}) CHECK(geometric_function(ev, n) == doctest::Approx(brute_L(ev, n)).epsilon(1e-10));
  }
}

TEST_CASE("L_n is invariant under shifting t and reversing the line") {
  std::mt19937_64 gen(10);
  std::uniform_real_distribution<double> shift(-50.0, 50.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ev = random_events(gen, 1 + trial % 6);
    const double s = shift(gen);
    std::vector<E> moved, reversed;
    for (const E& e : ev) moved.push_back({e.t + s, e.kind});
    // walking the other way: positions mirror and every entry becomes an exit
    for (auto it = ev.rbegin(); it != ev.rend(); ++it) reversed.push_back({-it->t, it->kind == I ? O : I});
    for (int n : {1, 3}) {
      const double ref = geometric_function(ev, n);
      CHECK(geometric_function(moved, n) == doctest::Approx(ref).epsilon(1e-9));
      CHECK(geometric_function(reversed, n) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("convex shapes give one chord with L3 = chord^3") {
  RandomStream rng(4);
  for (const Shape& s : {shapes::disk(), shapes::square(2.5), shapes::equilateral_triangle(6.25)}) {
    const ArenaCircle arena = arena_for(s);
    for (int i = 0; i < 2000; ++i) {
      const LineObservation o = observe(s, clip_to_arena(sample_iur(rng, arena), arena));
      CHECK(o.k <= 1);
      if (o.k == 1) CHECK(o.L3 == doctest::Approx(std::pow(o.chords[0], 3)).epsilon(1e-12));
    }
  }
}

TEST_CASE("miss gives the zero observation") {
  const LineObservation o = observe(shapes::unit_square(), {{-1, -1}, {2, -1}});
  CHECK(o.k == 0);
  CHECK(o.L1 == 0.0);
  CHECK(o.L3 == 0.0);
  CHECK(o.events.empty());
  CHECK_FALSE(o.hit());
}

TEST_CASE("annulus diameter through polygon vertices") {
  // The 64-gons have vertices on the x axis; each vertex crossing counts once.
  const LineObservation o = observe(shapes::annulus(1.0, 2.0), {{-3, 0}, {3, 0}});
  CHECK(o.k == 2);
  CHECK(o.L1 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(o.chords[0] == doctest::Approx(1.0));
}

TEST_CASE("vertex touches and boundary runs") {
  // touching the square only at its corner (0, 1): no event
  CHECK(crossings(shapes::unit_square(), {{-1, 0}, {1, 2}}).empty());
  // diagonal entering and leaving through corners
  const LineObservation d = observe(shapes::unit_square(), {{-1, -1}, {2, 2}});
  CHECK(d.k == 1);
  CHECK(d.L1 == doctest::Approx(std::sqrt(2.0)));
  // line along an edge cannot be classified
  CHECK_THROWS_AS(crossings(shapes::unit_square(), {{-1, 0}, {2, 0}}), DegenerateLine);
  // L shape: the line y = 1 runs along the inner edge
  CHECK_THROWS_AS(crossings(shapes::l_shape(), {{-1, 1}, {3, 1}}), DegenerateLine);
}

TEST_CASE("segment endpoints inside the shape") {
  CHECK_THROWS_AS(crossings(shapes::unit_square(), {{0.5, 0.5}, {2, 0.5}}), ArenaTooSmall);
}

TEST_CASE("chord totals agree with point sampling along random lines") {
  RandomStream rng(12);
  for (const Shape& s : {shapes::statue(6.25), shapes::annulus(), shapes::l_shape(), shapes::square_with_hole(0.5)}) {
    const ArenaCircle arena = arena_for(s);
    for (int i = 0; i < 200; ++i) {
      const Segment seg = clip_to_arena(sample_iur(rng, arena), arena);
      const LineObservation o = observe(s, seg);
      // each boundary crossing can misplace at most one sample
      const double resolution = seg.length() / 20000.0;
      CHECK(std::abs(o.L1 - sampled_inside_length(s, seg, 20000)) <= (2.0 * o.k + 1.0) * resolution);
      // event count is even and labels alternate
      CHECK(o.events.size() == 2 * o.k);
      for (std::size_t e = 0; e < o.events.size(); ++e) CHECK(o.events[e].kind == (e % 2 == 0 ? I : O));
      for (double c : o.chords) CHECK(c > 0.0);
    }
  }
}

// Events, chords and the three running values; below k = 4 this exceeds
// k(k-1)+4, which only bounds the pair terms.
TEST_CASE("per-line scratch stays within k(k-1)+4 for the statue from k = 4 on") {
  RandomStream rng(13);
  const Shape s = shapes::statue(6.25);
  const ArenaCircle arena = arena_for(s);
  std::size_t max_k = 0;
  for (int i = 0; i < 20000; ++i) {
    const LineObservation o = observe(s, clip_to_arena(sample_iur(rng, arena), arena));
    max_k = std::max(max_k, o.k);
    CHECK(o.scratch_scalars() == 3 * o.k + 3);
    if (o.k >= 4) CHECK(o.scratch_scalars() <= o.k * (o.k - 1) + 4);
  }
  CHECK(max_k >= 6);
}
