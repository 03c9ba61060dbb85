#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "statgeo/error.hpp"
#include "statgeo/io.hpp"
#include "statgeo/reading.hpp"

using namespace statgeo;

namespace {

std::vector<DictEntry> load(const char* file) { return io::load_dictionary(std::string(STATGEO_DATA_DIR) + "/" + file); }

// Area and perimeter of a cell mask counted on the grid: filled cells, and
// cell sides facing an empty cell or the outside.
std::pair<double, double> grid_measure(std::string_view mask) {
  std::vector<std::string> rows;
  std::string cur;
  for (char c : mask) {
    if (c == '/') {
      rows.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  rows.push_back(cur);
  const int h = static_cast<int>(rows.size()), w = static_cast<int>(rows[0].size());
  auto filled = [&](int r, int c) { return r >= 0 && r < h && c >= 0 && c < w && rows[r][c] == '#'; };
  int cells = 0, sides = 0;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!filled(r, c)) continue;
      ++cells;
      sides += !filled(r - 1, c) + !filled(r + 1, c) + !filled(r, c - 1) + !filled(r, c + 1);
    }
  }
  return {cells, sides};
}

}  // namespace

TEST_CASE("letter examples") {
  CHECK(exact_area(letter_shape('I')) == doctest::Approx(5.0));
  CHECK(exact_perimeter(letter_shape('I')) == doctest::Approx(12.0));
  CHECK(exact_area(letter_shape('L')) == doctest::Approx(7.0));
  CHECK(exact_perimeter(letter_shape('L')) == doctest::Approx(16.0));
  CHECK(exact_area(letter_shape('O')) == doctest::Approx(12.0));
  CHECK(exact_perimeter(letter_shape('O')) == doctest::Approx(24.0));
  const WordShape ii = word_shape("II");
  CHECK(exact_area(ii.shape) == doctest::Approx(10.0));
  CHECK(exact_perimeter(ii.shape) == doctest::Approx(24.0));
  // cell size scales area by s^2 and perimeter by s
  CHECK(exact_area(letter_shape('O', 0.5)) == doctest::Approx(3.0));
  CHECK(exact_perimeter(letter_shape('O', 0.5)) == doctest::Approx(12.0));
}

TEST_CASE("every glyph matches its grid count") {
  for (char c = 'A'; c <= 'Z'; ++c) {
    const auto [cells, sides] = grid_measure(glyph_mask(c));
    const Shape s = letter_shape(c, 2.0);
    INFO(c);
    CHECK(exact_area(s) == doctest::Approx(4.0 * cells).epsilon(1e-12));
    CHECK(exact_perimeter(s) == doctest::Approx(2.0 * sides).epsilon(1e-12));
    CHECK(s.name() == std::string(1, c));
  }
  CHECK_THROWS_AS(glyph_mask('a'), InvalidArgument);
  CHECK_THROWS_AS(glyph_mask(' '), InvalidArgument);
}

TEST_CASE("mask shapes") {
  CHECK_THROWS_AS(mask_shape("#./.#", 1.0), InvalidShape);
  CHECK_THROWS_AS(mask_shape("##/#", 1.0), InvalidArgument);
  CHECK_THROWS_AS(mask_shape("#", 0.0), InvalidArgument);
  const Shape two = mask_shape("#.#", 1.0, {2.0, 3.0});
  CHECK(exact_area(two) == doctest::Approx(2.0));
  CHECK(two.rings().size() == 2);
  CHECK(contains(two, {2.5, 3.5}));
  CHECK_FALSE(contains(two, {3.5, 3.5}));
  // a full block has four corners, not fifteen collinear points
  CHECK(mask_shape("###/###/###/###/###", 1.0).rings()[0].vertices().size() == 4);
}

TEST_CASE("the alphabet separates every pair of letters") {
  const Alphabet alpha;
  CHECK(alpha.collisions().empty());
  CHECK(alpha.min_separation() >= 1.0);
  std::set<std::pair<double, double>> seen;
  for (char c = 'A'; c <= 'Z'; ++c) {
    const auto [cells, sides] = grid_measure(glyph_mask(c));
    seen.insert({cells, sides});
  }
  CHECK(seen.size() == 26);
  CHECK(exact_area(alpha.letter('Q')) == doctest::Approx(exact_area(letter_shape('Q'))));
}

TEST_CASE("word shapes are additive and blind to letter order") {
  const WordShape w = word_shape("FREEDOM");
  double area = 0.0, perim = 0.0;
  for (char c : std::string("FREEDOM")) {
    area += exact_area(letter_shape(c));
    perim += exact_perimeter(letter_shape(c));
  }
  CHECK(exact_area(w.shape) == doctest::Approx(area).epsilon(1e-9));
  CHECK(exact_perimeter(w.shape) == doctest::Approx(perim).epsilon(1e-9));
  CHECK(w.boxes.size() == 7);
  CHECK(w.boxes[1].origin.x == doctest::Approx(4.0));
  CHECK(w.advance == doctest::Approx(4.0));

  const WordShape rev = word_shape("MODEERF");
  const WordShape ana = word_shape("FORMEDE");
  CHECK(exact_area(rev.shape) == doctest::Approx(area).epsilon(1e-9));
  CHECK(exact_perimeter(ana.shape) == doctest::Approx(perim).epsilon(1e-9));
  // the gap between letters changes nothing either
  CHECK(exact_perimeter(word_shape("FREEDOM", 1.0, 5.0).shape) == doctest::Approx(perim).epsilon(1e-9));

  CHECK_THROWS_AS(word_shape(""), InvalidArgument);
  CHECK_THROWS_AS(word_shape("Free"), InvalidArgument);
}

TEST_CASE("letter arenas enclose their box") {
  const LetterBox box{'A', {3.0, 1.0}, 3.0, 5.0};
  const ArenaCircle a = letter_arena(box, 1.2);
  CHECK(a.center.x == doctest::Approx(4.5));
  CHECK(a.center.y == doctest::Approx(3.5));
  CHECK(a.radius == doctest::Approx(1.2 * std::sqrt(34.0) / 2.0));
}

TEST_CASE("the default word list") {
  const auto words = default_word_list();
  CHECK(words.size() == 20);
  CHECK(std::find(words.begin(), words.end(), "FREEDOM") != words.end());
  std::set<std::string> sorted;
  std::set<std::pair<double, double>> points;
  for (const auto& w : words) {
    std::string s = w;
    std::sort(s.begin(), s.end());
    sorted.insert(s);
    const WordShape ws = word_shape(w);
    points.insert({std::round(exact_area(ws.shape) * 1e6), std::round(exact_perimeter(ws.shape) * 1e6)});
  }
  CHECK(sorted.size() == 20);  // no anagrams
  CHECK(points.size() == 20);  // no accidental coincidences either
}

TEST_CASE("anagram pairs") {
  std::vector<DictEntry> dict = {{"STOP", 1, 1, 1, 1, 0}, {"POTS", 1, 1, 1, 1, 0}, {"SPOT", 1, 1, 1, 1, 0},
                                 {"GO", 1, 1, 1, 1, 0}};
  CHECK(anagram_pairs(dict).size() == 3);
  CHECK(anagram_pairs(load("words.json")).empty());
}

TEST_CASE("an anagram in the dictionary caps the global posterior at one half") {
  const std::vector<std::string> words = {"STOP", "GO"};
  std::vector<DictEntry> dict = calibrate_words(words, 1.0, 1000, 30, 5);
  DictEntry twin = dict[0];
  twin.name = "POTS";
  dict.push_back(twin);
  StopOptions opt;
  const ReadResult r = read_global(word_shape("STOP"), dict, 3000, opt, 9);
  CHECK(r.ambiguous_dictionary);
  CHECK(r.censored);
  CHECK(r.lines == 3000);
  EstimateReport at;
  at.N = 1000;
  at.perim_hat = twin.p_ref;
  at.area_hat = twin.a_ref;
  CHECK(classify(at, dict, NoiseModel::kEntry).probability("STOP") <= 0.5 + 1e-12);

  dict.pop_back();
  CHECK_FALSE(read_global(word_shape("STOP"), dict, 3000, opt, 9).ambiguous_dictionary);
}

TEST_CASE("a zero budget reads nothing") {
  const auto letters = load("letters.json");
  const auto words = load("words.json");
  StopOptions opt;
  const ReadResult l = read_local(word_shape("LAW"), letters, 0, opt, 1);
  CHECK(l.censored);
  CHECK(l.lines == 0);
  CHECK(l.text == "???");
  CHECK_FALSE(l.correct);
  const ReadResult g = read_global(word_shape("LAW"), words, 0, opt, 1);
  CHECK(g.censored);
  CHECK(g.text == "?");
  CHECK_THROWS_AS(read_local(word_shape("LAW"), std::vector<DictEntry>{}, 10, opt, 1), InvalidArgument);
}

TEST_CASE("single letters and short words read correctly") {
  const auto letters = load("letters.json");
  StopOptions opt;
  int right = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ReadResult r = read_local(word_shape("W"), letters, 30000, opt, seed);
    right += r.correct ? 1 : 0;
    CHECK(r.letter_lines.size() == 1);
    CHECK(r.lines == r.letter_lines[0]);
  }
  CHECK(right >= 17);
  const ReadResult law = read_local(word_shape("LAW"), letters, 10000, opt, 4);
  CHECK(law.letter_lines.size() == 3);
  CHECK(law.lines == law.letter_lines[0] + law.letter_lines[1] + law.letter_lines[2]);
}

TEST_CASE("local errors add in quadrature across letters") {
  const auto letters = load("letters.json");
  StopOptions opt;
  opt.min_lines = 20000;  // every letter runs the full budget
  const ReadResult one = read_local(word_shape("H"), letters, 20000, opt, 1);
  const ReadResult four = read_local(word_shape("HHHH"), letters, 20000, opt, 1);
  CHECK(one.lines == 20000);
  CHECK(four.lines == 80000);
  CHECK(four.sigma_A / one.sigma_A == doctest::Approx(2.0).epsilon(0.25));
  CHECK(four.sigma_P / one.sigma_P == doctest::Approx(2.0).epsilon(0.25));
  CHECK(four.area_hat == doctest::Approx(4.0 * exact_area(letter_shape('H'))).epsilon(0.05));
}

TEST_CASE("letter calibration is deterministic and covers the alphabet") {
  const auto a = calibrate_letters(1.0, 1000, 30, 77);
  const auto b = calibrate_letters(1.0, 1000, 30, 77);
  REQUIRE(a.size() == 26);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == std::string(1, static_cast<char>('A' + i)));
    CHECK(a[i].sigma0_a == b[i].sigma0_a);
    CHECK(a[i].a_ref == doctest::Approx(exact_area(letter_shape(a[i].name[0]))));
  }
}

TEST_CASE("both strategies read a word from the list") {
  const auto letters = load("letters.json");
  const auto words = load("words.json");
  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const StrategyComparison c = compare_strategies("JUSTICE", letters, words, seeds, 30000, StopOptions{});
  CHECK(c.exact_area == doctest::Approx(exact_area(word_shape("JUSTICE").shape)));
  CHECK(c.local.runs.size() == 10);
  CHECK(c.local.success_rate >= 0.8);
  CHECK(c.global.success_rate >= 0.8);
  CHECK(std::abs(c.local.mean_area - c.exact_area) < 3.0 * c.local.rms_sigma_A);
  CHECK(std::abs(c.global.mean_area - c.exact_area) < 3.0 * c.global.rms_sigma_A);
}
