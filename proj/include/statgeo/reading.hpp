#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "statgeo/geometry.hpp"
#include "statgeo/recognition.hpp"

namespace statgeo {

inline constexpr int kGlyphColumns = 3;
inline constexpr int kGlyphRows = 5;

// Cell mask of a capital letter: five rows of three characters, top row
// first, '#' for a filled cell. Throws InvalidArgument for other characters.
std::string_view glyph_mask(char letter);

// Region covered by the filled cells of `mask` ('/'-separated rows, top row
// first) with cell side `cell`, lower-left corner of the grid at `origin`.
// Diagonal-only contacts between cells throw InvalidShape.
Shape mask_shape(std::string_view mask, double cell, Point origin = {}, std::string name = {});

// Letter inside the box [0, 3s] x [0, 5s].
Shape letter_shape(char letter, double cell = 1.0);

class Alphabet {
 public:
  explicit Alphabet(double cell = 1.0);

  double cell() const { return cell_; }
  const Shape& letter(char c) const;
  // Pairs of letters sharing (area, perimeter); empty for the shipped masks.
  const std::vector<std::pair<char, char>>& collisions() const { return collisions_; }
  // Smallest Euclidean distance between two letters in (A / s^2, P / s).
  double min_separation() const;

 private:
  double cell_;
  std::vector<Shape> letters_;
  std::vector<std::pair<char, char>> collisions_;
};

struct LetterBox {
  char letter = 'A';
  Point origin;  // lower-left corner
  double width = 0.0;
  double height = 0.0;
};

struct WordShape {
  std::string word;
  Shape shape;
  std::vector<LetterBox> boxes;
  double advance = 0.0;
};

// Letters placed left to right every 3s + gap. A negative gap selects the
// default gap of one cell.
WordShape word_shape(std::string_view word, double cell = 1.0, double gap = -1.0);

// Circle circumscribing the letter box, scaled.
ArenaCircle letter_arena(const LetterBox& box, double scale = 1.2);

std::vector<DictEntry> calibrate_letters(double cell, std::uint64_t lines, std::uint64_t replicates, std::uint64_t seed,
                                         SamplerMode mode = SamplerMode::kIur);
std::vector<DictEntry> calibrate_words(std::span<const std::string> words, double cell, std::uint64_t lines,
                                       std::uint64_t replicates, std::uint64_t seed,
                                       SamplerMode mode = SamplerMode::kIur);

// Twenty words of the UN Charter preamble, free of anagrams.
std::vector<std::string> default_word_list();

// Pairs of dictionary names that are anagrams of each other.
std::vector<std::pair<std::string, std::string>> anagram_pairs(std::span<const DictEntry> dict);

struct ReadResult {
  std::string text;
  bool correct = false;
  bool censored = false;  // some exploration hit its budget before deciding
  bool ambiguous_dictionary = false;  // global only: the dictionary holds anagrams
  std::uint64_t lines = 0;
  std::vector<std::uint64_t> letter_lines;  // local strategy only
  std::vector<bool> letter_censored;
  double area_hat = 0.0;
  double perim_hat = 0.0;
  double sigma_A = 0.0;
  double sigma_P = 0.0;
};

// Letter by letter: every letter is explored alone in its own arena until
// the letter dictionary is confident or `letter_budget` lines are used. Each
// letter must reach threshold^(1/letters), so the word as a whole is read at
// the requested confidence.
ReadResult read_local(const WordShape& target, std::span<const DictEntry> letter_dict, std::uint64_t letter_budget,
                      const StopOptions& options, std::uint64_t seed, SamplerMode mode = SamplerMode::kIur);

// Whole word in one arena, classified against a word dictionary.
ReadResult read_global(const WordShape& target, std::span<const DictEntry> word_dict, std::uint64_t budget,
                       const StopOptions& options, std::uint64_t seed, SamplerMode mode = SamplerMode::kIur);

struct StrategySummary {
  std::vector<ReadResult> runs;
  double success_rate = 0.0;
  double median_lines = 0.0;
  double mean_area = 0.0;
  double mean_perimeter = 0.0;
  double rms_sigma_A = 0.0;  // typical single-run error bar
  double rms_sigma_P = 0.0;
};

struct StrategyComparison {
  std::string word;
  double exact_area = 0.0;
  double exact_perimeter = 0.0;
  StrategySummary local;
  StrategySummary global;
};

// Runs both strategies on `word` for every seed, with the same total budget
// (split evenly across letters for the local strategy).
StrategyComparison compare_strategies(std::string_view word, std::span<const DictEntry> letter_dict,
                                      std::span<const DictEntry> word_dict, std::span<const std::uint64_t> seeds,
                                      std::uint64_t total_budget, const StopOptions& options, double cell = 1.0,
                                      SamplerMode mode = SamplerMode::kIur);

}  // namespace statgeo
