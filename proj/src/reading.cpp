#include "statgeo/reading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "statgeo/error.hpp"

namespace statgeo {
namespace {

// Natural block glyphs, with cells added or removed where two letters would
// otherwise share the same (area, perimeter).
constexpr std::array<std::string_view, 26> kGlyphs = {
    ".##/###/###/###/###",  // A
    "###/#.#/###/#.#/###",  // B
    "###/#../#../#../###",  // C
    "##./###/#.#/###/##.",  // D
    "###/#../###/#../###",  // E
    "###/##./###/#../#..",  // F
    "###/#../#.#/###/###",  // G
    "###/###/###/#.#/#.#",  // H
    ".#./.#./.#./.#./.#.",  // I
    "..#/..#/..#/#.#/###",  // J
    "..#/###/#../###/#.#",  // K
    "#../#../#../#../###",  // L
    "#.#/###/###/#.#/###",  // M
    "###/###/#.#/#.#/..#",  // N
    "###/#.#/#.#/#.#/###",  // O
    "###/#.#/###/#../#..",  // P
    "###/#.#/#.#/###/..#",  // Q
    "###/###/###/###/#.#",  // R
    "###/###/###/#.#/###",  // S
    "###/##./.#./.#./.#.",  // T
    "..#/#.#/###/###/###",  // U
    "###/###/###/###/.#.",  // V
    "#.#/###/###/###/.##",  // W
    "###/###/###/###/###",  // X
    "###/###/###/.#./.#.",  // Y
    "..#/.##/###/##./###",  // Z
};


std::vector<std::string_view> split_rows(std::string_view mask) {
  std::vector<std::string_view> rows;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = mask.find('/', start);
    rows.push_back(mask.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return rows;
}

// Lattice vertex key.
using Vertex = std::pair<int, int>;

}  // namespace

std::string_view glyph_mask(char letter) {
  if (letter < 'A' || letter > 'Z') {
    throw InvalidArgument(std::string("unsupported character '") + letter + "' (capital letters only)");
  }
  return kGlyphs[static_cast<std::size_t>(letter - 'A')];
}

Shape mask_shape(std::string_view mask, double cell, Point origin, std::string name) {
  if (!(cell > 0.0)) throw InvalidArgument("cell size must be positive");
  const auto rows = split_rows(mask);
  const int n_rows = static_cast<int>(rows.size());
  const int n_cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (auto r : rows) {
    if (static_cast<int>(r.size()) != n_cols) throw InvalidArgument("mask rows differ in length");
  }
  auto filled = [&](int r, int c) {
    return r >= 0 && r < n_rows && c >= 0 && c < n_cols && rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == '#';
  };
  for (int r = -1; r < n_rows; ++r) {
    for (int c = -1; c < n_cols; ++c) {
      const bool a = filled(r, c), b = filled(r, c + 1), d = filled(r + 1, c), e = filled(r + 1, c + 1);
      if ((a && e && !b && !d) || (b && d && !a && !e)) {
        throw InvalidShape("mask has cells touching only at a corner");
      }
    }
  }

  // Directed boundary edges with the filled cell on their left. Without
  // corner contacts every boundary vertex has exactly one outgoing edge.
  std::map<Vertex, Vertex> next;
  for (int r = 0; r < n_rows; ++r) {
    for (int c = 0; c < n_cols; ++c) {
      if (!filled(r, c)) continue;
      const int x = c;
      const int y = n_rows - 1 - r;
      if (!filled(r + 1, c)) next[{x, y}] = {x + 1, y};
      if (!filled(r, c + 1)) next[{x + 1, y}] = {x + 1, y + 1};
      if (!filled(r - 1, c)) next[{x + 1, y + 1}] = {x, y + 1};
      if (!filled(r, c - 1)) next[{x, y + 1}] = {x, y};
    }
  }
  if (next.empty()) throw InvalidArgument("mask has no filled cell");

  std::vector<Ring> rings;
  while (!next.empty()) {
    std::vector<Vertex> loop;
    Vertex v = next.begin()->first;
    while (true) {
      auto it = next.find(v);
      if (it == next.end()) break;
      loop.push_back(v);
      v = it->second;
      next.erase(it);
    }
    // Drop vertices in the middle of straight runs.
    std::vector<Point> pts;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vertex& a = loop[(i + n - 1) % n];
      const Vertex& b = loop[i];
      const Vertex& c = loop[(i + 1) % n];
      const long turn = static_cast<long>(b.first - a.first) * (c.second - b.second) -
                        static_cast<long>(b.second - a.second) * (c.first - b.first);
      if (turn != 0) pts.push_back(origin + Point{cell * b.first, cell * b.second});
    }
    rings.emplace_back(std::move(pts));
  }
  return Shape(std::move(rings), std::move(name));
}

Shape letter_shape(char letter, double cell) { return mask_shape(glyph_mask(letter), cell, {}, std::string(1, letter)); }

Alphabet::Alphabet(double cell) : cell_(cell) {
  for (char c = 'A'; c <= 'Z'; ++c) letters_.push_back(letter_shape(c, cell));
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    for (std::size_t j = i + 1; j < letters_.size(); ++j) {
      const double da = exact_area(letters_[i]) - exact_area(letters_[j]);
      const double dp = exact_perimeter(letters_[i]) - exact_perimeter(letters_[j]);
      if (std::abs(da) < 1e-9 * cell * cell && std::abs(dp) < 1e-9 * cell) {
        collisions_.emplace_back(static_cast<char>('A' + i), static_cast<char>('A' + j));
      }
    }
  }
}

const Shape& Alphabet::letter(char c) const {
  glyph_mask(c);
  return letters_[static_cast<std::size_t>(c - 'A')];
}

double Alphabet::min_separation() const {
  double best = std::numeric_limits<double>::infinity();
  const double s = cell_;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    for (std::size_t j = i + 1; j < letters_.size(); ++j) {
      const double da = (exact_area(letters_[i]) - exact_area(letters_[j])) / (s * s);
      const double dp = (exact_perimeter(letters_[i]) - exact_perimeter(letters_[j])) / s;
      best = std::min(best, std::hypot(da, dp));
    }
  }
  return best;
}

WordShape word_shape(std::string_view word, double cell, double gap) {
  if (word.empty()) throw InvalidArgument("word is empty");
  if (gap < 0.0) gap = cell;
  WordShape out{std::string(word), Shape({rectangle({0, 0}, 1, 1)}), {}, kGlyphColumns * cell + gap};
  std::vector<Shape> parts;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const Point origin{static_cast<double>(i) * out.advance, 0.0};
    parts.push_back(mask_shape(glyph_mask(word[i]), cell, origin, std::string(1, word[i])));
    out.boxes.push_back({word[i], origin, kGlyphColumns * cell, kGlyphRows * cell});
  }
  out.shape = union_disjoint(parts, std::string(word));
  return out;
}

ArenaCircle letter_arena(const LetterBox& box, double scale) {
  return {box.origin + Point{box.width / 2.0, box.height / 2.0}, scale * std::hypot(box.width, box.height) / 2.0};
}

std::vector<DictEntry> calibrate_letters(double cell, std::uint64_t lines, std::uint64_t replicates,
                                         std::uint64_t seed, SamplerMode mode) {
  std::vector<DictEntry> dict;
  const LetterBox box{'A', {}, kGlyphColumns * cell, kGlyphRows * cell};
  for (char c = 'A'; c <= 'Z'; ++c) {
    const Shape s = letter_shape(c, cell);
    dict.push_back(calibrate(s, lines, replicates, explore_config(letter_arena(box), mode, replicate_seed(seed, c))));
  }
  return dict;
}

std::vector<DictEntry> calibrate_words(std::span<const std::string> words, double cell, std::uint64_t lines,
                                       std::uint64_t replicates, std::uint64_t seed, SamplerMode mode) {
  std::vector<DictEntry> dict;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const WordShape w = word_shape(words[i], cell);
    dict.push_back(calibrate(w.shape, lines, replicates, explore_config(w.shape, mode, replicate_seed(seed, i))));
  }
  return dict;
}

std::vector<std::string> default_word_list() {
  return {"PEOPLES", "NATIONS", "SAVE",   "WAR",      "SORROW",    "MANKIND",  "FAITH",
          "HUMAN",   "RIGHTS",  "WORTH",  "JUSTICE",  "LAW",       "PROGRESS", "LIFE",
          "FREEDOM", "PEACE",   "UNITE",  "SECURITY", "PRINCIPLES", "FORCE"};
}

std::vector<std::pair<std::string, std::string>> anagram_pairs(std::span<const DictEntry> dict) {
  std::vector<std::pair<std::string, std::string>> out;
  std::vector<std::string> keys;
  for (const DictEntry& e : dict) {
    std::string k = e.name;
    std::sort(k.begin(), k.end());
    keys.push_back(k);
  }
  for (std::size_t i = 0; i < dict.size(); ++i) {
    for (std::size_t j = i + 1; j < dict.size(); ++j) {
      if (keys[i] == keys[j]) out.emplace_back(dict[i].name, dict[j].name);
    }
  }
  return out;
}

namespace {

const DictEntry* find_entry(std::span<const DictEntry> dict, const std::string& name) {
  for (const DictEntry& e : dict) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

// Error bars of a finished run: its own batch errors when available, else
// the winning entry's calibrated noise.
std::pair<double, double> run_sigmas(const StopRun& run, std::span<const DictEntry> dict) {
  if (run.report.stderr_valid) return {run.report.stderr_A, run.report.stderr_P};
  const DictEntry* e = find_entry(dict, run.label);
  const double n = static_cast<double>(std::max<std::uint64_t>(run.report.N, 1));
  if (e == nullptr) return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  return {e->sigma0_a / std::sqrt(n), e->sigma0_p / std::sqrt(n)};
}

}  // namespace

ReadResult read_local(const WordShape& target, std::span<const DictEntry> letter_dict, std::uint64_t letter_budget,
                      const StopOptions& options, std::uint64_t seed, SamplerMode mode) {
  if (letter_dict.empty()) throw InvalidArgument("empty letter dictionary");
  // Every letter must clear this so that the whole word clears the threshold.
  const double letter_threshold = std::pow(options.threshold, 1.0 / static_cast<double>(target.boxes.size()));
  ReadResult out;
  double var_a = 0.0;
  double var_p = 0.0;
  for (std::size_t i = 0; i < target.boxes.size(); ++i) {
    const LetterBox& box = target.boxes[i];
    const LetterBox local{box.letter, {}, box.width, box.height};
    const double cell = box.width / kGlyphColumns;
    Exploration run(letter_shape(box.letter, cell),
                    explore_config(letter_arena(local), mode, replicate_seed(seed, i)));
    StopOptions opt = options;
    opt.max_lines = letter_budget;
    opt.threshold = letter_threshold;
    const StopRun r = explore_until_confident(run, letter_dict, opt);
    out.letter_lines.push_back(r.lines);
    out.letter_censored.push_back(r.censored);
    out.lines += r.lines;
    out.censored = out.censored || r.censored;
    out.text += r.label.empty() ? std::string("?") : r.label;
    if (!r.label.empty()) {
      out.area_hat += r.report.area_hat;
      out.perim_hat += r.report.perim_hat;
      const auto [sa, sp] = run_sigmas(r, letter_dict);
      var_a += sa * sa;
      var_p += sp * sp;
    } else {
      var_a = var_p = std::numeric_limits<double>::infinity();
    }
  }
  out.sigma_A = std::sqrt(var_a);
  out.sigma_P = std::sqrt(var_p);
  out.correct = out.text == target.word;
  return out;
}

ReadResult read_global(const WordShape& target, std::span<const DictEntry> word_dict, std::uint64_t budget,
                       const StopOptions& options, std::uint64_t seed, SamplerMode mode) {
  if (word_dict.empty()) throw InvalidArgument("empty word dictionary");
  Exploration run(target.shape, explore_config(target.shape, mode, seed));
  StopOptions opt = options;
  opt.max_lines = budget;
  const StopRun r = explore_until_confident(run, word_dict, opt);
  ReadResult out;
  out.ambiguous_dictionary = !anagram_pairs(word_dict).empty();
  out.text = r.label.empty() ? std::string("?") : r.label;
  out.correct = out.text == target.word;
  out.censored = r.censored;
  out.lines = r.lines;
  if (!r.label.empty()) {
    out.area_hat = r.report.area_hat;
    out.perim_hat = r.report.perim_hat;
    std::tie(out.sigma_A, out.sigma_P) = run_sigmas(r, word_dict);
  }
  return out;
}

namespace {

StrategySummary summarize(std::vector<ReadResult> runs) {
  StrategySummary s;
  std::vector<double> lines;
  double ok = 0.0;
  double sa2 = 0.0;
  double sp2 = 0.0;
  for (const ReadResult& r : runs) {
    ok += r.correct ? 1.0 : 0.0;
    lines.push_back(static_cast<double>(r.lines));
    s.mean_area += r.area_hat;
    s.mean_perimeter += r.perim_hat;
    sa2 += r.sigma_A * r.sigma_A;
    sp2 += r.sigma_P * r.sigma_P;
  }
  const double n = static_cast<double>(runs.size());
  if (n > 0) {
    s.success_rate = ok / n;
    s.mean_area /= n;
    s.mean_perimeter /= n;
    s.rms_sigma_A = std::sqrt(sa2 / n);
    s.rms_sigma_P = std::sqrt(sp2 / n);
  }
  s.median_lines = median(lines);
  s.runs = std::move(runs);
  return s;
}

}  // namespace

StrategyComparison compare_strategies(std::string_view word, std::span<const DictEntry> letter_dict,
                                      std::span<const DictEntry> word_dict, std::span<const std::uint64_t> seeds,
                                      std::uint64_t total_budget, const StopOptions& options, double cell,
                                      SamplerMode mode) {
  const WordShape target = word_shape(word, cell);
  StrategyComparison cmp;
  cmp.word = target.word;
  cmp.exact_area = exact_area(target.shape);
  cmp.exact_perimeter = exact_perimeter(target.shape);
  const std::uint64_t per_letter = total_budget / target.boxes.size();
  std::vector<ReadResult> local;
  std::vector<ReadResult> global;
  for (std::uint64_t seed : seeds) {
    local.push_back(read_local(target, letter_dict, per_letter, options, seed, mode));
    global.push_back(read_global(target, word_dict, total_budget, options, seed, mode));
  }
  cmp.local = summarize(std::move(local));
  cmp.global = summarize(std::move(global));
  return cmp;
}

}  // namespace statgeo
