#include "statgeo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "statgeo/explore.hpp"
#include "statgeo/io.hpp"
#include "statgeo/reading.hpp"
#include "statgeo/recognition.hpp"

namespace statgeo::cli {
namespace {

// Dictionaries built on the fly by `read` when no --dict is given.
constexpr std::uint64_t kCalibrationLines = 1000;
constexpr std::uint64_t kCalibrationReplicates = 200;
constexpr std::uint64_t kCalibrationSeed = 0x5eed;

enum Flag : unsigned {
  kShape = 1u << 0,
  kShapes = 1u << 1,  // --shape may repeat
  kDict = 1u << 2,
  kLines = 1u << 3,
  kSampler = 1u << 4,
  kSeed = 1u << 5,
  kBatches = 1u << 6,
  kThreshold = 1u << 7,
  kReplicates = 1u << 8,
  kGrid = 1u << 9,
  kWord = 1u << 10,
  kStrategy = 1u << 11,
  kOut = 1u << 12,
  kSvg = 1u << 13,
  kWorkers = 1u << 14,
  kArenaScale = 1u << 15,
  kDump = 1u << 16,
};

struct Command {
  const char* name;
  const char* about;
  unsigned flags;
};

constexpr Command kCommands[] = {
    {"estimate", "explore a shape and report area and perimeter",
     kShape | kLines | kSampler | kSeed | kBatches | kOut | kSvg | kWorkers | kArenaScale | kDump},
    {"calibrate", "build a dictionary from shapes, letters or words",
     kShapes | kLines | kSampler | kSeed | kReplicates | kWord | kStrategy | kOut | kSvg | kWorkers | kArenaScale},
    {"classify", "explore a shape until the dictionary recognizes it",
     kShape | kDict | kLines | kSampler | kSeed | kBatches | kThreshold | kOut | kSvg | kArenaScale},
    {"landscape", "label the (P, A) plane by confident dictionary entry", kDict | kLines | kThreshold | kGrid | kOut | kSvg},
    {"converge", "replicate spread of the estimates against N",
     kShape | kSampler | kSeed | kReplicates | kGrid | kOut | kWorkers | kArenaScale},
    {"read", "read a block-letter word locally or globally",
     kDict | kLines | kSampler | kSeed | kThreshold | kReplicates | kWord | kStrategy | kOut | kSvg},
    {"letters", "dump the block alphabet in (A/s^2, P/s)", kOut | kSvg},
};

void add_flags(CLI::App& app, unsigned flags, RunConfig& c, std::string& sampler) {
  if (flags & kShapes) {
    app.add_option("--shape", c.shapes, "shape file, builtin:NAME or word:TEXT (repeatable)");
  } else if (flags & kShape) {
    app.add_option("--shape", c.shapes, "shape file, builtin:NAME or word:TEXT")->expected(1)->required();
  }
  if (flags & kDict) app.add_option("--dict", c.dict, "dictionary file");
  if (flags & kLines) app.add_option("--lines", c.lines, "line count or budget");
  if (flags & kSampler) app.add_option("--sampler", sampler, "iur | billiard-cos | billiard-uni");
  if (flags & kSeed) app.add_option("--seed", c.seed, "random seed");
  if (flags & kBatches) app.add_option("--batches", c.batches, "batches for error bars");
  if (flags & kThreshold) app.add_option("--threshold", c.threshold, "posterior needed to stop");
  if (flags & kReplicates) app.add_option("--replicates", c.replicates, "replicate count");
  if (flags & kGrid) app.add_option("--grid", c.grid, "N list (converge) or nP,nA (landscape)");
  if (flags & kWord) app.add_option("--word", c.word, "capital-letter word (comma list for calibrate)");
  if (flags & kStrategy) app.add_option("--strategy", c.strategy, "local | global");
  if (flags & kOut) app.add_option("--out", c.out, "artifact path");
  if (flags & kSvg) app.add_option("--svg", c.svg, "SVG figure path");
  if (flags & kWorkers) app.add_option("--workers", c.workers, "worker threads");
  if (flags & kArenaScale) app.add_option("--arena-scale", c.arena_scale, "arena radius over bounding radius");
  if (flags & kDump) app.add_option("--dump-observations", c.dump_observations, "per-line CSV path");
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("--grid: '" + item + "' is not a number");
    }
    if (used != item.size() || !(v >= 1.0) || v != std::floor(v)) {
      throw UsageError("--grid: '" + item + "' is not a positive integer");
    }
    out.push_back(static_cast<std::uint64_t>(v));
  }
  if (out.empty()) throw UsageError("--grid is empty");
  return out;
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void validate(const RunConfig& c) {
  if (c.lines && *c.lines == 0) throw UsageError("--lines must be positive");
  if (c.replicates && *c.replicates == 0) throw UsageError("--replicates must be positive");
  if (c.batches < 2) throw UsageError("--batches must be at least 2");
  if (!(c.threshold >= 0.0 && c.threshold <= 1.0)) throw UsageError("--threshold must lie in [0, 1]");
  if (c.workers == 0) throw UsageError("--workers must be positive");
  if (!(c.arena_scale >= 1.0)) throw UsageError("--arena-scale must be at least 1");
  if (!c.strategy.empty() && c.strategy != "local" && c.strategy != "global") {
    throw UsageError("--strategy must be local or global");
  }
  if (c.command == "calibrate") {
    if (!c.shapes.empty() && !c.strategy.empty()) throw UsageError("--shape and --strategy are exclusive");
    if (c.shapes.empty() && c.strategy.empty()) throw UsageError("calibrate needs --shape or --strategy");
    if (!c.word.empty() && c.strategy != "global") throw UsageError("--word needs --strategy global");
  }
  if (c.command == "classify" && c.dict.empty()) throw UsageError("classify needs --dict");
  if (c.command == "landscape" && c.dict.empty()) throw UsageError("landscape needs --dict");
  if (c.command == "read") {
    if (c.word.empty()) throw UsageError("read needs --word");
    for (char ch : c.word) {
      if (ch < 'A' || ch > 'Z') throw UsageError("--word must be capital letters A-Z");
    }
  }
  if (c.command == "converge" && !c.grid.empty()) parse_list(c.grid);
  if (c.command == "landscape" && !c.grid.empty()) {
    const auto g = parse_list(c.grid);
    if (g.size() > 2 || g[0] < 2 || g.back() < 2) throw UsageError("--grid for landscape is n or nP,nA with n >= 2");
  }
}

// Writes the artifact to --out, or to `out` when there is no path.
struct Sink {
  const RunConfig& c;
  std::ostream& out;
  std::ostream& err;

  void artifact(const std::string& text) const {
    if (c.out.empty()) {
      out << text;
    } else {
      io::write_file(c.out, text);
    }
  }
  std::ostream& summary() const { return c.out.empty() ? err : out; }
  void svg(const std::string& text) const {
    if (!c.svg.empty()) io::write_file(c.svg, text);
  }
};

std::string fmt(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

int cmd_estimate(const RunConfig& c, const Sink& sink) {
  const Shape shape = io::load_shape(c.shapes.at(0));
  const std::uint64_t lines = c.lines.value_or(100000);
  const ExploreConfig cfg = explore_config(shape, c.sampler, c.seed, c.arena_scale, c.batches);
  Accumulator acc(cfg.accumulator);
  std::uint64_t rejected = 0;
  if (!c.dump_observations.empty()) {
    // Sequential, so every line can be written; same line sequence as below.
    std::ofstream dump(c.dump_observations);
    if (!dump) throw Error("cannot write '" + c.dump_observations + "'");
    io::write_observation_header(dump);
    Exploration run(shape, cfg);
    for (std::uint64_t i = 0; i < lines; ++i) {
      const LineObservation& obs = run.step();
      io::write_observation(dump, line_of(run.last_segment(), cfg.arena.center), obs);
    }
    acc = run.accumulator();
    rejected = run.rejected();
  } else {
    ExploreResult res = explore(shape, cfg, lines, c.workers);
    acc = std::move(res.accumulator);
    rejected = res.rejected;
  }
  const EstimateReport r = make_report(acc, rejected);
  sink.artifact(io::report_json(r));
  sink.svg(io::shape_svg(shape, &cfg.arena));
  sink.summary() << "estimate " << shape.name() << ": N=" << r.N << " area=" << fmt(r.area_hat) << " +- "
                 << fmt(r.stderr_A, 3) << " perimeter=" << fmt(r.perim_hat) << " +- " << fmt(r.stderr_P, 3)
                 << " (exact " << fmt(exact_area(shape)) << ", " << fmt(exact_perimeter(shape)) << ")\n";
  return 0;
}

int cmd_calibrate(const RunConfig& c, const Sink& sink) {
  const std::uint64_t lines = c.lines.value_or(kCalibrationLines);
  const std::uint64_t reps = c.replicates.value_or(kCalibrationReplicates);
  std::vector<DictEntry> dict;
  if (c.strategy == "local") {
    dict = calibrate_letters(1.0, lines, reps, c.seed, c.sampler);
  } else if (c.strategy == "global") {
    const std::vector<std::string> words = c.word.empty() ? default_word_list() : split_words(c.word);
    dict = calibrate_words(words, 1.0, lines, reps, c.seed, c.sampler);
  } else {
    for (std::size_t i = 0; i < c.shapes.size(); ++i) {
      const Shape shape = io::load_shape(c.shapes[i]);
      const ExploreConfig cfg = explore_config(shape, c.sampler, replicate_seed(c.seed, i), c.arena_scale);
      dict.push_back(calibrate(shape, lines, reps, cfg, c.workers));
    }
  }
  sink.artifact(io::dictionary_json(dict));
  sink.svg(io::dictionary_svg(dict, static_cast<double>(lines)));
  for (const auto& [a, b] : anagram_pairs(dict)) {
    sink.err << "warning: " << a << " and " << b << " are anagrams and cannot be told apart\n";
  }
  sink.summary() << "calibrate: " << dict.size() << " entries, " << reps << " replicates of " << lines << " lines\n";
  return 0;
}

int cmd_classify(const RunConfig& c, const Sink& sink) {
  const Shape shape = io::load_shape(c.shapes.at(0));
  const std::vector<DictEntry> dict = io::load_dictionary(c.dict);
  StopOptions opt;
  opt.threshold = c.threshold;
  opt.max_lines = c.lines.value_or(opt.max_lines);
  Exploration run(shape, explore_config(shape, c.sampler, c.seed, c.arena_scale, c.batches));
  const StopRun r = explore_until_confident(run, dict, opt);
  if (r.label.empty()) throw InsufficientData("no chord observed within " + std::to_string(r.lines) + " lines");
  const Posterior post = classify(r.report, dict, opt.noise);
  sink.artifact(io::posterior_json(post, r.report, !r.censored));
  sink.svg(io::dictionary_svg(dict, static_cast<double>(r.lines), &r.report));
  sink.summary() << "classify " << shape.name() << ": " << post.top << " p=" << fmt(post.top_prob, 4) << " after "
                 << r.lines << " lines" << (r.censored ? " (budget exhausted, not confident)" : "") << "\n";
  return 0;
}

int cmd_landscape(const RunConfig& c, const Sink& sink) {
  const std::vector<DictEntry> dict = io::load_dictionary(c.dict);
  const double N = static_cast<double>(c.lines.value_or(1000));
  GridSpec grid = grid_around(dict);
  if (!c.grid.empty()) {
    const auto g = parse_list(c.grid);
    grid.p_steps = g[0];
    grid.a_steps = g.back();
  }
  const LandscapeGrid land = landscape(dict, N, grid, c.threshold);
  sink.artifact(io::landscape_csv(land));
  sink.svg(io::landscape_svg(land, dict));
  std::size_t labeled = 0;
  for (int l : land.labels) labeled += l >= 0 ? 1 : 0;
  sink.summary() << "landscape: N=" << N << ", " << labeled << " of " << land.labels.size() << " cells labeled at "
                 << c.threshold << "\n";
  return 0;
}

int cmd_converge(const RunConfig& c, const Sink& sink) {
  const Shape shape = io::load_shape(c.shapes.at(0));
  const std::vector<std::uint64_t> counts = parse_list(c.grid.empty() ? "100,1000,10000,100000" : c.grid);
  const ExploreConfig cfg = explore_config(shape, c.sampler, c.seed, c.arena_scale);
  const ConvergenceSeries series = convergence(shape, counts, c.replicates.value_or(200), cfg, c.workers);
  sink.artifact(io::convergence_csv(series));
  auto& s = sink.summary() << "converge " << shape.name() << ": ";
  if (series.fit_A.prefactor > 0.0) {
    s << "sigma_A ~ " << fmt(series.fit_A.prefactor, 4) << " N^" << fmt(series.fit_A.exponent, 4) << ", sigma_P ~ "
      << fmt(series.fit_P.prefactor, 4) << " N^" << fmt(series.fit_P.exponent, 4) << "\n";
  } else {
    s << series.samples.size() << " sizes (too few for a fit)\n";
  }
  return 0;
}

int cmd_read(const RunConfig& c, const Sink& sink) {
  const bool local = c.strategy == "local";
  const WordShape target = word_shape(c.word);
  std::vector<DictEntry> dict;
  if (!c.dict.empty()) {
    dict = io::load_dictionary(c.dict);
  } else if (local) {
    dict = calibrate_letters(1.0, kCalibrationLines, kCalibrationReplicates, kCalibrationSeed, c.sampler);
  } else {
    std::vector<std::string> words = default_word_list();
    if (std::find(words.begin(), words.end(), c.word) == words.end()) words.push_back(c.word);
    dict = calibrate_words(words, 1.0, kCalibrationLines, kCalibrationReplicates, kCalibrationSeed, c.sampler);
  }
  StopOptions opt;
  opt.threshold = c.threshold;
  const std::uint64_t budget = c.lines.value_or(30000);
  const std::uint64_t reps = c.replicates.value_or(1);

  std::ostringstream csv;
  csv << "seed,text,correct,censored,lines,area_hat,perim_hat,sigma_A,sigma_P\n";
  std::size_t correct = 0;
  std::string last;
  bool ambiguous = false;
  for (std::uint64_t r = 0; r < reps; ++r) {
    const std::uint64_t seed = reps == 1 ? c.seed : replicate_seed(c.seed, r);
    const ReadResult res = local ? read_local(target, dict, budget / target.boxes.size(), opt, seed, c.sampler)
                                 : read_global(target, dict, budget, opt, seed, c.sampler);
    correct += res.correct ? 1 : 0;
    ambiguous = ambiguous || res.ambiguous_dictionary;
    last = res.text;
    csv << seed << ',' << res.text << ',' << res.correct << ',' << res.censored << ',' << res.lines << ','
        << io::num(res.area_hat) << ',' << io::num(res.perim_hat) << ',' << io::num(res.sigma_A) << ','
        << io::num(res.sigma_P) << '\n';
  }
  if (ambiguous) sink.err << "warning: the word dictionary holds anagrams\n";
  sink.artifact(csv.str());
  sink.svg(io::shape_svg(target.shape));
  if (reps == 1) {
    sink.summary() << last << "\n";
  } else {
    sink.summary() << "read " << c.word << " (" << (local ? "local" : "global") << "): " << correct << " of " << reps
                   << " correct\n";
  }
  return 0;
}

int cmd_letters(const RunConfig&, const Sink& sink) {
  const Alphabet alphabet(1.0);
  sink.artifact(io::alphabet_csv(alphabet));
  sink.svg(io::alphabet_svg(alphabet));
  sink.summary() << "letters: 26 glyphs, " << alphabet.collisions().size() << " collisions, min separation "
                 << fmt(alphabet.min_separation()) << "\n";
  return alphabet.collisions().empty() ? 0 : 1;
}

}  // namespace

RunConfig parse_config(int argc, const char* const* argv) {
  RunConfig c;
  std::string sampler = "iur";
  CLI::App app("Area and perimeter of planar shapes from random lines", "statgeo");
  app.require_subcommand(0, 1);
  for (const Command& cmd : kCommands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.about);
    add_flags(*sub, cmd.flags, c, sampler);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    c.help = app.help();
    return c;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (const CLI::App* sub : app.get_subcommands()) {
    if (sub->parsed()) c.command = sub->get_name();
  }
  if (c.command.empty()) throw UsageError("missing command; run with --help for usage");
  try {
    c.sampler = parse_sampler_mode(sampler);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  validate(c);
  return c;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.command.empty()) {
    out << config.help;
    return 0;
  }
  const Sink sink{config, out, err};
  static const std::map<std::string, std::function<int(const RunConfig&, const Sink&)>> table = {
      {"estimate", cmd_estimate},   {"calibrate", cmd_calibrate}, {"classify", cmd_classify}, {"landscape", cmd_landscape},
      {"converge", cmd_converge}, {"read", cmd_read},           {"letters", cmd_letters}};
  const auto it = table.find(config.command);
  if (it == table.end()) {
    err << "unknown command '" << config.command << "'\n";
    return 2;
  }
  try {
    return it->second(config, sink);
  } catch (const Error& e) {
    err << config.command << " failed: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_config(argc, argv);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  return dispatch(config, out, err);
}

}  // namespace statgeo::cli
