#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "statgeo/chords.hpp"
#include "statgeo/estimators.hpp"
#include "statgeo/reading.hpp"
#include "statgeo/recognition.hpp"

namespace statgeo::io {

// Shape documents: {"name": "...", "rings": [[[x, y], ...], ...]}.
Shape parse_shape(const std::string& text, const std::string& fallback_name = "shape");
std::string shape_json(const Shape& shape);

// `builtin:NAME` selects a built-in shape, `word:TEXT` a block-letter word;
// anything else is a file path.
Shape load_shape(const std::string& spec);

// Dictionaries: array of {name, p_ref, a_ref, sigma0_a, sigma0_p, corr}.
std::vector<DictEntry> parse_dictionary(const std::string& text);
std::string dictionary_json(std::span<const DictEntry> dict);
std::vector<DictEntry> load_dictionary(const std::string& path);

std::string report_json(const EstimateReport& report);
std::string posterior_json(const Posterior& post, const EstimateReport& report, bool stopped);

std::string read_file(const std::string& path);
// Throws Error naming the path when the file cannot be written.
void write_file(const std::string& path, const std::string& content);

// Fixed round-trip formatting so artifacts are byte-stable.
std::string num(double v);

std::string landscape_csv(const LandscapeGrid& grid);
std::string convergence_csv(const ConvergenceSeries& series);
std::string alphabet_csv(const Alphabet& alphabet);

// One row per line: theta, p, k, L1, L3, then the chords separated by ';'.
void write_observation_header(std::ostream& os);
void write_observation(std::ostream& os, const LineParam& line, const LineObservation& obs);

// Minimal SVG renderings.
std::string dictionary_svg(std::span<const DictEntry> dict, double N, const EstimateReport* point = nullptr);
std::string landscape_svg(const LandscapeGrid& grid, std::span<const DictEntry> dict);
std::string alphabet_svg(const Alphabet& alphabet);
std::string shape_svg(const Shape& shape, const ArenaCircle* arena = nullptr);

}  // namespace statgeo::io
