#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "statgeo/error.hpp"
#include "statgeo/sampling.hpp"

namespace statgeo::cli {

// Bad command line; exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string command;  // empty when only help was requested
  std::vector<std::string> shapes;
  std::string dict;
  std::optional<std::uint64_t> lines;  // command-specific default when unset
  SamplerMode sampler = SamplerMode::kIur;
  std::uint64_t seed = 1;
  std::size_t batches = 100;
  double threshold = 0.95;
  std::optional<std::uint64_t> replicates;
  std::string grid;
  std::string word;
  std::string strategy;
  std::string out;
  std::string svg;
  unsigned workers = 1;
  double arena_scale = 1.2;
  std::string dump_observations;
  std::string help;  // usage text, filled when --help was given
};

// Throws UsageError for unknown commands or flags and invalid values.
RunConfig parse_config(int argc, const char* const* argv);

// Runs the command. Artifacts go to --out (or `out` when no path is given);
// the one-line summary goes to `out`, or to `err` when `out` carries the
// artifact. Returns the exit status; library errors give 1.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_config + dispatch, mapping usage errors to exit status 2.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace statgeo::cli
