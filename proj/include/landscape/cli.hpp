#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "landscape/io.hpp"

namespace landscape {

/// Everything a run depends on. Unset optionals resolve to per-subcommand
/// defaults (delta: adaptive min(0.01, 0.4/n) for tw; window: the smallest
/// aligned window containing the experiment's scaled points).
struct RunConfig {
  std::string subcommand;
  int n = 500;
  std::optional<double> delta;
  std::optional<std::pair<double, double>> window;
  std::uint64_t seed = 1;
  std::size_t trials = 1;
  double eps_min = 0.0009765625;  // 2^-10
  double eps_max = 0.25;
  int eps_levels = 9;
  double x1 = -0.5;
  double x2 = 0.5;
  double y1 = -0.5;
  double y2 = 0.5;
  double grid_step = 0.0;  ///< 0 selects the grid's native y values
  double tol_rel = 1e-9;
  double x = 0.0;
  double s = 0.0;
  double y = 0.0;
  double t = 1.0;
  std::string side = "left";
  int threads = 0;  ///< 0 means default_thread_count()
  std::string out;  ///< empty writes the main artifact to stdout
  std::string format = "csv";

  bool operator==(const RunConfig&) const = default;
};

const std::vector<std::string>& subcommands();

/// Defaults for a subcommand (the profile family mirrors the published
/// n = 500, grid step 0.01, x in {-1/2, 1/2}, y in [-1/2, 1/2] experiment).
RunConfig default_config(const std::string& subcommand);

/// Throws ConstructionError if a parameter is out of range.
void validate(const RunConfig& config);

Json to_json(const RunConfig& config);
RunConfig config_from_json(const Json& j);

/// The eps ladder eps_max, ..., eps_min with eps_levels geometric steps.
std::vector<double> eps_ladder(const RunConfig& config);

/// Seed of trial m: the run seed for m = 0, derived substreams afterwards.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

/// Entry point. Exit 0 on success, 1 on a domain error, 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace landscape
