#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "landscape/environment.hpp"
#include "landscape/stats.hpp"

namespace landscape {

/// Interval of scaled spatial coordinates; only its end points are used.
struct ScaledInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Leftmost maximizer from (I.lo, s)_n to (J.lo, t)_n against the rightmost
/// maximizer from (I.hi, s)_n to (J.hi, t)_n: true iff they are planar-disjoint.
bool disjoint_pair_detect(const BrownianField& field, int n, ScaledInterval I, ScaledInterval J,
                          double s = 0.0, double t = 1.0);

/// Largest k with x_1 < ... < x_k from x_grid and y_1 < ... < y_k from y_grid
/// whose leftmost maximizers are pairwise disjoint. Pairs with an end left of
/// their start are skipped.
int max_disjoint_count(const BrownianField& field, int n, std::span<const double> x_grid,
                       std::span<const double> y_grid, double s = 0.0, double t = 1.0);

struct TailConfig {
  int n = 100;
  double delta = 0.01;
  std::vector<double> epsilons;  ///< decreasing
  std::size_t trials = 2000;
  std::uint64_t base_seed = 1;
  double x = 0.0;  ///< centre of I at time 0
  double y = 0.0;  ///< centre of J at time 1
  int threads = 1;
};

struct TailLevel {
  double eps = 0.0;
  std::size_t trials = 0;
  std::size_t hits = 0;
  double phat = 0.0;
  Interval ci;
};

struct TailEstimate {
  std::vector<TailLevel> levels;
  /// Slope of log phat against log eps over levels with hits; empty when
  /// fewer than two levels have hits.
  std::optional<double> exponent;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<double> dropped;  ///< eps values left out for having no hits
};

/// Seed of trial m at ladder level e.
std::uint64_t tail_trial_seed(std::uint64_t base_seed, std::size_t level, std::size_t trial);

/// Field used by one tail trial: the smallest aligned window containing
/// I = (x - eps, x + eps) at line 0 and J = (y - eps, y + eps) at line n.
GridSpec tail_grid(const TailConfig& config, double eps);

/// Frequency of disjoint_pair_detect on I and J over independent fields.
TailEstimate tail_experiment(const TailConfig& config);

/// True when phat does not decrease with eps beyond the Wilson intervals:
/// for every pair of levels eps_a > eps_b, ci_hi(eps_a) >= ci_lo(eps_b).
bool tail_monotone(const TailEstimate& estimate);

struct CrosscheckReport {
  std::size_t cells = 0;
  std::size_t flagged = 0;
  std::size_t measure_sweeps = 0;  ///< one per x grid point
  std::size_t extraction_sweeps = 0;  ///< one per distinct extraction start
  std::size_t extractions = 0;  ///< two per flagged cell
  double max_mass = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> violations;  ///< (x cell, y cell)
};

/// For every support cell of the bivariate measure, checks disjoint_pair_detect
/// on the cell widened by one grid step per axis. Grids must be uniform and the
/// field window must contain the widened end points.
CrosscheckReport support_vs_disjoint_crosscheck(const BrownianField& field, int n,
                                                std::span<const double> x_grid,
                                                std::span<const double> y_grid,
                                                double tol_rel = 1e-9, int threads = 1);

struct CoalescenceEntry {
  double y = 0.0;
  std::optional<int> line;  ///< coalescence line; empty if they only share the top line's end
  double z_increment = 0.0;  ///< Z(next y) - Z(y); NaN for the last entry
};

/// Coalescence of the leftmost maximizer from (x1, 0)_n and the rightmost from
/// (x2, 0)_n to each (y, 1)_n, paired with the local Z increment.
std::vector<CoalescenceEntry> coalescence_scan(const BrownianField& field, int n, double x1,
                                               double x2, std::span<const double> y_grid);

}  // namespace landscape
