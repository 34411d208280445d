#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "landscape/disjoint.hpp"
#include "landscape/error.hpp"
#include "landscape/fractal.hpp"
#include "landscape/geometry.hpp"
#include "landscape/lpp.hpp"
#include "landscape/parallel.hpp"
#include "landscape/rng.hpp"
#include "landscape/scaling.hpp"

namespace landscape {

namespace {

double uniform_step(std::span<const double> grid, const char* what) {
  if (grid.size() < 2) throw DomainError(std::string(what) + ": needs at least two points");
  const double step = grid[1] - grid[0];
  for (std::size_t m = 1; m < grid.size(); ++m) {
    const double gap = grid[m] - grid[m - 1];
    if (!(gap > 0.0) || std::abs(gap - step) > 1e-9 * comparison_scale(step))
      throw DomainError(std::string(what) + ": grid must be uniform and increasing");
  }
  return step;
}

// Extremal staircases from one start to several ends, sharing one sweep.
struct ExtractionRequest {
  double y = 0.0;
  Side side = Side::left;
  std::size_t slot = 0;
};

void extract_from(const BrownianField& field, int n, double x, double s, double t,
                  const std::vector<ExtractionRequest>& requests,
                  std::vector<std::optional<Staircase>>& out) {
  const GridSpec& spec = field.spec();
  const Endpoint a = scaled_endpoint(x, s, n, spec);
  const int target = scaled_line(t, n);
  double y_max = a.z;
  for (const auto& r : requests) y_max = std::max(y_max, scaled_endpoint(r.y, t, n, spec).z);
  const PassageProfile profile = passage_profile(field, a.z, a.k, target, y_max);
  for (const auto& r : requests) {
    const Endpoint b = scaled_endpoint(r.y, t, n, spec);
    if (b.z < a.z) throw DomainError("extraction end lies left of its start");
    out[r.slot] = extract_staircase(profile, b.z, r.side);
  }
}

}  // namespace

bool disjoint_pair_detect(const BrownianField& field, int n, ScaledInterval I, ScaledInterval J,
                          double s, double t) {
  if (I.lo > I.hi || J.lo > J.hi) throw DomainError("disjoint_pair_detect: empty interval");
  const Staircase left = extremal_staircase(field, ScaledQuad{I.lo, s, J.lo, t}, n, Side::left);
  const Staircase right =
      extremal_staircase(field, ScaledQuad{I.hi, s, J.hi, t}, n, Side::right);
  return disjoint(left, right);
}

int max_disjoint_count(const BrownianField& field, int n, std::span<const double> x_grid,
                       std::span<const double> y_grid, double s, double t) {
  if (x_grid.empty() || y_grid.empty())
    throw DomainError("max_disjoint_count: empty endpoint grid");
  for (auto grid : {x_grid, y_grid}) {
    for (std::size_t m = 1; m < grid.size(); ++m) {
      if (!(grid[m - 1] < grid[m]))
        throw DomainError("max_disjoint_count: grids must be strictly increasing");
    }
  }
  const std::size_t nx = x_grid.size();
  const std::size_t ny = y_grid.size();
  const GridSpec& spec = field.spec();
  std::vector<std::optional<Staircase>> paths(nx * ny);
  for (std::size_t a = 0; a < nx; ++a) {
    const double xa = scaled_endpoint(x_grid[a], s, n, spec).z;
    std::vector<ExtractionRequest> requests;
    for (std::size_t b = 0; b < ny; ++b) {
      if (scaled_endpoint(y_grid[b], t, n, spec).z >= xa)
        requests.push_back({y_grid[b], Side::left, a * ny + b});
    }
    if (!requests.empty()) extract_from(field, n, x_grid[a], s, t, requests, paths);
  }
  // Leftmost maximizers of ordered endpoint pairs are ordered, so a chain whose
  // consecutive members are disjoint is pairwise disjoint.
  std::vector<int> best(nx * ny, 0);
  int answer = 0;
  for (std::size_t a = 0; a < nx; ++a) {
    for (std::size_t b = 0; b < ny; ++b) {
      const auto& path = paths[a * ny + b];
      if (!path) continue;
      int value = 1;
      for (std::size_t pa = 0; pa < a; ++pa) {
        for (std::size_t pb = 0; pb < b; ++pb) {
          const auto& prev = paths[pa * ny + pb];
          if (prev && best[pa * ny + pb] + 1 > value && disjoint(*prev, *path))
            value = best[pa * ny + pb] + 1;
        }
      }
      best[a * ny + b] = value;
      answer = std::max(answer, value);
    }
  }
  if (answer == 0) throw DomainError("max_disjoint_count: no endpoint pair admits a path");
  return answer;
}

std::uint64_t tail_trial_seed(std::uint64_t base_seed, std::size_t level, std::size_t trial) {
  return derive_seed(base_seed, level, trial);
}

GridSpec tail_grid(const TailConfig& config, double eps) {
  return scaled_window(config.n, config.delta, 0.0, config.x - eps, config.x + eps, 1.0,
                       config.y - eps, config.y + eps, config.delta);
}

TailEstimate tail_experiment(const TailConfig& config) {
  if (config.trials == 0) throw DomainError("tail experiment: trials must be at least 1");
  if (config.epsilons.empty()) throw DomainError("tail experiment: empty eps ladder");
  for (std::size_t e = 0; e < config.epsilons.size(); ++e) {
    if (!(config.epsilons[e] > 0.0)) throw DomainError("tail experiment: eps must be positive");
    if (e > 0 && !(config.epsilons[e] < config.epsilons[e - 1]))
      throw DomainError("tail experiment: eps ladder must be decreasing");
  }
  const std::size_t levels = config.epsilons.size();
  std::vector<GridSpec> grids;
  for (double eps : config.epsilons) grids.push_back(tail_grid(config, eps));
  std::vector<unsigned char> hit(levels * config.trials, 0);
  parallel_for(hit.size(), config.threads, [&](std::size_t slot) {
    const std::size_t e = slot / config.trials;
    const std::size_t m = slot % config.trials;
    const double eps = config.epsilons[e];
    const BrownianField field =
        BrownianField::generate(grids[e], tail_trial_seed(config.base_seed, e, m));
    hit[slot] = disjoint_pair_detect(field, config.n, {config.x - eps, config.x + eps},
                                     {config.y - eps, config.y + eps})
                    ? 1
                    : 0;
  });

  TailEstimate est;
  std::vector<double> xs, ys;
  for (std::size_t e = 0; e < levels; ++e) {
    TailLevel level;
    level.eps = config.epsilons[e];
    level.trials = config.trials;
    for (std::size_t m = 0; m < config.trials; ++m) level.hits += hit[e * config.trials + m];
    level.phat = static_cast<double>(level.hits) / static_cast<double>(level.trials);
    level.ci = wilson_interval(level.hits, level.trials);
    if (level.hits == 0) {
      est.dropped.push_back(level.eps);
    } else {
      xs.push_back(std::log(level.eps));
      ys.push_back(std::log(level.phat));
    }
    est.levels.push_back(level);
  }
  if (xs.size() >= 2) {
    const LinearFit fit = linear_fit(xs, ys);
    est.exponent = fit.slope;
    est.intercept = fit.intercept;
    est.r_squared = fit.r_squared;
  }
  return est;
}

bool tail_monotone(const TailEstimate& estimate) {
  const auto& lv = estimate.levels;
  for (std::size_t a = 0; a < lv.size(); ++a) {
    for (std::size_t b = 0; b < lv.size(); ++b) {
      if (lv[a].eps > lv[b].eps && lv[a].ci.hi < lv[b].ci.lo) return false;
    }
  }
  return true;
}

CrosscheckReport support_vs_disjoint_crosscheck(const BrownianField& field, int n,
                                                std::span<const double> x_grid,
                                                std::span<const double> y_grid, double tol_rel,
                                                int threads) {
  const double hx = uniform_step(x_grid, "crosscheck x grid");
  const double hy = uniform_step(y_grid, "crosscheck y grid");
  const MeasureGrid measure = bivariate_measure(field, n, x_grid, y_grid, threads);
  const std::vector<bool> mask = support_cells(measure.increments, tol_rel);

  CrosscheckReport report;
  report.cells = measure.increments.size();
  report.measure_sweeps = x_grid.size();
  report.max_mass = *std::max_element(measure.increments.begin(), measure.increments.end());

  std::vector<std::size_t> flagged;
  for (std::size_t c = 0; c < mask.size(); ++c) {
    if (mask[c]) flagged.push_back(c);
  }
  report.flagged = flagged.size();

  // Slot 2f holds the left path of flagged cell f, slot 2f + 1 the right path.
  const GridSpec& spec = field.spec();
  std::map<std::size_t, std::pair<double, std::vector<ExtractionRequest>>> groups;
  const auto request = [&](double x, double y, Side side, std::size_t slot) {
    const std::size_t key = spec.index_of(scaled_endpoint(x, 0.0, n, spec).z);
    auto& group = groups.try_emplace(key, x, std::vector<ExtractionRequest>{}).first->second;
    group.second.push_back({y, side, slot});
  };
  const std::size_t cols = measure.cols();
  for (std::size_t f = 0; f < flagged.size(); ++f) {
    const std::size_t i = flagged[f] / cols;
    const std::size_t j = flagged[f] % cols;
    request(x_grid[i] - hx, y_grid[j] - hy, Side::left, 2 * f);
    request(x_grid[i + 1] + hx, y_grid[j + 1] + hy, Side::right, 2 * f + 1);
  }
  report.extraction_sweeps = groups.size();
  report.extractions = 2 * flagged.size();

  std::vector<const std::pair<double, std::vector<ExtractionRequest>>*> work;
  for (const auto& entry : groups) work.push_back(&entry.second);
  std::vector<std::optional<Staircase>> paths(2 * flagged.size());
  parallel_for(work.size(), threads, [&](std::size_t g) {
    extract_from(field, n, work[g]->first, 0.0, 1.0, work[g]->second, paths);
  });

  for (std::size_t f = 0; f < flagged.size(); ++f) {
    if (!disjoint(*paths[2 * f], *paths[2 * f + 1]))
      report.violations.emplace_back(flagged[f] / cols, flagged[f] % cols);
  }
  return report;
}

std::vector<CoalescenceEntry> coalescence_scan(const BrownianField& field, int n, double x1,
                                               double x2, std::span<const double> y_grid) {
  if (x1 > x2) throw DomainError("coalescence scan: requires x1 <= x2");
  if (y_grid.empty()) throw DomainError("coalescence scan: empty y grid");
  for (std::size_t m = 1; m < y_grid.size(); ++m) {
    if (!(y_grid[m - 1] < y_grid[m]))
      throw DomainError("coalescence scan: y grid must be strictly increasing");
  }
  const GridSpec& spec = field.spec();
  const Endpoint a1 = scaled_endpoint(x1, 0.0, n, spec);
  const Endpoint a2 = scaled_endpoint(x2, 0.0, n, spec);
  const int target = scaled_line(1.0, n);
  std::vector<double> ends;
  for (double y : y_grid) {
    const Endpoint b = scaled_endpoint(y, 1.0, n, spec);
    if (b.z < a2.z) throw DomainError("coalescence scan: y lies left of the start x2");
    ends.push_back(b.z);
  }
  const double y_max = *std::max_element(ends.begin(), ends.end());
  const PassageProfile p1 = passage_profile(field, a1.z, a1.k, target, y_max);
  const PassageProfile p2 = passage_profile(field, a2.z, a2.k, target, y_max);

  std::vector<CoalescenceEntry> out(y_grid.size());
  std::vector<double> z(y_grid.size());
  for (std::size_t m = 0; m < y_grid.size(); ++m) {
    const Staircase left = extract_staircase(p1, ends[m], Side::left);
    const Staircase right = extract_staircase(p2, ends[m], Side::right);
    out[m].y = y_grid[m];
    out[m].line = coalescence_line(left, right);
    z[m] = standardize(p2.value_at(ends[m]), ScaledQuad{x2, 0.0, y_grid[m], 1.0}, n) -
           standardize(p1.value_at(ends[m]), ScaledQuad{x1, 0.0, y_grid[m], 1.0}, n);
  }
  for (std::size_t m = 0; m < y_grid.size(); ++m) {
    out[m].z_increment = m + 1 < y_grid.size() ? z[m + 1] - z[m]
                                               : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace landscape
