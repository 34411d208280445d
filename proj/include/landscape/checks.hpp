#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace landscape {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The library's invariant suite on small randomized instances: DP against
/// exhaustive enumeration, composition, quadrangle, extremal and restriction
/// optimality, path algebra, ordering, profile and measure invariants,
/// estimator calibration and detector consistency. Seconds, not minutes.
std::vector<CheckResult> run_invariant_suite(std::uint64_t seed, int threads = 1);

/// Exhaustive maximum over all grid staircases from (x, i) to (y, j), where
/// x and y are grid indices on a field with unit spacing starting at 0.
/// Intended for at most a handful of lines and points.
double brute_force_passage(const std::vector<std::vector<double>>& rows, std::size_t x, int i,
                           std::size_t y, int j);

}  // namespace landscape
