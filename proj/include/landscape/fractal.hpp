#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "landscape/environment.hpp"

namespace landscape {

/// Difference weight profile y -> W_n(x2,0;y,1) - W_n(x1,0;y,1).
struct ProfileSeries {
  double x1 = 0.0;
  double x2 = 0.0;
  int n = 1;
  std::vector<double> y_grid;
  std::vector<double> z_values;

  /// Z(y_{m+1}) - Z(y_m) for each consecutive pair.
  std::vector<double> increments() const;
};

/// Scaled values y whose unscaled position n*t + 2n^{2/3}y is a grid point of
/// spec, for y in [y_lo, y_hi]. Such y need no snapping.
std::vector<double> native_grid(const GridSpec& spec, int n, double t, double y_lo, double y_hi);

/// Evenly spaced values lo, lo + step, ..., up to hi (inclusive within 1e-9 of a step).
std::vector<double> uniform_grid(double lo, double hi, double step);

/// Z on y_grid from one passage sweep per start.
ProfileSeries difference_profile(const BrownianField& field, double x1, double x2, int n,
                                 std::span<const double> y_grid);

/// Cell masses mu([x_i, x_{i+1}] x [y_j, y_{j+1}]) in scaled units.
struct MeasureGrid {
  std::vector<double> x_grid;
  std::vector<double> y_grid;
  std::vector<double> increments;  ///< row-major, one row per x cell

  std::size_t rows() const { return x_grid.size() - 1; }
  std::size_t cols() const { return y_grid.size() - 1; }
  double at(std::size_t i, std::size_t j) const { return increments[i * cols() + j]; }
};

/// Quadrangle increments of W_n(x, 0; y, 1) over the grid, one sweep per x
/// (parallel across x on up to `threads` workers).
MeasureGrid bivariate_measure(const BrownianField& field, int n, std::span<const double> x_grid,
                              std::span<const double> y_grid, int threads = 1);

/// Flags increments exceeding tol_rel * max(1, largest increment).
std::vector<bool> support_cells(std::span<const double> increments, double tol_rel);

/// Boxes [lo + m*eps, lo + (m+1)*eps) covering [lo, hi]; a box is flagged when
/// the left end of some flagged cell falls in it.
std::vector<bool> box_mask(std::span<const double> cell_left, const std::vector<bool>& flagged,
                           double lo, double hi, double eps);

/// Two-dimensional version of box_mask for a row-major cell mask.
std::vector<bool> box_mask_2d(std::span<const double> x_left, std::span<const double> y_left,
                              const std::vector<bool>& flagged, double x_lo, double x_hi,
                              double y_lo, double y_hi, double eps);

/// Which ladder levels enter the fit: the largest `drop_largest` and the
/// smallest `drop_smallest` scales are excluded.
struct FitRange {
  std::size_t drop_largest = 2;
  std::size_t drop_smallest = 1;
};

struct DimensionEstimate {
  std::vector<double> epsilons;
  std::vector<std::size_t> counts;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t fit_begin = 0;  ///< first ladder index in the fit
  std::size_t fit_end = 0;    ///< one past the last
};

/// Least-squares slope of log N(eps) on log(1/eps). Levels are sorted by
/// decreasing eps before the fit range is applied.
DimensionEstimate box_dimension(std::span<const double> epsilons,
                                std::span<const std::size_t> counts, FitRange range = {});

/// Convenience overload counting flagged boxes in each mask.
DimensionEstimate box_dimension(std::span<const double> epsilons,
                                const std::vector<std::vector<bool>>& masks,
                                FitRange range = {});

/// eps = base^{-first}, ..., base^{-last}.
std::vector<double> geometric_ladder(double base, int first, int last);

}  // namespace landscape
