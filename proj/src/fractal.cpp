#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "landscape/error.hpp"
#include "landscape/fractal.hpp"
#include "landscape/lpp.hpp"
#include "landscape/parallel.hpp"
#include "landscape/scaling.hpp"
#include "landscape/stats.hpp"

namespace landscape {

namespace {

void require_increasing(std::span<const double> grid, const char* what, std::size_t min_size) {
  if (grid.size() < min_size)
    throw DomainError(std::string(what) + ": needs at least " + std::to_string(min_size) +
                      " points");
  for (std::size_t m = 1; m < grid.size(); ++m) {
    if (!(grid[m - 1] < grid[m]))
      throw DomainError(std::string(what) + ": grid must be strictly increasing");
  }
}

// W_n(x, 0; y, 1) for every y in y_grid, from a single passage sweep.
std::vector<double> scaled_row(const BrownianField& field, double x, int n,
                               std::span<const double> y_grid) {
  const GridSpec& spec = field.spec();
  const Endpoint a = scaled_endpoint(x, 0.0, n, spec);
  const int target = scaled_line(1.0, n);
  std::vector<std::size_t> columns(y_grid.size());
  std::size_t last = 0;
  const std::size_t first = spec.index_of(a.z);
  for (std::size_t m = 0; m < y_grid.size(); ++m) {
    const Endpoint b = scaled_endpoint(y_grid[m], 1.0, n, spec);
    const std::size_t idx = spec.index_of(b.z);
    if (idx < first)
      throw DomainError("scaled end y = " + std::to_string(y_grid[m]) +
                        " lies left of the start x = " + std::to_string(x));
    columns[m] = idx - first;
    last = std::max(last, idx);
  }
  const std::vector<double> row = passage_row(field, a.z, a.k, target, spec.point(last));
  std::vector<double> out(y_grid.size());
  for (std::size_t m = 0; m < y_grid.size(); ++m)
    out[m] = standardize(row[columns[m]], ScaledQuad{x, 0.0, y_grid[m], 1.0}, n);
  return out;
}

}  // namespace

std::vector<double> ProfileSeries::increments() const {
  std::vector<double> out;
  if (z_values.size() < 2) return out;
  out.reserve(z_values.size() - 1);
  for (std::size_t m = 1; m < z_values.size(); ++m) out.push_back(z_values[m] - z_values[m - 1]);
  return out;
}

std::vector<double> native_grid(const GridSpec& spec, int n, double t, double y_lo,
                                double y_hi) {
  if (n < 1) throw DomainError("scaling parameter n must be positive");
  if (y_lo > y_hi) throw DomainError("native grid: empty range");
  const double w = 2.0 * n_two_thirds(n);
  const double lo = scaled_position(y_lo, t, n);
  const double hi = scaled_position(y_hi, t, n);
  const double slack = 1e-9 * spec.delta;
  const double first = std::max(0.0, std::ceil((lo - spec.z_min - slack) / spec.delta));
  const double last = std::min(static_cast<double>(spec.point_count() - 1),
                               std::floor((hi - spec.z_min + slack) / spec.delta));
  std::vector<double> ys;
  for (double i = first; i <= last; i += 1.0)
    ys.push_back((spec.point(static_cast<std::size_t>(i)) - t * n) / w);
  return ys;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw DomainError("uniform grid: step must be positive");
  if (lo > hi) throw DomainError("uniform grid: empty range");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t m = 0; m < count; ++m) out[m] = lo + static_cast<double>(m) * step;
  return out;
}

ProfileSeries difference_profile(const BrownianField& field, double x1, double x2, int n,
                                 std::span<const double> y_grid) {
  if (x1 > x2) throw DomainError("difference profile: requires x1 <= x2");
  require_increasing(y_grid, "difference profile", 1);
  ProfileSeries out;
  out.x1 = x1;
  out.x2 = x2;
  out.n = n;
  out.y_grid.assign(y_grid.begin(), y_grid.end());
  const std::vector<double> w1 = scaled_row(field, x1, n, y_grid);
  const std::vector<double> w2 = scaled_row(field, x2, n, y_grid);
  out.z_values.resize(y_grid.size());
  for (std::size_t m = 0; m < y_grid.size(); ++m) out.z_values[m] = w2[m] - w1[m];
  return out;
}

MeasureGrid bivariate_measure(const BrownianField& field, int n, std::span<const double> x_grid,
                              std::span<const double> y_grid, int threads) {
  require_increasing(x_grid, "bivariate measure x grid", 2);
  require_increasing(y_grid, "bivariate measure y grid", 2);
  std::vector<std::vector<double>> rows(x_grid.size());
  parallel_for(x_grid.size(), threads,
               [&](std::size_t i) { rows[i] = scaled_row(field, x_grid[i], n, y_grid); });
  MeasureGrid out;
  out.x_grid.assign(x_grid.begin(), x_grid.end());
  out.y_grid.assign(y_grid.begin(), y_grid.end());
  out.increments.resize(out.rows() * out.cols());
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      out.increments[i * out.cols() + j] =
          rows[i + 1][j + 1] + rows[i][j] - rows[i][j + 1] - rows[i + 1][j];
    }
  }
  return out;
}

std::vector<bool> support_cells(std::span<const double> increments, double tol_rel) {
  if (increments.empty()) throw DomainError("support cells: no increments");
  if (!(tol_rel >= 0.0)) throw DomainError("support cells: tol_rel must be non-negative");
  const double top = *std::max_element(increments.begin(), increments.end());
  std::vector<bool> mask(increments.size(), false);
  if (!(top > 0.0)) return mask;
  // Floor of 1 keeps roundoff residue out when every cell is algebraically zero.
  const double cut = tol_rel * std::max(1.0, top);
  for (std::size_t m = 0; m < increments.size(); ++m) mask[m] = increments[m] > cut;
  return mask;
}

namespace {

std::size_t box_count_for(double lo, double hi, double eps) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / eps - 1e-9)));
}

std::size_t box_of(double z, double lo, double eps, std::size_t boxes) {
  const double pos = std::floor((z - lo) / eps + 1e-9);
  return static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(boxes - 1)));
}

}  // namespace

std::vector<bool> box_mask(std::span<const double> cell_left, const std::vector<bool>& flagged,
                           double lo, double hi, double eps) {
  if (cell_left.size() != flagged.size()) throw DomainError("box mask: length mismatch");
  if (!(eps > 0.0) || !(lo < hi)) throw DomainError("box mask: invalid box geometry");
  const std::size_t boxes = box_count_for(lo, hi, eps);
  std::vector<bool> mask(boxes, false);
  for (std::size_t m = 0; m < cell_left.size(); ++m) {
    if (flagged[m]) mask[box_of(cell_left[m], lo, eps, boxes)] = true;
  }
  return mask;
}

std::vector<bool> box_mask_2d(std::span<const double> x_left, std::span<const double> y_left,
                              const std::vector<bool>& flagged, double x_lo, double x_hi,
                              double y_lo, double y_hi, double eps) {
  if (x_left.size() * y_left.size() != flagged.size())
    throw DomainError("box mask: mask size does not match the cell grid");
  if (!(eps > 0.0) || !(x_lo < x_hi) || !(y_lo < y_hi))
    throw DomainError("box mask: invalid box geometry");
  const std::size_t bx = box_count_for(x_lo, x_hi, eps);
  const std::size_t by = box_count_for(y_lo, y_hi, eps);
  std::vector<bool> mask(bx * by, false);
  for (std::size_t i = 0; i < x_left.size(); ++i) {
    for (std::size_t j = 0; j < y_left.size(); ++j) {
      if (flagged[i * y_left.size() + j])
        mask[box_of(x_left[i], x_lo, eps, bx) * by + box_of(y_left[j], y_lo, eps, by)] = true;
    }
  }
  return mask;
}

DimensionEstimate box_dimension(std::span<const double> epsilons,
                                std::span<const std::size_t> counts, FitRange range) {
  if (epsilons.size() != counts.size()) throw DomainError("box dimension: length mismatch");
  std::vector<std::size_t> order(epsilons.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return epsilons[a] > epsilons[b]; });
  DimensionEstimate est;
  for (std::size_t m : order) {
    if (!(epsilons[m] > 0.0)) throw DomainError("box dimension: scales must be positive");
    est.epsilons.push_back(epsilons[m]);
    est.counts.push_back(counts[m]);
  }
  const std::size_t levels = est.epsilons.size();
  est.fit_begin = std::min(range.drop_largest, levels);
  est.fit_end = levels > range.drop_smallest ? levels - range.drop_smallest : 0;
  std::vector<double> xs, ys;
  for (std::size_t m = est.fit_begin; m < est.fit_end; ++m) {
    if (est.counts[m] == 0) continue;
    xs.push_back(-std::log(est.epsilons[m]));
    ys.push_back(std::log(static_cast<double>(est.counts[m])));
  }
  if (xs.size() < 3)
    throw DomainError("box dimension: fewer than 3 usable ladder levels in the fit range");
  const LinearFit fit = linear_fit(xs, ys);
  est.slope = fit.slope;
  est.intercept = fit.intercept;
  est.r_squared = fit.r_squared;
  return est;
}

DimensionEstimate box_dimension(std::span<const double> epsilons,
                                const std::vector<std::vector<bool>>& masks, FitRange range) {
  std::vector<std::size_t> counts;
  counts.reserve(masks.size());
  for (const auto& mask : masks)
    counts.push_back(static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true)));
  return box_dimension(epsilons, counts, range);
}

std::vector<double> geometric_ladder(double base, int first, int last) {
  if (!(base > 1.0) || first > last) throw DomainError("geometric ladder: invalid parameters");
  std::vector<double> out;
  for (int m = first; m <= last; ++m) out.push_back(std::pow(base, -m));
  return out;
}

}  // namespace landscape
