#include <algorithm>
#include <cmath>
#include <string>

#include "landscape/error.hpp"
#include "landscape/scaling.hpp"

namespace landscape {

namespace {

// Breakpoint comparisons tolerate float noise far below any grid step.
double breakpoint_tolerance(double z) { return 1e-9 * std::max(1.0, std::abs(z)); }

double diagonal_speed(const ScaledQuad& u, int n) {
  return n + 2.0 * n_two_thirds(n) * (u.y - u.x) / (u.t - u.s);
}

// phi(z) = k iff z in [z_k, z_{k+1}), extended constantly outside the domain.
int line_at(const Staircase& stair, double z) {
  const auto b = stair.breakpoints();
  const auto inner = b.subspan(1, b.size() - 2);  // z_{i+1} .. z_j
  const auto count = std::upper_bound(inner.begin(), inner.end(), z) - inner.begin();
  return stair.first_line() + static_cast<int>(count);
}

}  // namespace

void ScaledQuad::validate() const {
  if (!std::isfinite(x) || !std::isfinite(s) || !std::isfinite(y) || !std::isfinite(t))
    throw DomainError("scaled quad: non-finite coordinate");
  if (!(s < t)) throw DomainError("scaled quad: requires s < t");
}

double n_two_thirds(int n) { return std::cbrt(static_cast<double>(n) * n); }
double n_one_third(int n) { return std::cbrt(static_cast<double>(n)); }

double scaled_position(double x, double s, int n) {
  return s * n + 2.0 * n_two_thirds(n) * x;
}

int scaled_line(double s, int n) {
  return static_cast<int>(std::floor(s * n + 1e-9));
}

Endpoint scaled_endpoint(double x, double s, int n, const GridSpec& spec) {
  if (n < 1) throw DomainError("scaling parameter n must be positive");
  const double z = scaled_position(x, s, n);
  const int k = scaled_line(s, n);
  if (z < spec.z_min - 0.5 * spec.delta || z > spec.z_max + 0.5 * spec.delta)
    throw WindowError("scaled point (" + std::to_string(x) + ", " + std::to_string(s) +
                      ") maps to z = " + std::to_string(z) + ", outside the window [" +
                      std::to_string(spec.z_min) + ", " + std::to_string(spec.z_max) +
                      "]; enlarge the window");
  if (!spec.has_line(k))
    throw WindowError("scaled point maps to line " + std::to_string(k) +
                      ", outside the field's line range; enlarge the line range");
  return {spec.snap(z), k};
}

GridSpec scaled_window(int n, double delta, double s, double x_lo, double x_hi, double t,
                       double y_lo, double y_hi, double margin) {
  if (n < 1) throw DomainError("scaling parameter n must be positive");
  if (!(delta > 0.0)) throw DomainError("grid step must be positive");
  if (x_lo > x_hi || y_lo > y_hi) throw DomainError("scaled window: empty range");
  const double lo = std::min(scaled_position(x_lo, s, n), scaled_position(y_lo, t, n)) - margin;
  const double hi = std::max(scaled_position(x_hi, s, n), scaled_position(y_hi, t, n)) + margin;
  GridSpec spec;
  spec.delta = delta;
  spec.z_min = delta * std::floor(lo / delta);
  spec.z_max = std::max(delta * std::ceil(hi / delta), spec.z_min + delta);
  spec.line_lo = scaled_line(s, n);
  spec.line_hi = std::max(scaled_line(t, n), spec.line_lo);
  spec.validate();
  return spec;
}

void check_scaled_domain(const ScaledQuad& u, int n) {
  u.validate();
  if (n < 1) throw DomainError("scaling parameter n must be positive");
  if (scaled_line(u.s, n) > scaled_line(u.t, n))
    throw DomainError("W_n undefined: floor(sn) > floor(tn)");
  if (scaled_position(u.x, u.s, n) > scaled_position(u.y, u.t, n))
    throw DomainError("W_n undefined: start position exceeds end position; increase n");
}

double standardize(double passage, const ScaledQuad& u, int n) {
  return (passage - 2.0 * (u.t - u.s) * n - 2.0 * n_two_thirds(n) * (u.y - u.x)) /
         n_one_third(n);
}

double scaled_passage(const BrownianField& field, const ScaledQuad& u, int n) {
  check_scaled_domain(u, n);
  const Endpoint a = scaled_endpoint(u.x, u.s, n, field.spec());
  const Endpoint b = scaled_endpoint(u.y, u.t, n, field.spec());
  if (b.z < a.z) throw DomainError("W_n undefined after snapping: end lies left of start");
  return standardize(passage_time(field, a.z, a.k, b.z, b.k), u, n);
}

double sample_scaled_passage(const GridSpec& spec, std::uint64_t seed, const ScaledQuad& u,
                             int n) {
  check_scaled_domain(u, n);
  const Endpoint a = scaled_endpoint(u.x, u.s, n, spec);
  const Endpoint b = scaled_endpoint(u.y, u.t, n, spec);
  if (b.z < a.z) throw DomainError("W_n undefined after snapping: end lies left of start");
  return standardize(sample_passage_time(spec, seed, a.z, a.k, b.z, b.k), u, n);
}

Staircase extremal_staircase(const BrownianField& field, const ScaledQuad& u, int n,
                             Side side) {
  check_scaled_domain(u, n);
  const Endpoint a = scaled_endpoint(u.x, u.s, n, field.spec());
  const Endpoint b = scaled_endpoint(u.y, u.t, n, field.spec());
  if (b.z < a.z) throw DomainError("maximizer undefined after snapping: end left of start");
  const auto profile = passage_profile(field, a.z, a.k, b.k, b.z);
  return extract_staircase(profile, b.z, side);
}

void StepPath::validate() const {
  if (times.empty()) throw ConstructionError("step path: empty time grid");
  if (values.size() != times.size() || left_limits.size() != times.size())
    throw ConstructionError("step path: column lengths differ");
  for (std::size_t m = 0; m < times.size(); ++m) {
    if (!std::isfinite(times[m]) || !std::isfinite(values[m]) || !std::isfinite(left_limits[m]))
      throw ConstructionError("step path: non-finite entry");
    if (m > 0 && !(times[m - 1] < times[m]))
      throw ConstructionError("step path: time grid must be strictly increasing");
  }
}

double diagonal_position(const ScaledQuad& u, int n, double r) {
  const double w = 2.0 * n_two_thirds(n);
  return r * n + (u.t - r) / (u.t - u.s) * w * u.x + (r - u.s) / (u.t - u.s) * w * u.y;
}

std::vector<double> natural_time_grid(const Staircase& stair, const ScaledQuad& u, int n) {
  check_scaled_domain(u, n);
  const double speed = diagonal_speed(u, n);
  if (!(speed > 0.0)) throw DomainError("diagonal parameterization is not increasing; increase n");
  const double origin = diagonal_position(u, n, u.s);
  std::vector<double> times{u.s, u.t};
  for (int k = stair.first_line() + 1; k <= stair.last_line(); ++k) {
    const double r = u.s + (stair.entry(k) - origin) / speed;
    times.push_back(std::clamp(r, u.s, u.t));
  }
  std::sort(times.begin(), times.end());
  // Times whose diagonal positions agree within the breakpoint tolerance are
  // one sample; s and t win over interior times.
  std::vector<double> merged{u.s};
  for (std::size_t m = 1; m < times.size(); ++m) {
    const double z = diagonal_position(u, n, times[m]);
    const bool same = z - diagonal_position(u, n, merged.back()) <= 2.0 * breakpoint_tolerance(z);
    if (!same) {
      merged.push_back(times[m]);
    } else if (times[m] == u.t && merged.back() != u.s) {
      merged.back() = u.t;
    }
  }
  if (merged.back() != u.t) merged.push_back(u.t);
  return merged;
}

StepPath geodesic_of(const Staircase& stair, const ScaledQuad& u, int n,
                     std::span<const double> times) {
  check_scaled_domain(u, n);
  std::vector<double> grid = times.empty() ? natural_time_grid(stair, u, n)
                                           : std::vector<double>(times.begin(), times.end());
  const double scale = 2.0 * n_two_thirds(n);
  StepPath path;
  path.slope = diagonal_speed(u, n) / scale;
  path.times = grid;
  path.values.reserve(grid.size());
  path.left_limits.reserve(grid.size());
  for (double r : grid) {
    if (r < u.s - 1e-12 || r > u.t + 1e-12)
      throw DomainError("n-geodesic: time " + std::to_string(r) + " outside [s, t]");
    const double z = diagonal_position(u, n, r);
    const double tol = breakpoint_tolerance(z);
    const double left = (z - line_at(stair, z - tol)) / scale;
    const double right = (z - line_at(stair, z + tol)) / scale;
    // Gamma(t) is defined as the left limit; Gamma(s-) as Gamma(s).
    if (r >= u.t) {
      path.values.push_back(left);
      path.left_limits.push_back(left);
    } else if (r <= u.s) {
      path.values.push_back(right);
      path.left_limits.push_back(right);
    } else {
      path.values.push_back(right);
      path.left_limits.push_back(left);
    }
  }
  path.validate();
  return path;
}

StepPath n_geodesic(const BrownianField& field, const ScaledQuad& u, int n, Side side,
                    std::span<const double> times) {
  return geodesic_of(extremal_staircase(field, u, n, side), u, n, times);
}

PlanarPoint zigzag_map(double a, double b, int n) {
  return {(a - b) / (2.0 * n_two_thirds(n)), b / n};
}

PlanarPath zigzag(const Staircase& stair, int n) {
  if (n < 1) throw DomainError("scaling parameter n must be positive");
  std::vector<PlanarPoint> v;
  v.reserve(2 * static_cast<std::size_t>(stair.line_count()));
  const auto push = [&v](PlanarPoint p) {
    if (v.empty() || !(v.back() == p)) v.push_back(p);
  };
  for (int k = stair.first_line(); k <= stair.last_line(); ++k) {
    push(zigzag_map(stair.entry(k), k, n));
    push(zigzag_map(stair.exit(k), k, n));
  }
  return PlanarPath(std::move(v));
}

PlanarPath geodesic_graph(const StepPath& step) {
  step.validate();
  std::vector<PlanarPoint> v;
  v.reserve(2 * step.times.size());
  const auto push = [&v](PlanarPoint p) {
    if (v.empty() || !(v.back() == p)) v.push_back(p);
  };
  push({step.left_limits[0], step.times[0]});
  push({step.values[0], step.times[0]});
  for (std::size_t m = 1; m < step.times.size(); ++m) {
    const double dt = step.times[m] - step.times[m - 1];
    const double expected = step.values[m - 1] + step.slope * dt;
    const double tol = 1e-9 * std::max({1.0, std::abs(expected), std::abs(step.slope * dt)});
    if (std::abs(step.left_limits[m] - expected) > tol)
      throw DomainError("geodesic graph: a jump falls between samples " +
                        std::to_string(step.times[m - 1]) + " and " +
                        std::to_string(step.times[m]) + "; refine the time grid");
    push({step.left_limits[m], step.times[m]});
    push({step.values[m], step.times[m]});
  }
  return PlanarPath(std::move(v));
}

double max_jump(const StepPath& step) {
  double jump = 0.0;
  for (std::size_t m = 0; m < step.times.size(); ++m)
    jump = std::max(jump, std::abs(step.left_limits[m] - step.values[m]));
  return jump;
}

double polymer_geodesic_gap(const BrownianField& field, const ScaledQuad& u, int n, Side side) {
  const Staircase stair = extremal_staircase(field, u, n, side);
  return hausdorff_distance(zigzag(stair, n), geodesic_graph(geodesic_of(stair, u, n)));
}

}  // namespace landscape
