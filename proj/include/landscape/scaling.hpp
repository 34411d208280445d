#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "landscape/environment.hpp"
#include "landscape/lpp.hpp"
#include "landscape/planar_path.hpp"

namespace landscape {

/// Scaled space-time endpoints (x, s; y, t) with s < t.
struct ScaledQuad {
  double x = 0.0;
  double s = 0.0;
  double y = 0.0;
  double t = 1.0;

  void validate() const;
};

/// n^{2/3} and n^{1/3} are used everywhere; computed once per call site.
double n_two_thirds(int n);
double n_one_third(int n);

/// Unsnapped spatial coordinate sn + 2 n^{2/3} x of the scaled point (x, s).
double scaled_position(double x, double s, int n);

/// Line floor(sn) of the scaled point (x, s).
int scaled_line(double s, int n);

/// The grid location of (x, s)_n: position snapped to the nearest grid point
/// (perturbation at most delta / 2) and line floor(sn). Throws WindowError when
/// the point is outside the grid window or line range.
Endpoint scaled_endpoint(double x, double s, int n, const GridSpec& spec);

/// Grid of step delta, aligned to multiples of delta, covering every scaled
/// point (x, s) with x in [x_lo, x_hi] and (y, t) with y in [y_lo, y_hi],
/// widened by `margin` unscaled units on both sides. Lines floor(sn)..floor(tn).
GridSpec scaled_window(int n, double delta, double s, double x_lo, double x_hi, double t,
                       double y_lo, double y_hi, double margin = 0.0);

/// Checks floor(sn) <= floor(tn) and sn + 2n^{2/3}x <= tn + 2n^{2/3}y, the
/// conditions under which W_n(u) is defined. Throws DomainError otherwise.
void check_scaled_domain(const ScaledQuad& u, int n);

/// W_n(u) = [M((x,s)_n; (y,t)_n) - 2(t-s)n - 2n^{2/3}(y-x)] / n^{1/3}.
double scaled_passage(const BrownianField& field, const ScaledQuad& u, int n);

/// scaled_passage on the field (spec, seed) generated line by line.
double sample_scaled_passage(const GridSpec& spec, std::uint64_t seed, const ScaledQuad& u,
                             int n);

/// Standardize an unscaled passage value for u.
double standardize(double passage, const ScaledQuad& u, int n);

/// Extremal maximizer between (x, s)_n and (y, t)_n.
Staircase extremal_staircase(const BrownianField& field, const ScaledQuad& u, int n,
                             Side side);

/// Samples of the n-geodesic Gamma(r) on a strictly increasing time grid.
///
/// values[m] is Gamma(times[m]) (right-continuous), left_limits[m] is
/// Gamma(times[m]-). Between samples Gamma is affine with slope `slope`
/// unless the grid skipped a jump.
struct StepPath {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> left_limits;
  double slope = 0.0;

  void validate() const;
};

/// The time-parameterization L_{n,u}(r).
double diagonal_position(const ScaledQuad& u, int n, double r);

/// Times r_k in [s, t] at which L_{n,u}(r_k) meets a breakpoint z_k of the
/// staircase, plus s and t, sorted and de-duplicated.
std::vector<double> natural_time_grid(const Staircase& stair, const ScaledQuad& u, int n);

/// Gamma^{(phi)}_{n,u} of a given staircase on `times` (empty = natural grid).
StepPath geodesic_of(const Staircase& stair, const ScaledQuad& u, int n,
                     std::span<const double> times = {});

/// n-geodesic of the extremal maximizer for u.
StepPath n_geodesic(const BrownianField& field, const ScaledQuad& u, int n, Side side,
                    std::span<const double> times = {});

/// R_n(a, b) = ((a - b) / (2 n^{2/3}), b / n).
PlanarPoint zigzag_map(double a, double b, int n);

/// Image of the staircase under R_n: horizontal pieces and oblique climbs.
PlanarPath zigzag(const Staircase& stair, int n);

/// Graph of a step path including its horizontal jump segments.
/// Throws DomainError if a jump falls strictly between two samples.
PlanarPath geodesic_graph(const StepPath& step);

/// Largest jump |Gamma(r-) - Gamma(r)| recorded in the step path.
double max_jump(const StepPath& step);

/// Hausdorff distance between the zigzag and the geodesic graph of the same
/// extremal maximizer.
double polymer_geodesic_gap(const BrownianField& field, const ScaledQuad& u, int n, Side side);

}  // namespace landscape
