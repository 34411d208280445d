#pragma once

// Reference implementations used only by tests. Each one is deliberately
// naive and shares no code with the library beyond plain data types.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Rows = std::vector<std::vector<double>>;

// Every breakpoint sequence a = t_0 <= t_1 <= ... <= t_{lines} = b over grid
// indices, summing line increments. rows[k] holds line k of the window.
inline double brute_passage(const Rows& rows, std::size_t a, int i, std::size_t b, int j) {
  double best = -std::numeric_limits<double>::infinity();
  std::function<void(int, std::size_t, double)> walk = [&](int line, std::size_t from,
                                                           double acc) {
    if (line == j) {
      best = std::max(best, acc + rows[line][b] - rows[line][from]);
      return;
    }
    for (std::size_t to = from; to <= b; ++to)
      walk(line + 1, to, acc + rows[line][to] - rows[line][from]);
  };
  walk(i, a, 0.0);
  return best;
}

// Quadratic dynamic program over jump positions; feasible where brute force
// is not. best[m] is the value of reaching grid index m on the current line.
inline double dp_passage(const Rows& rows, std::size_t a, int i, std::size_t b, int j) {
  std::vector<double> best(b + 1, -std::numeric_limits<double>::infinity());
  for (std::size_t m = a; m <= b; ++m) best[m] = rows[i][m] - rows[i][a];
  for (int line = i + 1; line <= j; ++line) {
    std::vector<double> next(b + 1, -std::numeric_limits<double>::infinity());
    for (std::size_t m = a; m <= b; ++m)
      for (std::size_t jump = a; jump <= m; ++jump)
        next[m] = std::max(next[m], best[jump] + rows[line][m] - rows[line][jump]);
    best = std::move(next);
  }
  return best[b];
}

// All maximizing index sequences (jump positions from line i to j), with a
// relative tie tolerance.
inline std::vector<std::vector<std::size_t>> brute_maximizers(const Rows& rows, std::size_t a,
                                                              int i, std::size_t b, int j,
                                                              double tol = 1e-12) {
  const double best = brute_passage(rows, a, i, b, j);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> jumps;
  std::function<void(int, std::size_t, double)> walk = [&](int line, std::size_t from,
                                                           double acc) {
    if (line == j) {
      const double w = acc + rows[line][b] - rows[line][from];
      if (w >= best - tol * std::max(1.0, std::abs(best))) out.push_back(jumps);
      return;
    }
    for (std::size_t to = from; to <= b; ++to) {
      jumps.push_back(to);
      walk(line + 1, to, acc + rows[line][to] - rows[line][from]);
      jumps.pop_back();
    }
  };
  walk(i, a, 0.0);
  return out;
}

inline Rows random_rows(std::mt19937_64& gen, int lines, std::size_t points, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Rows rows(lines, std::vector<double>(points, 0.0));
  for (auto& row : rows)
    for (std::size_t m = 1; m < points; ++m) row[m] = row[m - 1] + normal(gen);
  return rows;
}

struct P {
  double z, r;
};

inline double seg_dist(P p, P a, P b) {
  const double dz = b.z - a.z, dr = b.r - a.r;
  const double len2 = dz * dz + dr * dr;
  double u = len2 > 0 ? ((p.z - a.z) * dz + (p.r - a.r) * dr) / len2 : 0.0;
  u = std::clamp(u, 0.0, 1.0);
  return std::hypot(p.z - (a.z + u * dz), p.r - (a.r + u * dr));
}

// Directed Hausdorff distance approximated by sampling `per_segment` points
// on each segment of `from`. Never exceeds the true value.
inline double dense_directed(const std::vector<P>& from, const std::vector<P>& to,
                             int per_segment) {
  double worst = 0.0;
  auto dist = [&](P p) {
    double d = std::numeric_limits<double>::infinity();
    if (to.size() == 1) return std::hypot(p.z - to[0].z, p.r - to[0].r);
    for (std::size_t m = 0; m + 1 < to.size(); ++m) d = std::min(d, seg_dist(p, to[m], to[m + 1]));
    return d;
  };
  if (from.size() == 1) return dist(from[0]);
  for (std::size_t m = 0; m + 1 < from.size(); ++m) {
    for (int q = 0; q <= per_segment; ++q) {
      const double u = static_cast<double>(q) / per_segment;
      worst = std::max(worst, dist({from[m].z + u * (from[m + 1].z - from[m].z),
                                    from[m].r + u * (from[m + 1].r - from[m].r)}));
    }
  }
  return worst;
}

inline double dense_hausdorff(const std::vector<P>& a, const std::vector<P>& b, int per_segment) {
  return std::max(dense_directed(a, b, per_segment), dense_directed(b, a, per_segment));
}

// sup |F_a - F_b| evaluated at every sample point by counting.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  auto cdf = [](const std::vector<double>& v, double x) {
    return static_cast<double>(std::upper_bound(v.begin(), v.end(), x) - v.begin()) /
           static_cast<double>(v.size());
  };
  for (double x : a) d = std::max(d, std::abs(cdf(a, x) - cdf(b, x)));
  for (double x : b) d = std::max(d, std::abs(cdf(a, x) - cdf(b, x)));
  return d;
}

// Largest eigenvalue of a size x size GUE matrix whose entries have variance
// `variance` (off-diagonal complex entries split the variance evenly).
inline double gue_lambda_max(std::mt19937_64& gen, int size, double variance) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd h(size, size);
  const double sd = std::sqrt(variance);
  for (int r = 0; r < size; ++r) {
    h(r, r) = sd * normal(gen);
    for (int c = r + 1; c < size; ++c) {
      const std::complex<double> v(sd * normal(gen) / std::sqrt(2.0),
                                   sd * normal(gen) / std::sqrt(2.0));
      h(r, c) = v;
      h(c, r) = std::conj(v);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

// Left endpoints of the level-`depth` middle-thirds Cantor intervals in [0,1].
inline std::vector<double> cantor_lefts(int depth) {
  std::vector<double> lefts{0.0};
  double width = 1.0;
  for (int d = 0; d < depth; ++d) {
    width /= 3.0;
    std::vector<double> next;
    for (double l : lefts) {
      next.push_back(l);
      next.push_back(l + 2.0 * width);
    }
    lefts = std::move(next);
  }
  return lefts;
}

// Number of eps-boxes [m eps, (m+1) eps) hit by a set of cells [l, l+w).
inline std::size_t count_boxes(const std::vector<double>& lefts, double width, double eps) {
  std::vector<long long> ids;
  for (double l : lefts) {
    const auto first = static_cast<long long>(std::floor(l / eps + 1e-12));
    const auto last = static_cast<long long>(std::ceil((l + width) / eps - 1e-12)) - 1;
    for (long long m = first; m <= std::max(first, last); ++m) ids.push_back(m);
  }
  std::sort(ids.begin(), ids.end());
  return static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

// Least squares slope, computed from the normal equations.
inline double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t m = 0; m < x.size(); ++m) {
    sx += x[m];
    sy += y[m];
    sxx += x[m] * x[m];
    sxy += x[m] * y[m];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
