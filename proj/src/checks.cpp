#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "landscape/checks.hpp"
#include "landscape/disjoint.hpp"
#include "landscape/environment.hpp"
#include "landscape/error.hpp"
#include "landscape/fractal.hpp"
#include "landscape/geometry.hpp"
#include "landscape/lpp.hpp"
#include "landscape/planar_path.hpp"
#include "landscape/rng.hpp"
#include "landscape/scaling.hpp"

namespace landscape {

namespace {

using Rng = std::mt19937_64;

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * comparison_scale(a, b);
}

GridSpec unit_grid(std::size_t points, int lines) {
  return GridSpec{0.0, static_cast<double>(points - 1), 1.0, 0, lines - 1};
}

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

int pick_line(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string describe(std::size_t failures, std::size_t cases) {
  std::ostringstream out;
  out << failures << " failures in " << cases << " cases";
  return out.str();
}

CheckResult tally(std::string name, std::size_t failures, std::size_t cases) {
  return {std::move(name), failures == 0, describe(failures, cases)};
}

double enumerate(const std::vector<std::vector<double>>& rows, std::size_t z, int k,
                 std::size_t y, int j) {
  if (k == j) return rows[k][y] - rows[k][z];
  double best = -INFINITY;
  for (std::size_t w = z; w <= y; ++w)
    best = std::max(best, rows[k][w] - rows[k][z] + enumerate(rows, w, k + 1, y, j));
  return best;
}

std::vector<std::vector<double>> rows_of(const BrownianField& field) {
  std::vector<std::vector<double>> rows;
  for (int k = field.spec().line_lo; k <= field.spec().line_hi; ++k) {
    const auto line = field.line(k);
    rows.emplace_back(line.begin(), line.end());
  }
  return rows;
}

CheckResult check_field(std::uint64_t seed, int threads) {
  const GridSpec spec{0.0, 100.0, 0.01, 0, 99};
  const BrownianField a = BrownianField::generate(spec, seed, 1);
  const BrownianField b = BrownianField::generate(spec, seed, std::max(2, threads));
  bool same = true;
  double sum = 0.0, sq = 0.0;
  std::size_t count = 0;
  for (int k = 0; k <= 99; ++k) {
    const auto la = a.line(k);
    const auto lb = b.line(k);
    same = same && std::equal(la.begin(), la.end(), lb.begin());
    for (std::size_t i = 1; i < la.size(); ++i) {
      const double d = la[i] - la[i - 1];
      sum += d;
      sq += d * d;
      ++count;
    }
  }
  const double m = sum / count;
  const double var = sq / count - m * m;
  const bool ok = same && std::abs(var / spec.delta - 1.0) < 0.01 &&
                  std::abs(m) < 3.0 * std::sqrt(spec.delta / count);
  std::ostringstream out;
  out << "thread-independent=" << same << " variance/delta=" << var / spec.delta
      << " mean=" << m << " over " << count << " increments";
  return {"field determinism and increment law", ok, out.str()};
}

CheckResult check_brute_force(std::uint64_t seed) {
  Rng rng(seed);
  std::size_t failures = 0, cases = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int lines = pick_line(rng, 1, 3);
    const std::size_t points = pick(rng, 1, 8);
    const BrownianField field =
        BrownianField::generate(unit_grid(points, lines), derive_seed(seed, trial));
    const auto rows = rows_of(field);
    const std::size_t x = pick(rng, 0, points - 1);
    const std::size_t y = pick(rng, x, points - 1);
    const int i = pick_line(rng, 0, lines - 1);
    const int j = pick_line(rng, i, lines - 1);
    const double dp = passage_time(field, double(x), i, double(y), j);
    ++cases;
    if (!close(dp, enumerate(rows, x, i, y, j), 1e-10)) ++failures;
  }
  return tally("passage time equals exhaustive enumeration", failures, cases);
}

CheckResult check_composition(std::uint64_t seed) {
  Rng rng(seed);
  const GridSpec spec{0.0, 6.0, 0.1, 0, 11};
  std::size_t failures = 0, cases = 0;
  for (int f = 0; f < 10; ++f) {
    const BrownianField field = BrownianField::generate(spec, derive_seed(seed, f));
    for (int c = 0; c < 10; ++c) {
      const std::size_t x = pick(rng, 0, 40);
      const std::size_t y = pick(rng, x, 60);
      const int i = pick_line(rng, 0, 5);
      const int j = pick_line(rng, i, 11);
      const int k = pick_line(rng, i, j);
      double best = -INFINITY;
      for (std::size_t z = x; z <= y; ++z) {
        best = std::max(best, passage_time(field, spec.point(x), i, spec.point(z), k) +
                                  passage_time(field, spec.point(z), k, spec.point(y), j));
      }
      ++cases;
      if (!close(best, passage_time(field, spec.point(x), i, spec.point(y), j), 1e-9)) ++failures;
    }
  }
  return tally("composition identity", failures, cases);
}

CheckResult check_quadrangle(std::uint64_t seed) {
  Rng rng(seed);
  const GridSpec spec{0.0, 8.0, 0.1, 0, 9};
  std::size_t failures = 0, cases = 0;
  for (int f = 0; f < 5; ++f) {
    const BrownianField field = BrownianField::generate(spec, derive_seed(seed, f));
    for (int c = 0; c < 200; ++c) {
      std::size_t x1 = pick(rng, 0, 40), x2 = pick(rng, 0, 40);
      std::size_t y1 = pick(rng, 40, 80), y2 = pick(rng, 40, 80);
      if (x1 > x2) std::swap(x1, x2);
      if (y1 > y2) std::swap(y1, y2);
      const int i = pick_line(rng, 0, 4);
      const int j = pick_line(rng, i, 9);
      const auto M = [&](std::size_t a, std::size_t b) {
        return passage_time(field, spec.point(a), i, spec.point(b), j);
      };
      const double q = M(x2, y2) + M(x1, y1) - M(x1, y2) - M(x2, y1);
      ++cases;
      if (q < -1e-9 * comparison_scale(M(x1, y2), M(x2, y1))) ++failures;
    }
  }
  return tally("quadrangle inequality", failures, cases);
}

// Random maximizers on a small field, shared by the path-algebra checks.
struct Sample {
  BrownianField field;
  Staircase left;
  Staircase right;
};

Sample random_maximizer(std::uint64_t seed, Rng& rng) {
  const GridSpec spec{0.0, 10.0, 0.1, 0, 14};
  BrownianField field = BrownianField::generate(spec, seed);
  const std::size_t x = pick(rng, 0, 30);
  const std::size_t y = pick(rng, 60, 100);
  const int i = pick_line(rng, 0, 3);
  const int j = pick_line(rng, i + 2, 14);
  const auto profile = passage_profile(field, spec.point(x), i, j, spec.point(y));
  Staircase l = extract_staircase(profile, spec.point(y), Side::left);
  Staircase r = extract_staircase(profile, spec.point(y), Side::right);
  return {std::move(field), std::move(l), std::move(r)};
}

double optimum(const BrownianField& field, const Staircase& s) {
  return passage_time(field, s.start().z, s.start().k, s.end().z, s.end().k);
}

CheckResult check_extremal_and_restriction(std::uint64_t seed) {
  Rng rng(seed);
  std::size_t failures = 0, cases = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Sample s = random_maximizer(derive_seed(seed, trial), rng);
    const double best = optimum(s.field, s.left);
    ++cases;
    if (!close(staircase_weight(s.field, s.left), best, 1e-9) ||
        !close(staircase_weight(s.field, s.right), best, 1e-9) || !ordered_leq(s.left, s.right))
      ++failures;
    const int k1 = pick_line(rng, s.left.first_line(), s.left.last_line());
    const int k2 = pick_line(rng, k1, s.left.last_line());
    const Staircase part = restrict(s.left, k1, k2);
    ++cases;
    if (!close(staircase_weight(s.field, part), optimum(s.field, part), 1e-9)) ++failures;
    const int k = pick_line(rng, s.left.first_line(), s.left.last_line() - 1);
    const Staircase joined =
        concat(restrict(s.left, s.left.first_line(), k), restrict(s.left, k + 1, s.left.last_line()));
    ++cases;
    if (!(joined == s.left)) ++failures;
  }
  return tally("extremal maximizers, restriction and concatenation", failures, cases);
}

CheckResult check_exchange(std::uint64_t seed) {
  Rng rng(seed);
  const GridSpec spec{0.0, 10.0, 0.1, 0, 14};
  std::size_t failures = 0, cases = 0;
  for (int trial = 0; trial < 200 && cases < 300; ++trial) {
    const BrownianField field = BrownianField::generate(spec, derive_seed(seed, trial));
    const std::size_t x1 = pick(rng, 0, 40), x2 = pick(rng, 0, 40);
    const std::size_t y1 = pick(rng, 60, 100), y2 = pick(rng, 60, 100);
    const Staircase a = extract_staircase(
        passage_profile(field, spec.point(x1), 0, 14, spec.point(y1)), spec.point(y1), Side::left);
    const Staircase b = extract_staircase(
        passage_profile(field, spec.point(x2), 0, 14, spec.point(y2)), spec.point(y2), Side::left);
    const auto cross = crossings(a, b);
    if (cross.size() < 2) continue;
    const std::size_t p = pick(rng, 0, cross.size() - 2);
    const std::size_t q = pick(rng, p + 1, cross.size() - 1);
    for (auto variant : {ExchangeVariant::full, ExchangeVariant::head, ExchangeVariant::tail}) {
      const Staircase e = exchange(a, b, cross[p], cross[q], variant);
      ++cases;
      if (!close(staircase_weight(field, e), optimum(field, e), 1e-9)) ++failures;
    }
    ++cases;
    if (!(exchange(exchange(a, b, cross[p], cross[q]), a, cross[p], cross[q]) == a)) ++failures;
  }
  return tally("exchange of crossing maximizers stays optimal", failures, cases);
}

CheckResult check_ordering(std::uint64_t seed) {
  Rng rng(seed);
  const GridSpec spec{0.0, 10.0, 0.1, 0, 9};
  std::size_t failures = 0, cases = 0;
  for (int f = 0; f < 20; ++f) {
    const BrownianField field = BrownianField::generate(spec, derive_seed(seed, f));
    for (int c = 0; c < 20; ++c) {
      std::size_t x1 = pick(rng, 0, 50), x2 = pick(rng, 0, 50);
      std::size_t y1 = pick(rng, 50, 100), y2 = pick(rng, 50, 100);
      if (x1 > x2) std::swap(x1, x2);
      if (y1 > y2) std::swap(y1, y2);
      const Staircase l = extract_staircase(
          passage_profile(field, spec.point(x1), 0, 9, spec.point(y1)), spec.point(y1), Side::left);
      const Staircase r = extract_staircase(
          passage_profile(field, spec.point(x2), 0, 9, spec.point(y2)), spec.point(y2), Side::right);
      ++cases;
      if (!ordered_leq(l, r)) ++failures;
      if (disjoint(l, r)) {
        // Disjoint and weakly ordered means strictly separated on every line.
        for (int k = 0; k <= 9; ++k) {
          if (!(l.exit(k) < r.entry(k))) {
            ++failures;
            break;
          }
        }
      }
    }
  }
  return tally("ordering of extremal maximizers", failures, cases);
}

CheckResult check_min_closure(std::uint64_t seed) {
  // Ties are needed for distinct maximizers with equal ends, so use integer fields.
  Rng rng(seed);
  std::size_t failures = 0, cases = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const GridSpec spec = unit_grid(7, 4);
    std::vector<std::vector<double>> rows(4, std::vector<double>(7, 0.0));
    for (auto& row : rows) {
      for (std::size_t i = 1; i < row.size(); ++i)
        row[i] = row[i - 1] + static_cast<double>(pick(rng, 0, 2)) - 1.0;
    }
    const BrownianField field = BrownianField::from_values(spec, rows);
    const auto profile = passage_profile(field, 0.0, 0, 3);
    const double best = profile.values.back();
    // Random maximizers: perturb breakpoints and keep those that stay optimal.
    std::vector<Staircase> maximizers;
    for (int attempt = 0; attempt < 40; ++attempt) {
      std::vector<double> b{0.0};
      for (int k = 0; k < 3; ++k) b.push_back(double(pick(rng, std::size_t(b.back()), 6)));
      b.push_back(6.0);
      Staircase s(0, b);
      if (close(staircase_weight(field, s), best, 1e-12)) maximizers.push_back(s);
    }
    for (std::size_t a = 0; a + 1 < maximizers.size(); ++a) {
      ++cases;
      const Staircase m = pointwise_min(maximizers[a], maximizers[a + 1]);
      const Staircase M = pointwise_max(maximizers[a], maximizers[a + 1]);
      if (!close(staircase_weight(field, m), best, 1e-9) ||
          !close(staircase_weight(field, M), best, 1e-9))
        ++failures;
    }
  }
  return tally("pointwise min and max of maximizers are maximizers", failures, cases);
}

CheckResult check_profile_and_measure(std::uint64_t seed, int threads) {
  const int n = 40;
  const GridSpec spec = scaled_window(n, 0.02, 0.0, -0.5, 0.5, 1.0, -0.5, 0.5);
  std::size_t failures = 0, cases = 0;
  for (int f = 0; f < 3; ++f) {
    const BrownianField field = BrownianField::generate(spec, derive_seed(seed, f));
    const auto ys = native_grid(spec, n, 1.0, -0.5, 0.5);
    const ProfileSeries z = difference_profile(field, -0.5, 0.5, n, ys);
    for (double inc : z.increments()) {
      ++cases;
      if (inc < -1e-9 * comparison_scale(z.z_values.back())) ++failures;
    }
    const auto xs = uniform_grid(-0.5, 0.5, 0.25);
    const auto yg = uniform_grid(-0.5, 0.5, 0.125);
    const MeasureGrid mu = bivariate_measure(field, n, xs, yg, threads);
    for (double m : mu.increments) {
      ++cases;
      if (m < -1e-9) ++failures;
    }
    // Summing the x cells reproduces the two-start profile increments.
    const ProfileSeries outer = difference_profile(field, xs.front(), xs.back(), n, yg);
    const auto inc = outer.increments();
    for (std::size_t j = 0; j < mu.cols(); ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i < mu.rows(); ++i) sum += mu.at(i, j);
      ++cases;
      if (std::abs(sum - inc[j]) > 1e-9 * comparison_scale(inc[j])) ++failures;
    }
  }
  return tally("profile monotonicity, measure positivity and marginals", failures, cases);
}

CheckResult check_box_calibration() {
  std::ostringstream out;
  bool ok = true;
  // Full interval and a single cell on a dyadic grid of 2^12 cells.
  const std::size_t cells = 4096;
  std::vector<double> left(cells);
  for (std::size_t m = 0; m < cells; ++m) left[m] = double(m) / cells;
  const auto ladder = geometric_ladder(2.0, 1, 10);
  for (int kind = 0; kind < 2; ++kind) {
    std::vector<bool> flags(cells, kind == 0);
    if (kind == 1) flags[1234] = true;
    std::vector<std::vector<bool>> masks;
    for (double eps : ladder) masks.push_back(box_mask(left, flags, 0.0, 1.0, eps));
    const double slope = box_dimension(ladder, masks).slope;
    const double target = kind == 0 ? 1.0 : 0.0;
    ok = ok && std::abs(slope - target) <= 0.02;
    out << (kind == 0 ? "interval=" : " point=") << slope;
  }
  // Depth-8 middle-thirds Cantor set.
  const std::size_t depth = 8;
  std::size_t total = 1;
  for (std::size_t d = 0; d < depth; ++d) total *= 3;
  std::vector<bool> cantor(total);
  std::vector<double> cl(total);
  for (std::size_t m = 0; m < total; ++m) {
    std::size_t v = m;
    bool in = true;
    for (std::size_t d = 0; d < depth; ++d, v /= 3) in = in && v % 3 != 1;
    cantor[m] = in;
    cl[m] = double(m) / double(total);
  }
  const auto thirds = geometric_ladder(3.0, 0, 8);
  std::vector<std::vector<bool>> masks;
  for (double eps : thirds) masks.push_back(box_mask(cl, cantor, 0.0, 1.0, eps));
  const double slope = box_dimension(thirds, masks).slope;
  ok = ok && std::abs(slope - std::log(2.0) / std::log(3.0)) <= 0.03;
  out << " cantor=" << slope;
  return {"box-dimension calibration", ok, out.str()};
}

CheckResult check_detectors(std::uint64_t seed) {
  const int n = 30;
  std::size_t failures = 0, cases = 0;
  const std::vector<double> xs{-0.3, -0.1, 0.1, 0.3};
  const std::vector<double> ys{-0.3, -0.1, 0.1, 0.3};
  const GridSpec spec = scaled_window(n, 0.05, 0.0, -0.3, 0.3, 1.0, -0.3, 0.3, 0.05);
  for (int f = 0; f < 20; ++f) {
    const BrownianField field = BrownianField::generate(spec, derive_seed(seed, f));
    const bool detect = disjoint_pair_detect(field, n, {xs.front(), xs.back()},
                                             {ys.front(), ys.back()});
    const int count = max_disjoint_count(field, n, xs, ys);
    ++cases;
    if (detect != (count >= 2)) ++failures;
  }
  return tally("disjoint-pair detector agrees with maximal disjoint count", failures, cases);
}

CheckResult check_containment(std::uint64_t seed, int threads) {
  const int n = 40;
  const auto xs = uniform_grid(-0.4, 0.4, 0.1);
  const auto ys = uniform_grid(-0.4, 0.4, 0.1);
  const GridSpec spec = scaled_window(n, 0.02, 0.0, -0.5, 0.5, 1.0, -0.5, 0.5, 0.02);
  std::size_t violations = 0, flagged = 0;
  for (int f = 0; f < 3; ++f) {
    const BrownianField field = BrownianField::generate(spec, derive_seed(seed, f));
    const auto report = support_vs_disjoint_crosscheck(field, n, xs, ys, 1e-9, threads);
    violations += report.violations.size();
    flagged += report.flagged;
  }
  return {"support cells imply disjoint extremal maximizers", violations == 0,
          describe(violations, flagged) + " flagged cells"};
}

CheckResult check_hausdorff(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t failures = 0, cases = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto random_path = [&] {
      std::vector<PlanarPoint> v;
      double r = 0.0;
      for (std::size_t m = 0, len = pick(rng, 1, 6); m < len; ++m) {
        r += unit(rng) * 0.3;
        v.push_back({unit(rng), r});
      }
      return PlanarPath(v);
    };
    const PlanarPath a = random_path();
    const PlanarPath b = random_path();
    // Dense sampling of both paths.
    const auto sample = [](const PlanarPath& p) {
      std::vector<PlanarPoint> pts;
      const auto v = p.vertices();
      pts.push_back(v[0]);
      for (std::size_t s = 1; s < v.size(); ++s) {
        for (int q = 1; q <= 2000; ++q) {
          const double w = q / 2000.0;
          pts.push_back({v[s - 1].z + w * (v[s].z - v[s - 1].z), v[s - 1].r + w * (v[s].r - v[s - 1].r)});
        }
      }
      return pts;
    };
    const auto directed = [](const std::vector<PlanarPoint>& from, const PlanarPath& to) {
      double worst = 0.0;
      for (const auto& p : from) {
        double best = INFINITY;
        const auto v = to.vertices();
        if (v.size() == 1) best = std::hypot(p.z - v[0].z, p.r - v[0].r);
        for (std::size_t s = 1; s < v.size(); ++s)
          best = std::min(best, point_segment_distance(p, v[s - 1], v[s]));
        worst = std::max(worst, best);
      }
      return worst;
    };
    const double sampled = std::max(directed(sample(a), b), directed(sample(b), a));
    ++cases;
    if (std::abs(sampled - hausdorff_distance(a, b)) > 2e-3) ++failures;
  }
  return tally("Hausdorff distance against dense sampling", failures, cases);
}

CheckResult check_gap_bound(std::uint64_t seed) {
  std::size_t failures = 0, cases = 0;
  for (int n : {16, 32, 64}) {
    const ScaledQuad u{0.2, 0.0, -0.1, 1.0};
    const GridSpec spec = scaled_window(n, 0.02, 0.0, u.x, u.x, 1.0, u.y, u.y, 0.02);
    for (int f = 0; f < 5; ++f) {
      const BrownianField field = BrownianField::generate(spec, derive_seed(seed, f));
      const Staircase stair = extremal_staircase(field, u, n, Side::left);
      const StepPath step = geodesic_of(stair, u, n);
      double sup = 0.0;
      for (std::size_t m = 0; m < step.times.size(); ++m)
        sup = std::max({sup, std::abs(step.values[m]), std::abs(step.left_limits[m])});
      const double gap =
          hausdorff_distance(zigzag(stair, n), geodesic_graph(step));
      const double c = 2.0 / n_one_third(n);
      const double bound = c * (std::abs(u.x) + std::abs(u.y) + sup) +
                           max_jump(step) * (1.0 + c) + spec.delta / n_two_thirds(n);
      ++cases;
      if (!(gap >= 0.0 && gap <= bound)) ++failures;
    }
  }
  return tally("polymer-geodesic gap within the explicit bound", failures, cases);
}

}  // namespace

double brute_force_passage(const std::vector<std::vector<double>>& rows, std::size_t x, int i,
                           std::size_t y, int j) {
  if (j < i || y < x) throw DomainError("brute force: requires x <= y and i <= j");
  return enumerate(rows, x, i, y, j);
}

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed, int threads) {
  const std::vector<std::pair<std::string, std::function<CheckResult()>>> checks{
      {"field", [&] { return check_field(seed, threads); }},
      {"brute force", [&] { return check_brute_force(derive_seed(seed, 1)); }},
      {"composition", [&] { return check_composition(derive_seed(seed, 2)); }},
      {"quadrangle", [&] { return check_quadrangle(derive_seed(seed, 3)); }},
      {"extremal", [&] { return check_extremal_and_restriction(derive_seed(seed, 4)); }},
      {"exchange", [&] { return check_exchange(derive_seed(seed, 5)); }},
      {"ordering", [&] { return check_ordering(derive_seed(seed, 6)); }},
      {"min closure", [&] { return check_min_closure(derive_seed(seed, 7)); }},
      {"profile and measure", [&] { return check_profile_and_measure(derive_seed(seed, 8), threads); }},
      {"box calibration", [] { return check_box_calibration(); }},
      {"detectors", [&] { return check_detectors(derive_seed(seed, 9)); }},
      {"containment", [&] { return check_containment(derive_seed(seed, 10), threads); }},
      {"hausdorff", [&] { return check_hausdorff(derive_seed(seed, 11)); }},
      {"gap bound", [&] { return check_gap_bound(derive_seed(seed, 12)); }},
  };
  std::vector<CheckResult> results;
  for (const auto& [name, check] : checks) {
    try {
      results.push_back(check());
    } catch (const std::exception& e) {
      results.push_back({name, false, std::string("raised: ") + e.what()});
    }
  }
  return results;
}

}  // namespace landscape
