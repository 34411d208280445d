// One pass/fail line per acceptance criterion. Pass criterion numbers as
// arguments to run a subset; the exit status is 0 iff every selected one passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "landscape/cli.hpp"
#include "landscape/disjoint.hpp"
#include "landscape/environment.hpp"
#include "landscape/fractal.hpp"
#include "landscape/geometry.hpp"
#include "landscape/lpp.hpp"
#include "landscape/parallel.hpp"
#include "landscape/rng.hpp"
#include "landscape/scaling.hpp"
#include "landscape/stats.hpp"
#include "oracles.hpp"

using namespace landscape;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> body;
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream out;
  out.precision(digits);
  out << v;
  return out.str();
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * comparison_scale(a, b);
}

const int kThreads = resolve_threads(0);

// 1. DP against brute-force enumeration.
Outcome dp_correctness() {
  std::mt19937_64 gen(20240601);
  std::size_t failures = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int lines = 1 + static_cast<int>(gen() % 3);
    const std::size_t points = 1 + gen() % 8;
    const double delta = 0.125;
    const auto rows = oracle::random_rows(gen, lines, points, std::sqrt(delta));
    const GridSpec spec{0.0, delta * static_cast<double>(points - 1), delta, 0, lines - 1};
    const auto field = BrownianField::from_values(spec, rows);
    const std::size_t a = gen() % points;
    const std::size_t b = a + gen() % (points - a);
    const int i = static_cast<int>(gen() % lines);
    const int j = i + static_cast<int>(gen() % (lines - i));
    const double expect = oracle::brute_passage(rows, a, i, b, j);
    if (!close_rel(passage_time(field, spec.point(a), i, spec.point(b), j), expect, 1e-10))
      ++failures;
  }
  return {failures == 0, std::to_string(failures) + " mismatches in 500 fields"};
}

// 2. Composition through every intermediate line.
Outcome composition() {
  std::mt19937_64 gen(2);
  const GridSpec spec{0.0, 4.0, 0.02, 0, 10};
  std::size_t failures = 0, cases = 0;
  for (int f = 0; f < 20; ++f) {
    const auto field = BrownianField::generate(spec, derive_seed(2, f));
    for (int c = 0; c < 50; ++c, ++cases) {
      std::size_t a = gen() % spec.point_count(), b = gen() % spec.point_count();
      if (a > b) std::swap(a, b);
      int i = static_cast<int>(gen() % 11), j = static_cast<int>(gen() % 11);
      if (i > j) std::swap(i, j);
      const int k = i + static_cast<int>(gen() % (j - i + 1));
      const double x = spec.point(a), y = spec.point(b);
      const auto first = passage_row(field, x, i, k, y);
      double best = -1e300;
      for (std::size_t m = 0; m < first.size(); ++m)
        best = std::max(best, first[m] + passage_time(field, spec.point(a + m), k, y, j));
      if (!close_rel(best, passage_time(field, x, i, y, j), 1e-9)) ++failures;
    }
  }
  return {failures == 0, std::to_string(failures) + " failures in " + std::to_string(cases)};
}

// 3. Quadrangle inequality.
Outcome quadrangle() {
  const GridSpec spec{0.0, 5.0, 0.01, 0, 12};
  std::size_t failures = 0, cases = 0;
  double worst = 0.0;
  for (int f = 0; f < 20; ++f) {
    const auto field = BrownianField::generate(spec, derive_seed(3, f));
    std::mt19937_64 gen(derive_seed(3, f, 1));
    for (int c = 0; c < 500; ++c, ++cases) {
      std::size_t idx[4];
      for (auto& v : idx) v = gen() % spec.point_count();
      std::sort(idx, idx + 4);
      int i = static_cast<int>(gen() % 13), j = static_cast<int>(gen() % 13);
      if (i > j) std::swap(i, j);
      const double x1 = spec.point(idx[0]), x2 = spec.point(idx[1]);
      const double y1 = spec.point(idx[2]), y2 = spec.point(idx[3]);
      const double big = passage_time(field, x1, i, y2, j);
      const double q = passage_time(field, x2, i, y2, j) + passage_time(field, x1, i, y1, j) -
                       big - passage_time(field, x2, i, y1, j);
      const double scaled = q / comparison_scale(big);
      worst = std::min(worst, scaled);
      if (scaled < -1e-9) ++failures;
    }
  }
  return {failures == 0, std::to_string(failures) + " violations in " + std::to_string(cases) +
                             ", most negative q/scale " + fmt(worst)};
}

// 4. Mean growth of M(0,0;n,n) against 2n.
Outcome mean_growth() {
  const int n = 200;
  const double delta = std::min(0.01, 0.4 / n);
  const GridSpec spec{0.0, static_cast<double>(n), delta, 0, n};
  const std::size_t trials = 2000;
  std::vector<double> ratio(trials);
  parallel_for(trials, kThreads, [&](std::size_t m) {
    ratio[m] = sample_passage_time(spec, trial_seed(4, m), 0.0, 0, n, n) / (2.0 * n);
  });
  const double r = mean(ratio);
  return {r >= 0.95 && r <= 1.00,
          "mean M/(2n) = " + fmt(r, 5) + " at delta " + fmt(delta) + ", target [0.95, 1.00]"};
}

// 5. Brownian rescaling of a general passage time.
Outcome scaling_relation() {
  // 600 steps on both windows make the discrete problems exact rescalings.
  const double x = 0.5, y = 3.5;
  const int i = 2, j = 9, lines = j - i;
  const std::size_t samples = 5000, steps = 600;
  const GridSpec general{x, y, (y - x) / steps, i, j};
  const GridSpec reference{0.0, static_cast<double>(lines), static_cast<double>(lines) / steps,
                           0, lines};
  std::vector<double> a(samples), b(samples);
  const double factor = std::sqrt((y - x) / lines);
  parallel_for(samples, kThreads, [&](std::size_t m) {
    a[m] = sample_passage_time(general, derive_seed(5, 0, m), x, i, y, j);
    b[m] = factor * sample_passage_time(reference, derive_seed(5, 1, m), 0.0, 0, lines, lines);
  });
  const double d = oracle::ks_two_sample(a, b);
  const double crit = ks_critical(samples, samples, 0.01);
  return {d < crit, "KS " + fmt(d) + " against 1% critical value " + fmt(crit)};
}

// 6. Polymer and geodesic graph converge at rate n^{-1/3}.
Outcome geodesic_rate() {
  const ScaledQuad u{0.0, 0.0, 0.0, 1.0};
  std::vector<double> medians;
  std::string detail;
  for (int n : {64, 128, 256, 512}) {
    const GridSpec spec = scaled_window(n, 0.02, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0);
    std::vector<double> scaled(50);
    parallel_for(50, kThreads, [&](std::size_t m) {
      const auto field = BrownianField::generate(spec, derive_seed(6, n, m));
      scaled[m] = polymer_geodesic_gap(field, u, n, Side::left) * n_one_third(n);
    });
    medians.push_back(median(scaled));
    detail += "n=" + std::to_string(n) + ":" + fmt(medians.back(), 3) + " ";
  }
  const auto [lo, hi] = std::minmax_element(medians.begin(), medians.end());
  const double spread = *hi / *lo;
  return {spread < 3.0, detail + "spread " + fmt(spread, 3)};
}

Staircase extremal(const BrownianField& f, double x, int i, double y, int j, Side side) {
  return extract_staircase(passage_profile(f, x, i, j, y), y, side);
}

// 7. Exchange lemma on crossing maximizers.
Outcome exchange_lemma() {
  const GridSpec spec{0.0, 10.0, 0.05, 0, 14};
  std::size_t pairs = 0, failures = 0;
  std::mt19937_64 gen(7);
  for (int trial = 0; pairs < 1000 && trial < 100000; ++trial) {
    const auto field = BrownianField::generate(spec, derive_seed(7, trial));
    for (int c = 0; c < 10 && pairs < 1000; ++c) {
      const double x1 = spec.point(gen() % 80), x2 = spec.point(gen() % 80);
      const double y1 = spec.point(120 + gen() % 80), y2 = spec.point(120 + gen() % 80);
      const auto a = extremal(field, x1, 0, y1, 14, Side::left);
      const auto b = extremal(field, x2, 0, y2, 14, Side::left);
      const auto cross = crossings(a, b);
      if (cross.size() < 2) continue;
      const std::size_t p = gen() % (cross.size() - 1);
      const std::size_t q = p + 1 + gen() % (cross.size() - 1 - p);
      ++pairs;
      for (auto variant : {ExchangeVariant::full, ExchangeVariant::head, ExchangeVariant::tail}) {
        const auto e = exchange(a, b, cross[p], cross[q], variant);
        const double best = passage_time(field, e.start().z, e.start().k, e.end().z, e.end().k);
        if (!close_rel(staircase_weight(field, e), best, 1e-9)) ++failures;
      }
    }
  }
  return {pairs == 1000 && failures == 0,
          std::to_string(failures) + " failures over " + std::to_string(pairs) +
              " crossing pairs x 3 variants"};
}

// 8. Ordering of extremal maximizers with ordered endpoints.
Outcome ordering() {
  const GridSpec spec{0.0, 10.0, 0.05, 0, 12};
  std::size_t failures = 0, cases = 0;
  for (int f = 0; f < 100; ++f) {
    const auto field = BrownianField::generate(spec, derive_seed(8, f));
    std::mt19937_64 gen(derive_seed(8, f, 1));
    for (int c = 0; c < 100; ++c, ++cases) {
      std::size_t x1 = gen() % 100, x2 = gen() % 100, y1 = 100 + gen() % 101,
                  y2 = 100 + gen() % 101;
      if (x1 > x2) std::swap(x1, x2);
      if (y1 > y2) std::swap(y1, y2);
      const int i = static_cast<int>(gen() % 6), j = 6 + static_cast<int>(gen() % 7);
      const auto l = extremal(field, spec.point(x1), i, spec.point(y1), j, Side::left);
      const auto r = extremal(field, spec.point(x2), i, spec.point(y2), j, Side::right);
      if (!ordered_leq(l, r)) ++failures;
    }
  }
  return {failures == 0, std::to_string(failures) + " violations in " + std::to_string(cases)};
}

// 9. Monotone difference profile and nonnegative cell masses.
Outcome monotone_measure() {
  const int n = 500;
  const GridSpec spec = scaled_window(n, 0.01, 0.0, -0.5, 0.5, 1.0, -0.5, 0.5);
  const auto ys = native_grid(spec, n, 1.0, -0.5, 0.5);
  const auto grid = uniform_grid(-0.5, 0.5, 0.05);
  std::size_t z_bad = 0, mu_bad = 0, z_checked = 0, mu_checked = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto field = BrownianField::generate(spec, derive_seed(9, seed), kThreads);
    const auto z = difference_profile(field, -0.5, 0.5, n, ys);
    double scale = 1.0;
    for (double v : z.z_values) scale = std::max(scale, std::abs(v));
    for (double inc : z.increments()) {
      ++z_checked;
      if (inc < -1e-9 * scale) ++z_bad;
    }
    const auto mu = bivariate_measure(field, n, grid, grid, kThreads);
    for (double m : mu.increments) {
      ++mu_checked;
      if (m < -1e-9 * scale) ++mu_bad;
    }
  }
  return {z_bad == 0 && mu_bad == 0,
          std::to_string(z_bad) + "/" + std::to_string(z_checked) + " Z decreases, " +
              std::to_string(mu_bad) + "/" + std::to_string(mu_checked) + " negative cells"};
}

double dimension_of(const std::vector<double>& lefts, double lo, double hi,
                    const std::vector<double>& ladder) {
  const std::vector<bool> all(lefts.size(), true);
  std::vector<std::vector<bool>> masks;
  for (double eps : ladder) masks.push_back(box_mask(lefts, all, lo, hi, eps));
  return box_dimension(ladder, masks).slope;
}

// 10. Box dimension of the support of Z.
Outcome box_dimension_half() {
  const auto ladder = geometric_ladder(2.0, 2, 10);  // fit keeps 2^-4 .. 2^-9
  // Calibration on sets of known dimension.
  const double interval = dimension_of(uniform_grid(0.0, 1.0 - 1.0 / 4096, 1.0 / 4096), 0.0,
                                       1.0, ladder);
  const double point = dimension_of({0.3}, 0.0, 1.0, ladder);
  const double cantor = dimension_of(oracle::cantor_lefts(13), 0.0, 1.0, ladder);
  const double cantor_dim = std::log(2.0) / std::log(3.0);
  const bool calibrated = std::abs(interval - 1.0) < 0.05 && std::abs(point) < 0.05 &&
                          std::abs(cantor - cantor_dim) < 0.05;
  std::string detail = "calibration interval " + fmt(interval, 3) + " point " + fmt(point, 3) +
                       " cantor " + fmt(cantor, 3) + " (" + fmt(cantor_dim, 3) + ")";
  if (!calibrated) return {false, detail};

  const int n = 500;
  const GridSpec spec = scaled_window(n, 0.01, 0.0, -0.5, 0.5, 1.0, -0.5, 0.5);
  const auto ys = native_grid(spec, n, 1.0, -0.5, 0.5);
  const std::vector<double> lefts(ys.begin(), ys.end() - 1);
  std::vector<double> slopes;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto field = BrownianField::generate(spec, derive_seed(10, seed), kThreads);
    const auto z = difference_profile(field, -0.5, 0.5, n, ys);
    const auto flagged = support_cells(z.increments(), 1e-9);
    std::vector<std::vector<bool>> masks;
    for (double eps : ladder) masks.push_back(box_mask(lefts, flagged, -0.5, 0.5, eps));
    slopes.push_back(box_dimension(ladder, masks).slope);
  }
  const double m = mean(slopes);
  return {m >= 0.3 && m <= 0.7, detail + "; mean slope " + fmt(m, 3) + " over 20 seeds (sd " +
                                    fmt(stddev(slopes), 3) + "), target [0.3, 0.7]"};
}

// 11. Tail exponent of two disjoint geodesics.
Outcome tail_exponent() {
  TailConfig config;
  config.n = 100;
  config.delta = 0.01;
  config.epsilons = geometric_ladder(2.0, 3, 7);
  config.trials = 2000;
  config.base_seed = 11;
  config.threads = kThreads;
  const auto est = tail_experiment(config);
  std::string detail;
  for (const auto& l : est.levels) detail += fmt(l.eps, 3) + ":" + fmt(l.phat, 3) + " ";
  if (!est.exponent) return {false, detail + "fewer than two levels with hits"};
  return {*est.exponent >= 1.1 && *est.exponent <= 1.9,
          detail + "exponent " + fmt(*est.exponent, 3) + " (r^2 " + fmt(est.r_squared, 3) +
              "), target [1.1, 1.9]"};
}

// 12. Positive mass forces disjoint extremal maximizers.
Outcome containment() {
  const int n = 200;
  const auto grid = uniform_grid(-0.5, 0.5, 0.05);
  const GridSpec spec = scaled_window(n, 0.01, 0.0, -0.55, 0.55, 1.0, -0.55, 0.55);
  std::size_t flagged = 0, violations = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto field = BrownianField::generate(spec, derive_seed(12, seed), kThreads);
    const auto report = support_vs_disjoint_crosscheck(field, n, grid, grid, 1e-9, kThreads);
    flagged += report.flagged;
    violations += report.violations.size();
  }
  return {violations == 0 && flagged > 0,
          std::to_string(violations) + " violations over " + std::to_string(flagged) +
              " support cells"};
}

// 13. CLI bodies do not depend on --threads.
Outcome determinism() {
  const fs::path dir = fs::path(LANDSCAPE_TEST_TMP) / "acceptance";
  fs::create_directories(dir);
  const std::vector<std::string> runs{
      "field --n 8", "passage --n 40 --trials 8", "geodesic --n 64", "profile --n 120",
      "measure --n 60 --grid-step 0.1",
      "boxdim --n 100 --trials 4 --eps-max 0.25 --eps-min 0.0078125 --eps-levels 6",
      "disjoint-tail --n 20 --trials 60 --eps-max 0.5 --eps-min 0.125 --eps-levels 3",
      "tw --n 20 --trials 16"};
  auto body = [](const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    return text.substr(text.find('\n') + 1);
  };
  std::size_t mismatches = 0;
  for (const auto& args : runs) {
    std::string outputs[2];
    for (int v = 0; v < 2; ++v) {
      const fs::path out = dir / ("run" + std::to_string(v) + ".csv");
      const std::string cmd = std::string("\"") + LANDSCAPE_LAB_EXE + "\" " + args +
                              " --threads " + (v ? "4" : "1") + " --out \"" + out.string() +
                              "\" > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) return {false, "run failed: " + args};
      outputs[v] = body(out);
    }
    if (outputs[0] != outputs[1] || outputs[0].empty()) ++mismatches;
  }
  return {mismatches == 0,
          std::to_string(mismatches) + " of " + std::to_string(runs.size()) +
              " subcommands differ between 1 and 4 threads"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "DP correctness vs brute force", 5, dp_correctness},
      {2, "composition identity", 30, composition},
      {3, "quadrangle inequality", 60, quadrangle},
      {4, "mean growth M/(2n)", 600, mean_growth},
      {5, "Brownian scaling relation (KS)", 300, scaling_relation},
      {6, "polymer/geodesic gap rate", 600, geodesic_rate},
      {7, "exchange lemma", 120, exchange_lemma},
      {8, "ordering of extremal maximizers", 300, ordering},
      {9, "Z monotone and mu nonnegative", 600, monotone_measure},
      {10, "box dimension of Supp(Z)", 1800, box_dimension_half},
      {11, "tail exponent of disjoint pairs", 3600, tail_exponent},
      {12, "support implies disjointness", 900, containment},
      {13, "CLI determinism across threads", 600, determinism},
  };
  std::vector<int> selected;
  for (int a = 1; a < argc; ++a) selected.push_back(std::atoi(argv[a]));
  bool all = true;
  std::cout << "threads: " << kThreads << std::endl;
  for (const auto& c : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool ok = o.passed && in_time;
    all = all && ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): "
              << o.detail << " [" << fmt(secs, 3) << " s, budget " << c.budget_seconds << " s"
              << (in_time ? "" : ", over budget") << "]" << std::endl;
  }
  return all ? 0 : 1;
}
