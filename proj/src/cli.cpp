#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>

#include <CLI11.hpp>

#include "landscape/checks.hpp"
#include "landscape/cli.hpp"
#include "landscape/disjoint.hpp"
#include "landscape/error.hpp"
#include "landscape/fractal.hpp"
#include "landscape/parallel.hpp"
#include "landscape/rng.hpp"
#include "landscape/scaling.hpp"
#include "landscape/stats.hpp"
#include "landscape/version.hpp"

namespace landscape {

namespace {

struct Artifacts {
  std::optional<Table> main;
  std::vector<std::pair<std::string, Table>> extras;
  Json summary = Json::object();
  std::vector<std::string> report;  ///< lines printed to stdout
  bool ok = true;
};

Json table_meta(const RunConfig& c) {
  Json meta = to_json(c);
  meta.erase("threads");
  meta.erase("out");
  meta.erase("format");
  meta["version"] = kVersion;
  return meta;
}

double resolved_delta(const RunConfig& c) {
  if (c.delta) return *c.delta;
  return c.subcommand == "tw" ? std::min(0.01, 0.4 / c.n) : 0.01;
}

// Window from --window if given, else the smallest one holding the experiment.
GridSpec experiment_grid(const RunConfig& c, double s, double x_lo, double x_hi, double t,
                         double y_lo, double y_hi) {
  const double delta = resolved_delta(c);
  GridSpec spec = scaled_window(c.n, delta, s, x_lo, x_hi, t, y_lo, y_hi, delta);
  if (c.window) {
    spec.z_min = c.window->first;
    spec.z_max = c.window->second;
    spec.validate();
  }
  return spec;
}

Side parse_side(const std::string& side) {
  if (side == "left") return Side::left;
  if (side == "right") return Side::right;
  throw ConstructionError("side must be 'left' or 'right'");
}

std::string fmt(double v) { return format_double(v); }

std::vector<double> profile_y_grid(const RunConfig& c, const GridSpec& spec) {
  return c.grid_step > 0.0 ? uniform_grid(c.y1, c.y2, c.grid_step)
                           : native_grid(spec, c.n, 1.0, c.y1, c.y2);
}

Artifacts cmd_field(const RunConfig& c, int threads) {
  GridSpec spec{0.0, 10.0, resolved_delta(c), 0, c.n};
  if (c.window) {
    spec.z_min = c.window->first;
    spec.z_max = c.window->second;
  }
  const BrownianField field = BrownianField::generate(spec, c.seed, threads);
  Artifacts a;
  a.main = field_table(field);
  a.main->meta["config"] = table_meta(c);
  a.summary["spec"] = to_json(spec);
  a.summary["values"] = field.point_count() * static_cast<std::size_t>(spec.line_count());
  return a;
}

// Monte Carlo samples of M and W_n(u); shared by passage and tw.
Artifacts sample_passages(const RunConfig& c, const ScaledQuad& u, int threads) {
  check_scaled_domain(u, c.n);
  const GridSpec spec = experiment_grid(c, u.s, u.x, u.x, u.t, u.y, u.y);
  const Endpoint a = scaled_endpoint(u.x, u.s, c.n, spec);
  const Endpoint b = scaled_endpoint(u.y, u.t, c.n, spec);
  if (b.z < a.z) throw DomainError("end lies left of start after snapping");
  std::vector<double> m(c.trials);
  parallel_for(c.trials, threads, [&](std::size_t trial) {
    m[trial] = sample_passage_time(spec, trial_seed(c.seed, trial), a.z, a.k, b.z, b.k);
  });
  Artifacts out;
  Table t;
  t.meta = table_meta(c);
  t.meta["spec"] = to_json(spec);
  t.meta["snapped_start"] = {{"z", a.z}, {"k", a.k}};
  t.meta["snapped_end"] = {{"z", b.z}, {"k", b.k}};
  t.columns = {"trial", "seed", "M", "W"};
  std::vector<double> w(c.trials);
  for (std::size_t trial = 0; trial < c.trials; ++trial) {
    w[trial] = standardize(m[trial], u, c.n);
    t.rows.push_back({std::to_string(trial), std::to_string(trial_seed(c.seed, trial)),
                      fmt(m[trial]), fmt(w[trial])});
  }
  out.summary["n"] = c.n;
  out.summary["trials"] = c.trials;
  out.summary["delta"] = spec.delta;
  out.summary["snap_perturbation"] =
      std::max(std::abs(a.z - scaled_position(u.x, u.s, c.n)),
               std::abs(b.z - scaled_position(u.y, u.t, c.n)));
  out.summary["mean_W"] = mean(w);
  out.summary["mean_M"] = mean(m);
  if (c.trials > 1) out.summary["sd_W"] = stddev(w);
  out.main = std::move(t);
  return out;
}

Artifacts cmd_passage(const RunConfig& c, int threads) {
  return sample_passages(c, ScaledQuad{c.x, c.s, c.y, c.t}, threads);
}

Artifacts cmd_tw(const RunConfig& c, int threads) {
  Artifacts a = sample_passages(c, ScaledQuad{0.0, 0.0, 0.0, 1.0}, threads);
  const double ratio = a.summary["mean_M"].get<double>() / (2.0 * c.n);
  a.summary["mean_M_over_2n"] = ratio;
  // Tracy-Widom GUE mean -1.7711 gives 1 - 0.8856 n^{-2/3} before discretization.
  a.summary["tracy_widom_prediction"] = 1.0 - 0.88553 / n_two_thirds(c.n);
  a.extras.emplace_back("samples", std::move(*a.main));
  a.main.reset();
  return a;
}

Artifacts cmd_geodesic(const RunConfig& c, int threads) {
  const ScaledQuad u{c.x, c.s, c.y, c.t};
  check_scaled_domain(u, c.n);
  const GridSpec spec = experiment_grid(c, u.s, u.x, u.x, u.t, u.y, u.y);
  const BrownianField field = BrownianField::generate(spec, c.seed, threads);
  const Staircase stair = extremal_staircase(field, u, c.n, parse_side(c.side));
  const StepPath step = geodesic_of(stair, u, c.n);
  const PlanarPath zz = zigzag(stair, c.n);
  const PlanarPath graph = geodesic_graph(step);
  Artifacts a;
  Table t;
  t.meta = table_meta(c);
  t.meta["spec"] = to_json(spec);
  t.columns = {"r", "gamma", "gamma_left"};
  for (std::size_t m = 0; m < step.times.size(); ++m)
    t.rows.push_back({fmt(step.times[m]), fmt(step.values[m]), fmt(step.left_limits[m])});
  a.main = std::move(t);
  for (auto [name, table] : {std::pair{"staircase", staircase_table(stair)},
                             std::pair{"zigzag", planar_table(zz)},
                             std::pair{"graph", planar_table(graph)}}) {
    table.meta["config"] = table_meta(c);
    a.extras.emplace_back(name, std::move(table));
  }
  a.summary["W"] = standardize(staircase_weight(field, stair), u, c.n);
  a.summary["gap"] = hausdorff_distance(zz, graph);
  a.summary["max_jump"] = max_jump(step);
  a.summary["snap_perturbation"] =
      std::max(std::abs(stair.start().z - scaled_position(u.x, u.s, c.n)),
               std::abs(stair.end().z - scaled_position(u.y, u.t, c.n)));
  return a;
}

Artifacts cmd_profile(const RunConfig& c, int threads) {
  const GridSpec spec = experiment_grid(c, 0.0, c.x1, c.x2, 1.0, c.y1, c.y2);
  const BrownianField field = BrownianField::generate(spec, c.seed, threads);
  const auto ys = profile_y_grid(c, spec);
  const ProfileSeries z = difference_profile(field, c.x1, c.x2, c.n, ys);
  Artifacts a;
  Table t;
  t.meta = table_meta(c);
  t.meta["spec"] = to_json(spec);
  t.columns = {"y", "Z"};
  for (std::size_t m = 0; m < ys.size(); ++m) t.rows.push_back({fmt(ys[m]), fmt(z.z_values[m])});
  a.main = std::move(t);
  const auto inc = z.increments();
  const auto mask = inc.empty() ? std::vector<bool>{} : support_cells(inc, c.tol_rel);
  a.summary["points"] = ys.size();
  a.summary["support_cells"] = std::count(mask.begin(), mask.end(), true);
  a.summary["Z_first"] = z.z_values.front();
  a.summary["Z_last"] = z.z_values.back();
  return a;
}

Artifacts cmd_measure(const RunConfig& c, int threads) {
  const double step = c.grid_step > 0.0 ? c.grid_step : 0.05;
  const auto xs = uniform_grid(c.x1, c.x2, step);
  const auto ys = uniform_grid(c.y1, c.y2, step);
  const GridSpec spec = experiment_grid(c, 0.0, xs.front(), xs.back(), 1.0, ys.front(), ys.back());
  const BrownianField field = BrownianField::generate(spec, c.seed, threads);
  const MeasureGrid mu = bivariate_measure(field, c.n, xs, ys, threads);
  Artifacts a;
  Table t;
  t.meta = table_meta(c);
  t.meta["spec"] = to_json(spec);
  t.columns = {"x_lo", "x_hi", "y_lo", "y_hi", "mass"};
  for (std::size_t i = 0; i < mu.rows(); ++i) {
    for (std::size_t j = 0; j < mu.cols(); ++j)
      t.rows.push_back({fmt(xs[i]), fmt(xs[i + 1]), fmt(ys[j]), fmt(ys[j + 1]), fmt(mu.at(i, j))});
  }
  a.main = std::move(t);
  const auto mask = support_cells(mu.increments, c.tol_rel);
  a.summary["cells"] = mu.increments.size();
  a.summary["support_cells"] = std::count(mask.begin(), mask.end(), true);
  a.summary["min_mass"] = *std::min_element(mu.increments.begin(), mu.increments.end());
  a.summary["max_mass"] = *std::max_element(mu.increments.begin(), mu.increments.end());
  return a;
}

Artifacts cmd_boxdim(const RunConfig& c, int threads) {
  const GridSpec spec = experiment_grid(c, 0.0, c.x1, c.x2, 1.0, c.y1, c.y2);
  const auto ladder = eps_ladder(c);
  Artifacts a;
  Table t;
  t.meta = table_meta(c);
  t.meta["spec"] = to_json(spec);
  t.columns = {"trial", "eps", "count"};
  Json trials = Json::array();
  std::vector<double> slopes;
  FitRange range;
  for (std::size_t trial = 0; trial < c.trials; ++trial) {
    const BrownianField field = BrownianField::generate(spec, trial_seed(c.seed, trial), threads);
    const auto ys = profile_y_grid(c, spec);
    const ProfileSeries z = difference_profile(field, c.x1, c.x2, c.n, ys);
    const auto mask = support_cells(z.increments(), c.tol_rel);
    const std::vector<double> left(ys.begin(), ys.end() - 1);
    std::vector<std::vector<bool>> masks;
    for (double eps : ladder) masks.push_back(box_mask(left, mask, c.y1, c.y2, eps));
    const DimensionEstimate est = box_dimension(ladder, masks, range);
    for (std::size_t m = 0; m < est.epsilons.size(); ++m)
      t.rows.push_back({std::to_string(trial), fmt(est.epsilons[m]), std::to_string(est.counts[m])});
    slopes.push_back(est.slope);
    trials.push_back({{"trial", trial},
                      {"seed", trial_seed(c.seed, trial)},
                      {"slope", est.slope},
                      {"r_squared", est.r_squared},
                      {"support_cells", std::count(mask.begin(), mask.end(), true)}});
    if (trial == 0) {
      a.summary["fit_range"] = {est.epsilons[est.fit_begin], est.epsilons[est.fit_end - 1]};
    }
  }
  a.main = std::move(t);
  a.summary["slope"] = mean(slopes);
  a.summary["trials"] = std::move(trials);
  return a;
}

Artifacts cmd_tail(const RunConfig& c, int threads) {
  TailConfig tc;
  tc.n = c.n;
  tc.delta = resolved_delta(c);
  tc.epsilons = eps_ladder(c);
  tc.trials = c.trials;
  tc.base_seed = c.seed;
  tc.x = c.x;
  tc.y = c.y;
  tc.threads = threads;
  const TailEstimate est = tail_experiment(tc);
  Artifacts a;
  Table t;
  t.meta = table_meta(c);
  t.columns = {"eps", "trials", "hits", "phat", "ci_lo", "ci_hi"};
  for (const auto& l : est.levels) {
    t.rows.push_back({fmt(l.eps), std::to_string(l.trials), std::to_string(l.hits), fmt(l.phat),
                      fmt(l.ci.lo), fmt(l.ci.hi)});
  }
  a.main = std::move(t);
  a.summary["exponent"] = est.exponent ? Json(*est.exponent) : Json(nullptr);
  a.summary["r_squared"] = est.r_squared;
  a.summary["dropped_eps"] = est.dropped;
  a.summary["monotone"] = tail_monotone(est);
  return a;
}

Artifacts cmd_check(const RunConfig& c, int threads) {
  Artifacts a;
  Json results = Json::array();
  for (const auto& r : run_invariant_suite(c.seed, threads)) {
    a.report.push_back(std::string(r.passed ? "PASS " : "FAIL ") + r.name + ": " + r.detail);
    a.ok = a.ok && r.passed;
    results.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  a.summary["checks"] = std::move(results);
  a.summary["all_passed"] = a.ok;
  return a;
}

void write_table(const std::string& path, const Table& table, const std::string& format) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConstructionError("cannot open '" + path + "' for writing");
  if (format == "json")
    write_json(file, table);
  else
    write_csv(file, table);
  if (!file) throw ConstructionError("failed writing '" + path + "'");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConstructionError("cannot open '" + path + "' for writing");
  file << text;
}

std::string stem_of(const std::string& out) {
  for (const char* ext : {".csv", ".json"}) {
    const std::string e(ext);
    if (out.size() > e.size() && out.compare(out.size() - e.size(), e.size(), e) == 0)
      return out.substr(0, out.size() - e.size());
  }
  return out;
}

Artifacts dispatch(const RunConfig& c, int threads) {
  if (c.subcommand == "field") return cmd_field(c, threads);
  if (c.subcommand == "passage") return cmd_passage(c, threads);
  if (c.subcommand == "geodesic") return cmd_geodesic(c, threads);
  if (c.subcommand == "profile") return cmd_profile(c, threads);
  if (c.subcommand == "measure") return cmd_measure(c, threads);
  if (c.subcommand == "boxdim") return cmd_boxdim(c, threads);
  if (c.subcommand == "disjoint-tail") return cmd_tail(c, threads);
  if (c.subcommand == "check") return cmd_check(c, threads);
  if (c.subcommand == "tw") return cmd_tw(c, threads);
  throw ConstructionError("unknown subcommand '" + c.subcommand + "'");
}

int execute(const RunConfig& c, std::ostream& out) {
  const auto started = std::chrono::steady_clock::now();
  const int threads = resolve_threads(c.threads);
  Artifacts a = dispatch(c, threads);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  for (const auto& line : a.report) out << line << '\n';

  const std::string ext = c.format == "json" ? ".json" : ".csv";
  if (c.out.empty()) {
    if (a.main) {
      if (c.format == "json")
        write_json(out, *a.main);
      else
        write_csv(out, *a.main);
    } else if (a.report.empty()) {
      out << a.summary.dump(2) << '\n';
    }
    return a.ok ? 0 : 1;
  }

  const std::string stem = stem_of(c.out);
  Json files = Json::array();
  if (a.main) {
    write_table(c.out, *a.main, c.format);
    files.push_back(c.out);
  }
  for (const auto& [name, table] : a.extras) {
    const std::string path = stem + "." + name + ext;
    write_table(path, table, c.format);
    files.push_back(path);
  }
  const std::string summary_path = stem + ".summary.json";
  write_text(summary_path, a.summary.dump(2) + "\n");
  files.push_back(summary_path);

  Json manifest;
  manifest["version"] = kVersion;
  manifest["config"] = to_json(c);
  manifest["threads_used"] = threads;
  const char* env = std::getenv("LANDSCAPE_THREADS");
  manifest["LANDSCAPE_THREADS"] = env ? Json(env) : Json(nullptr);
  manifest["wall_time_seconds"] = wall;
  manifest["artifacts"] = std::move(files);
  manifest["succeeded"] = a.ok;
  write_text(stem + ".manifest.json", manifest.dump(2) + "\n");
  if (!a.main && a.report.empty()) out << a.summary.dump(2) << '\n';
  return a.ok ? 0 : 1;
}

void bind_options(CLI::App& sub, RunConfig& c) {
  sub.add_option("--n", c.n, "scaling parameter n")->capture_default_str();
  sub.add_option_function<double>("--delta", [&c](double d) { c.delta = d; },
                                  "unscaled grid step (default depends on subcommand)");
  sub.add_option_function<std::vector<double>>(
         "--window",
         [&c](const std::vector<double>& w) { c.window = std::pair{w.at(0), w.at(1)}; },
         "unscaled window a,b (default: fitted to the experiment)")
      ->delimiter(',')
      ->expected(2);
  sub.add_option("--seed", c.seed, "base seed")->capture_default_str();
  sub.add_option("--trials", c.trials, "independent fields")->capture_default_str();
  sub.add_option("--eps-min", c.eps_min, "smallest ladder scale")->capture_default_str();
  sub.add_option("--eps-max", c.eps_max, "largest ladder scale")->capture_default_str();
  sub.add_option("--eps-levels", c.eps_levels, "ladder levels")->capture_default_str();
  sub.add_option("--x1", c.x1, "left start (scaled)")->capture_default_str();
  sub.add_option("--x2", c.x2, "right start (scaled)")->capture_default_str();
  sub.add_option("--y1", c.y1, "lower end of the y range (scaled)")->capture_default_str();
  sub.add_option("--y2", c.y2, "upper end of the y range (scaled)")->capture_default_str();
  sub.add_option("--grid-step", c.grid_step, "scaled grid step (0: native grid)")
      ->capture_default_str();
  sub.add_option("--tol-rel", c.tol_rel, "support tolerance")->capture_default_str();
  sub.add_option("--x", c.x, "start x of u (scaled)")->capture_default_str();
  sub.add_option("--s", c.s, "start time s of u")->capture_default_str();
  sub.add_option("--y", c.y, "end y of u (scaled)")->capture_default_str();
  sub.add_option("--t", c.t, "end time t of u")->capture_default_str();
  sub.add_option("--side", c.side, "extremal maximizer: left or right")
      ->check(CLI::IsMember({"left", "right"}))
      ->capture_default_str();
  sub.add_option("--threads", c.threads, "worker threads (0: LANDSCAPE_THREADS or all cores)")
      ->capture_default_str();
  sub.add_option("--out", c.out, "output file (default: stdout)");
  sub.add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"field",   "passage",       "geodesic",
                                              "profile", "measure",       "boxdim",
                                              "disjoint-tail", "check",   "tw"};
  return names;
}

RunConfig default_config(const std::string& subcommand) {
  const auto& names = subcommands();
  if (std::find(names.begin(), names.end(), subcommand) == names.end())
    throw ConstructionError("unknown subcommand '" + subcommand + "'");
  RunConfig c;
  c.subcommand = subcommand;
  if (subcommand == "field") {
    c.n = 10;
  } else if (subcommand == "passage" || subcommand == "tw") {
    c.n = 200;
    if (subcommand == "tw") c.trials = 2000;
  } else if (subcommand == "geodesic") {
    c.n = 128;
  } else if (subcommand == "measure") {
    c.n = 200;
    c.grid_step = 0.05;
  } else if (subcommand == "disjoint-tail") {
    c.n = 100;
    c.trials = 2000;
    c.eps_max = 0.125;
    c.eps_min = 0.0078125;
    c.eps_levels = 5;
  }
  return c;
}

void validate(const RunConfig& c) {
  const auto& names = subcommands();
  if (std::find(names.begin(), names.end(), c.subcommand) == names.end())
    throw ConstructionError("unknown subcommand '" + c.subcommand + "'");
  if (c.n < 1) throw ConstructionError("--n must be positive");
  if (c.delta && !(*c.delta > 0.0)) throw ConstructionError("--delta must be positive");
  if (c.window && !(c.window->first < c.window->second))
    throw ConstructionError("--window needs a < b");
  if (c.trials < 1) throw ConstructionError("--trials must be at least 1");
  if (!(c.eps_min > 0.0) || !(c.eps_max > c.eps_min) || c.eps_levels < 2)
    throw ConstructionError("eps ladder needs 0 < eps-min < eps-max and at least 2 levels");
  if (!(c.x1 <= c.x2)) throw ConstructionError("--x1 must not exceed --x2");
  if (!(c.y1 < c.y2)) throw ConstructionError("--y1 must be below --y2");
  if (c.grid_step < 0.0) throw ConstructionError("--grid-step must be non-negative");
  if (c.tol_rel < 0.0) throw ConstructionError("--tol-rel must be non-negative");
  if (!(c.s < c.t)) throw ConstructionError("--s must be below --t");
  if (c.side != "left" && c.side != "right") throw ConstructionError("--side is left or right");
  if (c.format != "csv" && c.format != "json") throw ConstructionError("--format is csv or json");
  if (c.threads < 0) throw ConstructionError("--threads must be non-negative");
}

Json to_json(const RunConfig& c) {
  Json j;
  j["subcommand"] = c.subcommand;
  j["n"] = c.n;
  j["delta"] = c.delta ? Json(*c.delta) : Json(nullptr);
  j["window"] = c.window ? Json::array({c.window->first, c.window->second}) : Json(nullptr);
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["eps_min"] = c.eps_min;
  j["eps_max"] = c.eps_max;
  j["eps_levels"] = c.eps_levels;
  j["x1"] = c.x1;
  j["x2"] = c.x2;
  j["y1"] = c.y1;
  j["y2"] = c.y2;
  j["grid_step"] = c.grid_step;
  j["tol_rel"] = c.tol_rel;
  j["u"] = {{"x", c.x}, {"s", c.s}, {"y", c.y}, {"t", c.t}};
  j["side"] = c.side;
  j["threads"] = c.threads;
  j["out"] = c.out;
  j["format"] = c.format;
  return j;
}

RunConfig config_from_json(const Json& j) {
  try {
    RunConfig c;
    c.subcommand = j.at("subcommand").get<std::string>();
    c.n = j.at("n").get<int>();
    if (!j.at("delta").is_null()) c.delta = j.at("delta").get<double>();
    if (!j.at("window").is_null())
      c.window = std::pair{j.at("window").at(0).get<double>(), j.at("window").at(1).get<double>()};
    c.seed = j.at("seed").get<std::uint64_t>();
    c.trials = j.at("trials").get<std::size_t>();
    c.eps_min = j.at("eps_min").get<double>();
    c.eps_max = j.at("eps_max").get<double>();
    c.eps_levels = j.at("eps_levels").get<int>();
    c.x1 = j.at("x1").get<double>();
    c.x2 = j.at("x2").get<double>();
    c.y1 = j.at("y1").get<double>();
    c.y2 = j.at("y2").get<double>();
    c.grid_step = j.at("grid_step").get<double>();
    c.tol_rel = j.at("tol_rel").get<double>();
    const Json& u = j.at("u");
    c.x = u.at("x").get<double>();
    c.s = u.at("s").get<double>();
    c.y = u.at("y").get<double>();
    c.t = u.at("t").get<double>();
    c.side = j.at("side").get<std::string>();
    c.threads = j.at("threads").get<int>();
    c.out = j.at("out").get<std::string>();
    c.format = j.at("format").get<std::string>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConstructionError(std::string("run config: ") + e.what());
  }
}

std::vector<double> eps_ladder(const RunConfig& c) {
  std::vector<double> out;
  const double span = std::log2(c.eps_min / c.eps_max);
  for (int m = 0; m < c.eps_levels; ++m)
    out.push_back(c.eps_max * std::exp2(span * m / (c.eps_levels - 1)));
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  return trial == 0 ? seed : derive_seed(seed, trial);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"landscape-lab: Brownian last passage percolation experiments", "landscape_lab"};
  app.require_subcommand(1);
  std::vector<RunConfig> configs;
  configs.reserve(subcommands().size());
  static const std::vector<std::pair<std::string, std::string>> help{
      {"field", "dump a seeded Brownian field (lines 0..n)"},
      {"passage", "Monte Carlo samples of M and W_n(u)"},
      {"geodesic", "extremal maximizer, n-geodesic, zigzag and their Hausdorff gap"},
      {"profile", "difference weight profile Z on the y range"},
      {"measure", "cell masses of the bivariate measure"},
      {"boxdim", "box-counting dimension of the profile's support"},
      {"disjoint-tail", "frequency of disjoint extremal pairs against eps"},
      {"check", "invariant suite; exit 0 iff every property holds"},
      {"tw", "mean and sd of W_n(0,0;0,1) and mean M(0,0;n,n)/(2n)"}};
  for (const auto& [name, text] : help) {
    configs.push_back(default_config(name));
    bind_options(*app.add_subcommand(name, text), configs.back());
  }
  std::string manifest_path;
  std::string replay_out;
  std::optional<int> replay_threads;
  auto* replay = app.add_subcommand("replay", "re-run the configuration recorded in a manifest");
  replay->add_option("manifest", manifest_path, "manifest or bare config JSON")
      ->required()
      ->check(CLI::ExistingFile);
  replay->add_option("--out", replay_out, "output file (default: stdout)");
  replay->add_option_function<int>("--threads", [&](int t) { replay_threads = t; },
                                   "worker threads (default: as recorded)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return 0;
    // Usage errors come with the help of the subcommand that was being parsed.
    const auto parsed = app.get_subcommands();
    err << (parsed.empty() ? app.help() : parsed.front()->help());
    return 2;
  }
  RunConfig replayed;
  const RunConfig* chosen = nullptr;
  for (std::size_t m = 0; m < help.size(); ++m) {
    if (app.got_subcommand(help[m].first)) chosen = &configs[m];
  }
  try {
    if (replay->parsed()) {
      std::ifstream in(manifest_path);
      const Json j = Json::parse(in, nullptr, false);
      if (j.is_discarded()) throw ConstructionError("replay: " + manifest_path + " is not JSON");
      replayed = config_from_json(j.contains("config") ? j.at("config") : j);
      replayed.out = replay_out;
      if (replay_threads) replayed.threads = *replay_threads;
      chosen = &replayed;
    }
    validate(*chosen);
  } catch (const Error& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return 2;
  }
  try {
    return execute(*chosen, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"landscape_lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace landscape
