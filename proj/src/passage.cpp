#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "landscape/error.hpp"
#include "landscape/lpp.hpp"

namespace landscape {

namespace {

std::size_t window_index(const GridSpec& spec, double z) {
  if (z < spec.z_min - 0.5 * spec.delta || z > spec.z_max + 0.5 * spec.delta)
    throw DomainError("coordinate " + std::to_string(z) + " lies outside the window [" +
                      std::to_string(spec.z_min) + ", " + std::to_string(spec.z_max) +
                      "]; enlarge the window");
  return spec.index_of(z);
}

void check_lines(const GridSpec& spec, int i, int j) {
  if (j < i) throw DomainError("passage: target line below start line");
  if (!spec.has_line(i) || !spec.has_line(j))
    throw DomainError("passage: lines [" + std::to_string(i) + ", " + std::to_string(j) +
                      "] not covered by the field");
}

struct Columns {
  std::size_t first;
  std::size_t last;
};

Columns resolve_columns(const GridSpec& spec, double x, std::optional<double> y_max) {
  const std::size_t first = window_index(spec, x);
  const std::size_t last = y_max ? window_index(spec, *y_max) : spec.point_count() - 1;
  if (last < first) throw DomainError("passage: end point lies left of the start point");
  return {first, last};
}

// First line: f(c) = B(c, i) - B(x, i).
void start_line(std::span<const double> b, std::span<double> f) {
  const double anchor = b[0];
  for (std::size_t c = 0; c < f.size(); ++c) f[c] = b[c] - anchor;
}

// f_k(c) = B(c, k) + max_{c' <= c} (f_{k-1}(c') - B(c', k)), in place.
void advance_line(std::span<const double> b, std::span<double> f) {
  double run = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < f.size(); ++c) {
    run = std::max(run, f[c] - b[c]);
    f[c] = b[c] + run;
  }
}

void advance_line_tracked(std::span<const double> b, std::span<double> f,
                          std::int32_t* left, std::int32_t* right) {
  double run = -std::numeric_limits<double>::infinity();
  std::int32_t arg_left = 0;
  std::int32_t arg_right = 0;
  for (std::size_t c = 0; c < f.size(); ++c) {
    const double v = f[c] - b[c];
    if (v > run) {
      run = v;
      arg_left = arg_right = static_cast<std::int32_t>(c);
    } else if (v == run) {
      arg_right = static_cast<std::int32_t>(c);
    }
    f[c] = b[c] + run;
    left[c] = arg_left;
    right[c] = arg_right;
  }
}

}  // namespace

double comparison_scale(double a, double b) {
  return std::max({1.0, std::abs(a), std::abs(b)});
}

Staircase::Staircase(int first_line, std::vector<double> breakpoints)
    : first_line_(first_line), breaks_(std::move(breakpoints)) {
  if (breaks_.size() < 2) throw ConstructionError("staircase: need at least two breakpoints");
  for (std::size_t m = 1; m < breaks_.size(); ++m) {
    if (!(breaks_[m - 1] <= breaks_[m]))
      throw ConstructionError("staircase: breakpoints must be non-decreasing");
  }
}

std::size_t Staircase::index(int k) const {
  if (!covers_line(k))
    throw LookupError("staircase: line " + std::to_string(k) + " outside [" +
                      std::to_string(first_line_) + ", " + std::to_string(last_line()) + "]");
  return static_cast<std::size_t>(k - first_line_);
}

std::size_t PassageProfile::column_of(double y) const {
  const std::size_t idx = spec.index_of(y);
  if (idx < first_index || idx > last_index)
    throw LookupError("profile: y = " + std::to_string(y) + " outside the tabulated range");
  return idx - first_index;
}

std::int32_t PassageProfile::backptr(Side side, int line, std::size_t column) const {
  if (line <= start.k || line > target_line)
    throw LookupError("profile: no back-pointer on line " + std::to_string(line));
  const std::size_t at = static_cast<std::size_t>(line - start.k - 1) * width() + column;
  return side == Side::left ? backptr_left.at(at) : backptr_right.at(at);
}

double staircase_weight(const BrownianField& field, const Staircase& stair) {
  const auto& spec = field.spec();
  double total = 0.0;
  for (int k = stair.first_line(); k <= stair.last_line(); ++k) {
    if (!spec.has_line(k)) throw LookupError("staircase line outside the field");
    const auto values = field.line(k);
    total += values[spec.index_of(stair.exit(k))] - values[spec.index_of(stair.entry(k))];
  }
  return total;
}

std::vector<double> passage_row(const BrownianField& field, double x, int i, int j,
                                std::optional<double> y_max) {
  const auto& spec = field.spec();
  check_lines(spec, i, j);
  const auto cols = resolve_columns(spec, x, y_max);
  const std::size_t width = cols.last - cols.first + 1;
  std::vector<double> f(width);
  start_line(field.line(i).subspan(cols.first, width), f);
  for (int k = i + 1; k <= j; ++k) advance_line(field.line(k).subspan(cols.first, width), f);
  return f;
}

double passage_time(const BrownianField& field, double x, int i, double y, int j) {
  if (y < x) throw DomainError("passage: y < x");
  return passage_row(field, x, i, j, y).back();
}

PassageProfile passage_profile(const BrownianField& field, double x, int i, int j,
                               std::optional<double> y_max) {
  const auto& spec = field.spec();
  check_lines(spec, i, j);
  const auto cols = resolve_columns(spec, x, y_max);

  PassageProfile profile;
  profile.spec = spec;
  profile.start = {spec.point(cols.first), i};
  profile.target_line = j;
  profile.first_index = cols.first;
  profile.last_index = cols.last;
  const std::size_t width = profile.width();
  const std::size_t tracked = static_cast<std::size_t>(j - i);
  profile.backptr_left.resize(tracked * width);
  profile.backptr_right.resize(tracked * width);

  std::vector<double> f(width);
  start_line(field.line(i).subspan(cols.first, width), f);
  for (int k = i + 1; k <= j; ++k) {
    const std::size_t row = static_cast<std::size_t>(k - i - 1) * width;
    advance_line_tracked(field.line(k).subspan(cols.first, width), f,
                         profile.backptr_left.data() + row, profile.backptr_right.data() + row);
  }
  profile.values = std::move(f);
  return profile;
}

Staircase extract_staircase(const PassageProfile& profile, double y, Side side) {
  const int i = profile.start.k;
  const int j = profile.target_line;
  std::vector<double> breaks(static_cast<std::size_t>(j - i + 2));
  std::size_t column = profile.column_of(y);
  breaks.back() = profile.y(column);
  for (int k = j; k > i; --k) {
    column = static_cast<std::size_t>(profile.backptr(side, k, column));
    breaks[static_cast<std::size_t>(k - i)] = profile.y(column);
  }
  breaks.front() = profile.start.z;
  return Staircase(i, std::move(breaks));
}

double sample_passage_time(const GridSpec& spec, std::uint64_t seed, double x, int i,
                           double y, int j) {
  spec.validate();
  check_lines(spec, i, j);
  if (y < x) throw DomainError("passage: y < x");
  const auto cols = resolve_columns(spec, x, y);
  const std::size_t width = cols.last - cols.first + 1;
  std::vector<double> line(spec.point_count());
  std::vector<double> f(width);
  generate_line(spec, seed, i, line);
  start_line(std::span<const double>(line).subspan(cols.first, width), f);
  for (int k = i + 1; k <= j; ++k) {
    generate_line(spec, seed, k, line);
    advance_line(std::span<const double>(line).subspan(cols.first, width), f);
  }
  return f.back();
}

}  // namespace landscape
