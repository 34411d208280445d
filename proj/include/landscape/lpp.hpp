#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "landscape/environment.hpp"

namespace landscape {

/// Unscaled location: grid point z on line k.
struct Endpoint {
  double z = 0.0;
  int k = 0;

  bool operator==(const Endpoint&) const = default;
};

enum class Side { left, right };

/// Monotone breakpoint sequence z_i <= z_{i+1} <= ... <= z_{j+1}: the path sits
/// on line k over [z_k, z_{k+1}] and climbs to line k+1 at z_{k+1}.
class Staircase {
 public:
  /// breakpoints holds z_i .. z_{j+1}, so j = first_line + size - 2.
  Staircase(int first_line, std::vector<double> breakpoints);

  int first_line() const { return first_line_; }
  int last_line() const { return first_line_ + static_cast<int>(breaks_.size()) - 2; }
  int line_count() const { return static_cast<int>(breaks_.size()) - 1; }

  Endpoint start() const { return {breaks_.front(), first_line_}; }
  Endpoint end() const { return {breaks_.back(), last_line()}; }

  std::span<const double> breakpoints() const { return breaks_; }

  /// Left end z_k of the interval occupied on line k.
  double entry(int k) const { return breaks_[index(k)]; }
  /// Right end z_{k+1} of the interval occupied on line k.
  double exit(int k) const { return breaks_[index(k) + 1]; }

  bool covers_line(int k) const { return k >= first_line_ && k <= last_line(); }

  bool operator==(const Staircase&) const = default;

 private:
  std::size_t index(int k) const;

  int first_line_ = 0;
  std::vector<double> breaks_;
};

/// Tabulated passage times from a fixed start to every grid point of a target
/// line, together with extremal argmax back-pointers for each line.
struct PassageProfile {
  GridSpec spec;
  Endpoint start;
  int target_line = 0;
  std::size_t first_index = 0;  ///< grid index of start.z
  std::size_t last_index = 0;   ///< last tabulated grid index
  std::vector<double> values;   ///< M(start; point(first_index + c), target_line)
  /// For line k in (start.k, target_line], entry (k - start.k - 1) * width + c
  /// holds the smallest (resp. largest) column where the best path to column c
  /// on line k enters line k.
  std::vector<std::int32_t> backptr_left;
  std::vector<std::int32_t> backptr_right;

  std::size_t width() const { return last_index - first_index + 1; }
  double y(std::size_t column) const { return spec.point(first_index + column); }
  std::size_t column_of(double y) const;
  double value_at(double y) const { return values[column_of(y)]; }
  std::int32_t backptr(Side side, int line, std::size_t column) const;
};

/// Sum over lines of the increments collected by the staircase.
double staircase_weight(const BrownianField& field, const Staircase& stair);

/// M(x, i; y, j): the best staircase weight from (x, i) to (y, j).
double passage_time(const BrownianField& field, double x, int i, double y, int j);

/// M(x, i; y, j) for every grid y in [x, y_max] (default: window end), without
/// back-pointers. One O(lines x points) sweep.
std::vector<double> passage_row(const BrownianField& field, double x, int i, int j,
                                std::optional<double> y_max = std::nullopt);

/// passage_row plus back-pointers for maximizer extraction.
PassageProfile passage_profile(const BrownianField& field, double x, int i, int j,
                               std::optional<double> y_max = std::nullopt);

/// Backtrack the leftmost (smallest argmax at every line) or rightmost
/// maximizer from (y, target_line) to the profile's start.
Staircase extract_staircase(const PassageProfile& profile, double y, Side side);

/// passage_time on the field (spec, seed) without materializing it: lines are
/// drawn one at a time from the same substreams as BrownianField::generate.
double sample_passage_time(const GridSpec& spec, std::uint64_t seed, double x, int i,
                           double y, int j);

/// Relative comparison scale used across the library: max(1, |a|, |b|).
double comparison_scale(double a, double b = 0.0);

}  // namespace landscape
