#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace landscape {

/// Uniform spatial grid shared by every line of a Brownian field.
///
/// Grid points are z_min + i * delta for i in [0, point_count()). Lines are the
/// integer range [line_lo, line_hi].
struct GridSpec {
  double z_min = 0.0;
  double z_max = 1.0;
  double delta = 0.01;
  int line_lo = 0;
  int line_hi = 0;

  /// Throws ConstructionError when the invariants fail.
  void validate() const;

  std::size_t point_count() const;
  int line_count() const { return line_hi - line_lo + 1; }
  bool has_line(int k) const { return k >= line_lo && k <= line_hi; }

  double point(std::size_t index) const {
    return z_min + static_cast<double>(index) * delta;
  }

  /// Index of the grid point equal to z (within 1e-9 of a step).
  /// Throws LookupError for off-grid or out-of-window coordinates.
  std::size_t index_of(double z) const;

  /// Index of the grid point nearest to z. Throws LookupError outside
  /// [z_min - delta/2, z_max + delta/2].
  std::size_t nearest_index(double z) const;

  /// Snap z onto the grid.
  double snap(double z) const { return point(nearest_index(z)); }

  bool operator==(const GridSpec&) const = default;
};

/// Generate line k of the field described by (spec, seed) into out.
///
/// The line is drawn from its own substream derive_seed(seed, k), so any
/// subset of lines can be produced independently and still match
/// BrownianField::generate bit for bit.
void generate_line(const GridSpec& spec, std::uint64_t seed, int k,
                   std::span<double> out);

/// Immutable discretized family of independent two-sided Brownian motions
/// B(., k), anchored at B(z_min, k) = 0.
class BrownianField {
 public:
  /// Draw a field. Lines are generated on up to `threads` workers; the result
  /// does not depend on the thread count.
  static BrownianField generate(const GridSpec& spec, std::uint64_t seed,
                                int threads = 1);

  /// Wrap explicit values, one row per line from line_lo to line_hi.
  static BrownianField from_values(const GridSpec& spec,
                                   const std::vector<std::vector<double>>& rows,
                                   std::uint64_t seed = 0);

  const GridSpec& spec() const { return spec_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t point_count() const { return points_; }

  /// Values of line k over every grid point.
  std::span<const double> line(int k) const;

  double value(int k, std::size_t index) const { return line(k)[index]; }

  /// B(z2, k) - B(z1, k) for grid points z1, z2.
  double increment(int k, double z1, double z2) const;

 private:
  BrownianField(GridSpec spec, std::uint64_t seed, std::vector<double> values);

  GridSpec spec_;
  std::uint64_t seed_ = 0;
  std::size_t points_ = 0;
  std::vector<double> values_;  // row-major, line_lo first
};

}  // namespace landscape
