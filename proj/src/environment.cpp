#include "landscape/environment.hpp"

#include <boost/random/normal_distribution.hpp>
#include <cmath>
#include <string>

#include "landscape/error.hpp"
#include "landscape/parallel.hpp"
#include "landscape/rng.hpp"

namespace landscape {

namespace {

constexpr double kGridTolerance = 1e-9;

}  // namespace

void GridSpec::validate() const {
  if (!std::isfinite(z_min) || !std::isfinite(z_max) || !std::isfinite(delta))
    throw ConstructionError("grid: non-finite coordinate");
  if (!(delta > 0.0)) throw ConstructionError("grid: delta must be positive");
  // z_min == z_max is the one-point grid.
  if (!(z_min <= z_max)) throw ConstructionError("grid: empty window (z_min > z_max)");
  if (line_lo > line_hi) throw ConstructionError("grid: line_lo > line_hi");
  const double steps = (z_max - z_min) / delta;
  if (std::abs(steps - std::round(steps)) > kGridTolerance * std::max(1.0, steps))
    throw ConstructionError("grid: (z_max - z_min) / delta is not an integer; "
                            "non-uniform refinement is not supported");
}

std::size_t GridSpec::point_count() const {
  return static_cast<std::size_t>(std::llround((z_max - z_min) / delta)) + 1;
}

std::size_t GridSpec::index_of(double z) const {
  const double pos = (z - z_min) / delta;
  const double rounded = std::round(pos);
  if (std::abs(pos - rounded) > kGridTolerance * std::max(1.0, std::abs(pos)))
    throw LookupError("coordinate " + std::to_string(z) + " is not a grid point");
  if (rounded < 0.0 || rounded > static_cast<double>(point_count() - 1))
    throw LookupError("coordinate " + std::to_string(z) + " is outside the window");
  return static_cast<std::size_t>(rounded);
}

std::size_t GridSpec::nearest_index(double z) const {
  const double pos = std::round((z - z_min) / delta);
  if (!std::isfinite(pos) || pos < 0.0 || pos > static_cast<double>(point_count() - 1))
    throw LookupError("coordinate " + std::to_string(z) + " is outside the window [" +
                      std::to_string(z_min) + ", " + std::to_string(z_max) + "]");
  return static_cast<std::size_t>(pos);
}

void generate_line(const GridSpec& spec, std::uint64_t seed, int k,
                   std::span<double> out) {
  if (out.size() != spec.point_count())
    throw ConstructionError("generate_line: buffer size does not match grid");
  Xoshiro256 engine(derive_seed(seed, static_cast<std::uint64_t>(static_cast<std::int64_t>(k))));
  boost::random::normal_distribution<double> step(0.0, std::sqrt(spec.delta));
  double b = 0.0;
  out[0] = 0.0;
  for (std::size_t i = 1; i < out.size(); ++i) {
    b += step(engine);
    out[i] = b;
  }
}

BrownianField::BrownianField(GridSpec spec, std::uint64_t seed, std::vector<double> values)
    : spec_(spec), seed_(seed), points_(spec.point_count()), values_(std::move(values)) {}

BrownianField BrownianField::generate(const GridSpec& spec, std::uint64_t seed, int threads) {
  spec.validate();
  const std::size_t points = spec.point_count();
  std::vector<double> values(points * static_cast<std::size_t>(spec.line_count()));
  parallel_for(static_cast<std::size_t>(spec.line_count()), threads, [&](std::size_t row) {
    generate_line(spec, seed, spec.line_lo + static_cast<int>(row),
                  std::span<double>(values.data() + row * points, points));
  });
  return BrownianField(spec, seed, std::move(values));
}

BrownianField BrownianField::from_values(const GridSpec& spec,
                                         const std::vector<std::vector<double>>& rows,
                                         std::uint64_t seed) {
  spec.validate();
  const std::size_t points = spec.point_count();
  if (rows.size() != static_cast<std::size_t>(spec.line_count()))
    throw ConstructionError("from_values: expected " + std::to_string(spec.line_count()) +
                            " lines, got " + std::to_string(rows.size()));
  std::vector<double> values;
  values.reserve(points * rows.size());
  for (const auto& row : rows) {
    if (row.size() != points)
      throw ConstructionError("from_values: line length " + std::to_string(row.size()) +
                              " does not match point count " + std::to_string(points));
    if (row.front() != 0.0)
      throw ConstructionError("from_values: every line must be anchored at 0");
    for (double v : row)
      if (!std::isfinite(v)) throw ConstructionError("from_values: non-finite value");
    values.insert(values.end(), row.begin(), row.end());
  }
  return BrownianField(spec, seed, std::move(values));
}

std::span<const double> BrownianField::line(int k) const {
  if (!spec_.has_line(k))
    throw LookupError("line " + std::to_string(k) + " outside [" +
                      std::to_string(spec_.line_lo) + ", " + std::to_string(spec_.line_hi) + "]");
  const auto row = static_cast<std::size_t>(k - spec_.line_lo);
  return {values_.data() + row * points_, points_};
}

double BrownianField::increment(int k, double z1, double z2) const {
  const auto values = line(k);
  return values[spec_.index_of(z2)] - values[spec_.index_of(z1)];
}

}  // namespace landscape
