#include "doctest.h"

#include <random>

#include "landscape/error.hpp"
#include "landscape/planar_path.hpp"
#include "oracles.hpp"

using namespace landscape;

namespace {

PlanarPath random_path(std::mt19937_64& gen, int vertices) {
  std::uniform_real_distribution<double> z(-1.0, 1.0), dr(0.0, 0.3);
  std::vector<PlanarPoint> v;
  double r = 0.0;
  for (int m = 0; m < vertices; ++m) {
    v.push_back({z(gen), r});
    r += dr(gen);
  }
  return PlanarPath(v);
}

std::vector<oracle::P> raw(const PlanarPath& p) {
  std::vector<oracle::P> out;
  for (const auto& v : p.vertices()) out.push_back({v.z, v.r});
  return out;
}

}  // namespace

TEST_CASE("exact distances for simple configurations") {
  const PlanarPath a({{0, 0}, {0, 1}});
  const PlanarPath b({{1, 0}, {1, 1}});
  CHECK(hausdorff_distance(a, b) == doctest::Approx(1.0));
  const PlanarPath c({{0, 0}, {0, 2}});
  CHECK(directed_hausdorff(a, c) == doctest::Approx(0.0));
  CHECK(directed_hausdorff(c, a) == doctest::Approx(1.0));
  CHECK(hausdorff_distance(a, a) == 0.0);
  CHECK(point_segment_distance({3, 4}, {0, 0}, {0, 0}) == doctest::Approx(5.0));
  CHECK(point_segment_distance({1, 0.5}, {0, 0}, {0, 1}) == doctest::Approx(1.0));
  const PlanarPath point({{0.5, 0.5}});
  CHECK(hausdorff_distance(point, a) == doctest::Approx(std::hypot(0.5, 0.5)));
}

TEST_CASE("branch and bound brackets dense sampling") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_path(gen, 2 + static_cast<int>(gen() % 8));
    const auto b = random_path(gen, 2 + static_cast<int>(gen() % 8));
    const double exact = hausdorff_distance(a, b);
    const double sampled = oracle::dense_hausdorff(raw(a), raw(b), 2000);
    // Sampling never overshoots; its deficit is at most half the sample spacing.
    REQUIRE(exact >= sampled - 1e-12);
    REQUIRE(exact <= sampled + 1.0 / 1000);
    REQUIRE(exact == doctest::Approx(hausdorff_distance(b, a)));
  }
}

TEST_CASE("parallel and overlapping segments terminate") {
  const PlanarPath a({{0, 0}, {0, 1}, {0, 2}});
  const PlanarPath b({{0.25, 0}, {0.25, 2}});
  CHECK(hausdorff_distance(a, b) == doctest::Approx(0.25));
  CHECK(hausdorff_distance(a, PlanarPath({{0, 0}, {0, 2}})) == doctest::Approx(0.0));
}

TEST_CASE("paths must move forward in time") {
  CHECK_THROWS_AS(PlanarPath({{0, 1}, {0, 0}}), ConstructionError);
  CHECK_THROWS_AS(PlanarPath(std::vector<PlanarPoint>{}), ConstructionError);
}
