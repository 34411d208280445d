#pragma once

#include <span>
#include <vector>

namespace landscape {

/// Point in scaled space-time: spatial coordinate z, time r.
struct PlanarPoint {
  double z = 0.0;
  double r = 0.0;

  bool operator==(const PlanarPoint&) const = default;
};

/// Polyline whose time coordinate never decreases along the vertex order.
class PlanarPath {
 public:
  explicit PlanarPath(std::vector<PlanarPoint> vertices);

  std::span<const PlanarPoint> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  std::size_t segment_count() const { return vertices_.size() - 1; }

 private:
  std::vector<PlanarPoint> vertices_;
};

/// Euclidean distance from p to the segment [a, b].
double point_segment_distance(PlanarPoint p, PlanarPoint a, PlanarPoint b);

/// sup over points of `from` of the distance to `to`.
double directed_hausdorff(const PlanarPath& from, const PlanarPath& to);

/// Hausdorff distance between the two polylines as planar point sets.
///
/// Each segment of one path is searched by branch and bound on the
/// 1-Lipschitz distance-to-polyline function, so the result is exact up to
/// an absolute error of 1e-12 times the paths' coordinate scale.
double hausdorff_distance(const PlanarPath& a, const PlanarPath& b);

}  // namespace landscape
