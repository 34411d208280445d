#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "landscape/error.hpp"
#include "landscape/planar_path.hpp"

namespace landscape {

PlanarPath::PlanarPath(std::vector<PlanarPoint> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw ConstructionError("planar path: no vertices");
  for (std::size_t m = 0; m < vertices_.size(); ++m) {
    if (!std::isfinite(vertices_[m].z) || !std::isfinite(vertices_[m].r))
      throw ConstructionError("planar path: non-finite vertex");
    if (m > 0 && vertices_[m].r < vertices_[m - 1].r)
      throw ConstructionError("planar path: time coordinate decreases");
  }
}

double point_segment_distance(PlanarPoint p, PlanarPoint a, PlanarPoint b) {
  const double dz = b.z - a.z;
  const double dr = b.r - a.r;
  const double len2 = dz * dz + dr * dr;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.z - a.z) * dz + (p.r - a.r) * dr) / len2, 0.0, 1.0);
  return std::hypot(p.z - (a.z + t * dz), p.r - (a.r + t * dr));
}

namespace {

// Nearest-segment queries against a time-monotone polyline. Segment m spans
// times [r_m, r_{m+1}], and both ends are sorted, so the segments that can lie
// within distance d of a point at time r form one contiguous block.
class SegmentIndex {
 public:
  struct Hit {
    double distance;
    std::size_t segment;
  };

  explicit SegmentIndex(const PlanarPath& path) : v_(path.vertices()) {}

  Hit nearest(PlanarPoint p) const {
    if (v_.size() == 1) return {segment(0, p), 0};
    const std::size_t segments = v_.size() - 1;
    // Seed the bound with the segment at p's time (or the nearest end).
    auto it = std::lower_bound(v_.begin() + 1, v_.end(), p.r,
                               [](const PlanarPoint& q, double r) { return q.r < r; });
    const std::size_t seed = std::min<std::size_t>(
        static_cast<std::size_t>(it - v_.begin()) - 1, segments - 1);
    Hit best{segment(seed, p), seed};
    const auto offer = [&](std::size_t m) {
      const double d = segment(m, p);
      if (d < best.distance) best = {d, m};
    };
    // Expand both ways until the time gap alone exceeds the bound.
    for (std::size_t m = seed + 1; m < segments && v_[m].r - p.r <= best.distance; ++m) offer(m);
    for (std::size_t m = seed; m-- > 0;) {
      if (p.r - v_[m + 1].r > best.distance) break;
      offer(m);
    }
    return best;
  }

  double segment(std::size_t m, PlanarPoint p) const {
    if (v_.size() == 1) return std::hypot(p.z - v_[0].z, p.r - v_[0].r);
    return point_segment_distance(p, v_[m], v_[m + 1]);
  }

 private:
  std::span<const PlanarPoint> v_;
};

double coordinate_scale(const PlanarPath& a, const PlanarPath& b) {
  double s = 1.0;
  for (const auto* path : {&a, &b})
    for (const auto& q : path->vertices()) s = std::max({s, std::abs(q.z), std::abs(q.r)});
  return s;
}

// Max over the segment [a, b] of the distance f to `to`, given that the
// running answer is already `floor`. Two upper bounds prune a piece: f is
// 1-Lipschitz in arc length, and f is at most the distance to any single
// segment of `to`, which is convex along [a, b] and so peaks at an end.
double segment_sup(PlanarPoint a, PlanarPoint b, const SegmentIndex& to, double floor,
                   double tol) {
  using Hit = SegmentIndex::Hit;
  const double length = std::hypot(b.z - a.z, b.r - a.r);
  const auto at = [&](double t) {
    return PlanarPoint{a.z + t * (b.z - a.z), a.r + t * (b.r - a.r)};
  };
  struct Piece {
    double t0, t1;
    Hit h0, h1;
  };
  const auto bound = [&](const Piece& piece) {
    const PlanarPoint p0 = at(piece.t0);
    const PlanarPoint p1 = at(piece.t1);
    const double lipschitz =
        0.5 * (piece.h0.distance + piece.h1.distance + (piece.t1 - piece.t0) * length);
    const double via0 = std::max(piece.h0.distance, to.segment(piece.h0.segment, p1));
    const double via1 = std::max(piece.h1.distance, to.segment(piece.h1.segment, p0));
    return std::min({lipschitz, via0, via1});
  };
  const Hit ha = to.nearest(a);
  const Hit hb = to.nearest(b);
  double best = std::max({floor, ha.distance, hb.distance});
  std::vector<Piece> stack{{0.0, 1.0, ha, hb}};
  while (!stack.empty()) {
    const Piece piece = stack.back();
    stack.pop_back();
    if (bound(piece) <= best + tol) continue;
    const double tm = 0.5 * (piece.t0 + piece.t1);
    const Hit hm = to.nearest(at(tm));
    best = std::max(best, hm.distance);
    stack.push_back({piece.t0, tm, piece.h0, hm});
    stack.push_back({tm, piece.t1, hm, piece.h1});
  }
  return best;
}

double directed(const PlanarPath& from, const PlanarPath& to, double tol) {
  const SegmentIndex index(to);
  const auto v = from.vertices();
  double best = index.nearest(v[0]).distance;
  for (std::size_t m = 0; m + 1 < v.size(); ++m)
    best = segment_sup(v[m], v[m + 1], index, best, tol);
  return best;
}

}  // namespace

double directed_hausdorff(const PlanarPath& from, const PlanarPath& to) {
  return directed(from, to, 1e-12 * coordinate_scale(from, to));
}

double hausdorff_distance(const PlanarPath& a, const PlanarPath& b) {
  const double tol = 1e-12 * coordinate_scale(a, b);
  return std::max(directed(a, b, tol), directed(b, a, tol));
}

}  // namespace landscape
