#pragma once

#include <optional>
#include <vector>

#include "landscape/lpp.hpp"

namespace landscape {

/// Common point of two staircases on line k. The overlap of their line-k
/// intervals is [z, z_end]; z (the leftmost common point) is the exchange point.
struct CrossingPoint {
  int line = 0;
  double z = 0.0;
  double z_end = 0.0;

  bool operator==(const CrossingPoint&) const = default;
};

/// Sub-staircase over lines [k1, k2], from (z_{k1}, k1) to (z_{k2+1}, k2).
Staircase restrict(const Staircase& stair, int k1, int k2);

/// Joins s1 and s2 where s1 ends at (z, k) and s2 starts either at (z, k)
/// (the line-k pieces merge) or at (z, k + 1).
Staircase concat(const Staircase& s1, const Staircase& s2);

/// Portion of the staircase from its start to the point (c.z, c.line).
Staircase head(const Staircase& stair, const CrossingPoint& c);
/// Portion of the staircase from (c.z, c.line) to its end.
Staircase tail(const Staircase& stair, const CrossingPoint& c);
/// Portion between (from.z, from.line) and (to.z, to.line).
Staircase segment(const Staircase& stair, const CrossingPoint& from, const CrossingPoint& to);

/// One entry per shared line on which the line intervals intersect.
std::vector<CrossingPoint> crossings(const Staircase& s1, const Staircase& s2);

enum class ExchangeVariant {
  full,  ///< s1 up to c1, then s2 to c2, then s1 to the end
  head,  ///< s1 up to c1, then s2 to c2
  tail,  ///< s2 from c1 to c2, then s1 to the end
};

/// Swaps in the piece of s2 between the crossings c1 and c2 (c1 on a lower line).
Staircase exchange(const Staircase& s1, const Staircase& s2, const CrossingPoint& c1,
                   const CrossingPoint& c2, ExchangeVariant variant = ExchangeVariant::full);

/// True iff on every shared line p1's interval lies weakly left of p2's,
/// comparing left ends and right ends separately.
bool ordered_leq(const Staircase& p1, const Staircase& p2);

/// Planar disjointness: no shared line on which the intervals meet.
bool disjoint(const Staircase& p1, const Staircase& p2);

/// Breakpoint-wise minimum and maximum of two staircases with equal line ranges.
Staircase pointwise_min(const Staircase& s1, const Staircase& s2);
Staircase pointwise_max(const Staircase& s1, const Staircase& s2);

/// Smallest line k from which the two staircases coincide up to their shared
/// terminal point; empty when they differ on the top line.
std::optional<int> coalescence_line(const Staircase& s1, const Staircase& s2);

}  // namespace landscape
