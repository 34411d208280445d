#include <algorithm>
#include <cmath>
#include <string>

#include "landscape/error.hpp"
#include "landscape/geometry.hpp"

namespace landscape {

namespace {

bool same_point(double a, double b) {
  return std::abs(a - b) <= 1e-9 * comparison_scale(a, b);
}

// Checks that c.z lies in the staircase's interval on line c.line.
void require_on(const Staircase& stair, const CrossingPoint& c) {
  if (!stair.covers_line(c.line))
    throw DomainError("crossing line " + std::to_string(c.line) + " not covered by staircase");
  if (c.z < stair.entry(c.line) || c.z > stair.exit(c.line))
    throw DomainError("crossing point z = " + std::to_string(c.z) +
                      " is not on the staircase at line " + std::to_string(c.line));
}

struct SharedLines {
  int lo;
  int hi;
  bool empty() const { return lo > hi; }
};

SharedLines shared_lines(const Staircase& a, const Staircase& b) {
  return {std::max(a.first_line(), b.first_line()), std::min(a.last_line(), b.last_line())};
}

template <class Pick>
Staircase combine(const Staircase& a, const Staircase& b, Pick pick) {
  if (a.first_line() != b.first_line() || a.last_line() != b.last_line())
    throw DomainError("breakpoint-wise combination needs equal line ranges");
  const auto pa = a.breakpoints();
  const auto pb = b.breakpoints();
  std::vector<double> out(pa.size());
  std::transform(pa.begin(), pa.end(), pb.begin(), out.begin(), pick);
  return Staircase(a.first_line(), std::move(out));
}

}  // namespace

Staircase restrict(const Staircase& stair, int k1, int k2) {
  if (k1 > k2 || !stair.covers_line(k1) || !stair.covers_line(k2))
    throw DomainError("restrict: lines [" + std::to_string(k1) + ", " + std::to_string(k2) +
                      "] not inside [" + std::to_string(stair.first_line()) + ", " +
                      std::to_string(stair.last_line()) + "]");
  const auto b = stair.breakpoints();
  const auto first = b.begin() + (k1 - stair.first_line());
  return Staircase(k1, std::vector<double>(first, first + (k2 - k1 + 2)));
}

Staircase concat(const Staircase& s1, const Staircase& s2) {
  const Endpoint e = s1.end();
  const Endpoint b = s2.start();
  if (!same_point(e.z, b.z) || (b.k != e.k && b.k != e.k + 1))
    throw DomainError("concat: first path ends at (" + std::to_string(e.z) + ", " +
                      std::to_string(e.k) + ") but second starts at (" + std::to_string(b.z) +
                      ", " + std::to_string(b.k) + ")");
  const auto p1 = s1.breakpoints();
  const auto p2 = s2.breakpoints();
  std::vector<double> out(p1.begin(), p1.end());
  if (b.k == e.k) out.pop_back();  // line-k pieces [z_k, z] and [z, w] merge
  out.insert(out.end(), p2.begin() + 1, p2.end());
  return Staircase(s1.first_line(), std::move(out));
}

Staircase head(const Staircase& stair, const CrossingPoint& c) {
  require_on(stair, c);
  const auto b = stair.breakpoints();
  std::vector<double> out(b.begin(), b.begin() + (c.line - stair.first_line() + 1));
  out.push_back(c.z);
  return Staircase(stair.first_line(), std::move(out));
}

Staircase tail(const Staircase& stair, const CrossingPoint& c) {
  require_on(stair, c);
  const auto b = stair.breakpoints();
  std::vector<double> out{c.z};
  out.insert(out.end(), b.begin() + (c.line - stair.first_line() + 1), b.end());
  return Staircase(c.line, std::move(out));
}

Staircase segment(const Staircase& stair, const CrossingPoint& from, const CrossingPoint& to) {
  require_on(stair, from);
  require_on(stair, to);
  if (to.line < from.line || (to.line == from.line && to.z < from.z))
    throw DomainError("segment: end point precedes start point");
  return head(tail(stair, from), to);
}

std::vector<CrossingPoint> crossings(const Staircase& s1, const Staircase& s2) {
  std::vector<CrossingPoint> out;
  const SharedLines shared = shared_lines(s1, s2);
  for (int k = shared.lo; k <= shared.hi; ++k) {
    const double lo = std::max(s1.entry(k), s2.entry(k));
    const double hi = std::min(s1.exit(k), s2.exit(k));
    if (lo <= hi) out.push_back({k, lo, hi});
  }
  return out;
}

Staircase exchange(const Staircase& s1, const Staircase& s2, const CrossingPoint& c1,
                   const CrossingPoint& c2, ExchangeVariant variant) {
  if (!(c1.line < c2.line))
    throw DomainError("exchange: first crossing must lie on a lower line than the second");
  require_on(s1, c1);
  require_on(s1, c2);
  require_on(s2, c1);
  require_on(s2, c2);
  const Staircase middle = segment(s2, c1, c2);
  switch (variant) {
    case ExchangeVariant::head:
      return concat(head(s1, c1), middle);
    case ExchangeVariant::tail:
      return concat(middle, tail(s1, c2));
    case ExchangeVariant::full:
      break;
  }
  return concat(concat(head(s1, c1), middle), tail(s1, c2));
}

bool ordered_leq(const Staircase& p1, const Staircase& p2) {
  const SharedLines shared = shared_lines(p1, p2);
  if (shared.empty()) throw DomainError("ordered_leq: paths share no line");
  for (int k = shared.lo; k <= shared.hi; ++k) {
    if (p1.entry(k) > p2.entry(k) || p1.exit(k) > p2.exit(k)) return false;
  }
  return true;
}

bool disjoint(const Staircase& p1, const Staircase& p2) {
  const SharedLines shared = shared_lines(p1, p2);
  for (int k = shared.lo; k <= shared.hi; ++k) {
    if (std::max(p1.entry(k), p2.entry(k)) <= std::min(p1.exit(k), p2.exit(k))) return false;
  }
  return true;
}

Staircase pointwise_min(const Staircase& s1, const Staircase& s2) {
  return combine(s1, s2, [](double a, double b) { return std::min(a, b); });
}

Staircase pointwise_max(const Staircase& s1, const Staircase& s2) {
  return combine(s1, s2, [](double a, double b) { return std::max(a, b); });
}

std::optional<int> coalescence_line(const Staircase& s1, const Staircase& s2) {
  if (s1.end() != s2.end())
    throw DomainError("coalescence_line: staircases end at different points");
  const SharedLines shared = shared_lines(s1, s2);
  std::optional<int> line;
  for (int k = shared.hi; k >= shared.lo; --k) {
    if (s1.entry(k) != s2.entry(k) || s1.exit(k) != s2.exit(k)) break;
    line = k;
  }
  return line;
}

}  // namespace landscape
