#pragma once

#include <limits>

namespace l0bb {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed extended-real interval [lo, hi]. Subdifferentials of scalar convex
/// functions are always intervals of this form, possibly empty or
/// half-infinite.
struct Interval {
  double lo = kInf;
  double hi = -kInf;

  static Interval empty() { return {kInf, -kInf}; }
  static Interval point(double v) { return {v, v}; }
  static Interval all() { return {-kInf, kInf}; }

  bool is_empty() const { return lo > hi; }

  bool contains(double v) const { return !is_empty() && lo <= v && v <= hi; }

  /// Membership with absolute slack, for numerical optimality checks.
  bool contains(double v, double tol) const {
    return !is_empty() && lo - tol <= v && v <= hi + tol;
  }

  /// True when the ball [c - r, c + r] lies strictly inside the interval.
  /// Strict comparisons keep the test meaningful at r = 0, where it reduces
  /// to strict interior membership of c.
  bool strictly_covers_ball(double c, double r) const {
    return !is_empty() && lo < c - r && c + r < hi;
  }

  bool operator==(const Interval&) const = default;
};

}  // namespace l0bb
