#pragma once

#include <vector>

#include "l0bb/interval.hpp"
#include "l0bb/penalty.hpp"

namespace l0bb {

/// Status of a coordinate inside a branch-and-bound region.
enum class CoordStatus {
  FixedZero,     // in nu0: forced to zero
  FixedNonzero,  // in nu1: pays h(x) + lmbd
  Free,          // undecided: pays the envelope of h(x) + lmbd*[x != 0]
};

/// Per-coordinate Fenchel machinery around g(x) = h(x) + lmbd*[x != 0]:
/// conjugate, biconjugate (convex envelope), their subdifferentials and
/// prox, and the per-status relaxed terms used by both bounding problems.
/// Parameters are computed once per (penalty, lmbd) pair at construction
/// and are immutable afterwards, so lookups are safe from any thread.
class Relaxation {
 public:
  Relaxation(Penalty penalty, double lmbd, int n);

  const Penalty& penalty() const { return penalty_; }
  double lmbd() const { return lmbd_; }
  const PenaltyParams& params(int i) const { return params_[i]; }

  /// g(x) = h(x) + lmbd for x != 0, and 0 at x = 0.
  double g_value(int i, double x) const;

  /// g*(v) = (h*(v) - lmbd)_+.
  double g_conjugate(int i, double v) const;

  /// Convex envelope of g, piecewise from (tau, mu): linear tau*x between
  /// the breakpoints, h(x) + lmbd beyond them.
  double g_biconjugate(int i, double x) const;

  /// dg**(x); empty when g**(x) = +inf.
  Interval g_biconjugate_subdiff(int i, double x) const;

  /// argmin_x (x - v)^2/2 + eta g**(x), by candidate enumeration: the prox
  /// of the linear part clamped to [mu_neg, mu_pos], against the prox of h
  /// when it falls outside the breakpoints. Ties go to the smaller |x|.
  double g_biconjugate_prox(int i, double v, double eta) const;

  /// Relaxed term for one coordinate, by status: indicator of {0} /
  /// h(x) + lmbd / g**(x).
  double term_value(CoordStatus s, int i, double x) const;

  /// Conjugate of the relaxed term: 0 / h*(v) - lmbd / g*(v).
  double term_conjugate(CoordStatus s, int i, double v) const;

  /// Prox of eta times the relaxed term.
  double term_prox(CoordStatus s, int i, double v, double eta) const;

  /// Subdifferential of the relaxed term.
  Interval term_subdiff(CoordStatus s, int i, double x) const;

 private:
  Penalty penalty_;
  double lmbd_;
  std::vector<PenaltyParams> params_;
};

}  // namespace l0bb
