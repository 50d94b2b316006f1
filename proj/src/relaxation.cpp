#include "l0bb/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace l0bb {

Relaxation::Relaxation(Penalty penalty, double lmbd, int n)
    : penalty_(std::move(penalty)), lmbd_(lmbd) {
  params_.reserve(n);
  for (int i = 0; i < n; ++i) params_.push_back(penalty_.params(i, lmbd));
}

double Relaxation::g_value(int i, double x) const {
  if (x == 0.0) return 0.0;
  return penalty_.value(i, x) + lmbd_;
}

double Relaxation::g_conjugate(int i, double v) const {
  const double c = penalty_.conjugate(i, v);
  return std::max(c - lmbd_, 0.0);
}

double Relaxation::g_biconjugate(int i, double x) const {
  if (x == 0.0) return 0.0;
  const PenaltyParams& p = params_[i];
  if (x > 0.0) {
    if (x <= p.mu_pos) return p.tau_pos * x;
  } else {
    if (x >= p.mu_neg) return p.tau_neg * x;
  }
  return penalty_.value(i, x) + lmbd_;
}

Interval Relaxation::g_biconjugate_subdiff(int i, double x) const {
  const PenaltyParams& p = params_[i];
  if (x == 0.0) return {p.tau_neg, p.tau_pos};
  if (g_biconjugate(i, x) == kInf) return Interval::empty();
  if (x > 0.0) {
    if (x < p.mu_pos) return Interval::point(p.tau_pos);
    if (x == p.mu_pos) return {p.tau_pos, p.kappa_pos};
  } else {
    if (x > p.mu_neg) return Interval::point(p.tau_neg);
    if (x == p.mu_neg) return {p.kappa_neg, p.tau_neg};
  }
  return penalty_.subdiff(i, x);
}

double Relaxation::g_biconjugate_prox(int i, double v, double eta) const {
  const PenaltyParams& p = params_[i];

  // Prox of the linear part tau_pos*x_+ - tau_neg*x_-, clamped to the region
  // where the envelope is linear. A tau of -inf on the negative side makes
  // the corresponding branch unreachable, which is the correct behavior.
  double c1 = 0.0;
  if (v > eta * p.tau_pos) c1 = v - eta * p.tau_pos;
  else if (v < eta * p.tau_neg) c1 = v - eta * p.tau_neg;
  c1 = std::clamp(c1, p.mu_neg, p.mu_pos);
  double best = c1;
  double best_obj = 0.5 * (c1 - v) * (c1 - v) + eta * g_biconjugate(i, c1);

  const double c2 = penalty_.prox(i, v, eta);
  if (c2 <= p.mu_neg || c2 >= p.mu_pos) {
    const double obj =
        0.5 * (c2 - v) * (c2 - v) + eta * (penalty_.value(i, c2) + lmbd_);
    if (obj < best_obj ||
        (obj == best_obj && std::abs(c2) < std::abs(best))) {
      best = c2;
      best_obj = obj;
    }
  }
  return best;
}

double Relaxation::term_value(CoordStatus s, int i, double x) const {
  switch (s) {
    case CoordStatus::FixedZero:
      return x == 0.0 ? 0.0 : kInf;
    case CoordStatus::FixedNonzero:
      return penalty_.value(i, x) + lmbd_;
    case CoordStatus::Free:
      return g_biconjugate(i, x);
  }
  return kInf;
}

double Relaxation::term_conjugate(CoordStatus s, int i, double v) const {
  switch (s) {
    case CoordStatus::FixedZero:
      return 0.0;
    case CoordStatus::FixedNonzero:
      return penalty_.conjugate(i, v) - lmbd_;
    case CoordStatus::Free:
      return g_conjugate(i, v);
  }
  return kInf;
}

double Relaxation::term_prox(CoordStatus s, int i, double v, double eta) const {
  switch (s) {
    case CoordStatus::FixedZero:
      return 0.0;
    case CoordStatus::FixedNonzero:
      return penalty_.prox(i, v, eta);
    case CoordStatus::Free:
      return g_biconjugate_prox(i, v, eta);
  }
  return 0.0;
}

Interval Relaxation::term_subdiff(CoordStatus s, int i, double x) const {
  switch (s) {
    case CoordStatus::FixedZero:
      return x == 0.0 ? Interval::all() : Interval::empty();
    case CoordStatus::FixedNonzero:
      return penalty_.subdiff(i, x);
    case CoordStatus::Free:
      return g_biconjugate_subdiff(i, x);
  }
  return Interval::empty();
}

}  // namespace l0bb
