#include "l0bb/penalty.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace l0bb {

namespace {

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

constexpr double kDoublingCap = 1152921504606846976.0;  // 2^60

}  // namespace

Penalty Penalty::bigm(double M) {
  require_positive(M, "Bigm: M");
  Penalty h;
  h.kind_ = PenaltyKind::Bigm;
  h.M_ = M;
  return h;
}

Penalty Penalty::bigm_l1norm(double M, double alpha) {
  require_positive(M, "BigmL1norm: M");
  require_positive(alpha, "BigmL1norm: alpha");
  Penalty h;
  h.kind_ = PenaltyKind::BigmL1norm;
  h.M_ = M;
  h.alpha_ = alpha;
  return h;
}

Penalty Penalty::bigm_l2norm(double M, double beta) {
  require_positive(M, "BigmL2norm: M");
  require_positive(beta, "BigmL2norm: beta");
  Penalty h;
  h.kind_ = PenaltyKind::BigmL2norm;
  h.M_ = M;
  h.beta_ = beta;
  return h;
}

Penalty Penalty::bigm_positive_l1norm(double M, double alpha) {
  require_positive(M, "BigmPositiveL1norm: M");
  require_positive(alpha, "BigmPositiveL1norm: alpha");
  Penalty h;
  h.kind_ = PenaltyKind::BigmPositiveL1norm;
  h.M_ = M;
  h.alpha_ = alpha;
  return h;
}

Penalty Penalty::bigm_positive_l2norm(double M, double beta) {
  require_positive(M, "BigmPositiveL2norm: M");
  require_positive(beta, "BigmPositiveL2norm: beta");
  Penalty h;
  h.kind_ = PenaltyKind::BigmPositiveL2norm;
  h.M_ = M;
  h.beta_ = beta;
  return h;
}

Penalty Penalty::bounds(double x_lb, double x_ub) {
  if (!std::isfinite(x_lb) || !std::isfinite(x_ub)) {
    throw std::invalid_argument("Bounds: x_lb and x_ub must be finite");
  }
  if (x_lb > 0.0) throw std::invalid_argument("Bounds: x_lb must be nonpositive");
  if (!(x_ub > 0.0)) {
    // dom h must contain a positive point for the relaxation machinery.
    throw std::invalid_argument("Bounds: x_ub must be positive");
  }
  Penalty h;
  h.kind_ = PenaltyKind::Bounds;
  h.x_lb_ = x_lb;
  h.x_ub_ = x_ub;
  return h;
}

Penalty Penalty::l1l2norm(double alpha, double beta) {
  require_positive(alpha, "L1L2norm: alpha");
  require_positive(beta, "L1L2norm: beta");
  Penalty h;
  h.kind_ = PenaltyKind::L1L2norm;
  h.alpha_ = alpha;
  h.beta_ = beta;
  return h;
}

Penalty Penalty::l1norm(double alpha) {
  require_positive(alpha, "L1norm: alpha");
  Penalty h;
  h.kind_ = PenaltyKind::L1norm;
  h.alpha_ = alpha;
  return h;
}

Penalty Penalty::l2norm(double beta) {
  require_positive(beta, "L2norm: beta");
  Penalty h;
  h.kind_ = PenaltyKind::L2norm;
  h.beta_ = beta;
  return h;
}

Penalty Penalty::positive_l1norm(double alpha) {
  require_positive(alpha, "PositiveL1norm: alpha");
  Penalty h;
  h.kind_ = PenaltyKind::PositiveL1norm;
  h.alpha_ = alpha;
  return h;
}

Penalty Penalty::positive_l2norm(double beta) {
  require_positive(beta, "PositiveL2norm: beta");
  Penalty h;
  h.kind_ = PenaltyKind::PositiveL2norm;
  h.beta_ = beta;
  return h;
}

Penalty Penalty::custom(CustomPenalty spec) {
  if (!spec.value || !spec.conjugate || !spec.prox || !spec.subdiff ||
      !spec.conjugate_subdiff) {
    throw std::invalid_argument(
        "custom penalty: value, conjugate, prox, subdiff and "
        "conjugate_subdiff are required");
  }
  Penalty h;
  h.kind_ = PenaltyKind::Custom;
  h.custom_ = std::move(spec);
  return h;
}

bool Penalty::symmetric() const {
  switch (kind_) {
    case PenaltyKind::Bigm:
    case PenaltyKind::BigmL1norm:
    case PenaltyKind::BigmL2norm:
    case PenaltyKind::L1L2norm:
    case PenaltyKind::L1norm:
    case PenaltyKind::L2norm:
      return true;
    case PenaltyKind::Bounds:
      return x_ub_ == -x_lb_;
    case PenaltyKind::BigmPositiveL1norm:
    case PenaltyKind::BigmPositiveL2norm:
    case PenaltyKind::PositiveL1norm:
    case PenaltyKind::PositiveL2norm:
      return false;
    case PenaltyKind::Custom:
      return custom_->symmetric;
  }
  return false;
}

double Penalty::value(int i, double x) const {
  switch (kind_) {
    case PenaltyKind::Bigm:
      return std::abs(x) <= M_ ? 0.0 : kInf;
    case PenaltyKind::BigmL1norm:
      return std::abs(x) <= M_ ? alpha_ * std::abs(x) : kInf;
    case PenaltyKind::BigmL2norm:
      return std::abs(x) <= M_ ? beta_ * x * x : kInf;
    case PenaltyKind::BigmPositiveL1norm:
      return (x >= 0.0 && x <= M_) ? alpha_ * x : kInf;
    case PenaltyKind::BigmPositiveL2norm:
      return (x >= 0.0 && x <= M_) ? beta_ * x * x : kInf;
    case PenaltyKind::Bounds:
      return (x >= x_lb_ && x <= x_ub_) ? 0.0 : kInf;
    case PenaltyKind::L1L2norm:
      return alpha_ * std::abs(x) + beta_ * x * x;
    case PenaltyKind::L1norm:
      return alpha_ * std::abs(x);
    case PenaltyKind::L2norm:
      return beta_ * x * x;
    case PenaltyKind::PositiveL1norm:
      return x >= 0.0 ? alpha_ * x : kInf;
    case PenaltyKind::PositiveL2norm:
      return x >= 0.0 ? beta_ * x * x : kInf;
    case PenaltyKind::Custom:
      return custom_->value(i, x);
  }
  return kInf;
}

double Penalty::conjugate(int i, double v) const {
  switch (kind_) {
    case PenaltyKind::Bigm:
      return M_ * std::abs(v);
    case PenaltyKind::BigmL1norm:
      return M_ * std::max(std::abs(v) - alpha_, 0.0);
    case PenaltyKind::BigmL2norm: {
      const double a = std::abs(v);
      if (a <= 2.0 * beta_ * M_) return v * v / (4.0 * beta_);
      return M_ * a - beta_ * M_ * M_;
    }
    case PenaltyKind::BigmPositiveL1norm:
      return M_ * std::max(v - alpha_, 0.0);
    case PenaltyKind::BigmPositiveL2norm: {
      if (v <= 0.0) return 0.0;
      if (v <= 2.0 * beta_ * M_) return v * v / (4.0 * beta_);
      return M_ * v - beta_ * M_ * M_;
    }
    case PenaltyKind::Bounds:
      return v >= 0.0 ? v * x_ub_ : v * x_lb_;
    case PenaltyKind::L1L2norm: {
      const double t = std::max(std::abs(v) - alpha_, 0.0);
      return t * t / (4.0 * beta_);
    }
    case PenaltyKind::L1norm:
      return std::abs(v) <= alpha_ ? 0.0 : kInf;
    case PenaltyKind::L2norm:
      return v * v / (4.0 * beta_);
    case PenaltyKind::PositiveL1norm:
      return v <= alpha_ ? 0.0 : kInf;
    case PenaltyKind::PositiveL2norm: {
      const double t = std::max(v, 0.0);
      return t * t / (4.0 * beta_);
    }
    case PenaltyKind::Custom:
      return custom_->conjugate(i, v);
  }
  return kInf;
}

double Penalty::prox(int i, double v, double eta) const {
  switch (kind_) {
    case PenaltyKind::Bigm:
      return std::clamp(v, -M_, M_);
    case PenaltyKind::BigmL1norm:
      return std::clamp(soft_threshold(v, eta * alpha_), -M_, M_);
    case PenaltyKind::BigmL2norm:
      return std::clamp(v / (1.0 + 2.0 * eta * beta_), -M_, M_);
    case PenaltyKind::BigmPositiveL1norm:
      return std::clamp(v - eta * alpha_, 0.0, M_);
    case PenaltyKind::BigmPositiveL2norm:
      return std::clamp(v / (1.0 + 2.0 * eta * beta_), 0.0, M_);
    case PenaltyKind::Bounds:
      return std::clamp(v, x_lb_, x_ub_);
    case PenaltyKind::L1L2norm:
      return soft_threshold(v, eta * alpha_) / (1.0 + 2.0 * eta * beta_);
    case PenaltyKind::L1norm:
      return soft_threshold(v, eta * alpha_);
    case PenaltyKind::L2norm:
      return v / (1.0 + 2.0 * eta * beta_);
    case PenaltyKind::PositiveL1norm:
      return std::max(v - eta * alpha_, 0.0);
    case PenaltyKind::PositiveL2norm:
      return std::max(v, 0.0) / (1.0 + 2.0 * eta * beta_);
    case PenaltyKind::Custom:
      return custom_->prox(i, v, eta);
  }
  return 0.0;
}

Interval Penalty::subdiff(int i, double x) const {
  switch (kind_) {
    case PenaltyKind::Bigm:
      if (std::abs(x) > M_) return Interval::empty();
      if (x == M_) return {0.0, kInf};
      if (x == -M_) return {-kInf, 0.0};
      return Interval::point(0.0);
    case PenaltyKind::BigmL1norm:
      if (std::abs(x) > M_) return Interval::empty();
      if (x == M_) return {alpha_, kInf};
      if (x == -M_) return {-kInf, -alpha_};
      if (x == 0.0) return {-alpha_, alpha_};
      return Interval::point(x > 0.0 ? alpha_ : -alpha_);
    case PenaltyKind::BigmL2norm:
      if (std::abs(x) > M_) return Interval::empty();
      if (x == M_) return {2.0 * beta_ * M_, kInf};
      if (x == -M_) return {-kInf, -2.0 * beta_ * M_};
      return Interval::point(2.0 * beta_ * x);
    case PenaltyKind::BigmPositiveL1norm:
      if (x < 0.0 || x > M_) return Interval::empty();
      if (x == 0.0) return {-kInf, alpha_};
      if (x == M_) return {alpha_, kInf};
      return Interval::point(alpha_);
    case PenaltyKind::BigmPositiveL2norm:
      if (x < 0.0 || x > M_) return Interval::empty();
      if (x == 0.0) return {-kInf, 0.0};
      if (x == M_) return {2.0 * beta_ * M_, kInf};
      return Interval::point(2.0 * beta_ * x);
    case PenaltyKind::Bounds:
      if (x < x_lb_ || x > x_ub_) return Interval::empty();
      if (x == x_lb_) return {-kInf, 0.0};
      if (x == x_ub_) return {0.0, kInf};
      return Interval::point(0.0);
    case PenaltyKind::L1L2norm:
      if (x == 0.0) return {-alpha_, alpha_};
      return Interval::point((x > 0.0 ? alpha_ : -alpha_) + 2.0 * beta_ * x);
    case PenaltyKind::L1norm:
      if (x == 0.0) return {-alpha_, alpha_};
      return Interval::point(x > 0.0 ? alpha_ : -alpha_);
    case PenaltyKind::L2norm:
      return Interval::point(2.0 * beta_ * x);
    case PenaltyKind::PositiveL1norm:
      if (x < 0.0) return Interval::empty();
      if (x == 0.0) return {-kInf, alpha_};
      return Interval::point(alpha_);
    case PenaltyKind::PositiveL2norm:
      if (x < 0.0) return Interval::empty();
      if (x == 0.0) return {-kInf, 0.0};
      return Interval::point(2.0 * beta_ * x);
    case PenaltyKind::Custom:
      return custom_->subdiff(i, x);
  }
  return Interval::empty();
}

Interval Penalty::conjugate_subdiff(int i, double v) const {
  switch (kind_) {
    case PenaltyKind::Bigm:
      if (v > 0.0) return Interval::point(M_);
      if (v < 0.0) return Interval::point(-M_);
      return {-M_, M_};
    case PenaltyKind::BigmL1norm:
      if (v > alpha_) return Interval::point(M_);
      if (v == alpha_) return {0.0, M_};
      if (v < -alpha_) return Interval::point(-M_);
      if (v == -alpha_) return {-M_, 0.0};
      return Interval::point(0.0);
    case PenaltyKind::BigmL2norm: {
      const double kink = 2.0 * beta_ * M_;
      if (v > kink) return Interval::point(M_);
      if (v < -kink) return Interval::point(-M_);
      return Interval::point(v / (2.0 * beta_));
    }
    case PenaltyKind::BigmPositiveL1norm:
      if (v > alpha_) return Interval::point(M_);
      if (v == alpha_) return {0.0, M_};
      return Interval::point(0.0);
    case PenaltyKind::BigmPositiveL2norm: {
      if (v <= 0.0) return Interval::point(0.0);
      const double kink = 2.0 * beta_ * M_;
      if (v > kink) return Interval::point(M_);
      return Interval::point(v / (2.0 * beta_));
    }
    case PenaltyKind::Bounds:
      if (v > 0.0) return Interval::point(x_ub_);
      if (v < 0.0) return Interval::point(x_lb_);
      return {x_lb_, x_ub_};
    case PenaltyKind::L1L2norm:
      if (v > alpha_) return Interval::point((v - alpha_) / (2.0 * beta_));
      if (v < -alpha_) return Interval::point((v + alpha_) / (2.0 * beta_));
      return Interval::point(0.0);
    case PenaltyKind::L1norm:
      if (std::abs(v) > alpha_) return Interval::empty();
      if (v == alpha_) return {0.0, kInf};
      if (v == -alpha_) return {-kInf, 0.0};
      return Interval::point(0.0);
    case PenaltyKind::L2norm:
      return Interval::point(v / (2.0 * beta_));
    case PenaltyKind::PositiveL1norm:
      if (v > alpha_) return Interval::empty();
      if (v == alpha_) return {0.0, kInf};
      return Interval::point(0.0);
    case PenaltyKind::PositiveL2norm:
      if (v <= 0.0) return Interval::point(0.0);
      return Interval::point(v / (2.0 * beta_));
    case PenaltyKind::Custom:
      return custom_->conjugate_subdiff(i, v);
  }
  return Interval::empty();
}

std::pair<double, double> Penalty::param_slope(int i, double lmbd) const {
  switch (kind_) {
    case PenaltyKind::Bigm: {
      const double t = lmbd / M_;
      return {-t, t};
    }
    case PenaltyKind::BigmL1norm: {
      const double t = alpha_ + lmbd / M_;
      return {-t, t};
    }
    case PenaltyKind::BigmL2norm: {
      const double t = lmbd <= beta_ * M_ * M_ ? 2.0 * std::sqrt(beta_ * lmbd)
                                               : (lmbd + beta_ * M_ * M_) / M_;
      return {-t, t};
    }
    case PenaltyKind::BigmPositiveL1norm:
      return {-kInf, alpha_ + lmbd / M_};
    case PenaltyKind::BigmPositiveL2norm: {
      const double t = lmbd <= beta_ * M_ * M_ ? 2.0 * std::sqrt(beta_ * lmbd)
                                               : (lmbd + beta_ * M_ * M_) / M_;
      return {-kInf, t};
    }
    case PenaltyKind::Bounds:
      return {x_lb_ < 0.0 ? lmbd / x_lb_ : -kInf, lmbd / x_ub_};
    case PenaltyKind::L1L2norm: {
      const double t = alpha_ + 2.0 * std::sqrt(beta_ * lmbd);
      return {-t, t};
    }
    case PenaltyKind::L1norm:
      return {-alpha_, alpha_};
    case PenaltyKind::L2norm: {
      const double t = 2.0 * std::sqrt(beta_ * lmbd);
      return {-t, t};
    }
    case PenaltyKind::PositiveL1norm:
      return {-kInf, alpha_};
    case PenaltyKind::PositiveL2norm:
      return {-kInf, 2.0 * std::sqrt(beta_ * lmbd)};
    case PenaltyKind::Custom: {
      const PenaltyParams p = params(i, lmbd);
      return {p.tau_neg, p.tau_pos};
    }
  }
  return {-kInf, kInf};
}

std::pair<double, double> Penalty::param_limit(int i, double lmbd) const {
  switch (kind_) {
    case PenaltyKind::Bigm:
    case PenaltyKind::BigmL1norm:
      return {-M_, M_};
    case PenaltyKind::BigmL2norm: {
      const double m = std::min(std::sqrt(lmbd / beta_), M_);
      return {-m, m};
    }
    case PenaltyKind::BigmPositiveL1norm:
      return {0.0, M_};
    case PenaltyKind::BigmPositiveL2norm:
      return {0.0, std::min(std::sqrt(lmbd / beta_), M_)};
    case PenaltyKind::Bounds:
      return {x_lb_ < 0.0 ? x_lb_ : 0.0, x_ub_};
    case PenaltyKind::L1L2norm: {
      const double m = std::sqrt(lmbd / beta_);
      return {-m, m};
    }
    case PenaltyKind::L1norm:
      return {-kInf, kInf};
    case PenaltyKind::L2norm: {
      const double m = std::sqrt(lmbd / beta_);
      return {-m, m};
    }
    case PenaltyKind::PositiveL1norm:
      return {0.0, kInf};
    case PenaltyKind::PositiveL2norm:
      return {0.0, std::sqrt(lmbd / beta_)};
    case PenaltyKind::Custom: {
      const PenaltyParams p = params(i, lmbd);
      return {p.mu_neg, p.mu_pos};
    }
  }
  return {-kInf, kInf};
}

std::pair<double, double> Penalty::param_bndry(int i, double lmbd) const {
  switch (kind_) {
    case PenaltyKind::Bigm:
    case PenaltyKind::BigmL1norm:
      return {-kInf, kInf};
    case PenaltyKind::BigmL2norm: {
      const double m = std::sqrt(lmbd / beta_);
      if (m < M_) {
        const double k = 2.0 * beta_ * m;
        return {-k, k};
      }
      return {-kInf, kInf};
    }
    case PenaltyKind::BigmPositiveL1norm:
      return {-kInf, kInf};
    case PenaltyKind::BigmPositiveL2norm: {
      const double m = std::sqrt(lmbd / beta_);
      return {-kInf, m < M_ ? 2.0 * beta_ * m : kInf};
    }
    case PenaltyKind::Bounds:
      return {-kInf, kInf};
    case PenaltyKind::L1L2norm: {
      const double k = alpha_ + 2.0 * std::sqrt(beta_ * lmbd);
      return {-k, k};
    }
    case PenaltyKind::L1norm:
      return {-kInf, kInf};
    case PenaltyKind::L2norm: {
      const double k = 2.0 * std::sqrt(beta_ * lmbd);
      return {-k, k};
    }
    case PenaltyKind::PositiveL1norm:
      return {-kInf, kInf};
    case PenaltyKind::PositiveL2norm:
      return {-kInf, 2.0 * std::sqrt(beta_ * lmbd)};
    case PenaltyKind::Custom: {
      const PenaltyParams p = params(i, lmbd);
      return {p.kappa_neg, p.kappa_pos};
    }
  }
  return {-kInf, kInf};
}

PenaltyParams Penalty::params(int i, double lmbd) const {
  if (kind_ != PenaltyKind::Custom) {
    PenaltyParams p;
    std::tie(p.tau_neg, p.tau_pos) = param_slope(i, lmbd);
    std::tie(p.mu_neg, p.mu_pos) = param_limit(i, lmbd);
    std::tie(p.kappa_neg, p.kappa_pos) = param_bndry(i, lmbd);
    return p;
  }
  const CustomPenalty& c = *custom_;
  const bool closed_forms =
      c.symmetric ? static_cast<bool>(c.param_slope_pos)
                  : (c.param_slope_pos && c.param_slope_neg);
  if (!closed_forms) return numeric_params(i, lmbd);
  PenaltyParams p;
  p.tau_pos = c.param_slope_pos(i, lmbd);
  p.mu_pos = c.param_limit_pos ? c.param_limit_pos(i, lmbd)
                               : numeric_params(i, lmbd).mu_pos;
  p.kappa_pos = c.param_bndry_pos ? c.param_bndry_pos(i, lmbd)
                                  : numeric_params(i, lmbd).kappa_pos;
  if (c.symmetric) {
    p.tau_neg = -p.tau_pos;
    p.mu_neg = -p.mu_pos;
    p.kappa_neg = -p.kappa_pos;
  } else {
    p.tau_neg = c.param_slope_neg(i, lmbd);
    p.mu_neg = c.param_limit_neg ? c.param_limit_neg(i, lmbd)
                                 : numeric_params(i, lmbd).mu_neg;
    p.kappa_neg = c.param_bndry_neg ? c.param_bndry_neg(i, lmbd)
                                    : numeric_params(i, lmbd).kappa_neg;
  }
  return p;
}

std::pair<double, double> Penalty::slope_bracket_pos(int i, double lmbd,
                                                     double tol) const {
  double lo = 0.0;
  double hi = 1.0;
  while (conjugate(i, hi) <= lmbd) {
    lo = hi;
    hi *= 2.0;
    if (hi > kDoublingCap) {
      throw std::runtime_error(
          "inconsistent penalty: sublevel set of h* unbounded on R+");
    }
  }
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (conjugate(i, mid) <= lmbd) lo = mid;
    else hi = mid;
  }
  return {lo, hi};
}

std::pair<double, double> Penalty::slope_bracket_neg(int i, double lmbd,
                                                     double tol) const {
  double lo = 0.0;   // feasible end (h* <= lmbd)
  double hi = -1.0;  // infeasible end once found
  while (conjugate(i, hi) <= lmbd) {
    lo = hi;
    hi *= 2.0;
    if (hi < -kDoublingCap) return {-kInf, -kInf};
  }
  for (int it = 0; it < 200 && lo - hi > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (conjugate(i, mid) <= lmbd) lo = mid;
    else hi = mid;
  }
  return {lo, hi};
}

double Penalty::approximate_slope(int i, double lmbd, double tol) const {
  return slope_bracket_pos(i, lmbd, tol).first;
}

double Penalty::approximate_slope_neg(int i, double lmbd, double tol) const {
  return slope_bracket_neg(i, lmbd, tol).first;
}

PenaltyParams Penalty::numeric_params(int i, double lmbd, double tol) const {
  PenaltyParams p;

  const auto [tp_lo, tp_hi] = slope_bracket_pos(i, lmbd, tol);
  p.tau_pos = tp_lo;
  // mu from dh* queried on the infeasible side of the bracket; an empty
  // subdifferential there means h* jumps to +inf right after tau, in which
  // case h has asymptotic slope tau and the envelope never rejoins h + lmbd.
  const Interval cp_hi = conjugate_subdiff(i, tp_hi);
  const Interval cp_lo = conjugate_subdiff(i, tp_lo);
  if (cp_hi.is_empty()) {
    p.mu_pos = kInf;
  } else {
    p.mu_pos = cp_hi.hi;
    if (!cp_lo.is_empty()) p.mu_pos = std::max(p.mu_pos, cp_lo.hi);
  }
  if (p.mu_pos == kInf) {
    p.kappa_pos = kInf;
  } else {
    const Interval sd = subdiff(i, p.mu_pos);
    p.kappa_pos = sd.is_empty() ? kInf : sd.hi;
  }

  const auto [tn_lo, tn_hi] = slope_bracket_neg(i, lmbd, tol);
  p.tau_neg = tn_lo;
  if (p.tau_neg == -kInf) {
    // No negative part in dom h: the envelope is +inf on (-inf, 0).
    p.mu_neg = 0.0;
    p.kappa_neg = -kInf;
    return p;
  }
  const Interval cn_hi = conjugate_subdiff(i, tn_hi);
  const Interval cn_lo = conjugate_subdiff(i, tn_lo);
  if (cn_hi.is_empty()) {
    p.mu_neg = -kInf;
  } else {
    p.mu_neg = cn_hi.lo;
    if (!cn_lo.is_empty()) p.mu_neg = std::min(p.mu_neg, cn_lo.lo);
  }
  if (p.mu_neg == -kInf) {
    p.kappa_neg = -kInf;
  } else {
    const Interval sd = subdiff(i, p.mu_neg);
    p.kappa_neg = sd.is_empty() ? -kInf : sd.lo;
  }
  return p;
}

std::string Penalty::name() const {
  switch (kind_) {
    case PenaltyKind::Bigm: return "Bigm";
    case PenaltyKind::BigmL1norm: return "BigmL1norm";
    case PenaltyKind::BigmL2norm: return "BigmL2norm";
    case PenaltyKind::BigmPositiveL1norm: return "BigmPositiveL1norm";
    case PenaltyKind::BigmPositiveL2norm: return "BigmPositiveL2norm";
    case PenaltyKind::Bounds: return "Bounds";
    case PenaltyKind::L1L2norm: return "L1L2norm";
    case PenaltyKind::L1norm: return "L1norm";
    case PenaltyKind::L2norm: return "L2norm";
    case PenaltyKind::PositiveL1norm: return "PositiveL1norm";
    case PenaltyKind::PositiveL2norm: return "PositiveL2norm";
    case PenaltyKind::Custom: return "custom";
  }
  return "unknown";
}

}  // namespace l0bb
