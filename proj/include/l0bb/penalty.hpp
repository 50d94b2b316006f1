#pragma once

#include <functional>
#include <optional>
#include <string>

#include "l0bb/interval.hpp"

namespace l0bb {

enum class PenaltyKind {
  Bigm,
  BigmL1norm,
  BigmL2norm,
  BigmPositiveL1norm,
  BigmPositiveL2norm,
  Bounds,
  L1L2norm,
  L1norm,
  L2norm,
  PositiveL1norm,
  PositiveL2norm,
  Custom,
};

/// Scalars driving the relaxation closed forms for one coordinate and one
/// value of the l0 weight:
///   tau:   extreme slopes of the envelope of h + lmbd*[x != 0] at the origin,
///   mu:    breakpoints beyond which the envelope coincides with h + lmbd,
///   kappa: extreme subgradients of h at the breakpoints.
/// For symmetric penalties the negative entries mirror the positive ones.
/// When the penalty domain has no negative part, tau_neg = -inf and by
/// convention mu_neg = 0: the envelope is +inf on (-inf, 0).
struct PenaltyParams {
  double tau_neg = -kInf;
  double tau_pos = kInf;
  double mu_neg = -kInf;
  double mu_pos = kInf;
  double kappa_neg = -kInf;
  double kappa_pos = kInf;
};

/// Extension contract for user-defined penalties: value, conjugate, prox and
/// the two subdifferential maps, plus optional closed forms for the
/// parameters (signed variants for non-symmetric penalties). All callbacks
/// take the coordinate index first, so a custom penalty may use a different
/// expression per coordinate.
struct CustomPenalty {
  std::function<double(int, double)> value;
  std::function<double(int, double)> conjugate;
  std::function<double(int, double, double)> prox;  // (i, v, eta)
  std::function<Interval(int, double)> subdiff;
  std::function<Interval(int, double)> conjugate_subdiff;
  bool symmetric = false;
  std::function<double(int, double)> param_slope_pos, param_slope_neg;
  std::function<double(int, double)> param_limit_pos, param_limit_neg;
  std::function<double(int, double)> param_bndry_pos, param_bndry_neg;
};

/// Coordinate-separable penalty term h. Native kinds follow the catalogue of
/// indicator / l1 / squared combinations; all satisfy h(0) = 0, h >= 0,
/// closedness, convexity and coercivity.
class Penalty {
 public:
  static Penalty bigm(double M);
  static Penalty bigm_l1norm(double M, double alpha);
  static Penalty bigm_l2norm(double M, double beta);
  static Penalty bigm_positive_l1norm(double M, double alpha);
  static Penalty bigm_positive_l2norm(double M, double beta);
  static Penalty bounds(double x_lb, double x_ub);
  static Penalty l1l2norm(double alpha, double beta);
  static Penalty l1norm(double alpha);
  static Penalty l2norm(double beta);
  static Penalty positive_l1norm(double alpha);
  static Penalty positive_l2norm(double beta);
  static Penalty custom(CustomPenalty spec);

  PenaltyKind kind() const { return kind_; }
  bool symmetric() const;
  double bigm_value() const { return M_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double x_lb() const { return x_lb_; }
  double x_ub() const { return x_ub_; }

  /// h(x); +inf outside dom h.
  double value(int i, double x) const;

  /// h*(v) = sup_x v x - h(x).
  double conjugate(int i, double v) const;

  /// argmin_x (x - v)^2 / 2 + eta h(x), unique by strong convexity.
  double prox(int i, double v, double eta) const;

  /// The interval dh(x); empty when x is outside dom h.
  Interval subdiff(int i, double x) const;

  /// The interval dh*(v); empty when v is outside dom dh*.
  Interval conjugate_subdiff(int i, double v) const;

  /// (tau_neg, tau_pos): extreme points of the lmbd-sublevel set of h*.
  std::pair<double, double> param_slope(int i, double lmbd) const;
  /// (mu_neg, mu_pos); requires the slopes, recomputed internally.
  std::pair<double, double> param_limit(int i, double lmbd) const;
  /// (kappa_neg, kappa_pos); requires the limits, recomputed internally.
  std::pair<double, double> param_bndry(int i, double lmbd) const;

  /// All six parameters, from analytic formulas for native kinds, from the
  /// registered closed forms for custom kinds that provide them, and from
  /// the numerical default otherwise.
  PenaltyParams params(int i, double lmbd) const;

  /// Numerical default: bisection for tau, subdifferential evaluations for
  /// mu and kappa. Works for any penalty kind; used directly by custom
  /// penalties without closed forms and as a cross-check for native ones.
  PenaltyParams numeric_params(int i, double lmbd, double tol = 1e-12) const;

  /// Bisection on v -> h*(v) over R+; |result - tau_pos| <= tol. Throws
  /// std::runtime_error when the sublevel set is unbounded (inconsistent,
  /// non-coercive penalty).
  double approximate_slope(int i, double lmbd, double tol) const;
  /// Mirrored bisection over R-; returns -inf when h* <= lmbd on all of R-
  /// (penalty domain has no negative part).
  double approximate_slope_neg(int i, double lmbd, double tol) const;

  std::string name() const;

 private:
  Penalty() = default;

  // Bisection brackets around tau; feasible end first.
  std::pair<double, double> slope_bracket_pos(int i, double lmbd, double tol) const;
  std::pair<double, double> slope_bracket_neg(int i, double lmbd, double tol) const;

  PenaltyKind kind_ = PenaltyKind::Bigm;
  double M_ = 0.0;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double x_lb_ = 0.0;
  double x_ub_ = 0.0;
  std::optional<CustomPenalty> custom_;
};

}  // namespace l0bb
