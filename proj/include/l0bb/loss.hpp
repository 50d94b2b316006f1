#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>

namespace l0bb {

enum class LossKind {
  Leastsquares,
  Logistic,
  Squaredhinge,
  Logcosh,
  KullbackLeibler,
  Custom,
};

/// Extension contract for user-defined losses. A custom loss registers its
/// value, conjugate, gradient and an optional gradient Lipschitz constant.
struct CustomLoss {
  int target_size = 0;
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<double(const Eigen::VectorXd&)> conjugate;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  std::optional<double> gradient_lipschitz;
  /// inf_w f(w), used by the lambda_max fallback. Defaults to 0 and the
  /// fallback emits a warning when the value was not declared.
  std::optional<double> infimum;
};

/// Convex data-fidelity term f, composed with the design matrix in the full
/// objective. Every native kind is closed, convex, differentiable,
/// lower-bounded by zero and finite on a neighborhood of the origin.
class Loss {
 public:
  static Loss leastsquares(Eigen::VectorXd y);
  /// y must have entries in {-1, +1}.
  static Loss logistic(Eigen::VectorXd y);
  /// y must have entries in {-1, +1}.
  static Loss squaredhinge(Eigen::VectorXd y);
  static Loss logcosh(Eigen::VectorXd y);
  /// y must be elementwise nonnegative and eps positive.
  static Loss kullback_leibler(Eigen::VectorXd y, double eps);
  static Loss custom(CustomLoss spec);

  LossKind kind() const { return kind_; }
  int target_size() const;
  const Eigen::VectorXd& targets() const { return y_; }
  double eps() const { return eps_; }

  /// f(w); +inf outside dom f.
  double value(const Eigen::VectorXd& w) const;

  /// f*(u) = sup_w <u, w> - f(w); +inf outside dom f*.
  double conjugate(const Eigen::VectorXd& u) const;

  /// Gradient of f at an interior point of dom f. Throws std::domain_error
  /// on domain violations (Kullback-Leibler with w_j + eps <= 0).
  Eigen::VectorXd gradient(const Eigen::VectorXd& w) const;
  void gradient_into(const Eigen::VectorXd& w, Eigen::VectorXd& out) const;

  /// Lipschitz constant of the gradient, when one exists globally.
  std::optional<double> gradient_lipschitz() const;

  /// inf_w f(w); zero for every native kind.
  double infimum() const;
  bool infimum_declared() const;

  std::string name() const;

 private:
  Loss() = default;

  LossKind kind_ = LossKind::Leastsquares;
  Eigen::VectorXd y_;
  double eps_ = 0.0;
  std::optional<CustomLoss> custom_;
};

}  // namespace l0bb
