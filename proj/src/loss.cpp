#include "l0bb/loss.hpp"

#include <cmath>
#include <stdexcept>

#include "l0bb/interval.hpp"

namespace l0bb {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

// log(cosh(s)) without overflow.
double log_cosh(double s) {
  const double a = std::abs(s);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

// t*log(t), extended by continuity with 0 at t = 0.
double xlogx(double t) {
  if (t <= 0.0) return 0.0;
  return t * std::log(t);
}

void require_binary_targets(const Eigen::VectorXd& y, const char* kind) {
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    if (y[j] != 1.0 && y[j] != -1.0) {
      throw std::invalid_argument(std::string(kind) +
                                  " targets must be -1 or +1");
    }
  }
}

}  // namespace

Loss Loss::leastsquares(Eigen::VectorXd y) {
  Loss f;
  f.kind_ = LossKind::Leastsquares;
  f.y_ = std::move(y);
  return f;
}

Loss Loss::logistic(Eigen::VectorXd y) {
  require_binary_targets(y, "logistic");
  Loss f;
  f.kind_ = LossKind::Logistic;
  f.y_ = std::move(y);
  return f;
}

Loss Loss::squaredhinge(Eigen::VectorXd y) {
  require_binary_targets(y, "squaredhinge");
  Loss f;
  f.kind_ = LossKind::Squaredhinge;
  f.y_ = std::move(y);
  return f;
}

Loss Loss::logcosh(Eigen::VectorXd y) {
  Loss f;
  f.kind_ = LossKind::Logcosh;
  f.y_ = std::move(y);
  return f;
}

Loss Loss::kullback_leibler(Eigen::VectorXd y, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("kullbackleibler: eps must be positive");
  if ((y.array() < 0.0).any()) {
    throw std::invalid_argument("kullbackleibler: targets must be nonnegative");
  }
  Loss f;
  f.kind_ = LossKind::KullbackLeibler;
  f.y_ = std::move(y);
  f.eps_ = eps;
  return f;
}

Loss Loss::custom(CustomLoss spec) {
  if (spec.target_size < 1) throw std::invalid_argument("custom loss: target_size must be >= 1");
  if (!spec.value || !spec.conjugate || !spec.gradient) {
    throw std::invalid_argument("custom loss: value, conjugate and gradient are required");
  }
  Loss f;
  f.kind_ = LossKind::Custom;
  f.custom_ = std::move(spec);
  return f;
}

int Loss::target_size() const {
  if (kind_ == LossKind::Custom) return custom_->target_size;
  return static_cast<int>(y_.size());
}

double Loss::value(const Eigen::VectorXd& w) const {
  const Eigen::Index m = w.size();
  double total = 0.0;
  switch (kind_) {
    case LossKind::Leastsquares:
      return 0.5 * (w - y_).squaredNorm();
    case LossKind::Logistic:
      for (Eigen::Index j = 0; j < m; ++j) total += softplus(-w[j] * y_[j]);
      return total;
    case LossKind::Squaredhinge:
      for (Eigen::Index j = 0; j < m; ++j) {
        const double t = std::max(1.0 - w[j] * y_[j], 0.0);
        total += t * t;
      }
      return total;
    case LossKind::Logcosh:
      for (Eigen::Index j = 0; j < m; ++j) total += log_cosh(w[j] - y_[j]);
      return total;
    case LossKind::KullbackLeibler:
      for (Eigen::Index j = 0; j < m; ++j) {
        const double t = w[j] + eps_;
        if (t <= 0.0) return kInf;
        if (y_[j] > 0.0) total += y_[j] * std::log(y_[j] / t) + t - y_[j];
        else total += t;
      }
      return total;
    case LossKind::Custom:
      return custom_->value(w);
  }
  return total;
}

double Loss::conjugate(const Eigen::VectorXd& u) const {
  const Eigen::Index m = u.size();
  double total = 0.0;
  switch (kind_) {
    case LossKind::Leastsquares:
      return 0.5 * u.squaredNorm() + u.dot(y_);
    case LossKind::Logistic:
      // Per coordinate, with t = u_j y_j: (1+t)log(1+t) + (-t)log(-t) on
      // t in [-1, 0], +inf outside.
      for (Eigen::Index j = 0; j < m; ++j) {
        const double t = u[j] * y_[j];
        if (t < -1.0 || t > 0.0) return kInf;
        total += xlogx(1.0 + t) + xlogx(-t);
      }
      return total;
    case LossKind::Squaredhinge:
      // Per coordinate, with t = u_j y_j: t + t^2/4 on t <= 0, +inf outside.
      for (Eigen::Index j = 0; j < m; ++j) {
        const double t = u[j] * y_[j];
        if (t > 0.0) return kInf;
        total += t + 0.25 * t * t;
      }
      return total;
    case LossKind::Logcosh:
      // Per coordinate: u y + ((1+u)log(1+u) + (1-u)log(1-u))/2 on |u| <= 1.
      for (Eigen::Index j = 0; j < m; ++j) {
        if (std::abs(u[j]) > 1.0) return kInf;
        total += u[j] * y_[j] + 0.5 * (xlogx(1.0 + u[j]) + xlogx(1.0 - u[j]));
      }
      return total;
    case LossKind::KullbackLeibler:
      // Per coordinate: -y log(1-u) - eps*u on u < 1 (u <= 1 when y = 0).
      for (Eigen::Index j = 0; j < m; ++j) {
        if (y_[j] > 0.0) {
          if (u[j] >= 1.0) return kInf;
          total += -y_[j] * std::log1p(-u[j]) - eps_ * u[j];
        } else {
          if (u[j] > 1.0) return kInf;
          total += -eps_ * u[j];
        }
      }
      return total;
    case LossKind::Custom:
      return custom_->conjugate(u);
  }
  return total;
}

void Loss::gradient_into(const Eigen::VectorXd& w, Eigen::VectorXd& out) const {
  const Eigen::Index m = w.size();
  out.resize(m);
  switch (kind_) {
    case LossKind::Leastsquares:
      out = w - y_;
      return;
    case LossKind::Logistic:
      for (Eigen::Index j = 0; j < m; ++j) {
        out[j] = -y_[j] / (1.0 + std::exp(w[j] * y_[j]));
      }
      return;
    case LossKind::Squaredhinge:
      for (Eigen::Index j = 0; j < m; ++j) {
        out[j] = -2.0 * y_[j] * std::max(1.0 - w[j] * y_[j], 0.0);
      }
      return;
    case LossKind::Logcosh:
      for (Eigen::Index j = 0; j < m; ++j) out[j] = std::tanh(w[j] - y_[j]);
      return;
    case LossKind::KullbackLeibler:
      for (Eigen::Index j = 0; j < m; ++j) {
        const double t = w[j] + eps_;
        if (t <= 0.0) throw std::domain_error("kullbackleibler: gradient outside dom f");
        out[j] = 1.0 - y_[j] / t;
      }
      return;
    case LossKind::Custom:
      out = custom_->gradient(w);
      return;
  }
}

Eigen::VectorXd Loss::gradient(const Eigen::VectorXd& w) const {
  Eigen::VectorXd g;
  gradient_into(w, g);
  return g;
}

std::optional<double> Loss::gradient_lipschitz() const {
  switch (kind_) {
    case LossKind::Leastsquares: return 1.0;
    case LossKind::Logistic: return 0.25;
    case LossKind::Squaredhinge: return 2.0;
    case LossKind::Logcosh: return 1.0;
    case LossKind::KullbackLeibler: return std::nullopt;
    case LossKind::Custom: return custom_->gradient_lipschitz;
  }
  return std::nullopt;
}

double Loss::infimum() const {
  if (kind_ == LossKind::Custom) return custom_->infimum.value_or(0.0);
  return 0.0;
}

bool Loss::infimum_declared() const {
  if (kind_ == LossKind::Custom) return custom_->infimum.has_value();
  return true;
}

std::string Loss::name() const {
  switch (kind_) {
    case LossKind::Leastsquares: return "leastsquares";
    case LossKind::Logistic: return "logistic";
    case LossKind::Squaredhinge: return "squaredhinge";
    case LossKind::Logcosh: return "logcosh";
    case LossKind::KullbackLeibler: return "kullbackleibler";
    case LossKind::Custom: return "custom";
  }
  return "unknown";
}

}  // namespace l0bb
