#include "l0bb/path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "l0bb/bnb.hpp"

namespace l0bb {

void PathSpec::validate() const {
  if (explicit_grid) {
    if (explicit_grid->empty()) throw std::invalid_argument("explicit grid must be nonempty");
    for (double v : *explicit_grid) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("explicit grid values must be positive");
      }
    }
    return;
  }
  if (!(lmbd_ratio_max > 0.0) || lmbd_ratio_max > 1.0) {
    throw std::invalid_argument("lmbd_ratio_max must be in (0, 1]");
  }
  if (!(lmbd_ratio_min > 0.0) || !(lmbd_ratio_min < lmbd_ratio_max)) {
    throw std::invalid_argument("lmbd_ratio_min must be in (0, lmbd_ratio_max)");
  }
  if (lmbd_num < 1) throw std::invalid_argument("lmbd_num must be >= 1");
}

namespace {

// Zero is optimal for the root relaxation iff -a_i' grad f(0) lies in
// [tau_neg(lmbd), tau_pos(lmbd)] for every i. Both slopes widen with lmbd.
bool zero_certificate(const Penalty& penalty, const Eigen::VectorXd& c,
                      double lmbd) {
  for (int i = 0; i < c.size(); ++i) {
    const auto [tn, tp] = penalty.param_slope(i, lmbd);
    if (c[i] > tp || c[i] < tn) return false;
  }
  return true;
}

}  // namespace

double lambda_max(const Eigen::MatrixXd& A, const Loss& loss,
                  const Penalty& penalty) {
  const Eigen::VectorXd g0 = loss.gradient(Eigen::VectorXd::Zero(A.rows()));
  const Eigen::VectorXd c = -(A.transpose() * g0);
  if ((c.array() == 0.0).all()) {
    return std::numeric_limits<double>::min();
  }
  double fallback = loss.value(Eigen::VectorXd::Zero(A.rows())) - loss.infimum();
  if (!(fallback > 0.0)) fallback = std::numeric_limits<double>::min();
  const double cap = 1e12 * fallback;
  if (!zero_certificate(penalty, c, cap)) return fallback;

  // Bracket [t, 2t] around the certificate threshold, then bisect.
  double t = std::min(std::max(fallback, 1e-300), cap);
  double lo, hi;
  if (zero_certificate(penalty, c, t)) {
    while (t > 1e-300 && zero_certificate(penalty, c, 0.5 * t)) t *= 0.5;
    if (t <= 1e-300) return std::numeric_limits<double>::min();
    lo = 0.5 * t;
    hi = t;
  } else {
    while (!zero_certificate(penalty, c, t)) t *= 2.0;
    lo = 0.5 * t;
    hi = t;
  }
  for (int it = 0; it < 100 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (zero_certificate(penalty, c, mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

std::vector<double> lambda_grid(const PathSpec& spec, double lmbd_max) {
  spec.validate();
  if (spec.explicit_grid) {
    std::vector<double> grid = *spec.explicit_grid;
    std::sort(grid.begin(), grid.end(), std::greater<double>());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
  }
  std::vector<double> grid;
  grid.reserve(spec.lmbd_num);
  const double log_max = std::log(spec.lmbd_ratio_max);
  const double log_min = std::log(spec.lmbd_ratio_min);
  for (int t = 0; t < spec.lmbd_num; ++t) {
    const double frac =
        spec.lmbd_num == 1 ? 0.0
                           : static_cast<double>(t) / (spec.lmbd_num - 1);
    grid.push_back(lmbd_max * std::exp(log_max + frac * (log_min - log_max)));
  }
  return grid;
}

double bic(const Problem& problem, const Eigen::VectorXd& x) {
  const double f = problem.loss().value(problem.A() * x);
  int support = 0;
  for (int i = 0; i < problem.n(); ++i) {
    if (x[i] != 0.0) ++support;
  }
  return 2.0 * problem.m() * f + std::log(static_cast<double>(problem.m())) * support;
}

PathResult fit_path(const Eigen::MatrixXd& A, const Loss& loss,
                    const Penalty& penalty, const PathSpec& spec,
                    const SolverOptions& opts) {
  PathResult path;
  path.lmbd_max = lambda_max(A, loss, penalty);
  const std::vector<double> grid = lambda_grid(spec, path.lmbd_max);

  SparseVec warm;
  for (double lmbd : grid) {
    const Problem problem = Problem::make(A, loss, penalty, lmbd);
    PathEntry entry;
    entry.lmbd = lmbd;
    entry.result = solve(problem, opts, warm);
    entry.bic = bic(problem, entry.result.x_opt.to_dense(problem.n()));
    warm = entry.result.x_opt;
    path.entries.push_back(std::move(entry));
  }
  return path;
}

const PathEntry& select_by_bic(const PathResult& path) {
  if (path.entries.empty()) throw std::invalid_argument("empty path result");
  // Entries are ordered by decreasing lmbd; strict improvement keeps the
  // sparser (larger lmbd) entry on ties.
  const PathEntry* best = &path.entries.front();
  for (const PathEntry& e : path.entries) {
    if (e.bic < best->bic) best = &e;
  }
  return *best;
}

}  // namespace l0bb
