#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "l0bb/problem.hpp"

namespace l0bb {

/// Regularization-path grid: lmbd_num values logarithmically spaced over
/// [lmbd_ratio_min, lmbd_ratio_max] times lambda_max, or an explicit grid.
struct PathSpec {
  double lmbd_ratio_max = 1.0;
  double lmbd_ratio_min = 0.01;
  int lmbd_num = 20;
  std::optional<std::vector<double>> explicit_grid;

  void validate() const;
};

struct PathEntry {
  double lmbd = 0.0;
  SolveResult result;
  double bic = kInf;
};

struct PathResult {
  double lmbd_max = 0.0;
  std::vector<PathEntry> entries;  // lmbd strictly decreasing
};

/// Smallest l0 weight for which the all-zero vector is certified optimal.
/// Tier (a) bisects the root-relaxation optimality certificate of zero over
/// lmbd; when the certificate is unattainable (slope-bounded conjugates,
/// e.g. a pure l1 penalty with large gradients) the fallback f(0) - inf f is
/// returned. Returns the smallest positive normal double when the gradient
/// of the loss vanishes at zero (zero solves every instance).
double lambda_max(const Eigen::MatrixXd& A, const Loss& loss,
                  const Penalty& penalty);

/// The descending lmbd grid implied by a spec and a lambda_max value.
std::vector<double> lambda_grid(const PathSpec& spec, double lmbd_max);

/// Bayesian information criterion 2 m f(Ax) + log(m) ||x||_0.
double bic(const Problem& problem, const Eigen::VectorXd& x);

/// Solves the path from the largest lmbd down, warm-starting each solve
/// with the previous solution.
PathResult fit_path(const Eigen::MatrixXd& A, const Loss& loss,
                    const Penalty& penalty, const PathSpec& spec,
                    const SolverOptions& opts = {});

/// Entry with the lowest BIC; ties resolve to the larger lmbd.
const PathEntry& select_by_bic(const PathResult& path);

}  // namespace l0bb
