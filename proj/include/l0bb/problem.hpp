#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "l0bb/loss.hpp"
#include "l0bb/penalty.hpp"
#include "l0bb/relaxation.hpp"

namespace l0bb {

/// Immutable problem instance: min_x f(Ax) + lmbd*||x||_0 + sum_i h(x_i).
/// Column norms of A are cached at construction; they drive the coordinate
/// descent step sizes and the screening radii. Safe to share across threads
/// after construction.
class Problem {
 public:
  /// Validates dimensions and blanket assumptions; throws
  /// std::invalid_argument on violations.
  static Problem make(Eigen::MatrixXd A, Loss loss, Penalty penalty, double lmbd);

  const Eigen::MatrixXd& A() const { return A_; }
  const Loss& loss() const { return loss_; }
  const Penalty& penalty() const { return penalty_; }
  double lmbd() const { return lmbd_; }
  int m() const { return static_cast<int>(A_.rows()); }
  int n() const { return static_cast<int>(A_.cols()); }
  double col_sq_norm(int i) const { return col_sq_norms_[i]; }

 private:
  Problem() = default;

  Eigen::MatrixXd A_;
  Loss loss_ = Loss::leastsquares(Eigen::VectorXd::Zero(1));
  Penalty penalty_ = Penalty::l1norm(1.0);
  double lmbd_ = 0.0;
  Eigen::VectorXd col_sq_norms_;
};

/// Exact nonconvex objective f(Ax) + lmbd*card{i : x_i != 0} + sum h(x_i).
/// Support counting uses exact comparison with zero: solver-produced zeros
/// are exact because the prox operators hard-set them.
double objective(const Problem& problem, const Eigen::VectorXd& x);

/// One region of the branch-and-bound tree, identified by the disjoint index
/// sets nu0 (fixed to zero) and nu1 (fixed nonzero). Owned by exactly one
/// worker at a time.
struct Node {
  std::vector<int> nu0;      // sorted
  std::vector<int> nu1;      // sorted
  Eigen::VectorXd x_warm;    // zero on nu0
  std::vector<int> workset;  // sorted
  double lower_bound = -kInf;

  static Node root(int n);
  bool is_fixed(int i) const;
  std::vector<CoordStatus> statuses(int n) const;
};

enum class Exploration { BestFirst, DepthFirst, BreadthFirst };

enum class SolveStatus { Optimal, NodeLimit, TimeLimit };

std::string to_string(SolveStatus s);
std::string to_string(Exploration e);

struct Progress {
  std::uint64_t node_count;
  double global_lower;
  double incumbent_value;
  std::size_t queue_size;
};

struct SolverOptions {
  double rel_gap_tol = 1e-8;
  double inner_tol = 1e-8;
  std::optional<std::uint64_t> node_limit;  // >= 1 when present
  std::optional<double> time_limit;         // seconds
  Exploration exploration = Exploration::BestFirst;
  bool enable_simultaneous_pruning = true;
  bool enable_screening = true;
  int workers = 1;
  std::function<void(const Progress&)> progress;

  void validate() const;
};

/// Sparse solution as index/value pairs; indices sorted ascending.
struct SparseVec {
  std::vector<int> indices;
  std::vector<double> values;

  static SparseVec from_dense(const Eigen::VectorXd& x);
  Eigen::VectorXd to_dense(int n) const;
  std::size_t support_size() const { return indices.size(); }
};

struct SolveResult {
  SolveStatus status = SolveStatus::Optimal;
  SparseVec x_opt;
  double objective = kInf;
  double rel_gap = kInf;
  std::uint64_t node_count = 0;
  double solve_time = 0.0;  // seconds
};

}  // namespace l0bb
