#pragma once

#include <Eigen/Dense>
#include <chrono>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "l0bb/problem.hpp"
#include "l0bb/relaxation.hpp"

namespace l0bb {

/// Relaxation primal objective f(Ax) + sum_i relaxed-term_i(x_i).
double relaxation_primal(const Problem& problem, const Relaxation& relax,
                         const std::vector<CoordStatus>& statuses,
                         const Eigen::VectorXd& x);

/// Fenchel dual bound -f*(-u) - sum_i (relaxed-term_i)*(a_i^T u). By weak
/// duality this lower-bounds the relaxation optimum for any u; it degrades
/// to -inf when any conjugate is infinite (vacuous but valid).
double dual_bound(const Problem& problem, const Relaxation& relax,
                  const std::vector<CoordStatus>& statuses,
                  const Eigen::VectorXd& u);

/// Same, with A^T u precomputed and -f*(-u) passed as neg_fstar_arg = f*(-u).
double dual_bound_from_atu(const Problem& problem, const Relaxation& relax,
                           const std::vector<CoordStatus>& statuses,
                           double fstar_minus_u, const Eigen::VectorXd& atu);

/// Primal-dual gap of the relaxation at (x, u), clamped below at zero.
double relaxation_gap(const Problem& problem, const Relaxation& relax,
                      const std::vector<CoordStatus>& statuses,
                      const Eigen::VectorXd& x, const Eigen::VectorXd& u);

/// Fermat-violation set: coordinates outside the working set whose relaxed
/// term's optimality condition fails at x. Fixed-to-zero coordinates are
/// never inspected; screened coordinates are filtered out.
std::vector<int> violation_set(const Problem& problem, const Relaxation& relax,
                               const std::vector<CoordStatus>& statuses,
                               const Eigen::VectorXd& x,
                               const Eigen::VectorXd& atu,
                               const std::vector<char>& in_workset,
                               const std::vector<char>& screened);

struct ScreeningResult {
  std::vector<int> zero_forced_nu1;
  std::vector<int> zero_forced_free;
};

/// Gap-ball screening at the pair (x, u): the dual optimum lies within
/// sqrt(2 L gap(x, u)) of u, which certifies coordinates that are zero at
/// the relaxation optimum; they can be excluded from future working sets.
/// Requires a Lipschitz gradient; returns empty sets otherwise.
ScreeningResult screening(const Problem& problem, const Relaxation& relax,
                          const std::vector<CoordStatus>& statuses,
                          const Eigen::VectorXd& x, const Eigen::VectorXd& u);

struct Fixation {
  int index;
  int to;  // 0: fixed to zero, 1: fixed nonzero
};

/// True when a region with lower bound `node_lower` cannot contain a
/// solution improving on the incumbent by more than the relative tolerance.
bool pruning_test(double node_lower, double incumbent, double rel_tol);

/// Simultaneous pruning: child dual bounds at u obtained by swapping one
/// conjugate term, at negligible cost. Returns the implied fixations; sets
/// *node_pruned when both children of some coordinate pass the pruning test
/// and *discarded_min to the smallest bound among discarded regions.
std::vector<Fixation> simultaneous_prune(const Problem& problem,
                                         const Relaxation& relax,
                                         const std::vector<CoordStatus>& statuses,
                                         const Eigen::VectorXd& atu,
                                         double dual_value, double incumbent,
                                         double rel_tol, double* discarded_min,
                                         bool* node_pruned);

struct BoundingResult {
  Eigen::VectorXd x;                  // final relaxation iterate
  Eigen::VectorXd u;                  // final dual point -grad f(Ax)
  double lower_bound = -kInf;         // best dual certificate seen
  bool pruned = false;
  bool timed_out = false;
  std::vector<Fixation> fixations;
  std::vector<int> screened_nu1;
  std::vector<int> screened_free;
  std::vector<int> final_workset;     // sorted; excludes fixed-to-zero coords
  double discarded_min = kInf;        // min bound over simultaneous-pruned children
};

/// Working-set coordinate-descent solver for the node bounding problems.
/// Owns scratch buffers; one instance per worker.
class NodeBounder {
 public:
  using Clock = std::chrono::steady_clock;

  NodeBounder(const Problem& problem, const Relaxation& relax,
              const SolverOptions& opts);

  /// Solves the node relaxation by the working-set method: coordinate
  /// descent on the workset to the inner tolerance, dual certificate and
  /// pruning check, simultaneous pruning, screening, then workset expansion
  /// by Fermat violations. `incumbent` is re-read at every outer iteration.
  BoundingResult solve_lower_bound(const Node& node,
                                   const std::function<double()>& incumbent,
                                   std::optional<Clock::time_point> deadline = {},
                                   std::optional<double> inner_tol_override = {});
  BoundingResult solve_lower_bound(const Node& node, double incumbent);

  /// Solves the convex problem restricted to the support nu1 and returns the
  /// candidate with its exact nonconvex objective (a valid upper bound).
  std::pair<Eigen::VectorXd, double> solve_upper_bound(const Node& node);

  /// One coordinate-descent sweep over `workset`, for tests. Returns the
  /// updated x; Ax is maintained incrementally.
  void coordinate_descent_pass(std::vector<CoordStatus>& statuses,
                               const std::vector<int>& workset,
                               Eigen::VectorXd& x, Eigen::VectorXd& Ax);

 private:
  void cd_step(int i, CoordStatus s, Eigen::VectorXd& x, Eigen::VectorXd& Ax);
  double workset_gap(const std::vector<CoordStatus>& statuses,
                     const std::vector<int>& workset, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& Ax, double* primal_out);

  const Problem* problem_;
  const Relaxation* relax_;
  const SolverOptions* opts_;
  std::optional<double> lipschitz_;
  // scratch
  Eigen::VectorXd grad_;
  Eigen::VectorXd ax_try_;
  Eigen::VectorXd atu_ws_;  // workset entries only; others stale
  Eigen::VectorXd bt_eta_;  // per-coordinate steps for the no-Lipschitz case
};

}  // namespace l0bb
