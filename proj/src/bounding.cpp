#include "l0bb/bounding.hpp"

#include <algorithm>
#include <cmath>

namespace l0bb {

namespace {

constexpr int kMaxSweeps = 2000;
constexpr int kRefreshEvery = 50;  // full Ax recomputation period, in sweeps

// Largest s in [0, 1] making every relaxed-term conjugate finite at s*atu.
// Conjugate domains are convex and contain 0 (h*(0) = 0), so feasibility is
// monotone in s and bisection applies. Rescaling recovers a finite dual
// certificate when A'u sits a hair outside a bounded conjugate domain,
// which is routine for indicator-type conjugates (pure l1 penalties).
double dual_feasible_scale(const Relaxation& relax,
                           const std::vector<CoordStatus>& statuses,
                           const Eigen::VectorXd& atu,
                           const std::vector<int>* subset) {
  const auto feasible = [&](double s) {
    if (subset) {
      for (int i : *subset) {
        if (relax.term_conjugate(statuses[i], i, s * atu[i]) == kInf) return false;
      }
      return true;
    }
    for (int i = 0; i < atu.size(); ++i) {
      if (statuses[i] == CoordStatus::FixedZero) continue;
      if (relax.term_conjugate(statuses[i], i, s * atu[i]) == kInf) return false;
    }
    return true;
  };
  if (feasible(1.0)) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) lo = mid;
    else hi = mid;
  }
  return lo;
}

}  // namespace

double relaxation_primal(const Problem& problem, const Relaxation& relax,
                         const std::vector<CoordStatus>& statuses,
                         const Eigen::VectorXd& x) {
  const double f = problem.loss().value(problem.A() * x);
  if (f == kInf) return kInf;
  double total = f;
  for (int i = 0; i < problem.n(); ++i) {
    const double t = relax.term_value(statuses[i], i, x[i]);
    if (t == kInf) return kInf;
    total += t;
  }
  return total;
}

double dual_bound_from_atu(const Problem& problem, const Relaxation& relax,
                           const std::vector<CoordStatus>& statuses,
                           double fstar_minus_u, const Eigen::VectorXd& atu) {
  if (fstar_minus_u == kInf) return -kInf;
  double total = -fstar_minus_u;
  for (int i = 0; i < problem.n(); ++i) {
    if (statuses[i] == CoordStatus::FixedZero) continue;
    const double t = relax.term_conjugate(statuses[i], i, atu[i]);
    if (t == kInf) return -kInf;
    total -= t;
  }
  return total;
}

double dual_bound(const Problem& problem, const Relaxation& relax,
                  const std::vector<CoordStatus>& statuses,
                  const Eigen::VectorXd& u) {
  const double fstar = problem.loss().conjugate(-u);
  if (fstar == kInf) return -kInf;
  const Eigen::VectorXd atu = problem.A().transpose() * u;
  return dual_bound_from_atu(problem, relax, statuses, fstar, atu);
}

double relaxation_gap(const Problem& problem, const Relaxation& relax,
                      const std::vector<CoordStatus>& statuses,
                      const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
  const double primal = relaxation_primal(problem, relax, statuses, x);
  const double dual = dual_bound(problem, relax, statuses, u);
  if (primal == kInf || dual == -kInf) return kInf;
  return std::max(primal - dual, 0.0);
}

std::vector<int> violation_set(const Problem& problem, const Relaxation& relax,
                               const std::vector<CoordStatus>& statuses,
                               const Eigen::VectorXd& x,
                               const Eigen::VectorXd& atu,
                               const std::vector<char>& in_workset,
                               const std::vector<char>& screened) {
  std::vector<int> violations;
  for (int i = 0; i < problem.n(); ++i) {
    if (in_workset[i] || screened[i]) continue;
    if (statuses[i] == CoordStatus::FixedZero) continue;
    const Interval sd = relax.term_subdiff(statuses[i], i, x[i]);
    if (!sd.contains(-atu[i])) violations.push_back(i);
  }
  return violations;
}

ScreeningResult screening(const Problem& problem, const Relaxation& relax,
                          const std::vector<CoordStatus>& statuses,
                          const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
  ScreeningResult result;
  const auto lip = problem.loss().gradient_lipschitz();
  if (!lip) return result;

  double gap = relaxation_gap(problem, relax, statuses, x, u);
  if (gap == kInf) return result;
  const double primal = relaxation_primal(problem, relax, statuses, x);
  // Floor at the rounding scale of the primal/dual evaluations: a computed
  // gap of zero only means the true gap is below float resolution.
  gap = std::max(gap, 1e-13 * std::max(1.0, std::abs(primal)));
  // The dual objective is (1/L)-strongly concave, so the dual optimum lies
  // in the ball around u of radius sqrt(2 L gap(x, u)).
  const double rad = std::sqrt(2.0 * *lip * gap);
  const Eigen::VectorXd atu = problem.A().transpose() * u;

  for (int i = 0; i < problem.n(); ++i) {
    if (statuses[i] == CoordStatus::FixedZero) continue;
    // Ball radius scales with the column norm: a_i^T u* ranges over
    // [a_i^T u - r*||a_i||, a_i^T u + r*||a_i||] when u* lies in B(u, r).
    const double ri = rad * std::sqrt(problem.col_sq_norm(i));
    const Interval target = relax.term_subdiff(statuses[i], i, 0.0);
    if (target.strictly_covers_ball(atu[i], ri)) {
      if (statuses[i] == CoordStatus::FixedNonzero) {
        result.zero_forced_nu1.push_back(i);
      } else {
        result.zero_forced_free.push_back(i);
      }
    }
  }
  return result;
}

bool pruning_test(double node_lower, double incumbent, double rel_tol) {
  if (node_lower == kInf) return true;
  if (incumbent == kInf) return false;
  return node_lower > incumbent - rel_tol * std::max(1.0, std::abs(incumbent));
}

std::vector<Fixation> simultaneous_prune(const Problem& problem,
                                         const Relaxation& relax,
                                         const std::vector<CoordStatus>& statuses,
                                         const Eigen::VectorXd& atu,
                                         double dual_value, double incumbent,
                                         double rel_tol, double* discarded_min,
                                         bool* node_pruned) {
  std::vector<Fixation> fixations;
  if (node_pruned) *node_pruned = false;
  if (!std::isfinite(dual_value)) return fixations;
  for (int i = 0; i < problem.n(); ++i) {
    if (statuses[i] != CoordStatus::Free) continue;
    const double gstar = relax.g_conjugate(i, atu[i]);
    const double hstar = problem.penalty().conjugate(i, atu[i]);
    // Child bounds at u: the free conjugate g* swaps for 0 (fixed to zero)
    // or for h* - lmbd (fixed nonzero).
    const double bound0 = dual_value + gstar;
    const double bound1 =
        hstar == kInf ? -kInf : dual_value + gstar - (hstar - relax.lmbd());
    const bool prune0 = pruning_test(bound0, incumbent, rel_tol);
    const bool prune1 = pruning_test(bound1, incumbent, rel_tol);
    if (prune0 && prune1) {
      if (discarded_min) *discarded_min = std::min(*discarded_min, std::min(bound0, bound1));
      if (node_pruned) *node_pruned = true;
      return fixations;
    }
    if (prune0) {
      if (discarded_min) *discarded_min = std::min(*discarded_min, bound0);
      fixations.push_back({i, 1});
    } else if (prune1) {
      if (discarded_min) *discarded_min = std::min(*discarded_min, bound1);
      fixations.push_back({i, 0});
    }
  }
  return fixations;
}

NodeBounder::NodeBounder(const Problem& problem, const Relaxation& relax,
                         const SolverOptions& opts)
    : problem_(&problem),
      relax_(&relax),
      opts_(&opts),
      lipschitz_(problem.loss().gradient_lipschitz()) {}

void NodeBounder::cd_step(int i, CoordStatus s, Eigen::VectorXd& x,
                          Eigen::VectorXd& Ax) {
  if (s == CoordStatus::FixedZero) return;
  const double colsq = problem_->col_sq_norm(i);
  if (colsq == 0.0) {
    // The smooth part does not depend on x_i; every relaxed term is
    // minimized at zero.
    if (x[i] != 0.0) {
      Ax -= problem_->A().col(i) * x[i];
      x[i] = 0.0;
    }
    return;
  }
  problem_->loss().gradient_into(Ax, grad_);
  const double gi = problem_->A().col(i).dot(grad_);
  if (lipschitz_) {
    const double eta = 1.0 / (*lipschitz_ * colsq);
    const double xn = relax_->term_prox(s, i, x[i] - eta * gi, eta);
    if (xn != x[i]) {
      Ax += problem_->A().col(i) * (xn - x[i]);
      x[i] = xn;
    }
    return;
  }
  // No global Lipschitz constant: per-coordinate backtracking on the
  // quadratic upper model.
  double eta = bt_eta_[i];
  const double f0 = problem_->loss().value(Ax);
  for (int t = 0; t < 60; ++t) {
    const double xn = relax_->term_prox(s, i, x[i] - eta * gi, eta);
    const double d = xn - x[i];
    if (d == 0.0) break;
    ax_try_ = Ax + problem_->A().col(i) * d;
    const double f1 = problem_->loss().value(ax_try_);
    if (f1 <= f0 + gi * d + 0.5 * d * d / eta +
                  1e-12 * std::max(1.0, std::abs(f0))) {
      Ax.swap(ax_try_);
      x[i] = xn;
      break;
    }
    eta *= 0.5;
  }
  bt_eta_[i] = eta;
}

void NodeBounder::coordinate_descent_pass(std::vector<CoordStatus>& statuses,
                                          const std::vector<int>& workset,
                                          Eigen::VectorXd& x,
                                          Eigen::VectorXd& Ax) {
  if (bt_eta_.size() != problem_->n()) {
    bt_eta_ = Eigen::VectorXd::Constant(problem_->n(), 1.0);
  }
  for (int i : workset) cd_step(i, statuses[i], x, Ax);
}

double NodeBounder::workset_gap(const std::vector<CoordStatus>& statuses,
                                const std::vector<int>& workset,
                                const Eigen::VectorXd& x,
                                const Eigen::VectorXd& Ax, double* primal_out) {
  double primal = problem_->loss().value(Ax);
  for (int i : workset) {
    primal += relax_->term_value(statuses[i], i, x[i]);
  }
  if (primal_out) *primal_out = primal;
  if (primal == kInf) return kInf;
  problem_->loss().gradient_into(Ax, grad_);
  if (atu_ws_.size() != problem_->n()) atu_ws_.resize(problem_->n());
  for (int i : workset) atu_ws_[i] = -problem_->A().col(i).dot(grad_);
  const double s = dual_feasible_scale(*relax_, statuses, atu_ws_, &workset);
  const double fstar =
      problem_->loss().conjugate(s == 1.0 ? grad_ : (s * grad_).eval());
  if (fstar == kInf) return kInf;
  double dual = -fstar;
  for (int i : workset) {
    const double t = relax_->term_conjugate(statuses[i], i, s * atu_ws_[i]);
    if (t == kInf) return kInf;
    dual -= t;
  }
  return std::max(primal - dual, 0.0);
}

BoundingResult NodeBounder::solve_lower_bound(const Node& node,
                                              double incumbent) {
  return solve_lower_bound(node, [incumbent] { return incumbent; });
}

BoundingResult NodeBounder::solve_lower_bound(
    const Node& node, const std::function<double()>& incumbent,
    std::optional<Clock::time_point> deadline,
    std::optional<double> inner_tol_override) {
  const int n = problem_->n();
  const double inner_tol = inner_tol_override.value_or(opts_->inner_tol);
  BoundingResult r;

  std::vector<CoordStatus> statuses = node.statuses(n);
  Eigen::VectorXd x = node.x_warm;
  for (int i : node.nu0) x[i] = 0.0;

  std::vector<char> in_ws(n, 0);
  std::vector<int> ws;
  auto add_to_ws = [&](int i) {
    if (!in_ws[i] && statuses[i] != CoordStatus::FixedZero) {
      in_ws[i] = 1;
      ws.push_back(i);
    }
  };
  for (int i : node.workset) add_to_ws(i);
  for (int i : node.nu1) add_to_ws(i);
  // Keep any warm-started nonzeros under optimization.
  for (int i = 0; i < n; ++i) {
    if (x[i] != 0.0) add_to_ws(i);
  }
  std::sort(ws.begin(), ws.end());

  Eigen::VectorXd Ax = problem_->A() * x;
  // Warm starts inherited across branching can leave dom f for losses with
  // restricted domains; shrink toward the origin, which is interior.
  for (int guard = 0; guard < 200 && problem_->loss().value(Ax) == kInf; ++guard) {
    x *= 0.5;
    Ax *= 0.5;
  }
  if (problem_->loss().value(Ax) == kInf) {
    x.setZero();
    Ax.setZero();
  }
  std::vector<char> screened(n, 0);
  if (bt_eta_.size() != n) bt_eta_ = Eigen::VectorXd::Constant(n, 1.0);
  if (!lipschitz_) {
    // Curvature estimate at the warm start seeds the backtracking steps.
    bt_eta_.setConstant(1.0);
  }

  Eigen::VectorXd u = Eigen::VectorXd::Zero(problem_->m());
  Eigen::VectorXd atu(n);
  double best_cert = -kInf;
  int sweeps_since_refresh = 0;

  for (int outer = 0; outer <= n + 1; ++outer) {
    // Step 1: coordinate descent on the workset to the inner tolerance.
    for (int sweep = 0; sweep < kMaxSweeps && !ws.empty(); ++sweep) {
      if (deadline && Clock::now() > *deadline) {
        r.timed_out = true;
        break;
      }
      for (int i : ws) cd_step(i, statuses[i], x, Ax);
      if (++sweeps_since_refresh >= kRefreshEvery) {
        Ax = problem_->A() * x;  // bound incremental drift
        sweeps_since_refresh = 0;
      }
      double primal = 0.0;
      const double gap = workset_gap(statuses, ws, x, Ax, &primal);
      if (gap <= inner_tol * std::max(1.0, std::abs(primal))) break;
    }
    if (r.timed_out) break;

    // Step 2: dual certificate and pruning checks.
    problem_->loss().gradient_into(Ax, grad_);
    u = -grad_;
    atu.noalias() = problem_->A().transpose() * u;
    double fstar = problem_->loss().conjugate(grad_);
    double cert = dual_bound_from_atu(*problem_, *relax_, statuses, fstar, atu);
    // atu_cert stays consistent with cert: when A'u leaves a bounded
    // conjugate domain, the certificate is recovered at a scaled dual point.
    Eigen::VectorXd atu_cert = atu;
    if (cert == -kInf) {
      const double s = dual_feasible_scale(*relax_, statuses, atu, nullptr);
      atu_cert = s * atu;
      fstar = problem_->loss().conjugate((s * grad_).eval());
      cert = dual_bound_from_atu(*problem_, *relax_, statuses, fstar, atu_cert);
    }
    best_cert = std::max(best_cert, cert);
    const double inc = incumbent();
    if (pruning_test(best_cert, inc, opts_->rel_gap_tol)) {
      r.pruned = true;
      break;
    }

    if (opts_->enable_simultaneous_pruning && std::isfinite(cert)) {
      bool node_pruned = false;
      const std::vector<Fixation> fixed =
          simultaneous_prune(*problem_, *relax_, statuses, atu_cert, cert, inc,
                             opts_->rel_gap_tol, &r.discarded_min, &node_pruned);
      if (node_pruned) {
        r.pruned = true;
        break;
      }
      for (const Fixation& fx : fixed) {
        r.fixations.push_back(fx);
        if (fx.to == 0) {
          statuses[fx.index] = CoordStatus::FixedZero;
          if (x[fx.index] != 0.0) {
            Ax -= problem_->A().col(fx.index) * x[fx.index];
            x[fx.index] = 0.0;
          }
          if (in_ws[fx.index]) {
            in_ws[fx.index] = 0;
            ws.erase(std::find(ws.begin(), ws.end(), fx.index));
          }
        } else {
          statuses[fx.index] = CoordStatus::FixedNonzero;
          if (!in_ws[fx.index]) {
            in_ws[fx.index] = 1;
            ws.insert(std::upper_bound(ws.begin(), ws.end(), fx.index),
                      fx.index);
          }
        }
      }
    }

    if (opts_->enable_screening && lipschitz_ && std::isfinite(cert)) {
      double primal_full = problem_->loss().value(Ax);
      for (int i : ws) primal_full += relax_->term_value(statuses[i], i, x[i]);
      // Floored at the rounding scale: a computed gap of zero only means
      // the true gap is below float resolution.
      const double gap = std::max(primal_full - cert,
                                  1e-13 * std::max(1.0, std::abs(primal_full)));
      const double rad = std::sqrt(2.0 * *lipschitz_ * gap);
      for (int i = 0; i < n; ++i) {
        if (screened[i] || statuses[i] == CoordStatus::FixedZero) continue;
        const double ri = rad * std::sqrt(problem_->col_sq_norm(i));
        const Interval target = relax_->term_subdiff(statuses[i], i, 0.0);
        if (target.strictly_covers_ball(atu_cert[i], ri)) {
          screened[i] = 1;
          if (statuses[i] == CoordStatus::FixedNonzero) {
            r.screened_nu1.push_back(i);
          } else {
            r.screened_free.push_back(i);
          }
        }
      }
    }

    // Step 3: expand the workset by Fermat violations, or stop.
    const std::vector<int> violations =
        violation_set(*problem_, *relax_, statuses, x, atu, in_ws, screened);
    if (violations.empty()) break;
    for (int i : violations) add_to_ws(i);
    std::sort(ws.begin(), ws.end());
  }

  r.x = std::move(x);
  r.u = u;
  r.lower_bound = best_cert;
  r.final_workset = ws;
  std::sort(r.final_workset.begin(), r.final_workset.end());
  return r;
}

std::pair<Eigen::VectorXd, double> NodeBounder::solve_upper_bound(
    const Node& node) {
  const int n = problem_->n();
  std::vector<CoordStatus> statuses(n, CoordStatus::FixedZero);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (int i : node.nu1) {
    statuses[i] = CoordStatus::FixedNonzero;
    x[i] = node.x_warm[i];
  }
  if (bt_eta_.size() != n) bt_eta_ = Eigen::VectorXd::Constant(n, 1.0);
  if (!lipschitz_) bt_eta_.setConstant(1.0);

  Eigen::VectorXd Ax = problem_->A() * x;
  for (int guard = 0; guard < 200 && problem_->loss().value(Ax) == kInf; ++guard) {
    x *= 0.5;
    Ax *= 0.5;
  }
  if (problem_->loss().value(Ax) == kInf) {
    x.setZero();
    Ax.setZero();
  }
  int since_refresh = 0;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    for (int i : node.nu1) cd_step(i, CoordStatus::FixedNonzero, x, Ax);
    if (++since_refresh >= kRefreshEvery) {
      Ax = problem_->A() * x;
      since_refresh = 0;
    }
    double primal = 0.0;
    const double gap = workset_gap(statuses, node.nu1, x, Ax, &primal);
    if (gap <= opts_->inner_tol * std::max(1.0, std::abs(primal))) break;
    if (node.nu1.empty()) break;
  }
  return {x, objective(*problem_, x)};
}

}  // namespace l0bb
