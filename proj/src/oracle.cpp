#include "l0bb/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace l0bb {

void OracleOptions::validate() const {
  if (max_dim < 1 || max_dim > 20) {
    throw std::invalid_argument("oracle max_dim must be in [1, 20]");
  }
  if (!(inner_tol > 0.0)) throw std::invalid_argument("oracle inner_tol must be positive");
}

namespace {

constexpr int kMaxSweeps = 5000;

// Solves min f(Ax) + sum_{i in support} h(x_i) over x supported on `support`
// by cyclic coordinate descent with prox steps, to a duality-gap tolerance.
Eigen::VectorXd solve_restricted(const Problem& problem,
                                 const std::vector<int>& support, double tol) {
  const auto& A = problem.A();
  const auto& loss = problem.loss();
  const auto& pen = problem.penalty();
  const auto lip = loss.gradient_lipschitz();

  Eigen::VectorXd x = Eigen::VectorXd::Zero(problem.n());
  Eigen::VectorXd Ax = Eigen::VectorXd::Zero(problem.m());
  Eigen::VectorXd grad(problem.m());
  Eigen::VectorXd ax_try(problem.m());
  std::vector<double> bt_eta(support.size(), 1.0);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    for (std::size_t k = 0; k < support.size(); ++k) {
      const int i = support[k];
      const double colsq = problem.col_sq_norm(i);
      if (colsq == 0.0) {
        if (x[i] != 0.0) {
          Ax -= A.col(i) * x[i];
          x[i] = 0.0;
        }
        continue;
      }
      loss.gradient_into(Ax, grad);
      const double gi = A.col(i).dot(grad);
      if (lip) {
        const double eta = 1.0 / (*lip * colsq);
        const double xn = pen.prox(i, x[i] - eta * gi, eta);
        if (xn != x[i]) {
          Ax += A.col(i) * (xn - x[i]);
          x[i] = xn;
        }
      } else {
        double eta = bt_eta[k];
        const double f0 = loss.value(Ax);
        for (int t = 0; t < 60; ++t) {
          const double xn = pen.prox(i, x[i] - eta * gi, eta);
          const double d = xn - x[i];
          if (d == 0.0) break;
          ax_try = Ax + A.col(i) * d;
          const double f1 = loss.value(ax_try);
          if (f1 <= f0 + gi * d + 0.5 * d * d / eta +
                        1e-12 * std::max(1.0, std::abs(f0))) {
            Ax.swap(ax_try);
            x[i] = xn;
            break;
          }
          eta *= 0.5;
        }
        bt_eta[k] = eta;
      }
    }
    if (sweep % 50 == 49) Ax = A * x;

    // Duality gap of the restricted convex problem. When A'u leaves a
    // bounded conjugate domain (pure l1 penalties), the dual point is
    // rescaled back into it; domains are convex and contain 0, so the
    // feasible fraction is found by bisection.
    double primal = loss.value(Ax);
    for (int i : support) primal += pen.value(i, x[i]);
    loss.gradient_into(Ax, grad);
    std::vector<double> v(support.size());
    for (std::size_t k = 0; k < support.size(); ++k) {
      v[k] = -A.col(support[k]).dot(grad);
    }
    const auto feasible = [&](double s) {
      for (std::size_t k = 0; k < support.size(); ++k) {
        if (pen.conjugate(support[k], s * v[k]) == kInf) return false;
      }
      return true;
    };
    double s = 1.0;
    if (!feasible(1.0)) {
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid)) lo = mid;
        else hi = mid;
      }
      s = lo;
    }
    const double fstar = loss.conjugate((s * grad).eval());
    if (fstar < kInf && primal < kInf) {
      double dual = -fstar;
      bool vacuous = false;
      for (std::size_t k = 0; k < support.size(); ++k) {
        const double hstar = pen.conjugate(support[k], s * v[k]);
        if (hstar == kInf) {
          vacuous = true;
          break;
        }
        dual -= hstar;
      }
      if (!vacuous && primal - dual <= tol * std::max(1.0, std::abs(primal))) {
        break;
      }
    }
  }
  return x;
}

}  // namespace

SolveResult brute_force_solve(const Problem& problem, const OracleOptions& opts) {
  opts.validate();
  const int n = problem.n();
  if (n > opts.max_dim) {
    throw std::invalid_argument("problem dimension exceeds oracle max_dim");
  }
  const auto start = std::chrono::steady_clock::now();

  double best_obj = kInf;
  Eigen::VectorXd best_x = Eigen::VectorXd::Zero(n);
  std::uint64_t solved = 0;
  const double inf_f = problem.loss().infimum();

  for (int k = 0; k <= n; ++k) {
    // Admissible skip: with h >= 0 the objective of any support of size k is
    // at least inf f + lmbd*k.
    if (inf_f + problem.lmbd() * k >= best_obj) break;

    // Lexicographic combinations of size k.
    std::vector<int> comb(k);
    for (int j = 0; j < k; ++j) comb[j] = j;
    while (true) {
      const Eigen::VectorXd x = solve_restricted(problem, comb, opts.inner_tol);
      ++solved;
      const double obj = objective(problem, x);
      if (obj < best_obj) {
        best_obj = obj;
        best_x = x;
      }
      if (k == 0) break;
      int j = k - 1;
      while (j >= 0 && comb[j] == n - k + j) --j;
      if (j < 0) break;
      ++comb[j];
      for (int l = j + 1; l < k; ++l) comb[l] = comb[l - 1] + 1;
    }
  }

  SolveResult result;
  result.status = SolveStatus::Optimal;
  result.objective = best_obj;
  result.x_opt = SparseVec::from_dense(best_x);
  result.rel_gap = 0.0;
  result.node_count = solved;
  result.solve_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace l0bb
