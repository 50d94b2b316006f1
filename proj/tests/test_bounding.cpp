#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "l0bb/bounding.hpp"
#include "l0bb/oracle.hpp"
#include "support/oracles.hpp"

using namespace l0bb;
using testsup::Rng;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> vals) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
  int k = 0;
  for (double x : vals) v[k++] = x;
  return v;
}

Problem one_dim_problem() {
  Eigen::MatrixXd A(1, 1);
  A << 1.0;
  return Problem::make(A, Loss::leastsquares(vec({1.0})), Penalty::l2norm(0.25),
                       0.05);
}

// Random node: each coordinate free / fixed-zero / fixed-nonzero.
Node random_node(int n, Rng& rng) {
  Node node = Node::root(n);
  for (int i = 0; i < n; ++i) {
    const int r = rng.integer(0, 3);
    if (r == 0) node.nu0.push_back(i);
    else if (r == 1) node.nu1.push_back(i);
  }
  return node;
}

}  // namespace

TEST_CASE("bounding/dual bound at u = 0 vanishes for least squares") {
  Rng rng(11000);
  const Eigen::MatrixXd A = testsup::make_matrix(4, 3, rng);
  const Problem p = Problem::make(A, make_loss(LossKind::Leastsquares, 4, rng),
                                  Penalty::l2norm(0.5), 0.1);
  const Relaxation relax(p.penalty(), p.lmbd(), p.n());
  const Node root = Node::root(3);
  const double d =
      dual_bound(p, relax, root.statuses(3), Eigen::VectorXd::Zero(4));
  CHECK(d == 0.0);
  CHECK(objective(p, Eigen::VectorXd::Zero(3)) >= d);
}

TEST_CASE("bounding/weak duality on random pairs") {
  Rng rng(11001);
  int checked = 0;
  while (checked < 400) {
    const int m = rng.integer(2, 5);
    const int n = rng.integer(2, 5);
    const auto lkind = testsup::kNativeLosses[checked % testsup::kNativeLosses.size()];
    const auto pkind =
        testsup::kNativePenalties[checked % testsup::kNativePenalties.size()];
    const Eigen::MatrixXd A = testsup::make_matrix(m, n, rng);
    const Problem p = Problem::make(A, make_loss(lkind, m, rng),
                                    make_penalty(pkind, rng),
                                    rng.uniform(0.02, 1.0));
    const Relaxation relax(p.penalty(), p.lmbd(), n);
    const Node node = random_node(n, rng);
    const auto statuses = node.statuses(n);
    Eigen::VectorXd x(n), u(m);
    for (int i = 0; i < n; ++i) {
      x[i] = statuses[i] == CoordStatus::FixedZero ? 0.0 : rng.normal(0.0, 0.8);
    }
    for (int j = 0; j < m; ++j) u[j] = rng.normal(0.0, 0.8);
    const double dual = dual_bound(p, relax, statuses, u);
    const double primal = relaxation_primal(p, relax, statuses, x);
    CHECK(dual <= primal + 1e-10 * std::max(1.0, std::abs(primal)));
    ++checked;
  }
}

TEST_CASE("bounding/fully fixed-to-zero node certifies f(0)") {
  Rng rng(11002);
  const int m = 5, n = 4;
  const Eigen::MatrixXd A = testsup::make_matrix(m, n, rng);
  const Problem p = Problem::make(A, make_loss(LossKind::Leastsquares, m, rng),
                                  Penalty::bigm(1.0), 0.3);
  const Relaxation relax(p.penalty(), p.lmbd(), n);
  SolverOptions opts;
  NodeBounder bounder(p, relax, opts);
  Node node = Node::root(n);
  for (int i = 0; i < n; ++i) node.nu0.push_back(i);
  const BoundingResult r = bounder.solve_lower_bound(node, kInf);
  const double f0 = p.loss().value(Eigen::VectorXd::Zero(m));
  CHECK(r.lower_bound == doctest::Approx(f0).epsilon(1e-10));
  CHECK(r.x.norm() == 0.0);
}

TEST_CASE("bounding/one dimensional lower bound against the oracle") {
  const Problem p = one_dim_problem();
  const Relaxation relax(p.penalty(), p.lmbd(), 1);
  SolverOptions opts;
  NodeBounder bounder(p, relax, opts);
  Node root = Node::root(1);
  root.workset = {0};
  const BoundingResult r = bounder.solve_lower_bound(root, kInf);
  const SolveResult oracle = brute_force_solve(p);
  CHECK(oracle.objective == doctest::Approx(1.0 / 6.0 + 0.05).epsilon(1e-8));
  CHECK(r.lower_bound <= oracle.objective + 1e-9);
  CHECK(!r.pruned);
}

TEST_CASE("bounding/lower bound below region objective on random instances") {
  Rng rng(11003);
  SolverOptions opts;
  for (int trial = 0; trial < 60; ++trial) {
    const int m = rng.integer(3, 8);
    const int n = rng.integer(2, 6);
    const auto lkind = testsup::kNativeLosses[trial % testsup::kNativeLosses.size()];
    const auto pkind =
        testsup::kNativePenalties[trial % testsup::kNativePenalties.size()];
    const Eigen::MatrixXd A = testsup::make_matrix(m, n, rng);
    const Problem p = Problem::make(A, make_loss(lkind, m, rng),
                                    make_penalty(pkind, rng),
                                    rng.uniform(0.05, 0.8));
    const Relaxation relax(p.penalty(), p.lmbd(), n);
    NodeBounder bounder(p, relax, opts);
    Node node = random_node(n, rng);
    for (int i = 0; i < n; ++i) {
      if (!node.is_fixed(i)) node.workset.push_back(i);
    }
    const BoundingResult r = bounder.solve_lower_bound(node, kInf);
    // The bound must sit below the objective of any point in the region.
    const auto statuses = node.statuses(n);
    for (int k = 0; k < 10; ++k) {
      Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
      for (int i = 0; i < n; ++i) {
        if (statuses[i] == CoordStatus::FixedZero) continue;
        double zi = rng.normal(0.0, 0.7);
        zi = p.penalty().prox(i, zi, 1.0);  // keep inside dom h
        z[i] = zi;
      }
      bool region_ok = true;
      for (int i : node.nu1) region_ok = region_ok && z[i] != 0.0;
      if (!region_ok) continue;
      const double obj = objective(p, z);
      if (obj < kInf) CHECK(r.lower_bound <= obj + 1e-8 * std::max(1.0, std::abs(obj)));
    }
  }
}

TEST_CASE("bounding/coordinate descent pass") {
  // A free coordinate whose gradient magnitude is below tau stays at zero.
  {
    Eigen::MatrixXd A(1, 1);
    A << 1.0;
    const double beta = 0.25, lmbd = 0.4;
    const Problem p = Problem::make(A, Loss::leastsquares(vec({0.1})),
                                    Penalty::l2norm(beta), lmbd);
    const Relaxation relax(p.penalty(), p.lmbd(), 1);
    const double tau = relax.params(0).tau_pos;
    REQUIRE(0.1 < tau);  // |a' grad f(0)| = 0.1
    SolverOptions opts;
    NodeBounder bounder(p, relax, opts);
    std::vector<CoordStatus> statuses{CoordStatus::Free};
    Eigen::VectorXd x = Eigen::VectorXd::Zero(1);
    Eigen::VectorXd Ax = Eigen::VectorXd::Zero(1);
    bounder.coordinate_descent_pass(statuses, {0}, x, Ax);
    CHECK(x[0] == 0.0);
  }
  // Orthonormal columns: one fixed-nonzero sweep from zero solves each
  // scalar problem exactly.
  {
    const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2, 2);
    const Problem p = Problem::make(A, Loss::leastsquares(vec({1.0, -2.0})),
                                    Penalty::l2norm(0.25), 0.1);
    const Relaxation relax(p.penalty(), p.lmbd(), 2);
    SolverOptions opts;
    NodeBounder bounder(p, relax, opts);
    std::vector<CoordStatus> statuses{CoordStatus::FixedNonzero,
                                      CoordStatus::FixedNonzero};
    Eigen::VectorXd x = Eigen::VectorXd::Zero(2);
    Eigen::VectorXd Ax = Eigen::VectorXd::Zero(2);
    bounder.coordinate_descent_pass(statuses, {0, 1}, x, Ax);
    // argmin 0.5(t - y)^2 + 0.25 t^2 = y / 1.5
    CHECK(x[0] == doctest::Approx(1.0 / 1.5).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(-2.0 / 1.5).epsilon(1e-12));
  }
  // Sweeps never increase the relaxation objective.
  {
    Rng rng(11004);
    for (int trial = 0; trial < 20; ++trial) {
      const int m = rng.integer(3, 6), n = rng.integer(2, 5);
      const auto pkind =
          testsup::kNativePenalties[trial % testsup::kNativePenalties.size()];
      const Eigen::MatrixXd A = testsup::make_matrix(m, n, rng);
      const Problem p = Problem::make(A, make_loss(LossKind::Leastsquares, m, rng),
                                      make_penalty(pkind, rng),
                                      rng.uniform(0.05, 0.6));
      const Relaxation relax(p.penalty(), p.lmbd(), n);
      SolverOptions opts;
      NodeBounder bounder(p, relax, opts);
      std::vector<CoordStatus> statuses(n, CoordStatus::Free);
      std::vector<int> ws(n);
      for (int i = 0; i < n; ++i) ws[i] = i;
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i) x[i] = p.penalty().prox(i, rng.normal(0.0, 0.5), 1.0);
      Eigen::VectorXd Ax = A * x;
      double prev = relaxation_primal(p, relax, statuses, x);
      for (int sweep = 0; sweep < 5; ++sweep) {
        bounder.coordinate_descent_pass(statuses, ws, x, Ax);
        const double cur = relaxation_primal(p, relax, statuses, x);
        CHECK(cur <= prev + 1e-9 * std::max(1.0, std::abs(prev)));
        prev = cur;
      }
    }
  }
}

TEST_CASE("bounding/violation set") {
  Rng rng(11005);
  const int m = 4, n = 3;
  const Eigen::MatrixXd A = testsup::make_matrix(m, n, rng);
  const Problem p = Problem::make(A, make_loss(LossKind::Leastsquares, m, rng),
                                  Penalty::l1l2norm(0.3, 0.4), 0.2);
  const Relaxation relax(p.penalty(), p.lmbd(), n);
  const Node root = Node::root(n);
  const auto statuses = root.statuses(n);
  const Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  const Eigen::VectorXd u = -p.loss().gradient(Eigen::VectorXd::Zero(m));
  const Eigen::VectorXd atu = A.transpose() * u;
  const double tau = relax.params(0).tau_pos;
  std::vector<char> none(n, 0);
  const auto v = violation_set(p, relax, statuses, x, atu, none, none);
  for (int i = 0; i < n; ++i) {
    const bool violated = std::abs(atu[i]) > tau;
    const bool in_v = std::find(v.begin(), v.end(), i) != v.end();
    CHECK(violated == in_v);
  }
  // Coordinates already in the workset are never inspected.
  std::vector<char> all(n, 1);
  CHECK(violation_set(p, relax, statuses, x, atu, all, none).empty());
}

TEST_CASE("bounding/screening reduces to strict membership at zero gap") {
  // Solve a strongly convex relaxation to near-optimality; the ball then has
  // near-zero radius and screening reduces to |a_i' u| < tau.
  Rng rng(11006);
  const int m = 6, n = 4;
  const Eigen::MatrixXd A = testsup::make_matrix(m, n, rng);
  const Problem p = Problem::make(A, make_loss(LossKind::Leastsquares, m, rng),
                                  Penalty::l2norm(0.5), 0.4);
  const Relaxation relax(p.penalty(), p.lmbd(), n);
  SolverOptions opts;
  opts.inner_tol = 1e-13;
  opts.enable_screening = false;
  NodeBounder bounder(p, relax, opts);
  Node root = Node::root(n);
  for (int i = 0; i < n; ++i) root.workset.push_back(i);
  const BoundingResult r = bounder.solve_lower_bound(root, kInf);
  const auto statuses = root.statuses(n);
  const auto sc = screening(p, relax, statuses, r.x, r.u);
  const Eigen::VectorXd atu = A.transpose() * r.u;
  const double tau = relax.params(0).tau_pos;
  const double gap = relaxation_gap(p, relax, statuses, r.x, r.u);
  const double rad = std::sqrt(2.0 * gap);  // L = 1
  for (int i : sc.zero_forced_free) {
    CHECK(std::abs(atu[i]) + rad * std::sqrt(p.col_sq_norm(i)) < tau);
    CHECK(r.x[i] == 0.0);
  }
}

TEST_CASE("bounding/screened coordinates are zero at the relaxation optimum") {
  Rng rng(11007);
  int instances = 0;
  while (instances < 25) {
    const int m = rng.integer(3, 8), n = rng.integer(2, 6);
    const auto lkind = testsup::kNativeLosses[instances % 4];  // Lipschitz kinds
    const auto pkind =
        testsup::kNativePenalties[instances % testsup::kNativePenalties.size()];
    const Eigen::MatrixXd A = testsup::make_matrix(m, n, rng);
    const Problem p = Problem::make(A, make_loss(lkind, m, rng),
                                    make_penalty(pkind, rng),
                                    rng.uniform(0.05, 0.8));
    const Relaxation relax(p.penalty(), p.lmbd(), n);
    SolverOptions with;
    NodeBounder bounder(p, relax, with);
    Node root = Node::root(n);
    for (int i = 0; i < n; ++i) root.workset.push_back(i);
    const BoundingResult r = bounder.solve_lower_bound(root, kInf);

    SolverOptions tight;
    tight.inner_tol = 1e-12;
    tight.enable_screening = false;
    tight.enable_simultaneous_pruning = false;
    NodeBounder ref_bounder(p, relax, tight);
    const BoundingResult ref = ref_bounder.solve_lower_bound(root, kInf);
    for (int i : r.screened_free) CHECK(std::abs(ref.x[i]) <= 1e-8);
    for (int i : r.screened_nu1) CHECK(std::abs(ref.x[i]) <= 1e-8);
    ++instances;
  }
}

TEST_CASE("bounding/screening is disabled without a Lipschitz constant") {
  Rng rng(11010);
  const int m = 4, n = 3;
  const Eigen::MatrixXd A = testsup::make_matrix(m, n, rng);
  const Problem p = Problem::make(A, make_loss(LossKind::KullbackLeibler, m, rng),
                                  Penalty::l2norm(0.3), 0.2);
  const Relaxation relax(p.penalty(), p.lmbd(), n);
  const Node root = Node::root(n);
  const auto sc = screening(p, relax, root.statuses(n),
                            Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(m));
  CHECK(sc.zero_forced_free.empty());
  CHECK(sc.zero_forced_nu1.empty());

  SolverOptions opts;
  NodeBounder bounder(p, relax, opts);
  Node seeded = root;
  for (int i = 0; i < n; ++i) seeded.workset.push_back(i);
  const BoundingResult r = bounder.solve_lower_bound(seeded, kInf);
  CHECK(r.screened_free.empty());
  CHECK(r.screened_nu1.empty());
}

TEST_CASE("bounding/relaxation gap") {
  Rng rng(11008);
  const int m = 5, n = 3;
  const Eigen::MatrixXd A = testsup::make_matrix(m, n, rng);
  const Problem p = Problem::make(A, make_loss(LossKind::Leastsquares, m, rng),
                                  Penalty::l2norm(0.3), 0.2);
  const Relaxation relax(p.penalty(), p.lmbd(), n);
  const Node root = Node::root(n);
  const auto statuses = root.statuses(n);

  // x = 0, u = 0 on a least-squares instance with y != 0: gap = f(0).
  const double gap0 = relaxation_gap(p, relax, statuses, Eigen::VectorXd::Zero(n),
                                     Eigen::VectorXd::Zero(m));
  CHECK(gap0 == doctest::Approx(p.loss().value(Eigen::VectorXd::Zero(m))));

  // Near-optimal pair on a strongly convex relaxation: tiny gap.
  SolverOptions opts;
  opts.inner_tol = 1e-12;
  NodeBounder bounder(p, relax, opts);
  Node seeded = root;
  for (int i = 0; i < n; ++i) seeded.workset.push_back(i);
  const BoundingResult r = bounder.solve_lower_bound(seeded, kInf);
  const double gap = relaxation_gap(p, relax, statuses, r.x, r.u);
  CHECK(gap >= 0.0);
  CHECK(gap <= 1e-8);
}

TEST_CASE("bounding/upper bound solve") {
  // Empty support: the zero vector and f(0).
  Rng rng(11009);
  const int m = 4, n = 3;
  const Eigen::MatrixXd A = testsup::make_matrix(m, n, rng);
  const Problem p = Problem::make(A, make_loss(LossKind::Leastsquares, m, rng),
                                  Penalty::l2norm(0.25), 0.1);
  const Relaxation relax(p.penalty(), p.lmbd(), n);
  SolverOptions opts;
  NodeBounder bounder(p, relax, opts);
  const Node root = Node::root(n);
  const auto [x0, v0] = bounder.solve_upper_bound(root);
  CHECK(x0.norm() == 0.0);
  CHECK(v0 == doctest::Approx(p.loss().value(Eigen::VectorXd::Zero(m))));

  // One-coordinate support matches a scalar grid minimization.
  const Problem p1 = one_dim_problem();
  const Relaxation relax1(p1.penalty(), p1.lmbd(), 1);
  NodeBounder bounder1(p1, relax1, opts);
  Node sup = Node::root(1);
  sup.nu1 = {0};
  const auto [x1, v1] = bounder1.solve_upper_bound(sup);
  const double xs = testsup::convex_argmin(
      [&](double t) {
        return 0.5 * (t - 1.0) * (t - 1.0) + 0.25 * t * t + 0.05;
      },
      -5.0, 5.0);
  CHECK(v1 == doctest::Approx(1.0 / 6.0 + 0.05).epsilon(1e-6));
  CHECK(x1[0] == doctest::Approx(xs).epsilon(1e-5));

  // Any upper value dominates the oracle optimum.
  const SolveResult oracle = brute_force_solve(p1);
  CHECK(v1 >= oracle.objective - 1e-10);
}
