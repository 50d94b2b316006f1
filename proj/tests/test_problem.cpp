#include <doctest.h>

#include <cmath>

#include "l0bb/problem.hpp"
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

}  // namespace

TEST_CASE("problem/validation") {
  Eigen::MatrixXd A(2, 3);
  A << 1, 0, 1, 0, 1, -1;
  CHECK_NOTHROW(Problem::make(A, Loss::leastsquares(vec({1.0, 2.0})),
                              Penalty::l1norm(0.5), 0.1));
  CHECK_THROWS_AS(Problem::make(A, Loss::leastsquares(vec({1.0, 2.0, 3.0})),
                                Penalty::l1norm(0.5), 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(Problem::make(A, Loss::leastsquares(vec({1.0, 2.0})),
                                Penalty::l1norm(0.5), 0.0),
                  std::invalid_argument);
  Eigen::MatrixXd bad = A;
  bad(0, 0) = kInf;
  CHECK_THROWS_AS(Problem::make(bad, Loss::leastsquares(vec({1.0, 2.0})),
                                Penalty::l1norm(0.5), 0.1),
                  std::invalid_argument);
}

TEST_CASE("problem/objective examples") {
  const Eigen::MatrixXd I2 = Eigen::MatrixXd::Identity(2, 2);
  const Problem p = Problem::make(I2, Loss::leastsquares(vec({1.0, 1.0})),
                                  Penalty::l2norm(0.25), 0.1);
  CHECK(objective(p, vec({0.0, 0.0})) == doctest::Approx(1.0));
  CHECK(objective(p, vec({1.0, 1.0})) == doctest::Approx(0.7));

  const Problem pb = Problem::make(I2, Loss::leastsquares(vec({1.0, 1.0})),
                                   Penalty::bigm(1.0), 0.1);
  CHECK(objective(pb, vec({2.0, 0.0})) == kInf);
}

TEST_CASE("problem/objective decomposes into loss, support and penalty terms") {
  Rng rng(10001);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = rng.integer(2, 6);
    const int n = rng.integer(2, 6);
    const auto lkind = testsup::kNativeLosses[trial % testsup::kNativeLosses.size()];
    const auto pkind =
        testsup::kNativePenalties[trial % testsup::kNativePenalties.size()];
    const Eigen::MatrixXd A = testsup::make_matrix(m, n, rng);
    const Problem p = Problem::make(A, make_loss(lkind, m, rng),
                                    make_penalty(pkind, rng),
                                    rng.uniform(0.01, 1.0));
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.integer(0, 2) == 0 ? 0.0 : rng.normal(0.0, 0.5);
    }
    const double total = objective(p, x);
    double manual = p.loss().value(A * x);
    for (int i = 0; i < n; ++i) {
      if (x[i] != 0.0) manual += p.lmbd() + p.penalty().value(i, x[i]);
    }
    if (manual == kInf) {
      CHECK(total == kInf);
    } else {
      CHECK(total == doctest::Approx(manual).epsilon(1e-12));
    }
    CHECK(total >= p.loss().infimum() - 1e-12);
  }
}

TEST_CASE("problem/column norms cached") {
  Rng rng(10002);
  const Eigen::MatrixXd A = testsup::make_matrix(4, 3, rng);
  const Problem p = Problem::make(A, Loss::leastsquares(vec({1, 2, 3, 4})),
                                  Penalty::l1norm(0.5), 0.1);
  for (int i = 0; i < 3; ++i) {
    CHECK(p.col_sq_norm(i) == doctest::Approx(A.col(i).squaredNorm()));
  }
}

TEST_CASE("problem/node root and statuses") {
  Node root = Node::root(4);
  CHECK(root.nu0.empty());
  CHECK(root.nu1.empty());
  CHECK(root.x_warm.size() == 4);
  CHECK(root.x_warm.norm() == 0.0);
  root.nu0 = {1};
  root.nu1 = {3};
  const auto s = root.statuses(4);
  CHECK(s[0] == CoordStatus::Free);
  CHECK(s[1] == CoordStatus::FixedZero);
  CHECK(s[3] == CoordStatus::FixedNonzero);
  CHECK(root.is_fixed(1));
  CHECK(!root.is_fixed(0));
}

TEST_CASE("problem/solver options validation") {
  SolverOptions opts;
  CHECK_NOTHROW(opts.validate());
  opts.rel_gap_tol = -1.0;
  CHECK_THROWS_AS(opts.validate(), std::invalid_argument);
  opts = SolverOptions{};
  opts.workers = 0;
  CHECK_THROWS_AS(opts.validate(), std::invalid_argument);
  opts = SolverOptions{};
  opts.node_limit = 0;
  CHECK_THROWS_AS(opts.validate(), std::invalid_argument);
}

TEST_CASE("problem/sparse vector round trip") {
  const Eigen::VectorXd x = vec({0.0, 1.5, 0.0, -2.0});
  const SparseVec s = SparseVec::from_dense(x);
  CHECK(s.indices == std::vector<int>{1, 3});
  CHECK(s.support_size() == 2);
  CHECK((s.to_dense(4) - x).norm() == 0.0);
}
