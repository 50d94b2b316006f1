#include "l0bb/problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace l0bb {

Problem Problem::make(Eigen::MatrixXd A, Loss loss, Penalty penalty, double lmbd) {
  if (A.rows() < 1 || A.cols() < 1) {
    throw std::invalid_argument("matrix must have at least one row and one column");
  }
  if (!A.allFinite()) throw std::invalid_argument("matrix entries must be finite");
  if (!(lmbd > 0.0) || !std::isfinite(lmbd)) {
    throw std::invalid_argument("lmbd must be positive");
  }
  if (loss.target_size() != A.rows()) {
    throw std::invalid_argument("dimension mismatch: loss target length " +
                                std::to_string(loss.target_size()) +
                                " does not match matrix rows " +
                                std::to_string(A.rows()));
  }
  if (penalty.value(0, 0.0) != 0.0) {
    throw std::invalid_argument("penalty must satisfy h(0) = 0");
  }

  Problem p;
  p.A_ = std::move(A);
  p.loss_ = std::move(loss);
  p.penalty_ = std::move(penalty);
  p.lmbd_ = lmbd;
  p.col_sq_norms_ = p.A_.colwise().squaredNorm();
  return p;
}

double objective(const Problem& problem, const Eigen::VectorXd& x) {
  const double f = problem.loss().value(problem.A() * x);
  if (f == kInf) return kInf;
  double total = f;
  for (int i = 0; i < problem.n(); ++i) {
    if (x[i] != 0.0) {
      const double h = problem.penalty().value(i, x[i]);
      if (h == kInf) return kInf;
      total += problem.lmbd() + h;
    }
  }
  return total;
}

Node Node::root(int n) {
  Node node;
  node.x_warm = Eigen::VectorXd::Zero(n);
  return node;
}

bool Node::is_fixed(int i) const {
  return std::binary_search(nu0.begin(), nu0.end(), i) ||
         std::binary_search(nu1.begin(), nu1.end(), i);
}

std::vector<CoordStatus> Node::statuses(int n) const {
  std::vector<CoordStatus> s(n, CoordStatus::Free);
  for (int i : nu0) s[i] = CoordStatus::FixedZero;
  for (int i : nu1) s[i] = CoordStatus::FixedNonzero;
  return s;
}

void SolverOptions::validate() const {
  if (!(rel_gap_tol >= 0.0)) throw std::invalid_argument("rel_gap_tol must be >= 0");
  if (!(inner_tol >= 0.0)) throw std::invalid_argument("inner_tol must be >= 0");
  if (node_limit && *node_limit < 1) {
    throw std::invalid_argument("node_limit must be >= 1");
  }
  if (time_limit && !(*time_limit > 0.0)) {
    throw std::invalid_argument("time_limit must be positive");
  }
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

SparseVec SparseVec::from_dense(const Eigen::VectorXd& x) {
  SparseVec s;
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) {
      s.indices.push_back(i);
      s.values.push_back(x[i]);
    }
  }
  return s;
}

Eigen::VectorXd SparseVec::to_dense(int n) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (std::size_t k = 0; k < indices.size(); ++k) x[indices[k]] = values[k];
  return x;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::NodeLimit: return "node_limit";
    case SolveStatus::TimeLimit: return "time_limit";
  }
  return "unknown";
}

std::string to_string(Exploration e) {
  switch (e) {
    case Exploration::BestFirst: return "best-first";
    case Exploration::DepthFirst: return "depth-first";
    case Exploration::BreadthFirst: return "breadth-first";
  }
  return "unknown";
}

}  // namespace l0bb
