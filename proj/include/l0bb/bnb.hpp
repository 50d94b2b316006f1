#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "l0bb/bounding.hpp"
#include "l0bb/problem.hpp"

namespace l0bb {

/// Open-node queue. Best-first pops the smallest lower bound (FIFO among
/// ties), depth-first the most recently inserted node, breadth-first the
/// least recently inserted one.
class NodeQueue {
 public:
  explicit NodeQueue(Exploration strategy) : strategy_(strategy) {}

  void push(Node node);
  Node pop();
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  /// Smallest lower bound among open nodes; +inf when empty.
  double min_bound() const;

 private:
  Exploration strategy_;
  std::uint64_t next_seq_ = 0;
  std::map<std::uint64_t, Node> entries_;          // insertion order
  std::multimap<double, std::uint64_t> by_bound_;  // bound -> seq
};

/// Branching on the maximum-magnitude relaxation coordinate (ties to the
/// smallest index). child0 fixes it to zero, child1 to nonzero; both inherit
/// the warm start and workset.
std::pair<Node, Node> branch(const Node& node, const Eigen::VectorXd& x_relax);

/// Solves the problem by branch and bound. An optional warm start seeds the
/// incumbent (re-evaluated through the exact objective).
SolveResult solve(const Problem& problem, const SolverOptions& opts = {});
SolveResult solve(const Problem& problem, const SolverOptions& opts,
                  const SparseVec& warm_start);

}  // namespace l0bb
