#include "l0bb/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <vector>

namespace l0bb {

void NodeQueue::push(Node node) {
  const std::uint64_t seq = next_seq_++;
  by_bound_.emplace(node.lower_bound, seq);
  entries_.emplace(seq, std::move(node));
}

Node NodeQueue::pop() {
  std::uint64_t seq = 0;
  switch (strategy_) {
    case Exploration::BestFirst:
      seq = by_bound_.begin()->second;
      break;
    case Exploration::DepthFirst:
      seq = entries_.rbegin()->first;
      break;
    case Exploration::BreadthFirst:
      seq = entries_.begin()->first;
      break;
  }
  auto it = entries_.find(seq);
  Node node = std::move(it->second);
  entries_.erase(it);
  auto range = by_bound_.equal_range(node.lower_bound);
  for (auto bit = range.first; bit != range.second; ++bit) {
    if (bit->second == seq) {
      by_bound_.erase(bit);
      break;
    }
  }
  return node;
}

double NodeQueue::min_bound() const {
  if (by_bound_.empty()) return kInf;
  return by_bound_.begin()->first;
}

std::pair<Node, Node> branch(const Node& node, const Eigen::VectorXd& x_relax) {
  const int n = static_cast<int>(x_relax.size());
  int best = -1;
  double best_mag = -1.0;
  for (int i = 0; i < n; ++i) {
    if (node.is_fixed(i)) continue;
    const double mag = std::abs(x_relax[i]);
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  Node child0 = node;
  child0.nu0.insert(std::upper_bound(child0.nu0.begin(), child0.nu0.end(), best),
                    best);
  child0.x_warm = x_relax;
  child0.x_warm[best] = 0.0;
  Node child1 = node;
  child1.nu1.insert(std::upper_bound(child1.nu1.begin(), child1.nu1.end(), best),
                    best);
  child1.x_warm = x_relax;
  return {std::move(child0), std::move(child1)};
}

namespace {

using Clock = std::chrono::steady_clock;

void apply_fixations(Node& node, const std::vector<Fixation>& fixations) {
  for (const Fixation& fx : fixations) {
    auto& target = fx.to == 0 ? node.nu0 : node.nu1;
    target.insert(std::upper_bound(target.begin(), target.end(), fx.index),
                  fx.index);
    if (fx.to == 0) node.x_warm[fx.index] = 0.0;
  }
}

std::vector<int> initial_workset(const Problem& problem) {
  const int n = problem.n();
  const int k = std::min(n, 100);
  const Eigen::VectorXd g0 =
      problem.loss().gradient(Eigen::VectorXd::Zero(problem.m()));
  const Eigen::VectorXd score = (problem.A().transpose() * g0).cwiseAbs();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return score[a] > score[b]; });
  std::vector<int> ws(order.begin(), order.begin() + k);
  std::sort(ws.begin(), ws.end());
  return ws;
}

struct SharedState {
  std::mutex mu;
  std::condition_variable cv;
  NodeQueue queue;
  std::multiset<double> in_flight;
  double closed_min = kInf;
  double incumbent_value = kInf;
  Eigen::VectorXd incumbent_x;
  std::uint64_t node_count = 0;
  int processing = 0;
  bool stop = false;
  SolveStatus status = SolveStatus::Optimal;
  Clock::time_point start;

  explicit SharedState(Exploration strategy) : queue(strategy) {}

  // Callers must hold mu.
  double global_lower() const {
    double lower = std::min(closed_min, queue.min_bound());
    if (!in_flight.empty()) lower = std::min(lower, *in_flight.begin());
    return lower;
  }

  bool try_update_incumbent(const Eigen::VectorXd& x, double value) {
    if (value < incumbent_value - 1e-12) {
      incumbent_value = value;
      incumbent_x = x;
      return true;
    }
    return false;
  }
};

void worker_loop(const Problem& problem, const Relaxation& relax,
                 const SolverOptions& opts, SharedState& st) {
  NodeBounder bounder(problem, relax, opts);
  const auto incumbent_getter = [&st]() {
    std::lock_guard<std::mutex> lk(st.mu);
    return st.incumbent_value;
  };
  std::optional<Clock::time_point> deadline;
  if (opts.time_limit) {
    deadline = st.start + std::chrono::duration_cast<Clock::duration>(
                              std::chrono::duration<double>(*opts.time_limit));
  }

  std::unique_lock<std::mutex> lk(st.mu);
  while (true) {
    if (st.stop) break;
    const double lower = st.global_lower();
    if (st.incumbent_value < kInf && lower > -kInf &&
        st.incumbent_value - lower <=
            opts.rel_gap_tol * std::max(1.0, std::abs(st.incumbent_value))) {
      st.stop = true;
      st.status = SolveStatus::Optimal;
      st.cv.notify_all();
      break;
    }
    if (st.queue.empty()) {
      if (st.processing == 0) {
        st.stop = true;
        st.status = SolveStatus::Optimal;
        st.cv.notify_all();
        break;
      }
      st.cv.wait(lk);
      continue;
    }
    if (opts.node_limit && st.node_count >= *opts.node_limit) {
      st.stop = true;
      st.status = SolveStatus::NodeLimit;
      st.cv.notify_all();
      break;
    }
    if (opts.time_limit && st.node_count > 0) {
      // The root is always processed so the result carries an incumbent.
      const double elapsed =
          std::chrono::duration<double>(Clock::now() - st.start).count();
      if (elapsed >= *opts.time_limit) {
        st.stop = true;
        st.status = SolveStatus::TimeLimit;
        st.cv.notify_all();
        break;
      }
    }

    Node node = st.queue.pop();
    st.node_count += 1;
    auto flight_it = st.in_flight.insert(node.lower_bound);
    st.processing += 1;

    // Stale nodes: the incumbent may have improved since insertion.
    if (pruning_test(node.lower_bound, st.incumbent_value, opts.rel_gap_tol)) {
      st.closed_min = std::min(st.closed_min, node.lower_bound);
      st.in_flight.erase(flight_it);
      st.processing -= 1;
      if (opts.progress) {
        opts.progress({st.node_count, st.global_lower(), st.incumbent_value,
                       st.queue.size()});
      }
      st.cv.notify_all();
      continue;
    }
    lk.unlock();

    auto [x_ub, ub_value] = bounder.solve_upper_bound(node);
    {
      std::lock_guard<std::mutex> g(st.mu);
      st.try_update_incumbent(x_ub, ub_value);
    }

    const bool leaf_at_entry =
        node.nu0.size() + node.nu1.size() == static_cast<std::size_t>(problem.n());
    std::optional<double> tight;
    if (leaf_at_entry) {
      // Leaves are closed by their certificate; solve tightly enough for it
      // to pass the pruning test against the leaf's own value.
      tight = std::min(opts.inner_tol, 0.01 * opts.rel_gap_tol);
    }
    BoundingResult res =
        bounder.solve_lower_bound(node, incumbent_getter, deadline, tight);

    lk.lock();
    st.closed_min = std::min(st.closed_min, res.discarded_min);
    apply_fixations(node, res.fixations);
    node.workset = res.final_workset;
    node.lower_bound = std::max(node.lower_bound, res.lower_bound);

    if (res.timed_out) {
      st.queue.push(std::move(node));
      st.in_flight.erase(flight_it);
      st.processing -= 1;
      st.cv.notify_all();
      continue;
    }

    const bool leaf_now =
        node.nu0.size() + node.nu1.size() == static_cast<std::size_t>(problem.n());
    if (res.pruned ||
        pruning_test(node.lower_bound, st.incumbent_value, opts.rel_gap_tol)) {
      st.closed_min = std::min(st.closed_min, node.lower_bound);
    } else if (leaf_now) {
      const double leaf_value = objective(problem, res.x);
      st.try_update_incumbent(res.x, leaf_value);
      if (!leaf_at_entry &&
          !pruning_test(node.lower_bound, st.incumbent_value, opts.rel_gap_tol)) {
        // Became a leaf through fixations: re-certify tightly.
        lk.unlock();
        BoundingResult res2 = bounder.solve_lower_bound(
            node, incumbent_getter, deadline,
            std::min(opts.inner_tol, 0.01 * opts.rel_gap_tol));
        lk.lock();
        node.lower_bound = std::max(node.lower_bound, res2.lower_bound);
        st.try_update_incumbent(res2.x, objective(problem, res2.x));
      }
      st.closed_min = std::min(st.closed_min, node.lower_bound);
    } else {
      node.x_warm = res.x;
      auto [child0, child1] = branch(node, res.x);
      st.queue.push(std::move(child0));
      st.queue.push(std::move(child1));
    }

    st.in_flight.erase(flight_it);
    st.processing -= 1;
    if (opts.progress) {
      opts.progress({st.node_count, st.global_lower(), st.incumbent_value,
                     st.queue.size()});
    }
    st.cv.notify_all();
  }
}

}  // namespace

SolveResult solve(const Problem& problem, const SolverOptions& opts,
                  const SparseVec& warm_start) {
  opts.validate();
  const Relaxation relax(problem.penalty(), problem.lmbd(), problem.n());

  SharedState st(opts.exploration);
  st.start = Clock::now();
  st.incumbent_x = Eigen::VectorXd::Zero(problem.n());

  const Eigen::VectorXd warm_dense = warm_start.to_dense(problem.n());
  if (warm_start.support_size() > 0) {
    const double warm_value = objective(problem, warm_dense);
    if (warm_value < kInf) st.try_update_incumbent(warm_dense, warm_value);
  }

  Node root = Node::root(problem.n());
  root.workset = initial_workset(problem);
  st.queue.push(std::move(root));

  if (opts.workers <= 1) {
    worker_loop(problem, relax, opts, st);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(opts.workers);
    for (int t = 0; t < opts.workers; ++t) {
      pool.emplace_back(
          [&] { worker_loop(problem, relax, opts, st); });
    }
    for (auto& th : pool) th.join();
  }

  SolveResult result;
  result.status = st.status;
  result.node_count = st.node_count;
  result.solve_time =
      std::chrono::duration<double>(Clock::now() - st.start).count();
  result.objective = st.incumbent_value;
  result.x_opt = SparseVec::from_dense(st.incumbent_x);
  const double lower = st.global_lower();
  if (st.incumbent_value == kInf || lower == -kInf) {
    result.rel_gap = kInf;
  } else {
    result.rel_gap = std::max(st.incumbent_value - lower, 0.0) /
                     std::max(1.0, std::abs(st.incumbent_value));
  }
  return result;
}

SolveResult solve(const Problem& problem, const SolverOptions& opts) {
  return solve(problem, opts, SparseVec{});
}

}  // namespace l0bb
