#include "l0bb/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "l0bb/bnb.hpp"
#include "l0bb/io.hpp"
#include "l0bb/path.hpp"

namespace l0bb {

namespace {

struct CommonArgs {
  std::string instance_path;
  std::string output_path;
  double rel_gap_tol = SolverOptions{}.rel_gap_tol;
  double inner_tol = SolverOptions{}.inner_tol;
  std::optional<std::uint64_t> node_limit;
  std::optional<double> time_limit;
  std::string exploration = "best-first";
  bool no_screening = false;
  bool no_simultaneous_pruning = false;
  int workers = 1;
  bool verbose = false;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("instance", args.instance_path, "Instance file (JSON)")
      ->required();
  cmd->add_option("-o,--output", args.output_path,
                  "Write the result to this path instead of standard output");
  cmd->add_option("--rel-gap-tol", args.rel_gap_tol, "Termination gap");
  cmd->add_option("--inner-tol", args.inner_tol, "Bounding solver accuracy");
  cmd->add_option("--node-limit", args.node_limit, "Stop after this many nodes");
  cmd->add_option("--time-limit", args.time_limit, "Stop after this many seconds");
  cmd->add_option("--exploration", args.exploration,
                  "Exploration strategy: best-first, depth-first, breadth-first")
      ->check(CLI::IsMember({"best-first", "depth-first", "breadth-first"}));
  cmd->add_flag("--no-screening", args.no_screening, "Disable screening tests");
  cmd->add_flag("--no-simultaneous-pruning", args.no_simultaneous_pruning,
                "Disable simultaneous pruning");
  cmd->add_option("--workers", args.workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--verbose", args.verbose, "Per-node progress on stderr");
}

SolverOptions options_from_args(const CommonArgs& args) {
  SolverOptions opts;
  opts.rel_gap_tol = args.rel_gap_tol;
  opts.inner_tol = args.inner_tol;
  opts.node_limit = args.node_limit;
  opts.time_limit = args.time_limit;
  if (args.exploration == "depth-first") opts.exploration = Exploration::DepthFirst;
  else if (args.exploration == "breadth-first") opts.exploration = Exploration::BreadthFirst;
  else opts.exploration = Exploration::BestFirst;
  opts.enable_screening = !args.no_screening;
  opts.enable_simultaneous_pruning = !args.no_simultaneous_pruning;
  opts.workers = args.workers;
  if (args.verbose) {
    opts.progress = [](const Progress& p) {
      std::fprintf(stderr, "node %llu  lower %.9g  upper %.9g  queue %zu\n",
                   static_cast<unsigned long long>(p.node_count),
                   p.global_lower, p.incumbent_value, p.queue_size);
    };
  }
  return opts;
}

void emit(const nlohmann::json& doc, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(output_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + output_path);
    out << doc.dump(2) << "\n";
  }
}

int status_exit_code(SolveStatus s) {
  return s == SolveStatus::Optimal ? 0 : 2;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Exact solver for l0-regularized problems"};
  app.require_subcommand(1);

  CommonArgs solve_args;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one instance");
  add_common_options(solve_cmd, solve_args);

  CommonArgs path_args;
  double ratio_min = -1.0;
  double ratio_max = -1.0;
  int lmbd_num = -1;
  bool select_bic = false;
  CLI::App* path_cmd = app.add_subcommand("path", "Regularization path over a lmbd grid");
  add_common_options(path_cmd, path_args);
  path_cmd->add_option("--lmbd-ratio-min", ratio_min, "Smallest lmbd / lmbd_max ratio");
  path_cmd->add_option("--lmbd-ratio-max", ratio_max, "Largest lmbd / lmbd_max ratio");
  path_cmd->add_option("--lmbd-num", lmbd_num, "Number of grid points");
  path_cmd->add_flag("--select-bic", select_bic, "Report the lmbd with the lowest BIC");

  std::string lmax_instance;
  CLI::App* lmax_cmd = app.add_subcommand("lmax", "Print lambda_max for an instance");
  lmax_cmd->add_option("instance", lmax_instance, "Instance file (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (solve_cmd->parsed()) {
      const Instance inst = load_instance(solve_args.instance_path);
      const Problem problem = inst.problem();
      const SolverOptions opts = options_from_args(solve_args);
      const SolveResult result = solve(problem, opts);
      emit(solve_result_to_json(result, opts), solve_args.output_path);
      return status_exit_code(result.status);
    }
    if (path_cmd->parsed()) {
      const Instance inst = load_instance(path_args.instance_path);
      PathSpec spec = inst.path_spec;
      if (ratio_min > 0.0) spec.lmbd_ratio_min = ratio_min;
      if (ratio_max > 0.0) spec.lmbd_ratio_max = ratio_max;
      if (lmbd_num > 0) spec.lmbd_num = lmbd_num;
      const SolverOptions opts = options_from_args(path_args);
      const PathResult path = fit_path(inst.A, inst.loss, inst.penalty, spec, opts);
      emit(path_result_to_json(path, opts, select_bic), path_args.output_path);
      for (const PathEntry& e : path.entries) {
        if (e.result.status != SolveStatus::Optimal) return 2;
      }
      return 0;
    }
    if (lmax_cmd->parsed()) {
      const Instance inst = load_instance(lmax_instance);
      const double lmax = lambda_max(inst.A, inst.loss, inst.penalty);
      if (lmax == std::numeric_limits<double>::min()) {
        std::fprintf(stderr,
                     "warning: gradient of the loss vanishes at zero; the "
                     "zero vector is optimal for every lmbd\n");
      }
      std::printf("%.17g\n", lmax);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}

}  // namespace l0bb
