#pragma once

#include "l0bb/problem.hpp"

namespace l0bb {

struct OracleOptions {
  int max_dim = 12;       // hard cap on n (2^n supports), at most 20
  double inner_tol = 1e-10;

  void validate() const;
};

/// Reference exact solver by exhaustive support enumeration. For each
/// support the convex restricted problem is solved by a self-contained
/// coordinate descent, independent of the bounding machinery; candidates are
/// scored through the exact objective. Supports are visited by increasing
/// cardinality (lexicographic within), so ties resolve to the smaller
/// support, then to the lexicographically first one. Cardinalities whose
/// lmbd cost alone cannot beat the best found are skipped.
SolveResult brute_force_solve(const Problem& problem,
                              const OracleOptions& opts = {});

}  // namespace l0bb
