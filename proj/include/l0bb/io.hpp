#pragma once

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>

#include "l0bb/path.hpp"
#include "l0bb/problem.hpp"

namespace l0bb {

/// Parsed instance file: matrix, loss, penalty and either a single lmbd or a
/// path spec (or both; commands pick what they need).
struct Instance {
  Eigen::MatrixXd A;
  Loss loss = Loss::leastsquares(Eigen::VectorXd::Zero(1));
  Penalty penalty = Penalty::l1norm(1.0);
  std::optional<double> lmbd;
  PathSpec path_spec;

  Problem problem() const;
};

/// Headerless comma-separated numeric file, m rows by n columns.
Eigen::MatrixXd load_csv_matrix(const std::string& path);
/// All numbers in the file, in row-major order, as one vector.
Eigen::VectorXd load_csv_vector(const std::string& path);

/// Parses an instance from JSON text or a file. Relative file references
/// inside the instance resolve against the instance file's directory.
Instance parse_instance(const nlohmann::json& doc, const std::string& base_dir);
Instance load_instance(const std::string& path);

nlohmann::json solve_result_to_json(const SolveResult& result,
                                    const SolverOptions& opts);
SolveResult solve_result_from_json(const nlohmann::json& doc);

nlohmann::json path_result_to_json(const PathResult& path,
                                   const SolverOptions& opts,
                                   bool with_selection);

/// Numbers round-trip losslessly; nonfinite values are encoded as the
/// strings "inf", "-inf", "nan".
nlohmann::json encode_double(double v);
double decode_double(const nlohmann::json& v);

}  // namespace l0bb
