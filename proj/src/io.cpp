#include "l0bb/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace l0bb {

using nlohmann::json;

namespace {

std::string losses_catalogue() {
  return "leastsquares, logistic, squaredhinge, logcosh, kullbackleibler";
}

std::string penalties_catalogue() {
  return "Bigm, BigmL1norm, BigmL2norm, BigmPositiveL1norm, "
         "BigmPositiveL2norm, Bounds, L1L2norm, L1norm, L2norm, "
         "PositiveL1norm, PositiveL2norm";
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double require_number(const json& obj, const std::string& key) {
  if (!obj.contains(key)) {
    throw std::invalid_argument("missing required parameter '" + key + "'");
  }
  if (!obj[key].is_number()) {
    throw std::invalid_argument("parameter '" + key + "' must be a number");
  }
  return obj[key].get<double>();
}

Eigen::VectorXd vector_from_json(const json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("expected a numeric array");
  Eigen::VectorXd v(arr.size());
  for (std::size_t j = 0; j < arr.size(); ++j) v[j] = arr[j].get<double>();
  return v;
}

Eigen::VectorXd load_targets(const json& obj, const std::string& base_dir) {
  if (obj.contains("y")) return vector_from_json(obj["y"]);
  if (obj.contains("y_file")) {
    const std::filesystem::path p =
        std::filesystem::path(base_dir) / obj["y_file"].get<std::string>();
    return load_csv_vector(p.string());
  }
  throw std::invalid_argument("loss requires 'y' or 'y_file'");
}

std::vector<double> parse_csv_line(const std::string& line) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::size_t pos = 0;
    const double v = std::stod(cell, &pos);
    row.push_back(v);
  }
  return row;
}

}  // namespace

Eigen::MatrixXd load_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(parse_csv_line(line));
    if (rows.size() > 1 && rows.back().size() != rows.front().size()) {
      throw std::invalid_argument("ragged rows in matrix file: " + path);
    }
  }
  if (rows.empty()) throw std::invalid_argument("empty matrix file: " + path);
  Eigen::MatrixXd A(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) A(r, c) = rows[r][c];
  }
  return A;
}

Eigen::VectorXd load_csv_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open vector file: " + path);
  std::vector<double> vals;
  std::string line;
  while (std::getline(in, line)) {
    for (double v : parse_csv_line(line)) vals.push_back(v);
  }
  Eigen::VectorXd y(vals.size());
  for (std::size_t j = 0; j < vals.size(); ++j) y[j] = vals[j];
  return y;
}

Instance parse_instance(const json& doc, const std::string& base_dir) {
  Instance inst;

  if (doc.contains("matrix")) {
    const json& arr = doc["matrix"];
    if (!arr.is_array() || arr.empty() || !arr[0].is_array()) {
      throw std::invalid_argument("'matrix' must be an array of rows");
    }
    const std::size_t cols = arr[0].size();
    inst.A.resize(arr.size(), cols);
    for (std::size_t r = 0; r < arr.size(); ++r) {
      if (arr[r].size() != cols) throw std::invalid_argument("ragged 'matrix' rows");
      for (std::size_t c = 0; c < cols; ++c) inst.A(r, c) = arr[r][c].get<double>();
    }
  } else if (doc.contains("matrix_file")) {
    const std::filesystem::path p =
        std::filesystem::path(base_dir) / doc["matrix_file"].get<std::string>();
    inst.A = load_csv_matrix(p.string());
  } else {
    throw std::invalid_argument("instance requires 'matrix' or 'matrix_file'");
  }

  if (!doc.contains("loss") || !doc["loss"].is_object()) {
    throw std::invalid_argument("instance requires a 'loss' object");
  }
  const json& lobj = doc["loss"];
  const std::string lname = lower(lobj.value("name", ""));
  if (lname == "leastsquares") {
    inst.loss = Loss::leastsquares(load_targets(lobj, base_dir));
  } else if (lname == "logistic") {
    inst.loss = Loss::logistic(load_targets(lobj, base_dir));
  } else if (lname == "squaredhinge") {
    inst.loss = Loss::squaredhinge(load_targets(lobj, base_dir));
  } else if (lname == "logcosh") {
    inst.loss = Loss::logcosh(load_targets(lobj, base_dir));
  } else if (lname == "kullbackleibler") {
    inst.loss = Loss::kullback_leibler(load_targets(lobj, base_dir),
                                       require_number(lobj, "eps"));
  } else {
    throw std::invalid_argument("unknown loss '" + lobj.value("name", "") +
                                "'; valid names: " + losses_catalogue());
  }

  if (!doc.contains("penalty") || !doc["penalty"].is_object()) {
    throw std::invalid_argument("instance requires a 'penalty' object");
  }
  const json& pobj = doc["penalty"];
  const std::string pname = lower(pobj.value("name", ""));
  if (pname == "bigm") {
    inst.penalty = Penalty::bigm(require_number(pobj, "M"));
  } else if (pname == "bigml1norm") {
    inst.penalty = Penalty::bigm_l1norm(require_number(pobj, "M"),
                                        require_number(pobj, "alpha"));
  } else if (pname == "bigml2norm") {
    inst.penalty = Penalty::bigm_l2norm(require_number(pobj, "M"),
                                        require_number(pobj, "beta"));
  } else if (pname == "bigmpositivel1norm") {
    inst.penalty = Penalty::bigm_positive_l1norm(require_number(pobj, "M"),
                                                 require_number(pobj, "alpha"));
  } else if (pname == "bigmpositivel2norm") {
    inst.penalty = Penalty::bigm_positive_l2norm(require_number(pobj, "M"),
                                                 require_number(pobj, "beta"));
  } else if (pname == "bounds") {
    inst.penalty = Penalty::bounds(require_number(pobj, "x_lb"),
                                   require_number(pobj, "x_ub"));
  } else if (pname == "l1l2norm") {
    inst.penalty = Penalty::l1l2norm(require_number(pobj, "alpha"),
                                     require_number(pobj, "beta"));
  } else if (pname == "l1norm") {
    inst.penalty = Penalty::l1norm(require_number(pobj, "alpha"));
  } else if (pname == "l2norm") {
    inst.penalty = Penalty::l2norm(require_number(pobj, "beta"));
  } else if (pname == "positivel1norm") {
    inst.penalty = Penalty::positive_l1norm(require_number(pobj, "alpha"));
  } else if (pname == "positivel2norm") {
    inst.penalty = Penalty::positive_l2norm(require_number(pobj, "beta"));
  } else {
    throw std::invalid_argument("unknown penalty '" + pobj.value("name", "") +
                                "'; valid names: " + penalties_catalogue());
  }

  if (doc.contains("lmbd")) inst.lmbd = require_number(doc, "lmbd");

  if (doc.contains("path")) {
    const json& pspec = doc["path"];
    if (pspec.contains("lmbd_ratio_max")) {
      inst.path_spec.lmbd_ratio_max = pspec["lmbd_ratio_max"].get<double>();
    }
    if (pspec.contains("lmbd_ratio_min")) {
      inst.path_spec.lmbd_ratio_min = pspec["lmbd_ratio_min"].get<double>();
    }
    if (pspec.contains("lmbd_num")) {
      inst.path_spec.lmbd_num = pspec["lmbd_num"].get<int>();
    }
    if (pspec.contains("grid")) {
      std::vector<double> grid;
      for (const auto& v : pspec["grid"]) grid.push_back(v.get<double>());
      inst.path_spec.explicit_grid = std::move(grid);
    }
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed instance file: " + std::string(e.what()));
  }
  const std::string base_dir = std::filesystem::path(path).parent_path().string();
  return parse_instance(doc, base_dir.empty() ? "." : base_dir);
}

Problem Instance::problem() const {
  if (!lmbd) throw std::invalid_argument("instance has no 'lmbd' value");
  return Problem::make(A, loss, penalty, *lmbd);
}

json encode_double(double v) {
  if (std::isnan(v)) return "nan";
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

double decode_double(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw std::invalid_argument("invalid numeric string: " + s);
  }
  return v.get<double>();
}

namespace {

json options_to_json(const SolverOptions& opts) {
  json j;
  j["rel_gap_tol"] = opts.rel_gap_tol;
  j["inner_tol"] = opts.inner_tol;
  j["node_limit"] = opts.node_limit ? json(*opts.node_limit) : json(nullptr);
  j["time_limit"] = opts.time_limit ? json(*opts.time_limit) : json(nullptr);
  j["exploration"] = to_string(opts.exploration);
  j["simultaneous_pruning"] = opts.enable_simultaneous_pruning;
  j["screening"] = opts.enable_screening;
  j["workers"] = opts.workers;
  return j;
}

}  // namespace

json solve_result_to_json(const SolveResult& result, const SolverOptions& opts) {
  json j;
  j["status"] = to_string(result.status);
  j["objective"] = encode_double(result.objective);
  j["rel_gap"] = encode_double(result.rel_gap);
  j["node_count"] = result.node_count;
  j["solve_time_seconds"] = result.solve_time;
  j["solution"]["indices"] = result.x_opt.indices;
  json values = json::array();
  for (double v : result.x_opt.values) values.push_back(encode_double(v));
  j["solution"]["values"] = std::move(values);
  j["options"] = options_to_json(opts);
  return j;
}

SolveResult solve_result_from_json(const json& doc) {
  SolveResult r;
  const std::string status = doc.at("status").get<std::string>();
  if (status == "optimal") r.status = SolveStatus::Optimal;
  else if (status == "node_limit") r.status = SolveStatus::NodeLimit;
  else if (status == "time_limit") r.status = SolveStatus::TimeLimit;
  else throw std::invalid_argument("unknown status: " + status);
  r.objective = decode_double(doc.at("objective"));
  r.rel_gap = decode_double(doc.at("rel_gap"));
  r.node_count = doc.at("node_count").get<std::uint64_t>();
  r.solve_time = doc.at("solve_time_seconds").get<double>();
  r.x_opt.indices = doc.at("solution").at("indices").get<std::vector<int>>();
  for (const auto& v : doc.at("solution").at("values")) {
    r.x_opt.values.push_back(decode_double(v));
  }
  return r;
}

json path_result_to_json(const PathResult& path, const SolverOptions& opts,
                         bool with_selection) {
  json j;
  j["lmbd_max"] = encode_double(path.lmbd_max);
  json grid = json::array();
  json results = json::array();
  for (const PathEntry& e : path.entries) {
    grid.push_back(encode_double(e.lmbd));
    json entry = solve_result_to_json(e.result, opts);
    entry.erase("options");
    entry["lmbd"] = encode_double(e.lmbd);
    entry["bic"] = encode_double(e.bic);
    results.push_back(std::move(entry));
  }
  j["lmbd_grid"] = std::move(grid);
  j["results"] = std::move(results);
  j["options"] = options_to_json(opts);
  if (with_selection && !path.entries.empty()) {
    const PathEntry& best = select_by_bic(path);
    j["selected_lmbd"] = encode_double(best.lmbd);
    j["selected_bic"] = encode_double(best.bic);
  }
  return j;
}

}  // namespace l0bb
