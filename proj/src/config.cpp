#include "dpdrc/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dpdrc/errors.hpp"

namespace dpdrc {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& section,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ValidationError("config section '" + section + "' must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key))
      throw ValidationError("unknown field '" + key + "' in section '" + section + "'");
  }
}

const json& field(const json& obj, const std::string& section, const std::string& key) {
  if (!obj.contains(key))
    throw ValidationError("missing field '" + key + "' in section '" + section + "'");
  return obj.at(key);
}

Matrix parse_matrix(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw ValidationError("field '" + name + "' must be a nested (row-major) array");
  const auto rows = j.size();
  const auto cols = j.front().size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ValidationError("field '" + name + "' has ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number())
        throw ValidationError("field '" + name + "' has a non-numeric entry");
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

Vector parse_vector(const json& j, const std::string& name) {
  if (!j.is_array()) throw ValidationError("field '" + name + "' must be an array");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ValidationError("field '" + name + "' has a non-numeric entry");
    v(i) = j[i].get<double>();
  }
  return v;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

json vector_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  require_keys(root, "(top level)", {"plant", "cost", "privacy", "ambiguity", "experiment"});

  RunConfig cfg;
  const json& plant = field(root, "(top level)", "plant");
  require_keys(plant, "plant", {"A", "B", "C", "Sigma_w", "x_ini", "Sigma_ini", "N"});
  cfg.plant.A = parse_matrix(field(plant, "plant", "A"), "plant.A");
  cfg.plant.B = parse_matrix(field(plant, "plant", "B"), "plant.B");
  cfg.plant.C = parse_matrix(field(plant, "plant", "C"), "plant.C");
  cfg.plant.Sigma_w = parse_matrix(field(plant, "plant", "Sigma_w"), "plant.Sigma_w");
  cfg.plant.x_ini = parse_vector(field(plant, "plant", "x_ini"), "plant.x_ini");
  cfg.plant.Sigma_ini = parse_matrix(field(plant, "plant", "Sigma_ini"), "plant.Sigma_ini");
  const json& N = field(plant, "plant", "N");
  if (!N.is_number_integer() || N.get<int>() < 1)
    throw ValidationError("plant.N must be a positive integer");
  cfg.plant.N = N.get<int>();

  const json& cost = field(root, "(top level)", "cost");
  require_keys(cost, "cost", {"Q", "Q_N", "R"});
  cfg.weights.Q = parse_matrix(field(cost, "cost", "Q"), "cost.Q");
  cfg.weights.Q_N = parse_matrix(field(cost, "cost", "Q_N"), "cost.Q_N");
  cfg.weights.R = parse_matrix(field(cost, "cost", "R"), "cost.R");

  const json& priv = field(root, "(top level)", "privacy");
  require_keys(priv, "privacy", {"epsilon", "delta", "gamma", "mechanism"});
  cfg.privacy.epsilon = field(priv, "privacy", "epsilon").get<double>();
  cfg.privacy.delta = field(priv, "privacy", "delta").get<double>();
  cfg.privacy.gamma = field(priv, "privacy", "gamma").get<double>();
  const std::string mech = field(priv, "privacy", "mechanism").get<std::string>();
  if (mech == "gaussian") {
    cfg.privacy.mechanism = Mechanism::Gaussian;
  } else if (mech == "laplace") {
    cfg.privacy.mechanism = Mechanism::Laplace;
  } else {
    throw ValidationError("privacy.mechanism must be 'gaussian' or 'laplace'");
  }

  const json& amb = field(root, "(top level)", "ambiguity");
  require_keys(amb, "ambiguity", {"sigma2_ratio", "b_ratio"});
  cfg.sigma2_ratio = field(amb, "ambiguity", "sigma2_ratio").get<double>();
  cfg.b_ratio = field(amb, "ambiguity", "b_ratio").get<double>();
  if (!(cfg.sigma2_ratio >= 1.0) || !(cfg.b_ratio >= 1.0))
    throw ValidationError("ambiguity ratios must be >= 1");

  const json& exp = field(root, "(top level)", "experiment");
  require_keys(exp, "experiment",
               {"trials", "grid_points", "tau_grid", "master_seed", "epsilon_grid",
                "delta_grid"});
  cfg.trials = field(exp, "experiment", "trials").get<int>();
  cfg.grid_points = field(exp, "experiment", "grid_points").get<int>();
  cfg.tau_grid = field(exp, "experiment", "tau_grid").get<int>();
  cfg.master_seed = field(exp, "experiment", "master_seed").get<std::uint64_t>();
  for (const auto& e : field(exp, "experiment", "epsilon_grid"))
    cfg.epsilon_grid.push_back(e.get<double>());
  for (const auto& d : field(exp, "experiment", "delta_grid"))
    cfg.delta_grid.push_back(d.get<double>());
  if (cfg.trials < 1) throw ValidationError("experiment.trials must be >= 1");
  if (cfg.grid_points < 1) throw ValidationError("experiment.grid_points must be >= 1");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string RunConfig::to_json() const {
  json root;
  root["plant"] = {{"A", matrix_json(plant.A)},
                   {"B", matrix_json(plant.B)},
                   {"C", matrix_json(plant.C)},
                   {"Sigma_w", matrix_json(plant.Sigma_w)},
                   {"x_ini", vector_json(plant.x_ini)},
                   {"Sigma_ini", matrix_json(plant.Sigma_ini)},
                   {"N", plant.N}};
  root["cost"] = {{"Q", matrix_json(weights.Q)},
                  {"Q_N", matrix_json(weights.Q_N)},
                  {"R", matrix_json(weights.R)}};
  root["privacy"] = {{"epsilon", privacy.epsilon},
                     {"delta", privacy.delta},
                     {"gamma", privacy.gamma},
                     {"mechanism", privacy.mechanism == Mechanism::Gaussian ? "gaussian"
                                                                            : "laplace"}};
  root["ambiguity"] = {{"sigma2_ratio", sigma2_ratio}, {"b_ratio", b_ratio}};
  root["experiment"] = {{"trials", trials},
                        {"grid_points", grid_points},
                        {"tau_grid", tau_grid},
                        {"master_seed", master_seed},
                        {"epsilon_grid", epsilon_grid},
                        {"delta_grid", delta_grid}};
  return root.dump(2) + "\n";
}

RunConfig builtin_benchmark_config() {
  RunConfig cfg;
  cfg.plant.A = (Matrix(2, 2) << 1.15, 0.1, 0.0, 1.05).finished();
  cfg.plant.B = (Matrix(2, 1) << 1.0, 0.5).finished();
  cfg.plant.C = (Matrix(1, 2) << 1.0, 0.5).finished();
  cfg.plant.Sigma_w = 0.05 * Matrix::Identity(2, 2);
  cfg.plant.x_ini = (Vector(2) << 1.0, -1.0).finished();
  cfg.plant.Sigma_ini = 0.2 * Matrix::Identity(2, 2);
  cfg.plant.N = 20;
  cfg.weights.Q = Matrix::Identity(2, 2);
  cfg.weights.Q_N = Matrix::Identity(2, 2);
  cfg.weights.R = (Matrix(1, 1) << 0.3).finished();
  cfg.privacy.epsilon = std::log(2.0);
  cfg.privacy.delta = 0.5;
  cfg.privacy.gamma = 0.5;
  cfg.privacy.mechanism = Mechanism::Gaussian;
  cfg.epsilon_grid = {std::log(1.5), std::log(2.0), std::log(3.0)};
  cfg.delta_grid = {0.3, 0.5};
  return cfg;
}

void apply_override(RunConfig& cfg, const std::string& key_value) {
  const auto eq = key_value.find('=');
  if (eq == std::string::npos)
    throw ValidationError("override must look like section.key=value: " + key_value);
  const std::string key = key_value.substr(0, eq);
  const std::string value = key_value.substr(eq + 1);
  const auto as_double = [&]() {
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      throw ValidationError("override value for " + key + " is not numeric: " + value);
    }
  };
  const auto as_int = [&]() {
    const double v = as_double();
    if (v != std::floor(v)) throw ValidationError("override value for " + key + " must be an integer");
    return static_cast<long long>(v);
  };
  if (key == "privacy.epsilon") {
    cfg.privacy.epsilon = as_double();
  } else if (key == "privacy.delta") {
    cfg.privacy.delta = as_double();
  } else if (key == "privacy.gamma") {
    cfg.privacy.gamma = as_double();
  } else if (key == "privacy.mechanism") {
    if (value == "gaussian") {
      cfg.privacy.mechanism = Mechanism::Gaussian;
    } else if (value == "laplace") {
      cfg.privacy.mechanism = Mechanism::Laplace;
    } else {
      throw ValidationError("privacy.mechanism must be 'gaussian' or 'laplace'");
    }
  } else if (key == "ambiguity.sigma2_ratio") {
    cfg.sigma2_ratio = as_double();
  } else if (key == "ambiguity.b_ratio") {
    cfg.b_ratio = as_double();
  } else if (key == "experiment.trials") {
    cfg.trials = static_cast<int>(as_int());
  } else if (key == "experiment.grid_points") {
    cfg.grid_points = static_cast<int>(as_int());
  } else if (key == "experiment.tau_grid") {
    cfg.tau_grid = static_cast<int>(as_int());
  } else if (key == "experiment.master_seed") {
    cfg.master_seed = static_cast<std::uint64_t>(as_int());
  } else if (key == "plant.N") {
    cfg.plant.N = static_cast<int>(as_int());
  } else {
    throw ValidationError("override references unknown config key: " + key);
  }
}

}  // namespace dpdrc
