//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "hawkes/estimation.hpp"
#include "hawkes/util.hpp"

namespace hawkes {
namespace {
  using ojson = nlohmann::ordered_json;

  constexpr const char *kFormatTag = "hawkes-stance-model";

  ojson matrix_to_json(const Eigen::MatrixXd &m) {
    ojson rows = ojson::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      ojson row = ojson::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        row.push_back(m(r, c));
      rows.push_back(std::move(row));
    }
    return rows;
  }

  ojson vector_to_json(const Eigen::VectorXd &v) {
    ojson arr = ojson::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
      arr.push_back(v[i]);
    return arr;
  }

  [[noreturn]] void fail(const std::string &msg) {
    throw DataError("model file: " + msg);
  }

  const ojson &field(const ojson &obj, const char *key) {
    if (!obj.contains(key))
      fail(std::string("missing field '") + key + "'");
    return obj[key];
  }

  double number(const ojson &obj, const char *key) {
    const ojson &v = field(obj, key);
    if (!v.is_number())
      fail(std::string("field '") + key + "' must be a number");
    return v.get<double>();
  }

  int integer(const ojson &obj, const char *key) {
    const ojson &v = field(obj, key);
    if (!v.is_number_integer())
      fail(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
  }

  Eigen::VectorXd json_to_vector(const ojson &arr, const char *what,
                                 Eigen::Index expected) {
    if (!arr.is_array() || static_cast<Eigen::Index>(arr.size()) != expected)
      fail(std::string(what) + " must be an array of "
           + std::to_string(expected) + " numbers");
    Eigen::VectorXd v(expected);
    for (Eigen::Index i = 0; i < expected; ++i) {
      if (!arr[i].is_number())
        fail(std::string(what) + " entries must be numbers");
      v[i] = arr[i].get<double>();
    }
    return v;
  }

  Eigen::MatrixXd json_to_matrix(const ojson &arr, const char *what,
                                 Eigen::Index rows, Eigen::Index cols) {
    if (!arr.is_array() || static_cast<Eigen::Index>(arr.size()) != rows)
      fail(std::string(what) + " must have " + std::to_string(rows) + " rows");
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
      m.row(r) = json_to_vector(arr[r], what, cols).transpose();
    return m;
  }
} // namespace

std::string model_to_string(const ModelParams &params) {
  params.check();
  ojson j;
  j["format"] = kFormatTag;
  j["version"] = kModelFormatVersion;
  j["variant"] = std::string(to_string(params.variant));
  j["num_labels"] = params.num_labels();
  j["embedding_dim"] = params.embedding_dim();
  j["label_names"] = params.label_names;
  j["omega"] = params.omega;
  j["sigma"] = params.sigma;
  j["reg_C"] = params.reg_C;
  j["W"] = matrix_to_json(params.W);
  j["alpha"] = matrix_to_json(params.alpha);
  if (params.variant == Variant::PlainMHP)
    j["mu"] = vector_to_json(params.mu);
  if (params.variant == Variant::NeuralKernelHP) {
    j["nn"] = {{"layer_sizes", params.net.layer_sizes()},
               {"weights", vector_to_json(params.net.weights())}};
  }
  return j.dump(2) + "\n";
}

void save_model(const ModelParams &params, const std::filesystem::path &path) {
  write_file_atomic(path, model_to_string(params));
}

void save_model(const FitResult &result, const std::filesystem::path &path) {
  save_model(result.params, path);
}

ModelParams model_from_string(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const ojson::parse_error &e) {
    fail("parse error at byte offset " + std::to_string(e.byte) + ": "
         + e.what());
  }
  if (!j.is_object())
    fail("top level must be an object");

  static const std::set<std::string> known = {
      "format", "version", "variant", "num_labels", "embedding_dim",
      "label_names", "omega", "sigma", "reg_C", "W", "alpha", "mu", "nn"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      fail("unknown field '" + it.key() + "'");

  const ojson &format = field(j, "format");
  if (!format.is_string() || format.get<std::string>() != kFormatTag)
    fail(std::string("format tag must be '") + kFormatTag + "'");
  const int version = integer(j, "version");
  if (version != kModelFormatVersion)
    fail("unsupported version " + std::to_string(version) + " (expected "
         + std::to_string(kModelFormatVersion) + ")");

  ModelParams p;
  try {
    p.variant = parse_variant(field(j, "variant").get<std::string>());
  } catch (const std::exception &e) {
    fail(std::string("bad variant: ") + e.what());
  }
  const int k = integer(j, "num_labels");
  const int v = integer(j, "embedding_dim");
  if (k < 1 || v < 0)
    fail("num_labels must be >= 1 and embedding_dim >= 0");

  const ojson &names = field(j, "label_names");
  if (!names.is_array())
    fail("label_names must be an array");
  for (const auto &n : names) {
    if (!n.is_string())
      fail("label_names entries must be strings");
    p.label_names.push_back(n.get<std::string>());
  }
  p.omega = number(j, "omega");
  p.sigma = number(j, "sigma");
  p.reg_C = number(j, "reg_C");
  p.W = json_to_matrix(field(j, "W"), "W", k, v);
  p.alpha = json_to_matrix(field(j, "alpha"), "alpha", k, k);

  if (p.variant == Variant::PlainMHP)
    p.mu = json_to_vector(field(j, "mu"), "mu", k);
  else if (j.contains("mu"))
    fail("'mu' is only valid for PlainMHP");

  if (p.variant == Variant::NeuralKernelHP) {
    const ojson &nn = field(j, "nn");
    if (!nn.is_object() || nn.size() != 2 || !nn.contains("layer_sizes")
        || !nn.contains("weights"))
      fail("nn must be {layer_sizes, weights}");
    std::vector<int> sizes;
    for (const auto &s : nn["layer_sizes"]) {
      if (!s.is_number_integer())
        fail("nn.layer_sizes entries must be integers");
      sizes.push_back(s.get<int>());
    }
    const ojson &w = nn["weights"];
    try {
      p.net = NeuralKernelNet::from_layers(
          sizes, json_to_vector(w, "nn.weights",
                                static_cast<Eigen::Index>(w.size())));
    } catch (const std::invalid_argument &e) {
      fail(e.what());
    }
  } else if (j.contains("nn")) {
    fail("'nn' is only valid for NeuralKernelHP");
  }

  try {
    p.check();
  } catch (const std::invalid_argument &e) {
    fail(e.what());
  }
  return p;
}

ModelParams load_model(const std::filesystem::path &path) {
  try {
    return model_from_string(read_file(path));
  } catch (const DataError &e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

} // namespace hawkes
