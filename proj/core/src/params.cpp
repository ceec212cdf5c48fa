//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "hawkes/params.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace hawkes {

std::string_view to_string(Variant variant) {
  switch (variant) {
  case Variant::PlainMHP:
    return "PlainMHP";
  case Variant::TextualHP:
    return "TextualHP";
  case Variant::FullyTextualHP:
    return "FullyTextualHP";
  case Variant::NeuralKernelHP:
    return "NeuralKernelHP";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s == "plainmhp" || s == "plain")
    return Variant::PlainMHP;
  if (s == "textualhp" || s == "textual")
    return Variant::TextualHP;
  if (s == "fullytextualhp" || s == "fully-textual" || s == "fully_textual")
    return Variant::FullyTextualHP;
  if (s == "neuralkernelhp" || s == "neural")
    return Variant::NeuralKernelHP;
  throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

void ModelParams::check() const {
  const Eigen::Index k = alpha.rows();
  if (k < 1 || alpha.cols() != k)
    throw std::invalid_argument("alpha must be square and non-empty");
  if (W.rows() != k)
    throw std::invalid_argument("W must have one row per label");
  if (!alpha.allFinite() || (alpha.array() < 0).any())
    throw std::invalid_argument("alpha entries must be finite and >= 0");
  if (!W.allFinite())
    throw std::invalid_argument("W entries must be finite");
  if (!(omega > 0) || !(sigma > 0) || !(reg_C >= 0))
    throw std::invalid_argument("omega, sigma must be > 0 and reg_C >= 0");
  if (!label_names.empty() && static_cast<Eigen::Index>(label_names.size()) != k)
    throw std::invalid_argument("label_names size differs from label count");
  if (variant == Variant::PlainMHP) {
    if (mu.size() != k)
      throw std::invalid_argument("PlainMHP requires one mu per label");
    if (!mu.allFinite() || (mu.array() < 0).any() || mu.maxCoeff() <= 0)
      throw std::invalid_argument("mu must be >= 0 with at least one > 0");
  }
  if (variant == Variant::NeuralKernelHP) {
    if (net.empty())
      throw std::invalid_argument("NeuralKernelHP requires a network");
    if (net.embedding_dim() != W.cols())
      throw std::invalid_argument("network input does not match embedding_dim");
  }
}

ModelParams make_params(Variant variant, int num_labels, int embedding_dim) {
  ModelParams p;
  p.variant = variant;
  p.W = Eigen::MatrixXd::Zero(num_labels, embedding_dim);
  p.alpha = Eigen::MatrixXd::Zero(num_labels, num_labels);
  if (variant == Variant::PlainMHP)
    p.mu = Eigen::VectorXd::Constant(num_labels, 1.0 / num_labels);
  return p;
}

} // namespace hawkes
