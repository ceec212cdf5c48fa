//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef HAWKES_PARAMS_HPP_
#define HAWKES_PARAMS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "hawkes/kernels.hpp"

namespace hawkes {

enum class Variant { PlainMHP, TextualHP, FullyTextualHP, NeuralKernelHP };

std::string_view to_string(Variant variant);

/// Accepts the canonical names and the short aliases plain, textual,
/// fully-textual and neural (case-insensitive).
Variant parse_variant(std::string_view name);

/// True for every variant whose base intensity is a softmax over W x.
inline bool uses_text(Variant v) { return v != Variant::PlainMHP; }

struct ModelParams {
  Variant variant = Variant::TextualHP;
  Eigen::MatrixXd W;     // labels x embedding_dim
  Eigen::MatrixXd alpha; // labels x labels, alpha(source, target)
  Eigen::VectorXd mu;    // PlainMHP only
  double omega = 0.05;
  double sigma = 0.05;
  double reg_C = 0.05;
  NeuralKernelNet net; // NeuralKernelHP only
  std::vector<std::string> label_names;

  int num_labels() const { return static_cast<int>(alpha.rows()); }
  int embedding_dim() const { return static_cast<int>(W.cols()); }

  /// Throws std::invalid_argument when a shape or range invariant fails.
  void check() const;
};

/// Zero W, zero alpha, and (for PlainMHP) uniform mu of the given size.
ModelParams make_params(Variant variant, int num_labels, int embedding_dim);

} // namespace hawkes

#endif // HAWKES_PARAMS_HPP_
