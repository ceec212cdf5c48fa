//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef HAWKES_ESTIMATION_HPP_
#define HAWKES_ESTIMATION_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hawkes/core.hpp"
#include "hawkes/likelihood.hpp"
#include "hawkes/params.hpp"

namespace hawkes {

struct NeuralTrainConfig {
  double learning_rate = 0.005;
  double momentum = 0.9;
  std::vector<int> hidden = {20, 20};
  int epochs = 300;
  int mc_samples = 50;
};

struct TrainConfig {
  Variant variant = Variant::TextualHP;
  double omega = 0.05;
  double sigma = 0.05;
  double reg_C = 0.05;
  int max_iterations = 500;
  double convergence_tol = 1e-7;
  std::uint64_t seed = 0;
  int lbfgs_memory = 10;
  int workers = 1;
  NeuralTrainConfig nn;

  void check() const;
};

/// Applies one `key=value` setting. Keys: variant, omega, sigma, reg_C,
/// max_iterations, convergence_tol, seed, lbfgs_memory, workers,
/// nn.learning_rate, nn.momentum, nn.hidden (comma list), nn.epochs,
/// nn.mc_samples. Unknown keys and unparsable values throw DataError.
void apply_setting(TrainConfig &config, std::string_view key,
                   std::string_view value);

/// Reads a flat key=value file; '#' starts a comment.
void apply_config_file(TrainConfig &config, const std::filesystem::path &path);

/// Every key=value pair, one per line, in apply_setting order.
std::string describe(const TrainConfig &config);

/// Lower bound kept on alpha (and mu) after every accepted step.
inline constexpr double kParamFloor = 1e-10;

struct FitResult {
  ModelParams params;
  LLBreakdown final_ll;
  int iterations = 0;
  bool converged = false;
  std::vector<double> ll_trace;
};

/// W = 0, alpha = 0.1, mu = N / (M * mean horizon) / |Y| per label, and a
/// seeded neural kernel for NeuralKernelHP.
ModelParams init_params(const Corpus &corpus, const TrainConfig &config,
                        std::uint64_t seed);

/// Maximizes the regularized log-likelihood. Projected L-BFGS for PlainMHP,
/// TextualHP and FullyTextualHP; adaptive-gradient ascent with heavy-ball
/// momentum for NeuralKernelHP. Deterministic given config.seed.
FitResult fit(const Corpus &corpus, const TrainConfig &config);

/// Model file: JSON object with a format tag and version (see README).
inline constexpr int kModelFormatVersion = 1;

void save_model(const ModelParams &params, const std::filesystem::path &path);
void save_model(const FitResult &result, const std::filesystem::path &path);
std::string model_to_string(const ModelParams &params);
ModelParams load_model(const std::filesystem::path &path);
ModelParams model_from_string(std::string_view text);

/// Throws DataError if the model's label count or embedding dimension does
/// not match the corpus.
void check_compatible(const ModelParams &params, const Corpus &corpus);

} // namespace hawkes

#endif // HAWKES_ESTIMATION_HPP_
