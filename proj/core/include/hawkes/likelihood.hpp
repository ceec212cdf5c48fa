//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef HAWKES_LIKELIHOOD_HPP_
#define HAWKES_LIKELIHOOD_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hawkes/core.hpp"
#include "hawkes/params.hpp"

namespace hawkes {

/// Monte Carlo settings for the NeuralKernelHP compensator. Sample times are
/// a pure function of (seed, thread index), so holding the seed fixed
/// freezes the samples across objective and gradient evaluations.
struct McConfig {
  int samples = 50;
  std::uint64_t seed = 0;
};

struct EvalOptions {
  McConfig mc;
  int workers = 1;
};

/// Log arguments below this are clamped.
inline constexpr double kLogFloor = 1e-300;

struct LLBreakdown {
  double event_term = 0.0;
  double compensator_term = 0.0;
  double regularizer_term = 0.0;
  double total = 0.0;
  int clamped_events = 0;
};

struct GradientBundle {
  Eigen::MatrixXd d_alpha;
  Eigen::MatrixXd d_W;
  Eigen::VectorXd d_nn;
  Eigen::VectorXd d_mu;

  static GradientBundle zeros_like(const ModelParams &params);
  GradientBundle &operator+=(const GradientBundle &other);
};

LLBreakdown log_likelihood(const ModelParams &params, const Corpus &corpus,
                           const EvalOptions &options = {});

GradientBundle gradients(const ModelParams &params, const Corpus &corpus,
                         const EvalOptions &options = {});

std::pair<LLBreakdown, GradientBundle>
log_likelihood_and_gradients(const ModelParams &params, const Corpus &corpus,
                             const EvalOptions &options = {});

/// `samples` uniform draws on [0, T] from the stream seeded by `seed`.
std::vector<double> mc_sample_times(double T, int samples, std::uint64_t seed);

/// Seed used for thread `index` when evaluating a corpus under `mc`.
std::uint64_t thread_mc_seed(std::uint64_t base, std::size_t index);

/// T times the mean over sampled times of the total intensity. Returns 0
/// when T = 0.
double mc_compensator(const ModelParams &params, const Thread &thread,
                      int samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Parameter packing shared by the optimizer and the gradient checker.

struct ParamBlock {
  std::string name; // "mu", "W", "alpha" or "nn"
  Eigen::Index offset = 0;
  Eigen::Index size = 0;
  std::optional<double> lower_bound;
};

/// Blocks trained for the variant: mu+alpha for PlainMHP, W+alpha for the
/// text variants, plus nn for NeuralKernelHP.
std::vector<ParamBlock> param_layout(const ModelParams &params);
Eigen::VectorXd pack_params(const ModelParams &params,
                            const std::vector<ParamBlock> &layout);
void unpack_params(const Eigen::VectorXd &theta,
                   const std::vector<ParamBlock> &layout,
                   ModelParams &params);
Eigen::VectorXd pack_gradient(const GradientBundle &grad,
                              const std::vector<ParamBlock> &layout);

// ---------------------------------------------------------------------------
// Finite-difference gradient checking.

struct GradCheckOptions {
  double tolerance = 1e-5;
  double step = 1e-5;
  double fallback_step = 1e-6;
  EvalOptions eval;
  /// Fault injection: negate the largest-magnitude analytic entry of this
  /// block before comparing.
  std::optional<std::string> corrupt_block;
};

struct GradCheckBlock {
  std::string name;
  double max_rel_error = 0.0;
  Eigen::Index entries = 0;
  std::vector<Eigen::Index> one_sided; // entries within a step of the bound
  bool passed = true;
};

struct GradCheckReport {
  std::vector<GradCheckBlock> blocks;
  double tolerance = 0.0;
  bool passed = true;

  std::string to_string() const;
};

/// Compares analytic gradients with central differences. The error of an
/// entry is |a - n| / max(|a|, |n|, 1e-4). Entries whose value lies within
/// two steps of a lower bound use a second-order forward difference and are
/// reported as one-sided.
GradCheckReport grad_check(const ModelParams &params, const Corpus &corpus,
                           const GradCheckOptions &options = {});

} // namespace hawkes

#endif // HAWKES_LIKELIHOOD_HPP_
