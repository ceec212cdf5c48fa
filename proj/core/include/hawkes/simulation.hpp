//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef HAWKES_SIMULATION_HPP_
#define HAWKES_SIMULATION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hawkes/core.hpp"
#include "hawkes/params.hpp"

namespace hawkes {

struct EmbeddingCluster {
  Eigen::VectorXd mean;
  double stddev = 1.0;
};

struct SimSpec {
  Eigen::VectorXd mu;    // per-label constant base rate
  Eigen::MatrixXd alpha; // alpha(source, target)
  double omega = 1.0;
  double T = 50.0;
  int num_threads = 1;
  /// One cluster per label, or empty for zero embeddings of embedding_dim.
  std::vector<EmbeddingCluster> clusters;
  int embedding_dim = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> label_names;
  int workers = 1;

  /// Throws std::invalid_argument for shape errors and for an unstable
  /// branching matrix (spectral radius of alpha >= 1).
  void check() const;
};

/// Largest eigenvalue magnitude.
double spectral_radius(const Eigen::Ref<const Eigen::MatrixXd> &m);

/// Places label k's mean at c * e_k with c chosen so every pair of means is
/// `separation` apart. Requires dim >= labels.
std::vector<EmbeddingCluster> orthogonal_clusters(int labels, int dim,
                                                  double separation,
                                                  double stddev);

/// Ogata thinning per thread, threads seeded independently from spec.seed.
Corpus simulate(const SimSpec &spec);

/// PlainMHP parameters matching the simulation dynamics.
ModelParams ground_truth_params(const SimSpec &spec);

struct RescalingResult {
  std::optional<double> p_value; // empty: insufficient data
  double statistic = 0.0;
  std::size_t samples = 0;
};

/// Time-rescaling residuals: compensator increments of the total PlainMHP
/// intensity between consecutive events (from 0 to the first event, then
/// event to event), KS-tested against Exponential(1).
RescalingResult time_rescaling_check(const Corpus &corpus,
                                     const ModelParams &true_params);

} // namespace hawkes

#endif // HAWKES_SIMULATION_HPP_
