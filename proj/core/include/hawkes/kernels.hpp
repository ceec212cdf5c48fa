//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef HAWKES_KERNELS_HPP_
#define HAWKES_KERNELS_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace hawkes {

/// Normalized exponential triggering kernel omega * exp(-omega * dt).
/// Throws std::invalid_argument for dt < 0 or omega <= 0.
double exp_kernel(double dt, double omega);

/// 1 - exp(-omega * delta), the mass of exp_kernel on [0, delta].
double exp_kernel_integral(double delta, double omega);

/// exp(-|a - b|^2 / (2 sigma^2)).
double gaussian_text_kernel(const Eigen::Ref<const Eigen::VectorXd> &a,
                            const Eigen::Ref<const Eigen::VectorXd> &b,
                            double sigma);

/// Feed-forward triggering kernel F([x_past, x_now, dt]) with tanh hidden
/// layers and a softplus output unit, so every output is strictly positive.
///
/// Parameters live in one flat vector. For each layer in order, the
/// row-major (out x in) weight matrix is followed by the bias vector.
class NeuralKernelNet {
public:
  NeuralKernelNet() = default;

  /// Zero-initialized net with input 2 * embedding_dim + 1 and one output.
  NeuralKernelNet(int embedding_dim, const std::vector<int> &hidden);

  /// Builds a net from explicit layer sizes; the last size must be 1.
  static NeuralKernelNet from_layers(std::vector<int> layer_sizes,
                                     Eigen::VectorXd weights);

  /// Uniform in [-s, s] with s = 1 / sqrt(fan_in), weights and biases alike.
  void initialize(std::uint64_t seed);

  bool empty() const { return layer_sizes_.empty(); }
  int embedding_dim() const;
  const std::vector<int> &layer_sizes() const { return layer_sizes_; }
  Eigen::Index num_weights() const { return weights_.size(); }
  const Eigen::VectorXd &weights() const { return weights_; }
  Eigen::VectorXd &weights() { return weights_; }

  double forward(const Eigen::Ref<const Eigen::VectorXd> &x_past,
                 double t_past,
                 const Eigen::Ref<const Eigen::VectorXd> &x_now,
                 double t_now) const;
  double forward_dt(const Eigen::Ref<const Eigen::VectorXd> &x_past,
                    const Eigen::Ref<const Eigen::VectorXd> &x_now,
                    double dt) const;

  /// Returns upstream * dF/dweights.
  Eigen::VectorXd backward(const Eigen::Ref<const Eigen::VectorXd> &x_past,
                           double t_past,
                           const Eigen::Ref<const Eigen::VectorXd> &x_now,
                           double t_now, double upstream) const;

  /// Adds upstream * dF/dweights into grad and returns F. `grad` is owned by
  /// the caller and must not be shared across concurrent calls.
  double accumulate_gradient(const Eigen::Ref<const Eigen::VectorXd> &x_past,
                             const Eigen::Ref<const Eigen::VectorXd> &x_now,
                             double dt, double upstream,
                             Eigen::Ref<Eigen::VectorXd> grad) const;

private:
  Eigen::VectorXd make_input(const Eigen::Ref<const Eigen::VectorXd> &x_past,
                             const Eigen::Ref<const Eigen::VectorXd> &x_now,
                             double dt) const;

  std::vector<int> layer_sizes_;
  Eigen::VectorXd weights_;
};

double softplus(double z);

} // namespace hawkes

#endif // HAWKES_KERNELS_HPP_
