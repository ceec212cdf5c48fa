//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "hawkes/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace hawkes {

double exp_kernel(double dt, double omega) {
  if (!(dt >= 0))
    throw std::invalid_argument("exp_kernel: dt must be non-negative");
  if (!(omega > 0))
    throw std::invalid_argument("exp_kernel: omega must be positive");
  return omega * std::exp(-omega * dt);
}

double exp_kernel_integral(double delta, double omega) {
  if (!(delta >= 0))
    throw std::invalid_argument("exp_kernel_integral: delta must be >= 0");
  if (!(omega > 0))
    throw std::invalid_argument("exp_kernel_integral: omega must be positive");
  return -std::expm1(-omega * delta);
}

double gaussian_text_kernel(const Eigen::Ref<const Eigen::VectorXd> &a,
                            const Eigen::Ref<const Eigen::VectorXd> &b,
                            double sigma) {
  if (a.size() != b.size())
    throw std::invalid_argument("gaussian_text_kernel: dimension mismatch");
  if (!(sigma > 0))
    throw std::invalid_argument("gaussian_text_kernel: sigma must be positive");
  const double d2 = (a - b).squaredNorm();
  return std::exp(-d2 / (2.0 * sigma * sigma));
}

double softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

namespace {
  double sigmoid(double z) {
    if (z >= 0)
      return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
  }

  using RowMajorMap =
      Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                     Eigen::RowMajor>>;
  using RowMajorMutMap =
      Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::RowMajor>>;

  Eigen::Index count_weights(const std::vector<int> &sizes) {
    Eigen::Index n = 0;
    for (std::size_t k = 1; k < sizes.size(); ++k)
      n += static_cast<Eigen::Index>(sizes[k]) * (sizes[k - 1] + 1);
    return n;
  }
} // namespace

NeuralKernelNet::NeuralKernelNet(int embedding_dim,
                                 const std::vector<int> &hidden) {
  if (embedding_dim < 0)
    throw std::invalid_argument("NeuralKernelNet: negative embedding_dim");
  layer_sizes_.push_back(2 * embedding_dim + 1);
  for (int h : hidden) {
    if (h <= 0)
      throw std::invalid_argument("NeuralKernelNet: hidden sizes must be > 0");
    layer_sizes_.push_back(h);
  }
  layer_sizes_.push_back(1);
  weights_ = Eigen::VectorXd::Zero(count_weights(layer_sizes_));
}

NeuralKernelNet NeuralKernelNet::from_layers(std::vector<int> layer_sizes,
                                             Eigen::VectorXd weights) {
  if (layer_sizes.size() < 2 || layer_sizes.back() != 1
      || layer_sizes.front() < 1 || layer_sizes.front() % 2 != 1)
    throw std::invalid_argument(
        "NeuralKernelNet: layers must be [2V+1, ..., 1]");
  for (int s : layer_sizes)
    if (s <= 0)
      throw std::invalid_argument("NeuralKernelNet: layer sizes must be > 0");
  if (weights.size() != count_weights(layer_sizes))
    throw std::invalid_argument(
        "NeuralKernelNet: expected " + std::to_string(count_weights(layer_sizes))
        + " weights, got " + std::to_string(weights.size()));
  NeuralKernelNet net;
  net.layer_sizes_ = std::move(layer_sizes);
  net.weights_ = std::move(weights);
  return net;
}

void NeuralKernelNet::initialize(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Eigen::Index off = 0;
  for (std::size_t k = 1; k < layer_sizes_.size(); ++k) {
    const int in = layer_sizes_[k - 1], out = layer_sizes_[k];
    const double s = 1.0 / std::sqrt(static_cast<double>(in));
    std::uniform_real_distribution<double> dist(-s, s);
    const Eigen::Index n = static_cast<Eigen::Index>(out) * (in + 1);
    for (Eigen::Index i = 0; i < n; ++i)
      weights_[off + i] = dist(rng);
    off += n;
  }
}

int NeuralKernelNet::embedding_dim() const {
  return empty() ? 0 : (layer_sizes_.front() - 1) / 2;
}

Eigen::VectorXd
NeuralKernelNet::make_input(const Eigen::Ref<const Eigen::VectorXd> &x_past,
                            const Eigen::Ref<const Eigen::VectorXd> &x_now,
                            double dt) const {
  const int v = embedding_dim();
  if (x_past.size() != v || x_now.size() != v)
    throw std::invalid_argument("NeuralKernelNet: embedding dimension mismatch");
  Eigen::VectorXd in(2 * v + 1);
  in.head(v) = x_past;
  in.segment(v, v) = x_now;
  in[2 * v] = dt;
  return in;
}

double NeuralKernelNet::forward(const Eigen::Ref<const Eigen::VectorXd> &x_past,
                                double t_past,
                                const Eigen::Ref<const Eigen::VectorXd> &x_now,
                                double t_now) const {
  if (t_now < t_past)
    throw std::invalid_argument("NeuralKernelNet: t_now precedes t_past");
  return forward_dt(x_past, x_now, t_now - t_past);
}

double
NeuralKernelNet::forward_dt(const Eigen::Ref<const Eigen::VectorXd> &x_past,
                            const Eigen::Ref<const Eigen::VectorXd> &x_now,
                            double dt) const {
  if (empty())
    throw std::logic_error("NeuralKernelNet: not configured");
  Eigen::VectorXd a = make_input(x_past, x_now, dt);
  Eigen::Index off = 0;
  const std::size_t layers = layer_sizes_.size() - 1;
  for (std::size_t k = 0; k < layers; ++k) {
    const int in = layer_sizes_[k], out = layer_sizes_[k + 1];
    RowMajorMap Wk(weights_.data() + off, out, in);
    off += static_cast<Eigen::Index>(out) * in;
    Eigen::Map<const Eigen::VectorXd> bk(weights_.data() + off, out);
    off += out;
    Eigen::VectorXd z = Wk * a + bk;
    if (k + 1 < layers)
      a = z.array().tanh().matrix();
    else
      return softplus(z[0]);
  }
  return 0.0; // unreachable: at least one layer
}

Eigen::VectorXd
NeuralKernelNet::backward(const Eigen::Ref<const Eigen::VectorXd> &x_past,
                          double t_past,
                          const Eigen::Ref<const Eigen::VectorXd> &x_now,
                          double t_now, double upstream) const {
  if (t_now < t_past)
    throw std::invalid_argument("NeuralKernelNet: t_now precedes t_past");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(weights_.size());
  accumulate_gradient(x_past, x_now, t_now - t_past, upstream, g);
  return g;
}

double NeuralKernelNet::accumulate_gradient(
    const Eigen::Ref<const Eigen::VectorXd> &x_past,
    const Eigen::Ref<const Eigen::VectorXd> &x_now, double dt, double upstream,
    Eigen::Ref<Eigen::VectorXd> grad) const {
  if (empty())
    throw std::logic_error("NeuralKernelNet: not configured");
  if (grad.size() != weights_.size())
    throw std::invalid_argument("NeuralKernelNet: gradient buffer size");

  const std::size_t layers = layer_sizes_.size() - 1;
  std::vector<Eigen::VectorXd> acts;
  std::vector<Eigen::Index> offsets;
  acts.reserve(layers + 1);
  offsets.reserve(layers);
  acts.push_back(make_input(x_past, x_now, dt));

  Eigen::Index off = 0;
  double z_out = 0.0;
  for (std::size_t k = 0; k < layers; ++k) {
    const int in = layer_sizes_[k], out = layer_sizes_[k + 1];
    offsets.push_back(off);
    RowMajorMap Wk(weights_.data() + off, out, in);
    Eigen::Map<const Eigen::VectorXd> bk(
        weights_.data() + off + static_cast<Eigen::Index>(out) * in, out);
    off += static_cast<Eigen::Index>(out) * (in + 1);
    Eigen::VectorXd z = Wk * acts.back() + bk;
    if (k + 1 < layers)
      acts.push_back(z.array().tanh().matrix());
    else
      z_out = z[0];
  }

  // delta holds dLoss/dz for the current layer's pre-activations.
  Eigen::VectorXd delta(1);
  delta[0] = upstream * sigmoid(z_out);
  for (std::size_t k = layers; k-- > 0;) {
    const int in = layer_sizes_[k], out = layer_sizes_[k + 1];
    const Eigen::Index o = offsets[k];
    RowMajorMutMap gW(grad.data() + o, out, in);
    Eigen::Map<Eigen::VectorXd> gb(
        grad.data() + o + static_cast<Eigen::Index>(out) * in, out);
    gW.noalias() += delta * acts[k].transpose();
    gb += delta;
    if (k > 0) {
      RowMajorMap Wk(weights_.data() + o, out, in);
      Eigen::VectorXd back = Wk.transpose() * delta;
      delta = back.array() * (1.0 - acts[k].array().square());
    }
  }
  return softplus(z_out);
}

} // namespace hawkes
