//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "hawkes/simulation.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "detail.hpp"
#include "hawkes/kernels.hpp"
#include "hawkes/stats.hpp"
#include "hawkes/util.hpp"

namespace hawkes {

double spectral_radius(const Eigen::Ref<const Eigen::MatrixXd> &m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("spectral_radius: matrix must be square");
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

void SimSpec::check() const {
  const Eigen::Index k = mu.size();
  if (k < 2)
    throw std::invalid_argument("SimSpec: need at least 2 labels");
  if (alpha.rows() != k || alpha.cols() != k)
    throw std::invalid_argument("SimSpec: alpha must be labels x labels");
  if ((mu.array() < 0).any() || mu.maxCoeff() <= 0 || !mu.allFinite())
    throw std::invalid_argument("SimSpec: mu must be >= 0 with one entry > 0");
  if ((alpha.array() < 0).any() || !alpha.allFinite())
    throw std::invalid_argument("SimSpec: alpha must be non-negative");
  if (!(omega > 0) || !(T > 0) || num_threads < 1)
    throw std::invalid_argument("SimSpec: omega, T, num_threads must be > 0");
  if (!label_names.empty() && static_cast<Eigen::Index>(label_names.size()) != k)
    throw std::invalid_argument("SimSpec: label_names size mismatch");
  if (!clusters.empty()) {
    if (static_cast<Eigen::Index>(clusters.size()) != k)
      throw std::invalid_argument("SimSpec: one cluster per label required");
    for (const auto &c : clusters)
      if (c.mean.size() != embedding_dim || !(c.stddev >= 0))
        throw std::invalid_argument(
            "SimSpec: cluster mean must have embedding_dim entries");
  }
  // The kernel integrates to 1, so alpha itself is the branching matrix.
  const double rho = spectral_radius(alpha);
  if (!(rho < 1.0))
    throw std::invalid_argument("SimSpec: unstable, spectral radius of alpha = "
                                + std::to_string(rho) + " >= 1");
}

std::vector<EmbeddingCluster> orthogonal_clusters(int labels, int dim,
                                                  double separation,
                                                  double stddev) {
  if (dim < labels)
    throw std::invalid_argument("orthogonal_clusters: dim < labels");
  std::vector<EmbeddingCluster> out;
  const double c = separation / std::sqrt(2.0);
  for (int k = 0; k < labels; ++k) {
    EmbeddingCluster cl;
    cl.mean = Eigen::VectorXd::Zero(dim);
    cl.mean[k] = c;
    cl.stddev = stddev;
    out.push_back(std::move(cl));
  }
  return out;
}

namespace {
  Thread simulate_thread(const SimSpec &spec, std::size_t index) {
    std::mt19937_64 rng(derive_seed(spec.seed, "simulation", index));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    const Eigen::Index k = spec.mu.size();
    const double mu_total = spec.mu.sum();
    // excitation[y] = sum over past events of alpha(y_l, y) * kernel(t - t_l)
    Eigen::VectorXd excitation = Eigen::VectorXd::Zero(k);

    Thread th;
    th.mark = static_cast<int>(index);
    th.name = "sim-" + std::to_string(index);
    th.horizon = spec.T;

    double t = 0.0;
    for (;;) {
      // The kernel is decreasing, so the intensity just after t bounds it
      // until the next event.
      const double bound = mu_total + excitation.sum();
      const double wait = -std::log1p(-unif(rng)) / bound;
      const double t_next = t + wait;
      if (t_next > spec.T)
        break;
      excitation *= std::exp(-spec.omega * wait);
      t = t_next;

      Eigen::VectorXd lambda = spec.mu + excitation;
      const double total = lambda.sum();
      if (unif(rng) * bound > total)
        continue;

      double u = unif(rng) * total;
      int label = 0;
      for (; label + 1 < k; ++label) {
        u -= lambda[label];
        if (u < 0)
          break;
      }

      Event ev;
      ev.time = t;
      ev.label = label;
      ev.mark = th.mark;
      ev.embedding = Eigen::VectorXd::Zero(spec.embedding_dim);
      if (!spec.clusters.empty()) {
        const auto &cl = spec.clusters[label];
        for (int i = 0; i < spec.embedding_dim; ++i)
          ev.embedding[i] = cl.mean[i] + cl.stddev * normal(rng);
      }
      th.events.push_back(std::move(ev));
      excitation += spec.omega * spec.alpha.row(label).transpose();
    }
    return th;
  }
} // namespace

Corpus simulate(const SimSpec &spec) {
  spec.check();
  Corpus corpus;
  corpus.num_labels = static_cast<int>(spec.mu.size());
  corpus.embedding_dim = spec.embedding_dim;
  corpus.label_names = spec.label_names;
  if (corpus.label_names.empty())
    for (int i = 0; i < corpus.num_labels; ++i)
      corpus.label_names.push_back(std::to_string(i));
  corpus.threads.resize(static_cast<std::size_t>(spec.num_threads));
  parallel_for(corpus.threads.size(), spec.workers, [&](std::size_t i) {
    corpus.threads[i] = simulate_thread(spec, i);
  });
  return corpus;
}

ModelParams ground_truth_params(const SimSpec &spec) {
  spec.check();
  ModelParams p;
  p.variant = Variant::PlainMHP;
  p.mu = spec.mu;
  p.alpha = spec.alpha;
  p.omega = spec.omega;
  p.reg_C = 0.0;
  p.W = Eigen::MatrixXd::Zero(spec.mu.size(), spec.embedding_dim);
  p.label_names = spec.label_names;
  if (p.label_names.empty())
    for (Eigen::Index i = 0; i < spec.mu.size(); ++i)
      p.label_names.push_back(std::to_string(i));
  return p;
}

RescalingResult time_rescaling_check(const Corpus &corpus,
                                     const ModelParams &params) {
  if (params.variant != Variant::PlainMHP && params.variant != Variant::TextualHP)
    throw std::invalid_argument(
        "time_rescaling_check: requires PlainMHP or TextualHP parameters");
  params.check();
  const double base = detail::base_total(params);
  std::vector<double> increments;
  for (const Thread &th : corpus.threads) {
    double prev = 0.0;
    for (std::size_t n = 0; n < th.size(); ++n) {
      const double t = th.events[n].time;
      double inc = base * (t - prev);
      for (std::size_t l = 0; l < n; ++l) {
        const Event &e = th.events[l];
        inc += params.alpha.row(e.label).sum()
               * (exp_kernel_integral(t - e.time, params.omega)
                  - exp_kernel_integral(prev - e.time, params.omega));
      }
      increments.push_back(inc);
      prev = t;
    }
  }
  RescalingResult r;
  r.samples = increments.size();
  if (increments.empty())
    return r;
  auto ks = ks_test(increments, [](double x) {
    return x <= 0 ? 0.0 : -std::expm1(-x);
  });
  r.statistic = ks.statistic;
  r.p_value = ks.p_value;
  return r;
}

} // namespace hawkes
