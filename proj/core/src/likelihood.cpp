//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "hawkes/likelihood.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "detail.hpp"
#include "hawkes/intensity.hpp"
#include "hawkes/kernels.hpp"
#include "hawkes/util.hpp"

namespace hawkes {

GradientBundle GradientBundle::zeros_like(const ModelParams &params) {
  GradientBundle g;
  g.d_alpha = Eigen::MatrixXd::Zero(params.alpha.rows(), params.alpha.cols());
  g.d_W = Eigen::MatrixXd::Zero(params.W.rows(), params.W.cols());
  g.d_nn = Eigen::VectorXd::Zero(params.net.num_weights());
  g.d_mu = Eigen::VectorXd::Zero(params.mu.size());
  return g;
}

GradientBundle &GradientBundle::operator+=(const GradientBundle &other) {
  d_alpha += other.d_alpha;
  d_W += other.d_W;
  d_nn += other.d_nn;
  d_mu += other.d_mu;
  return *this;
}

std::vector<double> mc_sample_times(double T, int samples, std::uint64_t seed) {
  if (samples < 1)
    throw std::invalid_argument("mc_sample_times: samples must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(samples));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, T);
  for (auto &s : out)
    s = T > 0 ? dist(rng) : 0.0;
  return out;
}

std::uint64_t thread_mc_seed(std::uint64_t base, std::size_t index) {
  return derive_seed(base, "mc-thread", index);
}

namespace detail {
  double mc_compensator(const ModelParams &params, const Thread &thread,
                        std::span<const int> labels, int samples,
                        std::uint64_t seed) {
    if (samples < 1)
      throw std::invalid_argument("mc_compensator: samples must be >= 1");
    const double T = thread.horizon;
    if (T <= 0)
      return 0.0;
    const double base = base_total(params);
    double excitation = 0.0;
    for (double s : mc_sample_times(T, samples, seed))
      excitation += total_intensity_carry_forward(params, thread, labels, s) - base;
    return T * base + T * (excitation / samples);
  }
} // namespace detail

double mc_compensator(const ModelParams &params, const Thread &thread,
                      int samples, std::uint64_t seed) {
  return detail::mc_compensator(params, thread, {}, samples, seed);
}

namespace {
  struct ThreadTerms {
    double event_term = 0.0;
    double compensator = 0.0;
    int clamped = 0;
    GradientBundle grad;
  };

  std::string where(const Thread &th, std::size_t n) {
    return "thread '" + (th.name.empty() ? std::to_string(th.mark) : th.name)
           + "' event " + std::to_string(n);
  }

  ThreadTerms thread_terms(const ModelParams &params, const Thread &th,
                           std::size_t thread_index, const McConfig &mc,
                           bool want_grad) {
    ThreadTerms out;
    if (want_grad)
      out.grad = GradientBundle::zeros_like(params);
    const Variant variant = params.variant;
    const bool text = uses_text(variant);
    const bool neural = variant == Variant::NeuralKernelHP;
    const std::size_t n_events = th.size();

    std::vector<double> phi;
    for (std::size_t n = 0; n < n_events; ++n) {
      const Event &ev = th.events[n];
      const int yn = ev.label;
      Eigen::VectorXd mu_text;
      double base;
      if (text) {
        mu_text = base_intensity(params.W, ev.embedding);
        base = mu_text[yn];
      } else {
        base = params.mu[yn];
      }

      phi.assign(n, 0.0);
      double excitation = 0.0;
      for (std::size_t l = 0; l < n; ++l) {
        const Event &past = th.events[l];
        phi[l] = kernel_factor(params, past, ev.time, ev.embedding);
        excitation += params.alpha(past.label, yn) * phi[l];
      }

      double lambda = base + excitation;
      if (!std::isfinite(lambda))
        throw NumericalError("non-finite intensity at " + where(th, n));
      if (lambda < kLogFloor) {
        out.event_term += std::log(kLogFloor);
        ++out.clamped;
        continue;
      }
      out.event_term += std::log(lambda);
      if (!want_grad)
        continue;

      const double inv = 1.0 / lambda;
      GradientBundle &g = out.grad;
      for (std::size_t l = 0; l < n; ++l)
        g.d_alpha(th.events[l].label, yn) += inv * phi[l];
      if (text) {
        // d mu_{y_n} / d W_a = mu_{y_n} (1[a == y_n] - mu_a) x_n
        for (Eigen::Index a = 0; a < params.W.rows(); ++a) {
          const double coef =
              inv * mu_text[yn] * ((a == yn ? 1.0 : 0.0) - mu_text[a]);
          g.d_W.row(a) += coef * ev.embedding.transpose();
        }
      } else {
        g.d_mu[yn] += inv;
      }
      if (neural) {
        for (std::size_t l = 0; l < n; ++l) {
          const Event &past = th.events[l];
          params.net.accumulate_gradient(
              past.embedding, ev.embedding, ev.time - past.time,
              inv * params.alpha(past.label, yn), g.d_nn);
        }
      }
    }

    const double T = th.horizon;
    const double base_total = detail::base_total(params);
    out.compensator = base_total * T;
    if (want_grad && !text)
      out.grad.d_mu.array() -= T;

    if (!neural) {
      for (std::size_t l = 0; l < n_events; ++l) {
        const int yl = th.events[l].label;
        const double mass = kernel_mass(params, th, l);
        out.compensator += params.alpha.row(yl).sum() * mass;
        if (want_grad)
          out.grad.d_alpha.row(yl).array() -= mass;
      }
    } else if (T > 0 && n_events > 0) {
      const auto times =
          mc_sample_times(T, mc.samples, thread_mc_seed(mc.seed, thread_index));
      const double w = T / static_cast<double>(mc.samples);
      double excitation = 0.0;
      for (double s : times) {
        const std::ptrdiff_t last = carry_forward_index(th, s);
        if (last < 0)
          continue;
        const Eigen::VectorXd &x_s = th.events[last].embedding;
        for (std::ptrdiff_t l = 0; l <= last; ++l) {
          const Event &past = th.events[l];
          if (!(past.time < s))
            break;
          const double row_sum = params.alpha.row(past.label).sum();
          double f;
          if (want_grad) {
            f = params.net.accumulate_gradient(past.embedding, x_s,
                                               s - past.time, -w * row_sum,
                                               out.grad.d_nn);
            out.grad.d_alpha.row(past.label).array() -= w * f;
          } else {
            f = params.net.forward_dt(past.embedding, x_s, s - past.time);
          }
          excitation += row_sum * f;
        }
      }
      out.compensator += T * (excitation / mc.samples);
    }
    if (!std::isfinite(out.compensator))
      throw NumericalError("non-finite compensator for " + where(th, 0));
    return out;
  }

  std::pair<LLBreakdown, GradientBundle>
  evaluate(const ModelParams &params, const Corpus &corpus,
           const EvalOptions &options, bool want_grad) {
    params.check();
    if (params.variant == Variant::NeuralKernelHP && options.mc.samples < 1)
      throw std::invalid_argument("Monte Carlo samples must be >= 1");

    std::vector<ThreadTerms> parts(corpus.threads.size());
    parallel_for(parts.size(), options.workers, [&](std::size_t i) {
      parts[i] = thread_terms(params, corpus.threads[i], i, options.mc,
                              want_grad);
    });

    // Fixed summation order keeps results independent of worker count.
    LLBreakdown ll;
    GradientBundle grad;
    if (want_grad)
      grad = GradientBundle::zeros_like(params);
    for (const auto &p : parts) {
      ll.event_term += p.event_term;
      ll.compensator_term += p.compensator;
      ll.clamped_events += p.clamped;
      if (want_grad)
        grad += p.grad;
    }
    ll.regularizer_term = params.reg_C * params.W.squaredNorm();
    ll.total = ll.event_term - ll.compensator_term - ll.regularizer_term;
    if (!std::isfinite(ll.total))
      throw NumericalError("non-finite log-likelihood");
    if (ll.clamped_events > 0)
      warn(std::to_string(ll.clamped_events)
           + " event intensities clamped to 1e-300 inside log");
    if (want_grad)
      grad.d_W -= 2.0 * params.reg_C * params.W;
    return {ll, grad};
  }
} // namespace

LLBreakdown log_likelihood(const ModelParams &params, const Corpus &corpus,
                           const EvalOptions &options) {
  return evaluate(params, corpus, options, false).first;
}

GradientBundle gradients(const ModelParams &params, const Corpus &corpus,
                         const EvalOptions &options) {
  return evaluate(params, corpus, options, true).second;
}

std::pair<LLBreakdown, GradientBundle>
log_likelihood_and_gradients(const ModelParams &params, const Corpus &corpus,
                             const EvalOptions &options) {
  return evaluate(params, corpus, options, true);
}

std::vector<ParamBlock> param_layout(const ModelParams &params) {
  std::vector<ParamBlock> blocks;
  Eigen::Index off = 0;
  auto add = [&](std::string name, Eigen::Index size,
                 std::optional<double> lb) {
    blocks.push_back({std::move(name), off, size, lb});
    off += size;
  };
  if (params.variant == Variant::PlainMHP)
    add("mu", params.mu.size(), 0.0);
  else
    add("W", params.W.size(), std::nullopt);
  add("alpha", params.alpha.size(), 0.0);
  if (params.variant == Variant::NeuralKernelHP)
    add("nn", params.net.num_weights(), std::nullopt);
  return blocks;
}

namespace {
  template <class Fn>
  void for_each_block(const std::vector<ParamBlock> &layout, Fn &&fn) {
    for (const auto &b : layout)
      fn(b);
  }

  template <class M>
  Eigen::Map<Eigen::VectorXd> flat(M &m) {
    return {m.data(), m.size()};
  }
  template <class M>
  Eigen::Map<const Eigen::VectorXd> flat_c(const M &m) {
    return {m.data(), m.size()};
  }
} // namespace

Eigen::VectorXd pack_params(const ModelParams &params,
                            const std::vector<ParamBlock> &layout) {
  Eigen::Index n = layout.empty() ? 0 : layout.back().offset + layout.back().size;
  Eigen::VectorXd theta(n);
  for_each_block(layout, [&](const ParamBlock &b) {
    if (b.name == "mu")
      theta.segment(b.offset, b.size) = params.mu;
    else if (b.name == "W")
      theta.segment(b.offset, b.size) = flat_c(params.W);
    else if (b.name == "alpha")
      theta.segment(b.offset, b.size) = flat_c(params.alpha);
    else if (b.name == "nn")
      theta.segment(b.offset, b.size) = params.net.weights();
  });
  return theta;
}

void unpack_params(const Eigen::VectorXd &theta,
                   const std::vector<ParamBlock> &layout, ModelParams &params) {
  for_each_block(layout, [&](const ParamBlock &b) {
    auto seg = theta.segment(b.offset, b.size);
    if (b.name == "mu")
      params.mu = seg;
    else if (b.name == "W")
      flat(params.W) = seg;
    else if (b.name == "alpha")
      flat(params.alpha) = seg;
    else if (b.name == "nn")
      params.net.weights() = seg;
  });
}

Eigen::VectorXd pack_gradient(const GradientBundle &grad,
                              const std::vector<ParamBlock> &layout) {
  Eigen::Index n = layout.empty() ? 0 : layout.back().offset + layout.back().size;
  Eigen::VectorXd g(n);
  for_each_block(layout, [&](const ParamBlock &b) {
    if (b.name == "mu")
      g.segment(b.offset, b.size) = grad.d_mu;
    else if (b.name == "W")
      g.segment(b.offset, b.size) = flat_c(grad.d_W);
    else if (b.name == "alpha")
      g.segment(b.offset, b.size) = flat_c(grad.d_alpha);
    else if (b.name == "nn")
      g.segment(b.offset, b.size) = grad.d_nn;
  });
  return g;
}

} // namespace hawkes
