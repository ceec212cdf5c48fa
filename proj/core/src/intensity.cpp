//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "hawkes/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "detail.hpp"
#include "hawkes/kernels.hpp"
#include "hawkes/likelihood.hpp"

namespace hawkes {

HistoryView::HistoryView(const Thread &thread, std::size_t cutoff)
    : thread_(&thread), cutoff_(cutoff) {
  if (cutoff > thread.size())
    throw std::invalid_argument("HistoryView: cutoff beyond thread end");
}

HistoryView::HistoryView(const Thread &thread, std::size_t cutoff,
                         std::span<const int> predicted)
    : thread_(&thread), cutoff_(cutoff), predicted_(predicted),
      use_predicted_(true) {
  if (cutoff > thread.size())
    throw std::invalid_argument("HistoryView: cutoff beyond thread end");
  if (predicted.size() < cutoff)
    throw std::invalid_argument("HistoryView: missing predicted labels");
}

Eigen::VectorXd base_intensity(const Eigen::Ref<const Eigen::MatrixXd> &W,
                               const Eigen::Ref<const Eigen::VectorXd> &x) {
  if (W.cols() != x.size())
    throw std::invalid_argument("base_intensity: dimension mismatch");
  Eigen::VectorXd z = W * x;
  const double zmax = z.maxCoeff();
  Eigen::VectorXd e = (z.array() - zmax).exp().matrix();
  return e / e.sum();
}

double kernel_factor(const ModelParams &params, const Event &past, double t,
                     const Eigen::Ref<const Eigen::VectorXd> &x_t) {
  const double dt = t - past.time;
  switch (params.variant) {
  case Variant::PlainMHP:
  case Variant::TextualHP:
    return exp_kernel(dt, params.omega);
  case Variant::FullyTextualHP:
    return exp_kernel(dt, params.omega)
           * gaussian_text_kernel(x_t, past.embedding, params.sigma);
  case Variant::NeuralKernelHP:
    return params.net.forward_dt(past.embedding, x_t, dt);
  }
  return 0.0;
}

namespace {
  void check_text(const ModelParams &params,
                  const Eigen::Ref<const Eigen::VectorXd> &x_t) {
    if (uses_text(params.variant) && x_t.size() != params.embedding_dim())
      throw std::invalid_argument(
          "intensity: text variants require an embedding of dimension "
          + std::to_string(params.embedding_dim()));
  }
} // namespace

Eigen::VectorXd intensities_at(const ModelParams &params,
                               const HistoryView &hist, double t,
                               const Eigen::Ref<const Eigen::VectorXd> &x_t) {
  check_text(params, x_t);
  Eigen::VectorXd lambda = params.variant == Variant::PlainMHP
                               ? params.mu
                               : base_intensity(params.W, x_t);
  for (std::size_t i = 0; i < hist.cutoff(); ++i) {
    const Event &e = hist.event(i);
    if (e.time > t)
      throw std::invalid_argument("intensity: history event after t");
    if (e.time == t)
      continue;
    lambda += params.alpha.row(hist.label(i)).transpose()
              * kernel_factor(params, e, t, x_t);
  }
  return lambda;
}

double intensity_at(const ModelParams &params, const HistoryView &hist,
                    double t, const Eigen::Ref<const Eigen::VectorXd> &x_t,
                    int label) {
  if (label < 0 || label >= params.num_labels())
    throw std::invalid_argument("intensity_at: label out of range");
  check_text(params, x_t);
  double lambda = params.variant == Variant::PlainMHP
                      ? params.mu[label]
                      : base_intensity(params.W, x_t)[label];
  for (std::size_t i = 0; i < hist.cutoff(); ++i) {
    const Event &e = hist.event(i);
    if (e.time > t)
      throw std::invalid_argument("intensity: history event after t");
    if (e.time == t)
      continue;
    lambda += params.alpha(hist.label(i), label)
              * kernel_factor(params, e, t, x_t);
  }
  return lambda;
}

std::ptrdiff_t carry_forward_index(const Thread &thread, double s) {
  auto it = std::upper_bound(
      thread.events.begin(), thread.events.end(), s,
      [](double v, const Event &e) { return v < e.time; });
  return static_cast<std::ptrdiff_t>(it - thread.events.begin()) - 1;
}

namespace detail {
  double base_total(const ModelParams &params) {
    return params.variant == Variant::PlainMHP ? params.mu.sum() : 1.0;
  }
} // namespace detail

double total_intensity_carry_forward(const ModelParams &params,
                                     const Thread &thread,
                                     std::span<const int> labels, double s) {
  const std::ptrdiff_t last = carry_forward_index(thread, s);
  double total = detail::base_total(params);
  if (last < 0)
    return total;
  const Eigen::VectorXd &x_s = thread.events[last].embedding;
  for (std::ptrdiff_t l = 0; l <= last; ++l) {
    const Event &e = thread.events[l];
    if (!(e.time < s))
      break;
    const int y = detail::label_of(thread, labels, static_cast<std::size_t>(l));
    total += params.alpha.row(y).sum() * kernel_factor(params, e, s, x_s);
  }
  return total;
}

double kernel_mass(const ModelParams &params, const Thread &thread,
                   std::size_t l) {
  const Event &src = thread.events.at(l);
  const double T = thread.horizon;
  switch (params.variant) {
  case Variant::PlainMHP:
  case Variant::TextualHP:
    return exp_kernel_integral(T - src.time, params.omega);
  case Variant::FullyTextualHP: {
    // Piecewise-constant text on [t_i, t_{i+1}) carries x_i; the first
    // piece has x_l itself, where the Gaussian factor is 1.
    double mass = 0.0;
    const std::size_t n = thread.size();
    for (std::size_t i = l; i < n; ++i) {
      const double a = thread.events[i].time - src.time;
      const double b = (i + 1 < n ? thread.events[i + 1].time : T) - src.time;
      if (b <= a)
        continue;
      const double piece =
          std::exp(-params.omega * a) * -std::expm1(-params.omega * (b - a));
      const double g =
          i == l ? 1.0
                 : gaussian_text_kernel(thread.events[i].embedding,
                                        src.embedding, params.sigma);
      mass += g * piece;
    }
    return mass;
  }
  case Variant::NeuralKernelHP:
    break;
  }
  throw std::invalid_argument("kernel_mass: no closed form for NeuralKernelHP");
}

double compensator(const ModelParams &params, const Thread &thread,
                   std::span<const int> labels) {
  return compensator(params, thread, labels, McConfig{});
}

double compensator(const ModelParams &params, const Thread &thread,
                   std::span<const int> labels, const McConfig &mc) {
  if (!labels.empty() && labels.size() != thread.size())
    throw std::invalid_argument("compensator: label list size mismatch");
  if (params.variant == Variant::NeuralKernelHP)
    return detail::mc_compensator(params, thread, labels, mc.samples, mc.seed);

  double total = detail::base_total(params) * thread.horizon;
  for (std::size_t l = 0; l < thread.size(); ++l) {
    const int y = detail::label_of(thread, labels, l);
    total += params.alpha.row(y).sum() * kernel_mass(params, thread, l);
  }
  return total;
}

void write_intensity_csv(const ModelParams &params, const Corpus &corpus,
                         std::ostream &out, int grid_points) {
  out << "thread,t,kind,label,intensity\n";
  out.precision(17);
  for (const Thread &th : corpus.threads) {
    const std::string id =
        th.name.empty() ? std::to_string(th.mark) : th.name;
    auto label_name = [&](int y) {
      return params.label_names.empty() ? std::to_string(y)
                                        : params.label_names[y];
    };
    for (std::size_t n = 0; n < th.size(); ++n) {
      const Event &e = th.events[n];
      Eigen::VectorXd lam =
          intensities_at(params, HistoryView(th, n), e.time, e.embedding);
      for (int y = 0; y < lam.size(); ++y)
        out << id << ',' << e.time << ",event," << label_name(y) << ','
            << lam[y] << '\n';
    }
    for (int g = 0; g < grid_points; ++g) {
      const double s =
          grid_points == 1 ? 0.0 : th.horizon * g / (grid_points - 1);
      const std::ptrdiff_t last = carry_forward_index(th, s);
      std::size_t cutoff = 0;
      while (cutoff < th.size() && th.events[cutoff].time < s)
        ++cutoff;
      Eigen::VectorXd x = last >= 0
                              ? th.events[last].embedding
                              : Eigen::VectorXd::Zero(params.embedding_dim());
      Eigen::VectorXd lam = intensities_at(params, HistoryView(th, cutoff), s, x);
      for (int y = 0; y < lam.size(); ++y)
        out << id << ',' << s << ",grid," << label_name(y) << ',' << lam[y]
            << '\n';
    }
  }
}

} // namespace hawkes
