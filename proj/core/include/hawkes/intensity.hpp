//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef HAWKES_INTENSITY_HPP_
#define HAWKES_INTENSITY_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>

#include <Eigen/Core>

#include "hawkes/core.hpp"
#include "hawkes/params.hpp"

namespace hawkes {

struct McConfig;

/// The events of a thread strictly before an evaluation time, labeled either
/// with their true labels or with a caller-supplied prediction list.
class HistoryView {
public:
  HistoryView(const Thread &thread, std::size_t cutoff);
  HistoryView(const Thread &thread, std::size_t cutoff,
              std::span<const int> predicted);

  const Thread &thread() const { return *thread_; }
  std::size_t cutoff() const { return cutoff_; }
  bool uses_predicted() const { return use_predicted_; }
  int label(std::size_t i) const {
    return use_predicted_ ? predicted_[i] : thread_->events[i].label;
  }
  const Event &event(std::size_t i) const { return thread_->events[i]; }

private:
  const Thread *thread_;
  std::size_t cutoff_;
  std::span<const int> predicted_;
  bool use_predicted_ = false;
};

/// Softmax of W x, computed with max subtraction.
Eigen::VectorXd base_intensity(const Eigen::Ref<const Eigen::MatrixXd> &W,
                               const Eigen::Ref<const Eigen::VectorXd> &x);

/// Triggering factor of history event `past` on a point at time t with text
/// x_t: the exponential kernel, times the Gaussian text kernel or replaced
/// by the neural kernel depending on the variant. Excludes alpha.
double kernel_factor(const ModelParams &params, const Event &past, double t,
                     const Eigen::Ref<const Eigen::VectorXd> &x_t);

/// lambda_y(t) for every label. x_t may be empty for PlainMHP.
Eigen::VectorXd intensities_at(const ModelParams &params,
                               const HistoryView &hist, double t,
                               const Eigen::Ref<const Eigen::VectorXd> &x_t);

double intensity_at(const ModelParams &params, const HistoryView &hist,
                    double t, const Eigen::Ref<const Eigen::VectorXd> &x_t,
                    int label);

/// Index of the last event at or before s, or -1 if none. Between events the
/// text trajectory carries the embedding of that event forward.
std::ptrdiff_t carry_forward_index(const Thread &thread, double s);

/// Sum over labels of lambda_y(s) under the carry-forward text convention,
/// counting only events strictly before s.
double total_intensity_carry_forward(const ModelParams &params,
                                     const Thread &thread,
                                     std::span<const int> labels, double s);

/// Integral over [t_l, horizon] of the kernel factor of event l under the
/// carry-forward text convention. Closed form; not defined for
/// NeuralKernelHP.
double kernel_mass(const ModelParams &params, const Thread &thread,
                   std::size_t l);

/// Sum over labels of the intensity integrated over [0, horizon]. Exact for
/// PlainMHP, TextualHP and FullyTextualHP; Monte Carlo (with `mc`) for
/// NeuralKernelHP. An empty `labels` span means the true labels.
double compensator(const ModelParams &params, const Thread &thread,
                   std::span<const int> labels = {});
double compensator(const ModelParams &params, const Thread &thread,
                   std::span<const int> labels, const McConfig &mc);

/// CSV rows "thread,t,kind,label,intensity": one row per label at every
/// event time (kind=event) plus `grid_points` evenly spaced carry-forward
/// samples on [0, horizon] (kind=grid).
void write_intensity_csv(const ModelParams &params, const Corpus &corpus,
                         std::ostream &out, int grid_points = 0);

} // namespace hawkes

#endif // HAWKES_INTENSITY_HPP_
