//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef HAWKES_EVAL_HPP_
#define HAWKES_EVAL_HPP_

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hawkes/core.hpp"
#include "hawkes/estimation.hpp"
#include "hawkes/params.hpp"

namespace hawkes {

/// Online: history labels are the model's own earlier predictions.
/// Oracle: history labels are the true labels.
enum class PredictMode { Online, Oracle };

/// Index of the largest entry; ties go to the lowest index.
int argmax(const Eigen::Ref<const Eigen::VectorXd> &v);

/// Predicted label of every event, in time order.
std::vector<int> predict_thread(const ModelParams &params,
                                const Thread &thread,
                                PredictMode mode = PredictMode::Online);

/// Rows are true labels, columns are predicted labels.
using Confusion = Eigen::MatrixXi;

Confusion confusion_matrix(int num_labels, const std::vector<int> &truth,
                           const std::vector<int> &predicted);

double micro_accuracy(const Confusion &confusion);

/// Harmonic mean of macro precision and macro recall over all rows, with
/// 0/0 taken as 0. Throws std::invalid_argument on an empty matrix.
double macro_f1(const Confusion &confusion);

struct FoldResult {
  std::string id;
  int test_events = 0;
  double micro_accuracy = 0.0;
  double macro_f1 = 0.0;
  Confusion confusion;
};

struct EvalReport {
  std::vector<FoldResult> per_fold;
  Confusion pooled;
  double micro_accuracy = 0.0;
  double macro_f1 = 0.0;
  std::vector<std::string> label_names;

  std::string to_table() const;
  std::string to_csv() const;
};

struct EvalConfig {
  TrainConfig train;
  PredictMode mode = PredictMode::Online;
  int workers = 1; // folds evaluated concurrently
};

/// One fold per thread with events; trains on the remaining threads.
EvalReport leave_one_thread_out(const Corpus &corpus, const EvalConfig &config);

/// One fold per named corpus; trains on all the others pooled.
EvalReport
leave_one_event_out(const std::vector<std::pair<std::string, Corpus>> &events,
                    const EvalConfig &config);

struct InfluenceReport {
  Eigen::MatrixXd alpha;
  std::vector<std::string> label_names;
  std::vector<int> row_max;    // column of the largest entry per row
  std::vector<int> row_second; // column of the runner-up per row

  /// Row max is marked with '*', runner-up with '+'.
  std::string to_string() const;
};

InfluenceReport influence_report(const ModelParams &params);

struct KernelCurveOptions {
  double dt_max = 5.0;
  int points = 100;
  Eigen::VectorXd x_past; // zero vector when empty
  Eigen::VectorXd x_now;
};

/// (dt, F) over an evenly spaced grid on [0, dt_max] with fixed embeddings.
/// Throws std::invalid_argument unless the variant is NeuralKernelHP.
std::vector<std::pair<double, double>>
kernel_dt_curve(const ModelParams &params, const KernelCurveOptions &options);

struct KernelPairSample {
  double cosine_similarity = 0.0;
  double dt = 0.0;
  double value = 0.0;
};

/// Every ordered same-thread pair (earlier, later) with dt in [0, dt_max].
std::vector<KernelPairSample> kernel_pair_samples(const ModelParams &params,
                                                  const Corpus &corpus,
                                                  double dt_max = 1.0);

std::string kernel_curve_csv(const std::vector<std::pair<double, double>> &c);
std::string kernel_pairs_csv(const std::vector<KernelPairSample> &pairs);

} // namespace hawkes

#endif // HAWKES_EVAL_HPP_
