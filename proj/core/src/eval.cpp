//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "hawkes/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "hawkes/intensity.hpp"
#include "hawkes/util.hpp"

namespace hawkes {

int argmax(const Eigen::Ref<const Eigen::VectorXd> &v) {
  if (v.size() == 0)
    throw std::invalid_argument("argmax: empty vector");
  int best = 0;
  for (int i = 1; i < v.size(); ++i)
    if (v[i] > v[best])
      best = i;
  return best;
}

std::vector<int> predict_thread(const ModelParams &params, const Thread &thread,
                                PredictMode mode) {
  std::vector<int> predicted;
  predicted.reserve(thread.size());
  for (std::size_t n = 0; n < thread.size(); ++n) {
    const Event &e = thread.events[n];
    const HistoryView hist = mode == PredictMode::Online
                                 ? HistoryView(thread, n, predicted)
                                 : HistoryView(thread, n);
    predicted.push_back(argmax(intensities_at(params, hist, e.time, e.embedding)));
  }
  return predicted;
}

Confusion confusion_matrix(int num_labels, const std::vector<int> &truth,
                           const std::vector<int> &predicted) {
  if (truth.size() != predicted.size())
    throw std::invalid_argument("confusion_matrix: size mismatch");
  Confusion c = Confusion::Zero(num_labels, num_labels);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0 || truth[i] >= num_labels || predicted[i] < 0
        || predicted[i] >= num_labels)
      throw std::invalid_argument("confusion_matrix: label out of range");
    ++c(truth[i], predicted[i]);
  }
  return c;
}

double micro_accuracy(const Confusion &c) {
  const long total = c.cast<long>().sum();
  if (total <= 0)
    throw std::invalid_argument("micro_accuracy: empty confusion matrix");
  return static_cast<double>(c.trace()) / static_cast<double>(total);
}

double macro_f1(const Confusion &c) {
  if (c.rows() == 0 || c.rows() != c.cols() || c.cast<long>().sum() <= 0)
    throw std::invalid_argument("macro_f1: empty confusion matrix");
  const Eigen::Index k = c.rows();
  double precision = 0.0, recall = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double tp = c(i, i);
    const double predicted = c.col(i).cast<double>().sum();
    const double actual = c.row(i).cast<double>().sum();
    precision += predicted > 0 ? tp / predicted : 0.0;
    recall += actual > 0 ? tp / actual : 0.0;
  }
  precision /= static_cast<double>(k);
  recall /= static_cast<double>(k);
  if (precision + recall == 0)
    return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

std::string EvalReport::to_table() const {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(4);
  std::size_t w = 9;
  for (const auto &f : per_fold)
    w = std::max(w, f.id.size() + 2);
  ss << std::left << std::setw(static_cast<int>(w)) << "fold" << std::right
     << std::setw(8) << "events" << std::setw(12) << "accuracy"
     << std::setw(12) << "macro_f1" << '\n';
  for (const auto &f : per_fold)
    ss << std::left << std::setw(static_cast<int>(w)) << f.id << std::right
       << std::setw(8) << f.test_events << std::setw(12) << f.micro_accuracy
       << std::setw(12) << f.macro_f1 << '\n';
  ss << std::left << std::setw(static_cast<int>(w)) << "aggregate" << std::right
     << std::setw(8) << pooled.sum() << std::setw(12) << micro_accuracy
     << std::setw(12) << macro_f1 << '\n';

  ss << "\npooled confusion (rows: true, columns: predicted)\n";
  std::size_t lw = 6;
  for (const auto &n : label_names)
    lw = std::max(lw, n.size() + 2);
  ss << std::setw(static_cast<int>(lw)) << "";
  for (const auto &n : label_names)
    ss << std::setw(static_cast<int>(lw)) << n;
  ss << '\n';
  for (Eigen::Index r = 0; r < pooled.rows(); ++r) {
    ss << std::setw(static_cast<int>(lw))
       << (r < static_cast<Eigen::Index>(label_names.size()) ? label_names[r]
                                                             : "?");
    for (Eigen::Index c = 0; c < pooled.cols(); ++c)
      ss << std::setw(static_cast<int>(lw)) << pooled(r, c);
    ss << '\n';
  }
  return ss.str();
}

std::string EvalReport::to_csv() const {
  std::ostringstream ss;
  ss.precision(17);
  ss << "fold,events,micro_accuracy,macro_f1\n";
  for (const auto &f : per_fold)
    ss << f.id << ',' << f.test_events << ',' << f.micro_accuracy << ','
       << f.macro_f1 << '\n';
  ss << "aggregate," << pooled.sum() << ',' << micro_accuracy << ','
     << macro_f1 << '\n';
  return ss.str();
}

namespace {
  FoldResult score_fold(std::string id, const ModelParams &params,
                        const std::vector<const Thread *> &tests,
                        PredictMode mode) {
    std::vector<int> truth, pred;
    for (const Thread *th : tests) {
      auto p = predict_thread(params, *th, mode);
      pred.insert(pred.end(), p.begin(), p.end());
      for (const auto &e : th->events)
        truth.push_back(e.label);
    }
    FoldResult f;
    f.id = std::move(id);
    f.confusion = confusion_matrix(params.num_labels(), truth, pred);
    f.test_events = static_cast<int>(truth.size());
    f.micro_accuracy = micro_accuracy(f.confusion);
    f.macro_f1 = macro_f1(f.confusion);
    return f;
  }

  void finish(EvalReport &report, int num_labels) {
    report.pooled = Confusion::Zero(num_labels, num_labels);
    for (const auto &f : report.per_fold)
      report.pooled += f.confusion;
    report.micro_accuracy = micro_accuracy(report.pooled);
    report.macro_f1 = macro_f1(report.pooled);
  }
} // namespace

EvalReport leave_one_thread_out(const Corpus &corpus, const EvalConfig &config) {
  if (corpus.threads.size() < 2)
    throw DataError("leave_one_thread_out: need at least 2 threads");
  // Threads without events have nothing to score; they stay in training.
  std::vector<std::size_t> folds;
  for (std::size_t i = 0; i < corpus.threads.size(); ++i)
    if (!corpus.threads[i].empty())
      folds.push_back(i);
  if (folds.empty())
    throw DataError("leave_one_thread_out: no thread has events");

  EvalReport report;
  report.label_names = corpus.label_names;
  report.per_fold.resize(folds.size());
  parallel_for(folds.size(), config.workers, [&](std::size_t f) {
    const std::size_t held = folds[f];
    Corpus train;
    train.num_labels = corpus.num_labels;
    train.embedding_dim = corpus.embedding_dim;
    train.label_names = corpus.label_names;
    for (std::size_t i = 0; i < corpus.threads.size(); ++i)
      if (i != held)
        train.threads.push_back(corpus.threads[i]);
    const FitResult fitted = fit(train, config.train);
    const Thread &test = corpus.threads[held];
    report.per_fold[f] =
        score_fold(test.name.empty() ? std::to_string(held) : test.name,
                   fitted.params, {&test}, config.mode);
  });
  finish(report, corpus.num_labels);
  return report;
}

EvalReport
leave_one_event_out(const std::vector<std::pair<std::string, Corpus>> &events,
                    const EvalConfig &config) {
  if (events.size() < 2)
    throw DataError("leave_one_event_out: need at least 2 events");
  EvalReport report;
  report.label_names = events.front().second.label_names;
  report.per_fold.resize(events.size());
  parallel_for(events.size(), config.workers, [&](std::size_t f) {
    std::vector<const Corpus *> parts;
    for (std::size_t i = 0; i < events.size(); ++i)
      if (i != f)
        parts.push_back(&events[i].second);
    Corpus train;
    try {
      train = merge_corpora(parts);
    } catch (const std::invalid_argument &e) {
      throw DataError(e.what());
    }
    const FitResult fitted = fit(train, config.train);
    std::vector<const Thread *> tests;
    for (const auto &th : events[f].second.threads)
      if (!th.empty())
        tests.push_back(&th);
    report.per_fold[f] =
        score_fold(events[f].first, fitted.params, tests, config.mode);
  });
  finish(report, events.front().second.num_labels);
  return report;
}

InfluenceReport influence_report(const ModelParams &params) {
  InfluenceReport r;
  r.alpha = params.alpha;
  r.label_names = params.label_names;
  if (r.label_names.empty())
    for (int i = 0; i < params.num_labels(); ++i)
      r.label_names.push_back(std::to_string(i));
  for (Eigen::Index row = 0; row < r.alpha.rows(); ++row) {
    const Eigen::VectorXd v = r.alpha.row(row).transpose();
    const int best = argmax(v);
    int second = -1;
    for (int c = 0; c < v.size(); ++c)
      if (c != best && (second < 0 || v[c] > v[second]))
        second = c;
    r.row_max.push_back(best);
    r.row_second.push_back(second);
  }
  return r;
}

std::string InfluenceReport::to_string() const {
  std::ostringstream ss;
  std::size_t w = 10;
  for (const auto &n : label_names)
    w = std::max(w, n.size() + 2);
  const int iw = static_cast<int>(w);
  ss << std::setw(iw) << "";
  for (const auto &n : label_names)
    ss << std::setw(iw) << n;
  ss << '\n';
  for (Eigen::Index r = 0; r < alpha.rows(); ++r) {
    ss << std::setw(iw) << label_names[r];
    for (Eigen::Index c = 0; c < alpha.cols(); ++c) {
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(4) << alpha(r, c);
      if (c == row_max[r])
        cell << '*';
      else if (c == row_second[r])
        cell << '+';
      else
        cell << ' ';
      ss << std::setw(iw) << cell.str();
    }
    ss << '\n';
  }
  ss << "(rows: source label, columns: influenced label; * row max, + runner-up)\n";
  return ss.str();
}

std::vector<std::pair<double, double>>
kernel_dt_curve(const ModelParams &params, const KernelCurveOptions &options) {
  if (params.variant != Variant::NeuralKernelHP)
    throw std::invalid_argument("kernel_dt_curve: requires NeuralKernelHP");
  if (options.points < 1 || !(options.dt_max >= 0))
    throw std::invalid_argument("kernel_dt_curve: bad grid");
  const int v = params.net.embedding_dim();
  const Eigen::VectorXd x_past = options.x_past.size() ? options.x_past
                                                       : Eigen::VectorXd::Zero(v);
  const Eigen::VectorXd x_now = options.x_now.size() ? options.x_now
                                                     : Eigen::VectorXd::Zero(v);
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < options.points; ++i) {
    const double dt =
        options.points == 1 ? 0.0 : options.dt_max * i / (options.points - 1);
    out.emplace_back(dt, params.net.forward_dt(x_past, x_now, dt));
  }
  return out;
}

std::vector<KernelPairSample> kernel_pair_samples(const ModelParams &params,
                                                  const Corpus &corpus,
                                                  double dt_max) {
  if (params.variant != Variant::NeuralKernelHP)
    throw std::invalid_argument("kernel_pair_samples: requires NeuralKernelHP");
  std::vector<KernelPairSample> out;
  for (const Thread &th : corpus.threads) {
    for (std::size_t n = 0; n < th.size(); ++n) {
      for (std::size_t l = 0; l < n; ++l) {
        const Event &a = th.events[l], &b = th.events[n];
        const double dt = b.time - a.time;
        if (dt > dt_max)
          continue;
        const double na = a.embedding.norm(), nb = b.embedding.norm();
        KernelPairSample s;
        s.cosine_similarity =
            (na > 0 && nb > 0) ? a.embedding.dot(b.embedding) / (na * nb) : 0.0;
        s.dt = dt;
        s.value = params.net.forward_dt(a.embedding, b.embedding, dt);
        out.push_back(s);
      }
    }
  }
  return out;
}

std::string kernel_curve_csv(const std::vector<std::pair<double, double>> &c) {
  std::ostringstream ss;
  ss.precision(17);
  ss << "dt,kernel\n";
  for (const auto &[dt, v] : c)
    ss << dt << ',' << v << '\n';
  return ss.str();
}

std::string kernel_pairs_csv(const std::vector<KernelPairSample> &pairs) {
  std::ostringstream ss;
  ss.precision(17);
  ss << "cosine_similarity,dt,kernel\n";
  for (const auto &p : pairs)
    ss << p.cosine_similarity << ',' << p.dt << ',' << p.value << '\n';
  return ss.str();
}

} // namespace hawkes
