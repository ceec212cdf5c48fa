//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hawkes/eval.hpp"
#include "hawkes/intensity.hpp"
#include "hawkes/simulation.hpp"
#include "hawkes/util.hpp"

#include "test_support.hpp"

namespace {

using namespace hawkes;
using hawkes::testing::Gen;

Corpus small_clustered(int threads, std::uint64_t seed, double T = 20.0) {
  SimSpec spec;
  spec.mu = Eigen::VectorXd::Constant(4, 0.1);
  spec.alpha = Eigen::MatrixXd::Zero(4, 4);
  spec.T = T;
  spec.num_threads = threads;
  spec.embedding_dim = 4;
  spec.clusters = orthogonal_clusters(4, 4, 6.0, 1.0);
  spec.seed = seed;
  return simulate(spec);
}

EvalConfig quick_config() {
  EvalConfig cfg;
  cfg.train.omega = 1.0;
  cfg.train.max_iterations = 50;
  return cfg;
}

TEST(Argmax, FirstMaximumWins) {
  EXPECT_EQ(argmax(Eigen::Vector4d(0.2, 0.5, 0.1, 0.3)), 1);
  EXPECT_EQ(argmax(Eigen::Vector4d(0.3, 0.3, 0.2, 0.2)), 0);
  EXPECT_EQ(argmax(Eigen::Vector4d(0.1, 0.3, 0.2, 0.3)), 1);
  EXPECT_THROW(argmax(Eigen::VectorXd()), std::invalid_argument);
}

TEST(PredictThread, SingleEventUsesBaseIntensity) {
  Gen gen(50);
  ModelParams p = gen.params(Variant::TextualHP, 4, 3);
  Thread th = gen.thread(4, 3, 1);
  auto pred = predict_thread(p, th);
  ASSERT_EQ(pred.size(), 1u);
  EXPECT_EQ(pred[0], argmax(base_intensity(p.W, th.events[0].embedding)));
}

TEST(PredictThread, OnlineUsesOwnPredictionsOracleUsesTruth) {
  ModelParams p = make_params(Variant::PlainMHP, 2, 0);
  p.mu = Eigen::Vector2d(0.2, 0.1);
  p.alpha << 0.0, 5.0, 0.0, 0.0; // label 0 strongly triggers label 1
  p.omega = 1.0;
  Thread th;
  th.events = {Event{0.0, 1, 0, {}}, Event{0.1, 1, 0, {}}};
  th.horizon = 1.0;
  // First event predicts 0 (base), which then excites label 1 online.
  EXPECT_EQ(predict_thread(p, th, PredictMode::Online), (std::vector<int>{0, 1}));
  // With the true label 1 in history nothing is excited.
  EXPECT_EQ(predict_thread(p, th, PredictMode::Oracle), (std::vector<int>{0, 0}));
}

TEST(PredictThread, PrefixProperty) {
  Gen gen(51);
  for (Variant v : {Variant::PlainMHP, Variant::TextualHP, Variant::FullyTextualHP,
                    Variant::NeuralKernelHP}) {
    ModelParams p = gen.params(v, 4, 3);
    Thread th = gen.thread(4, 3, 12);
    auto full = predict_thread(p, th);
    for (std::size_t n = 1; n <= th.size(); ++n) {
      Thread cut = th;
      cut.events.resize(n);
      auto prefix = predict_thread(p, cut);
      EXPECT_TRUE(std::equal(prefix.begin(), prefix.end(), full.begin()))
          << to_string(v) << " n=" << n;
    }
  }
}

TEST(PredictThread, InvariantToShiftingW) {
  Gen gen(52);
  ModelParams p = gen.params(Variant::FullyTextualHP, 4, 3);
  Thread th = gen.thread(4, 3, 15);
  auto before = predict_thread(p, th);
  p.W.rowwise() += gen.vector(3, 5.0).transpose();
  EXPECT_EQ(predict_thread(p, th), before);
}

TEST(Metrics, DiagonalIsPerfect) {
  Confusion c = Confusion::Zero(4, 4);
  c.diagonal() << 3, 1, 4, 1;
  EXPECT_DOUBLE_EQ(micro_accuracy(c), 1.0);
  EXPECT_DOUBLE_EQ(macro_f1(c), 1.0);
}

TEST(Metrics, AllPredictionsInOneClass) {
  Confusion c = Confusion::Zero(4, 4);
  c.col(0).setConstant(10);
  EXPECT_NEAR(macro_f1(c), 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(micro_accuracy(c), 0.25);
}

TEST(Metrics, AbsentClassesCountAsZero) {
  Confusion c = Confusion::Zero(4, 4);
  c(2, 2) = 7;
  // P = R = 1/4 over the fixed K = 4 classes.
  EXPECT_NEAR(macro_f1(c), 0.25, 1e-15);
  EXPECT_DOUBLE_EQ(micro_accuracy(c), 1.0);
  Confusion two = Confusion::Zero(1, 1);
  two(0, 0) = 3;
  EXPECT_DOUBLE_EQ(macro_f1(two), 1.0);
}

TEST(Metrics, EmptyConfusionRejected) {
  EXPECT_THROW(macro_f1(Confusion::Zero(3, 3)), std::invalid_argument);
  EXPECT_THROW(micro_accuracy(Confusion::Zero(3, 3)), std::invalid_argument);
}

TEST(Metrics, MatchReferenceImplementation) {
  Gen gen(53);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = gen.integer(2, 6);
    Confusion c(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        c(i, j) = gen.integer(0, 3) == 0 ? 0 : gen.integer(0, 40);
    c(0, 0) += 1;
    const double f1 = macro_f1(c), acc = micro_accuracy(c);
    EXPECT_NEAR(f1, hawkes::testing::oracle_macro_f1(c), 1e-12);
    EXPECT_NEAR(acc, hawkes::testing::oracle_accuracy(c), 1e-12);
    EXPECT_GE(f1, 0.0);
    EXPECT_LE(f1, 1.0);
    const bool diagonal = (c.array() == 0 || Eigen::MatrixXi::Identity(k, k).array() == 1).all();
    EXPECT_EQ(acc == 1.0, diagonal);
  }
}

TEST(Metrics, ConfusionCountsRowsTrue) {
  Confusion c = confusion_matrix(3, {0, 1, 2, 2}, {0, 2, 2, 1});
  EXPECT_EQ(c(1, 2), 1);
  EXPECT_EQ(c(2, 1), 1);
  EXPECT_EQ(c.sum(), 4);
  EXPECT_THROW(confusion_matrix(3, {0}, {0, 1}), std::invalid_argument);
  EXPECT_THROW(confusion_matrix(3, {0}, {3}), std::invalid_argument);
}

TEST(LeaveOneThreadOut, OneFoldPerThread) {
  Corpus c = small_clustered(3, 60);
  EvalReport r = leave_one_thread_out(c, quick_config());
  ASSERT_EQ(r.per_fold.size(), 3u);
  int total = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(r.per_fold[i].id, c.threads[i].name);
    EXPECT_EQ(r.per_fold[i].test_events, static_cast<int>(c.threads[i].size()));
    EXPECT_EQ(r.per_fold[i].confusion.sum(), r.per_fold[i].test_events);
    total += r.per_fold[i].test_events;
  }
  EXPECT_EQ(total, static_cast<int>(c.num_events()));
  EXPECT_EQ(r.pooled.sum(), total);
  EXPECT_NEAR(r.micro_accuracy,
              static_cast<double>(r.pooled.trace()) / r.pooled.sum(), 1e-15);
  EXPECT_NEAR(r.macro_f1, macro_f1(r.pooled), 1e-15);
}

TEST(LeaveOneThreadOut, DeterministicAcrossRunsAndWorkers) {
  Corpus c = small_clustered(5, 61);
  EvalConfig cfg = quick_config();
  const std::string a = leave_one_thread_out(c, cfg).to_csv();
  cfg.workers = 3;
  EXPECT_EQ(leave_one_thread_out(c, cfg).to_csv(), a);
}

TEST(LeaveOneThreadOut, NeedsTwoThreads) {
  Corpus c = small_clustered(1, 62);
  EXPECT_THROW(leave_one_thread_out(c, quick_config()), DataError);
}

TEST(LeaveOneThreadOut, SeparableCorpusScoresHigh) {
  Corpus c = small_clustered(12, 63, 40.0);
  EvalReport r = leave_one_thread_out(c, quick_config());
  EXPECT_GE(r.micro_accuracy, 0.9);
}

TEST(LeaveOneEventOut, PartitionByEvent) {
  std::vector<std::pair<std::string, Corpus>> events = {
      {"ottawa", small_clustered(3, 64)},
      {"sydney", small_clustered(2, 65)},
      {"charlie", small_clustered(4, 66)}};
  EvalReport r = leave_one_event_out(events, quick_config());
  ASSERT_EQ(r.per_fold.size(), 3u);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < events.size(); ++i) {
    EXPECT_EQ(r.per_fold[i].id, events[i].first);
    EXPECT_EQ(r.per_fold[i].test_events,
              static_cast<int>(events[i].second.num_events()));
    ids.insert(r.per_fold[i].id);
  }
  EXPECT_EQ(ids.size(), 3u);
  std::istringstream csv(r.to_csv());
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "fold,events,micro_accuracy,macro_f1");
  std::getline(csv, line);
  EXPECT_EQ(line.rfind("ottawa,", 0), 0u);
  const std::string table = r.to_table();
  EXPECT_NE(table.find("sydney"), std::string::npos);
  EXPECT_NE(table.find("macro_f1"), std::string::npos);
  EXPECT_NE(table.find("aggregate"), std::string::npos);
}

TEST(LeaveOneEventOut, TwoEventsTwoFolds) {
  std::vector<std::pair<std::string, Corpus>> events = {
      {"a", small_clustered(2, 67)}, {"b", small_clustered(2, 68)}};
  EXPECT_EQ(leave_one_event_out(events, quick_config()).per_fold.size(), 2u);
  events.pop_back();
  EXPECT_THROW(leave_one_event_out(events, quick_config()), DataError);
}

TEST(Influence, IdentityFlagsDiagonal) {
  ModelParams p = make_params(Variant::TextualHP, 4, 1);
  p.alpha = 0.3 * Eigen::MatrixXd::Identity(4, 4);
  InfluenceReport r = influence_report(p);
  for (int y = 0; y < 4; ++y)
    EXPECT_EQ(r.row_max[y], y);
}

TEST(Influence, CommentColumnDominantFixture) {
  ModelParams p = make_params(Variant::FullyTextualHP, 4, 1);
  p.label_names = {"support", "deny", "question", "comment"};
  p.alpha << 0.0119, 0.0087, 0.0062, 0.1643,
             0.0129, 0.0135, 0.0136, 0.0127,
             0.0146, 0.0128, 0.0149, 0.1003,
             0.0043, 0.0022, 0.0013, 0.0559;
  InfluenceReport r = influence_report(p);
  EXPECT_EQ(r.row_max, (std::vector<int>{3, 2, 3, 3}));
  EXPECT_EQ(r.row_second, (std::vector<int>{0, 1, 2, 0}));
  const std::string text = r.to_string();
  EXPECT_NE(text.find("0.1643*"), std::string::npos) << text;
  EXPECT_NE(text.find("0.1003*"), std::string::npos);
  EXPECT_NE(text.find("0.0559*"), std::string::npos);
  EXPECT_NE(text.find("0.0136*"), std::string::npos);
  EXPECT_NE(text.find("0.0119+"), std::string::npos);
  EXPECT_NE(text.find("comment"), std::string::npos);
}

TEST(Influence, TiesGoToLowestIndex) {
  ModelParams p = make_params(Variant::TextualHP, 3, 1);
  p.alpha.setConstant(0.2);
  InfluenceReport r = influence_report(p);
  EXPECT_EQ(r.row_max, (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(r.row_second, (std::vector<int>{1, 1, 1}));
}

TEST(KernelDump, GridRowsAndDeterminism) {
  Gen gen(70);
  ModelParams p = gen.params(Variant::NeuralKernelHP, 4, 3);
  KernelCurveOptions opts;
  auto curve = kernel_dt_curve(p, opts);
  ASSERT_EQ(curve.size(), 100u);
  EXPECT_DOUBLE_EQ(curve.front().first, 0.0);
  EXPECT_DOUBLE_EQ(curve.back().first, 5.0);
  const std::string csv = kernel_curve_csv(curve);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 101);
  EXPECT_EQ(csv.rfind("dt,kernel\n", 0), 0u);
  EXPECT_EQ(kernel_curve_csv(kernel_dt_curve(p, opts)), csv);
}

TEST(KernelDump, PairSamplesWithinWindow) {
  Gen gen(71);
  ModelParams p = gen.params(Variant::NeuralKernelHP, 4, 3);
  Corpus c = gen.corpus(4, 3, 3, 10, 3.0);
  auto pairs = kernel_pair_samples(p, c, 1.0);
  ASSERT_FALSE(pairs.empty());
  for (const auto &s : pairs) {
    EXPECT_GE(s.dt, 0.0);
    EXPECT_LE(s.dt, 1.0);
    EXPECT_GE(s.cosine_similarity, -1.0 - 1e-12);
    EXPECT_LE(s.cosine_similarity, 1.0 + 1e-12);
    EXPECT_GT(s.value, 0.0);
  }
  EXPECT_EQ(kernel_pairs_csv(pairs).rfind("cosine_similarity,dt,kernel\n", 0), 0u);
}

TEST(KernelDump, WrongVariantRejected) {
  ModelParams p = make_params(Variant::TextualHP, 2, 1);
  EXPECT_THROW(kernel_dt_curve(p, {}), std::invalid_argument);
}

} // namespace
