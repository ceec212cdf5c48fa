//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hawkes/intensity.hpp"
#include "hawkes/likelihood.hpp"

#include "test_support.hpp"

namespace {

using namespace hawkes;
using hawkes::testing::Gen;
using hawkes::testing::oracle_compensator;
using hawkes::testing::oracle_event_intensity;

constexpr Variant kAll[] = {Variant::PlainMHP, Variant::TextualHP,
                            Variant::FullyTextualHP, Variant::NeuralKernelHP};
constexpr Variant kExact[] = {Variant::PlainMHP, Variant::TextualHP,
                              Variant::FullyTextualHP};

Thread make_thread(std::vector<double> times, std::vector<int> labels,
                   std::vector<Eigen::VectorXd> xs, double T) {
  Thread th;
  for (std::size_t i = 0; i < times.size(); ++i)
    th.events.push_back(Event{times[i], labels[i], 0, xs[i]});
  th.horizon = T;
  return th;
}

TEST(BaseIntensity, UniformForZeroWeights) {
  Eigen::VectorXd mu = base_intensity(Eigen::MatrixXd::Zero(4, 3),
                                      Eigen::VectorXd::Ones(3));
  for (int y = 0; y < 4; ++y)
    EXPECT_DOUBLE_EQ(mu[y], 0.25);
}

TEST(BaseIntensity, TwoLabelExample) {
  Eigen::MatrixXd W(2, 2);
  W << 1, 0, 0, 0;
  Eigen::VectorXd mu = base_intensity(W, Eigen::Vector2d(1, 0));
  EXPECT_NEAR(mu[0], 0.7310586, 5e-8);
  EXPECT_NEAR(mu[1], 0.2689414, 5e-8);
  Eigen::VectorXd oracle = hawkes::testing::oracle_softmax(W, Eigen::Vector2d(1, 0));
  EXPECT_NEAR(mu[0], oracle[0], 1e-15);
  EXPECT_NEAR(mu[0], std::exp(1.0) / (std::exp(1.0) + 1.0), 1e-15);
}

TEST(BaseIntensity, ShiftInvariantAndNormalizedProperty) {
  Gen gen(10);
  for (int trial = 0; trial < 10000; ++trial) {
    const int k = gen.integer(2, 6), v = gen.integer(1, 8);
    Eigen::MatrixXd W = gen.matrix(k, v, 3.0);
    Eigen::VectorXd x = gen.vector(v, 3.0);
    Eigen::VectorXd mu = base_intensity(W, x);
    ASSERT_NEAR(mu.sum(), 1.0, 1e-12);
    ASSERT_GT(mu.minCoeff(), 0.0);
    if (trial % 10 == 0) {
      Eigen::MatrixXd shifted = W.rowwise() + gen.vector(v).transpose();
      EXPECT_LE((base_intensity(shifted, x) - mu).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(BaseIntensity, LargeLogitsStayFinite) {
  Eigen::MatrixXd W(3, 1);
  W << 1000, 999, -1000;
  Eigen::VectorXd mu = base_intensity(W, Eigen::VectorXd::Ones(1));
  EXPECT_TRUE(mu.allFinite());
  EXPECT_NEAR(mu.sum(), 1.0, 1e-12);
}

TEST(IntensityAt, EmptyHistoryTextualIsBase) {
  ModelParams p = make_params(Variant::TextualHP, 4, 3);
  Thread th;
  th.horizon = 1.0;
  for (int y = 0; y < 4; ++y)
    EXPECT_DOUBLE_EQ(intensity_at(p, HistoryView(th, 0), 0.5,
                                  Eigen::VectorXd::Ones(3), y),
                     0.25);
}

TEST(IntensityAt, PlainExample) {
  ModelParams p = make_params(Variant::PlainMHP, 4, 0);
  p.mu = Eigen::VectorXd::Constant(4, 0.1);
  p.alpha = Eigen::MatrixXd::Ones(4, 4);
  p.omega = 1.0;
  Thread th = make_thread({0.0, 1.0}, {0, 0}, {Eigen::VectorXd(), Eigen::VectorXd()}, 1.0);
  const double v = intensity_at(p, HistoryView(th, 1), 1.0, Eigen::VectorXd(), 0);
  EXPECT_NEAR(v, 0.4678794, 5e-8);
  EXPECT_NEAR(v, oracle_event_intensity(p, th, 1, 0), 1e-15);
}

TEST(IntensityAt, FullyTextualWithIdenticalTextMatchesTextual) {
  Gen gen(11);
  ModelParams ft = gen.params(Variant::FullyTextualHP, 4, 3);
  ModelParams tx = ft;
  tx.variant = Variant::TextualHP;
  Eigen::VectorXd x = gen.vector(3);
  Thread th = make_thread({0.1, 0.4, 0.9}, {2, 0, 3}, {x, x, x}, 2.0);
  for (int y = 0; y < 4; ++y)
    EXPECT_NEAR(intensity_at(ft, HistoryView(th, 3), 1.5, x, y),
                intensity_at(tx, HistoryView(th, 3), 1.5, x, y), 1e-15);
}

TEST(IntensityAt, MatchesBruteForceOracle) {
  Gen gen(12);
  for (Variant v : kAll) {
    for (int trial = 0; trial < 20; ++trial) {
      const int k = gen.integer(2, 5), d = gen.integer(1, 4);
      ModelParams p = gen.params(v, k, d);
      Thread th = gen.thread(k, d, gen.integer(1, 10));
      for (std::size_t n = 0; n < th.size(); ++n) {
        Eigen::VectorXd all = intensities_at(p, HistoryView(th, n),
                                             th.events[n].time, th.events[n].embedding);
        for (int y = 0; y < k; ++y) {
          const double o = oracle_event_intensity(p, th, n, y);
          EXPECT_NEAR(all[y], o, 1e-12 * std::max(1.0, o)) << to_string(v);
          EXPECT_EQ(all[y], intensity_at(p, HistoryView(th, n), th.events[n].time,
                                         th.events[n].embedding, y));
          EXPECT_GE(all[y], 0.0);
        }
      }
    }
  }
}

TEST(IntensityAt, PredictedLabelsReplaceTruth) {
  ModelParams p = make_params(Variant::PlainMHP, 2, 0);
  p.mu = Eigen::Vector2d(0.1, 0.1);
  p.alpha << 1.0, 0.0, 0.0, 0.0;
  p.omega = 1.0;
  Thread th = make_thread({0.0, 1.0}, {1, 0}, {Eigen::VectorXd(), Eigen::VectorXd()}, 1.0);
  const double truth = intensity_at(p, HistoryView(th, 1), 1.0, Eigen::VectorXd(), 0);
  std::vector<int> predicted = {0};
  const double pred =
      intensity_at(p, HistoryView(th, 1, predicted), 1.0, Eigen::VectorXd(), 0);
  EXPECT_DOUBLE_EQ(truth, 0.1);
  EXPECT_NEAR(pred, 0.1 + std::exp(-1.0), 1e-15);
}

TEST(IntensityAt, Contracts) {
  ModelParams p = make_params(Variant::TextualHP, 2, 3);
  Gen gen(13);
  Thread th = gen.thread(2, 3, 3);
  EXPECT_THROW(intensity_at(p, HistoryView(th, 3), th.events[0].time,
                            Eigen::VectorXd::Zero(3), 0),
               std::invalid_argument);
  EXPECT_THROW(intensity_at(p, HistoryView(th, 0), 1.0, Eigen::VectorXd(), 0),
               std::invalid_argument);
}

TEST(IntensityAt, AddingPastEventNeverDecreasesProperty) {
  Gen gen(14);
  for (Variant v : kAll) {
    for (int trial = 0; trial < 50; ++trial) {
      const int k = gen.integer(2, 4), d = gen.integer(1, 3);
      ModelParams p = gen.params(v, k, d);
      Thread th = gen.thread(k, d, gen.integer(1, 8));
      const double t = th.horizon;
      Eigen::VectorXd x = gen.vector(d);
      Eigen::VectorXd before = intensities_at(p, HistoryView(th, th.size()), t, x);
      Thread more = th;
      Event extra{gen.uniform(0.0, t - 1e-6), gen.integer(0, k - 1), 0,
                  gen.vector(d)};
      auto pos = std::upper_bound(more.events.begin(), more.events.end(), extra.time,
                                  [](double a, const Event &e) { return a < e.time; });
      more.events.insert(pos, extra);
      Eigen::VectorXd after = intensities_at(p, HistoryView(more, more.size()), t, x);
      for (int y = 0; y < k; ++y)
        EXPECT_GE(after[y], before[y] - 1e-15) << to_string(v);
    }
  }
}

TEST(CarryForward, IndexOfLatestEventAtOrBefore) {
  Thread th = make_thread({1.0, 2.0, 4.0}, {0, 0, 0},
                          {Eigen::VectorXd(), Eigen::VectorXd(), Eigen::VectorXd()}, 5.0);
  EXPECT_EQ(carry_forward_index(th, 0.5), -1);
  EXPECT_EQ(carry_forward_index(th, 1.0), 0);
  EXPECT_EQ(carry_forward_index(th, 3.9), 1);
  EXPECT_EQ(carry_forward_index(th, 5.0), 2);
}

TEST(Compensator, TextualEmptyThreadIsHorizon) {
  ModelParams p = make_params(Variant::TextualHP, 4, 2);
  p.alpha.setConstant(0.3);
  Thread th;
  th.horizon = 7.0;
  EXPECT_DOUBLE_EQ(compensator(p, th), 7.0);
}

TEST(Compensator, PlainPoisson) {
  ModelParams p = make_params(Variant::PlainMHP, 2, 0);
  p.mu = Eigen::Vector2d(0.5, 0.5);
  Thread th = make_thread({1.0, 3.0}, {0, 1}, {Eigen::VectorXd(), Eigen::VectorXd()}, 4.0);
  EXPECT_DOUBLE_EQ(compensator(p, th), 4.0);
}

TEST(Compensator, TextualThreeEventsMatchesQuadrature) {
  Gen gen(15);
  ModelParams p = gen.params(Variant::TextualHP, 4, 3);
  Thread th = gen.thread(4, 3, 3);
  EXPECT_NEAR(compensator(p, th), oracle_compensator(p, th),
              1e-8 * oracle_compensator(p, th));
}

TEST(Compensator, ClosedFormMatchesQuadratureProperty) {
  Gen gen(16);
  for (Variant v : kExact) {
    for (int trial = 0; trial < 30; ++trial) {
      const int k = gen.integer(2, 5), d = gen.integer(1, 4);
      ModelParams p = gen.params(v, k, d);
      Thread th = gen.thread(k, d, gen.integer(0, 10));
      const double closed = compensator(p, th);
      const double quad = oracle_compensator(p, th);
      EXPECT_LE(hawkes::testing::rel_error(closed, quad), 1e-8)
          << to_string(v) << " trial " << trial;
    }
  }
}

TEST(Compensator, TextualBaseIntegralIgnoresW) {
  Gen gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    ModelParams p = gen.params(Variant::TextualHP, 4, 5);
    Thread th = gen.thread(4, 5, gen.integer(1, 10));
    const double before = compensator(p, th);
    p.W += gen.matrix(4, 5, 2.0);
    EXPECT_LE(std::abs(compensator(p, th) - before), 1e-12);
    p.alpha.setZero();
    EXPECT_DOUBLE_EQ(compensator(p, th), th.horizon);
  }
}

TEST(Compensator, PredictedLabelListUsed) {
  Gen gen(18);
  ModelParams p = gen.params(Variant::PlainMHP, 3, 0);
  Thread th = gen.thread(3, 0, 4);
  std::vector<int> labels;
  for (const Event &e : th.events)
    labels.push_back(e.label);
  EXPECT_DOUBLE_EQ(compensator(p, th, labels), compensator(p, th));
  labels.assign(th.size(), 0);
  Thread relabeled = th;
  for (Event &e : relabeled.events)
    e.label = 0;
  EXPECT_DOUBLE_EQ(compensator(p, th, labels), compensator(p, relabeled));
  labels.pop_back();
  EXPECT_THROW(compensator(p, th, labels), std::invalid_argument);
}

TEST(IntensityCsv, OneRowPerLabelPerSample) {
  Gen gen(19);
  Corpus c = gen.corpus(3, 2, 2, 4);
  ModelParams p = gen.params(Variant::TextualHP, 3, 2);
  std::ostringstream out;
  write_intensity_csv(p, c, out, 5);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "thread,t,kind,label,intensity");
  int rows = 0;
  while (std::getline(in, line))
    ++rows;
  EXPECT_EQ(rows, static_cast<int>(3 * (c.num_events() + 5 * c.threads.size())));
}

} // namespace
