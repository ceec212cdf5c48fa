//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <benchmark/benchmark.h>

#include "hawkes/estimation.hpp"
#include "hawkes/likelihood.hpp"
#include "hawkes/simulation.hpp"

namespace {

using namespace hawkes;

Corpus bench_corpus(int threads) {
  SimSpec spec;
  spec.mu = Eigen::VectorXd::Constant(4, 0.1);
  spec.alpha = Eigen::MatrixXd::Constant(4, 4, 0.1);
  spec.T = 50.0;
  spec.num_threads = threads;
  spec.embedding_dim = 10;
  spec.clusters = orthogonal_clusters(4, 10, 4.0, 1.0);
  spec.seed = 7;
  return simulate(spec);
}

void BM_LikelihoodAndGradient(benchmark::State &state) {
  const Corpus c = bench_corpus(static_cast<int>(state.range(1)));
  TrainConfig cfg;
  cfg.variant = static_cast<Variant>(state.range(0));
  cfg.nn.hidden = {20, 20};
  ModelParams p = init_params(c, cfg, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(log_likelihood_and_gradients(p, c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.num_events()));
  state.SetLabel(std::string(to_string(cfg.variant)));
}

BENCHMARK(BM_LikelihoodAndGradient)
    ->ArgsProduct({{static_cast<int>(Variant::PlainMHP), static_cast<int>(Variant::TextualHP),
                    static_cast<int>(Variant::FullyTextualHP),
                    static_cast<int>(Variant::NeuralKernelHP)},
                   {10, 100}})
    ->Unit(benchmark::kMillisecond);

void BM_FitTextual(benchmark::State &state) {
  const Corpus c = bench_corpus(50);
  TrainConfig cfg;
  cfg.omega = 1.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(fit(c, cfg));
}

BENCHMARK(BM_FitTextual)->Unit(benchmark::kMillisecond);

} // namespace
