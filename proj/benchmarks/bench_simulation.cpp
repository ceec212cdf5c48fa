//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <benchmark/benchmark.h>

#include "hawkes/simulation.hpp"

namespace {

using namespace hawkes;

void BM_Simulate(benchmark::State &state) {
  SimSpec spec;
  spec.mu = Eigen::VectorXd::Constant(4, 0.1);
  spec.alpha = Eigen::MatrixXd::Constant(4, 4, 0.1);
  spec.T = static_cast<double>(state.range(0));
  spec.num_threads = 10;
  std::int64_t events = 0;
  for (auto _ : state) {
    Corpus c = simulate(spec);
    events += static_cast<std::int64_t>(c.num_events());
    ++spec.seed;
  }
  state.SetItemsProcessed(events);
}

BENCHMARK(BM_Simulate)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

} // namespace
