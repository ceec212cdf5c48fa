//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <benchmark/benchmark.h>

#include "hawkes/kernels.hpp"

namespace {

using namespace hawkes;

void BM_NeuralForward(benchmark::State &state) {
  const int dim = static_cast<int>(state.range(0));
  NeuralKernelNet net(dim, {20, 20});
  net.initialize(3);
  const Eigen::VectorXd a = Eigen::VectorXd::LinSpaced(dim, -1.0, 1.0);
  const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(dim, 1.0, -1.0);
  double dt = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.forward_dt(a, b, dt));
    dt += 1e-3;
  }
}

BENCHMARK(BM_NeuralForward)->Arg(5)->Arg(100);

void BM_NeuralBackward(benchmark::State &state) {
  const int dim = static_cast<int>(state.range(0));
  NeuralKernelNet net(dim, {20, 20});
  net.initialize(3);
  const Eigen::VectorXd a = Eigen::VectorXd::LinSpaced(dim, -1.0, 1.0);
  const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(dim, 1.0, -1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(net.backward(a, 0.0, b, 0.5, 1.0));
}

BENCHMARK(BM_NeuralBackward)->Arg(5)->Arg(100);

} // namespace
