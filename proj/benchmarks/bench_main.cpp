//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <benchmark/benchmark.h>

BENCHMARK_MAIN();
