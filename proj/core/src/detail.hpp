//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef HAWKES_SRC_DETAIL_HPP_
#define HAWKES_SRC_DETAIL_HPP_

#include <cstdint>
#include <span>

#include "hawkes/core.hpp"
#include "hawkes/params.hpp"

namespace hawkes::detail {

inline int label_of(const Thread &thread, std::span<const int> labels,
                    std::size_t i) {
  return labels.empty() ? thread.events[i].label : labels[i];
}

/// Sum over labels of the base intensity: sum(mu) for PlainMHP, exactly 1
/// for the softmax variants.
double base_total(const ModelParams &params);

double mc_compensator(const ModelParams &params, const Thread &thread,
                      std::span<const int> labels, int samples,
                      std::uint64_t seed);

} // namespace hawkes::detail

#endif // HAWKES_SRC_DETAIL_HPP_
