//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef HAWKES_STATS_HPP_
#define HAWKES_STATS_HPP_

#include <cstddef>
#include <functional>
#include <span>

namespace hawkes {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

/// One-sample Kolmogorov-Smirnov test against a continuous CDF, with the
/// asymptotic Kolmogorov distribution and Stephens' small-sample correction.
KsResult ks_test(std::span<const double> samples,
                 const std::function<double(double)> &cdf);

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

/// Spearman rank correlation; ties receive average ranks.
double spearman(std::span<const double> x, std::span<const double> y);

} // namespace hawkes

#endif // HAWKES_STATS_HPP_
