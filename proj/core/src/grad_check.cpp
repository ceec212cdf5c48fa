//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hawkes/likelihood.hpp"

namespace hawkes {

std::string GradCheckReport::to_string() const {
  std::ostringstream ss;
  ss.precision(3);
  ss << std::scientific;
  for (const auto &b : blocks) {
    ss << "block " << b.name << ": entries=" << b.entries
       << " max_rel_error=" << b.max_rel_error
       << " one_sided=" << b.one_sided.size();
    if (!b.one_sided.empty()) {
      ss << " [";
      for (std::size_t i = 0; i < b.one_sided.size(); ++i)
        ss << (i ? "," : "") << b.one_sided[i];
      ss << "]";
    }
    ss << (b.passed ? " PASS" : " FAIL") << '\n';
  }
  ss << "tolerance=" << tolerance << ' ' << (passed ? "PASS" : "FAIL") << '\n';
  return ss.str();
}

GradCheckReport grad_check(const ModelParams &params, const Corpus &corpus,
                           const GradCheckOptions &options) {
  const auto layout = param_layout(params);
  const Eigen::VectorXd theta0 = pack_params(params, layout);
  Eigen::VectorXd analytic =
      pack_gradient(gradients(params, corpus, options.eval), layout);

  if (options.corrupt_block) {
    bool found = false;
    for (const auto &b : layout) {
      if (b.name != *options.corrupt_block || b.size == 0)
        continue;
      Eigen::Index idx;
      analytic.segment(b.offset, b.size).cwiseAbs().maxCoeff(&idx);
      analytic[b.offset + idx] = -analytic[b.offset + idx];
      found = true;
    }
    if (!found)
      throw std::invalid_argument("grad_check: unknown block '"
                                  + *options.corrupt_block + "'");
  }

  ModelParams work = params;
  auto objective = [&](const Eigen::VectorXd &theta) {
    unpack_params(theta, layout, work);
    return log_likelihood(work, corpus, options.eval).total;
  };
  const double f0 = objective(theta0);

  auto numeric = [&](Eigen::Index j, double h, bool one_sided) {
    Eigen::VectorXd th = theta0;
    if (one_sided) {
      th[j] = theta0[j] + h;
      const double f1 = objective(th);
      th[j] = theta0[j] + 2 * h;
      const double f2 = objective(th);
      return (-3 * f0 + 4 * f1 - f2) / (2 * h);
    }
    th[j] = theta0[j] + h;
    const double fp = objective(th);
    th[j] = theta0[j] - h;
    const double fm = objective(th);
    return (fp - fm) / (2 * h);
  };
  auto rel_error = [](double a, double n) {
    return std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-4});
  };

  GradCheckReport report;
  report.tolerance = options.tolerance;
  for (const auto &b : layout) {
    GradCheckBlock blk;
    blk.name = b.name;
    blk.entries = b.size;
    for (Eigen::Index i = 0; i < b.size; ++i) {
      const Eigen::Index j = b.offset + i;
      const bool one_sided =
          b.lower_bound && theta0[j] - 2 * options.step < *b.lower_bound;
      if (one_sided)
        blk.one_sided.push_back(i);
      double err = rel_error(analytic[j], numeric(j, options.step, one_sided));
      if (err > options.tolerance && options.fallback_step > 0)
        err = std::min(err, rel_error(analytic[j],
                                      numeric(j, options.fallback_step,
                                              one_sided)));
      blk.max_rel_error = std::max(blk.max_rel_error, err);
    }
    blk.passed = blk.max_rel_error <= options.tolerance;
    report.passed = report.passed && blk.passed;
    report.blocks.push_back(std::move(blk));
  }
  return report;
}

} // namespace hawkes
