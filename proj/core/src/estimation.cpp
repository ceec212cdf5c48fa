//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "hawkes/estimation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>
#include <string>

#include "hawkes/util.hpp"

namespace hawkes {
namespace {
  std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
      return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
  }

  template <class T>
  T parse_number(std::string_view key, std::string_view value) {
    const std::string v = trim(value);
    T out{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
      throw DataError("config: invalid value '" + v + "' for key '"
                      + std::string(key) + "'");
    return out;
  }

  std::vector<int> parse_int_list(std::string_view key, std::string_view value) {
    std::vector<int> out;
    std::string v = trim(value);
    std::size_t start = 0;
    while (start <= v.size()) {
      std::size_t comma = v.find(',', start);
      if (comma == std::string::npos)
        comma = v.size();
      out.push_back(parse_number<int>(key, std::string_view(v).substr(
                                               start, comma - start)));
      start = comma + 1;
    }
    return out;
  }

  std::string fmt_double(double d) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
    return std::string(buf, ptr);
  }
} // namespace

void TrainConfig::check() const {
  if (!(omega > 0) || !(sigma > 0) || !(reg_C >= 0))
    throw DataError("config: omega and sigma must be > 0, reg_C >= 0");
  if (max_iterations < 0 || !(convergence_tol > 0) || lbfgs_memory < 1)
    throw DataError(
        "config: max_iterations >= 0, convergence_tol > 0, lbfgs_memory >= 1");
  if (workers < 1)
    throw DataError("config: workers must be >= 1");
  if (!(nn.learning_rate > 0) || nn.momentum < 0 || nn.momentum >= 1
      || nn.epochs < 0 || nn.mc_samples < 1 || nn.hidden.empty())
    throw DataError("config: invalid nn settings");
  for (int h : nn.hidden)
    if (h <= 0)
      throw DataError("config: nn.hidden sizes must be positive");
}

void apply_setting(TrainConfig &c, std::string_view key_raw,
                   std::string_view value) {
  const std::string key = trim(key_raw);
  if (key == "variant") {
    try {
      c.variant = parse_variant(trim(value));
    } catch (const std::invalid_argument &e) {
      throw DataError(std::string("config: ") + e.what());
    }
  } else if (key == "omega") {
    c.omega = parse_number<double>(key, value);
  } else if (key == "sigma") {
    c.sigma = parse_number<double>(key, value);
  } else if (key == "reg_C") {
    c.reg_C = parse_number<double>(key, value);
  } else if (key == "max_iterations") {
    c.max_iterations = parse_number<int>(key, value);
  } else if (key == "convergence_tol") {
    c.convergence_tol = parse_number<double>(key, value);
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "lbfgs_memory") {
    c.lbfgs_memory = parse_number<int>(key, value);
  } else if (key == "workers") {
    c.workers = parse_number<int>(key, value);
  } else if (key == "nn.learning_rate") {
    c.nn.learning_rate = parse_number<double>(key, value);
  } else if (key == "nn.momentum") {
    c.nn.momentum = parse_number<double>(key, value);
  } else if (key == "nn.hidden") {
    c.nn.hidden = parse_int_list(key, value);
  } else if (key == "nn.epochs") {
    c.nn.epochs = parse_number<int>(key, value);
  } else if (key == "nn.mc_samples") {
    c.nn.mc_samples = parse_number<int>(key, value);
  } else {
    throw DataError("config: unknown key '" + key + "'");
  }
}

void apply_config_file(TrainConfig &config, const std::filesystem::path &path) {
  std::istringstream in(read_file(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    if (trim(line).empty())
      continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError(path.string() + ":" + std::to_string(lineno)
                      + ": expected key=value");
    try {
      apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
    } catch (const DataError &e) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": "
                      + e.what());
    }
  }
}

std::string describe(const TrainConfig &c) {
  std::ostringstream ss;
  ss << "variant=" << to_string(c.variant) << '\n'
     << "omega=" << fmt_double(c.omega) << '\n'
     << "sigma=" << fmt_double(c.sigma) << '\n'
     << "reg_C=" << fmt_double(c.reg_C) << '\n'
     << "max_iterations=" << c.max_iterations << '\n'
     << "convergence_tol=" << fmt_double(c.convergence_tol) << '\n'
     << "seed=" << c.seed << '\n'
     << "lbfgs_memory=" << c.lbfgs_memory << '\n'
     << "workers=" << c.workers << '\n'
     << "nn.learning_rate=" << fmt_double(c.nn.learning_rate) << '\n'
     << "nn.momentum=" << fmt_double(c.nn.momentum) << '\n'
     << "nn.hidden=";
  for (std::size_t i = 0; i < c.nn.hidden.size(); ++i)
    ss << (i ? "," : "") << c.nn.hidden[i];
  ss << '\n'
     << "nn.epochs=" << c.nn.epochs << '\n'
     << "nn.mc_samples=" << c.nn.mc_samples << '\n';
  return ss.str();
}

ModelParams init_params(const Corpus &corpus, const TrainConfig &config,
                        std::uint64_t seed) {
  const int k = corpus.num_labels, v = corpus.embedding_dim;
  ModelParams p;
  p.variant = config.variant;
  p.omega = config.omega;
  p.sigma = config.sigma;
  p.reg_C = config.reg_C;
  p.label_names = corpus.label_names;
  p.W = Eigen::MatrixXd::Zero(k, v);
  p.alpha = Eigen::MatrixXd::Constant(k, k, 0.1);

  if (config.variant == Variant::PlainMHP) {
    double horizon_sum = 0.0;
    for (const auto &th : corpus.threads)
      horizon_sum += th.horizon;
    const double m = static_cast<double>(corpus.threads.size());
    const double mean_T = m > 0 ? horizon_sum / m : 0.0;
    const double n = static_cast<double>(corpus.num_events());
    double rate = (n > 0 && mean_T > 0) ? n / (m * mean_T) : 1.0;
    p.mu = Eigen::VectorXd::Constant(k, std::max(rate / k, kParamFloor));
  }
  if (config.variant == Variant::NeuralKernelHP) {
    p.net = NeuralKernelNet(v, config.nn.hidden);
    p.net.initialize(derive_seed(seed, "init"));
  }
  return p;
}

namespace {
  struct Objective {
    const Corpus &corpus;
    const std::vector<ParamBlock> &layout;
    ModelParams work;
    EvalOptions eval;

    // Returns the log-likelihood breakdown and the gradient of LL.
    std::pair<LLBreakdown, Eigen::VectorXd> operator()(const Eigen::VectorXd &x) {
      unpack_params(x, layout, work);
      auto [ll, grad] = log_likelihood_and_gradients(work, corpus, eval);
      return {ll, pack_gradient(grad, layout)};
    }
  };

  Eigen::VectorXd lower_bounds(const std::vector<ParamBlock> &layout,
                               Eigen::Index n) {
    Eigen::VectorXd lb =
        Eigen::VectorXd::Constant(n, -std::numeric_limits<double>::infinity());
    for (const auto &b : layout)
      if (b.lower_bound)
        lb.segment(b.offset, b.size).setConstant(
            std::max(*b.lower_bound, kParamFloor));
    return lb;
  }

  bool small_change(double prev, double next, double tol) {
    return std::abs(next - prev) / std::max(1.0, std::abs(prev)) < tol;
  }

  // Projected L-BFGS on f = -LL. Only improving steps are accepted.
  void run_lbfgs(Objective &obj, const TrainConfig &config, FitResult &res) {
    const auto &layout = obj.layout;
    Eigen::VectorXd x = pack_params(res.params, layout);
    const Eigen::VectorXd lb = lower_bounds(layout, x.size());
    x = x.cwiseMax(lb);

    auto [ll, grad_ll] = obj(x);
    if (!std::isfinite(ll.total))
      throw NumericalError("fit: non-finite objective at initialization");
    double f = -ll.total;
    Eigen::VectorXd g = -grad_ll;
    res.final_ll = ll;
    res.ll_trace = {ll.total};

    std::deque<Eigen::VectorXd> S, Y;
    int small_steps = 0;
    const double kC1 = 1e-4;

    for (int iter = 0; iter < config.max_iterations; ++iter) {
      // Variables pinned at the bound with the gradient pushing outward.
      Eigen::Array<bool, Eigen::Dynamic, 1> active =
          (x.array() <= lb.array()) && (g.array() > 0);
      auto masked = [&](Eigen::VectorXd v) {
        for (Eigen::Index i = 0; i < v.size(); ++i)
          if (active[i])
            v[i] = 0.0;
        return v;
      };

      Eigen::VectorXd pg = masked(g);
      if (pg.lpNorm<Eigen::Infinity>() < 1e-10) {
        res.converged = true;
        break;
      }

      bool accepted = false;
      for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
        Eigen::VectorXd d;
        double t;
        if (S.empty()) {
          d = -pg;
          t = 1.0 / std::max(1.0, pg.norm());
        } else {
          // Two-loop recursion.
          Eigen::VectorXd q = pg;
          std::vector<double> a(S.size());
          for (std::size_t i = S.size(); i-- > 0;) {
            a[i] = S[i].dot(q) / Y[i].dot(S[i]);
            q -= a[i] * Y[i];
          }
          const double gamma = S.back().dot(Y.back()) / Y.back().squaredNorm();
          Eigen::VectorXd r = gamma * q;
          for (std::size_t i = 0; i < S.size(); ++i) {
            const double b = Y[i].dot(r) / Y[i].dot(S[i]);
            r += S[i] * (a[i] - b);
          }
          d = masked(-r);
          if (!(d.dot(pg) < 0))
            d = -pg;
          t = 1.0;
        }

        for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
          Eigen::VectorXd x_new = (x + t * d).cwiseMax(lb);
          if (x_new == x)
            break;
          LLBreakdown ll_new;
          Eigen::VectorXd grad_new;
          try {
            std::tie(ll_new, grad_new) = obj(x_new);
          } catch (const NumericalError &) {
            continue;
          }
          const double f_new = -ll_new.total;
          if (!std::isfinite(f_new) || f_new > f + kC1 * g.dot(x_new - x)
              || f_new > f)
            continue;

          Eigen::VectorXd s = x_new - x;
          Eigen::VectorXd y = (-grad_new) - g;
          if (s.dot(y) > 1e-12 * s.norm() * y.norm()) {
            S.push_back(std::move(s));
            Y.push_back(std::move(y));
            if (static_cast<int>(S.size()) > config.lbfgs_memory) {
              S.pop_front();
              Y.pop_front();
            }
          }
          const double f_prev = f;
          x = std::move(x_new);
          f = f_new;
          g = -grad_new;
          res.final_ll = ll_new;
          res.ll_trace.push_back(ll_new.total);
          small_steps = small_change(f_prev, f, config.convergence_tol)
                            ? small_steps + 1
                            : 0;
          accepted = true;
          break;
        }
        if (!accepted) {
          S.clear();
          Y.clear();
        }
      }

      if (!accepted) {
        // No improving step along the projected steepest-descent direction
        // either: stationary to working precision.
        res.converged = true;
        break;
      }
      ++res.iterations;
      if (small_steps >= 3) {
        res.converged = true;
        break;
      }
    }
    unpack_params(x, layout, res.params);
  }

  // Adaptive per-parameter scaling (accumulated squared gradients) with
  // heavy-ball momentum, ascending LL. Monte Carlo samples are re-drawn each
  // iteration and shared by that iteration's objective and gradient.
  void run_adaptive(Objective &obj, const TrainConfig &config, FitResult &res) {
    const auto &layout = obj.layout;
    Eigen::VectorXd x = pack_params(res.params, layout);
    const Eigen::VectorXd lb = lower_bounds(layout, x.size());
    x = x.cwiseMax(lb);
    Eigen::VectorXd accum = Eigen::VectorXd::Zero(x.size());
    Eigen::VectorXd velocity = Eigen::VectorXd::Zero(x.size());
    constexpr double kEps = 1e-8;

    const int iters = std::min(config.max_iterations, config.nn.epochs);
    int small_steps = 0;
    for (int it = 0; it < iters; ++it) {
      obj.eval.mc.seed = derive_seed(config.seed, "mc", it);
      auto [ll, grad] = obj(x);
      if (!std::isfinite(ll.total))
        throw NumericalError("fit: non-finite objective at iteration "
                             + std::to_string(it));
      if (!res.ll_trace.empty()
          && small_change(res.ll_trace.back(), ll.total,
                          config.convergence_tol))
        ++small_steps;
      else
        small_steps = 0;
      res.ll_trace.push_back(ll.total);
      if (small_steps >= 3) {
        res.converged = true;
        break;
      }
      accum += grad.cwiseAbs2();
      velocity = config.nn.momentum * velocity
                 + config.nn.learning_rate
                       * grad.cwiseQuotient(
                           (accum.cwiseSqrt().array() + kEps).matrix());
      x = (x + velocity).cwiseMax(lb);
      ++res.iterations;
    }
    obj.eval.mc.seed = derive_seed(config.seed, "mc", res.iterations);
    unpack_params(x, layout, res.params);
    res.final_ll = obj(x).first;
    if (res.iterations > 0 && !res.converged)
      res.ll_trace.push_back(res.final_ll.total);
  }
} // namespace

FitResult fit(const Corpus &corpus, const TrainConfig &config) {
  config.check();
  if (corpus.threads.empty())
    throw DataError("fit: corpus has no threads");

  FitResult res;
  res.params = init_params(corpus, config, config.seed);
  check_compatible(res.params, corpus);
  const auto layout = param_layout(res.params);

  EvalOptions eval;
  eval.workers = config.workers;
  eval.mc.samples = config.nn.mc_samples;
  eval.mc.seed = derive_seed(config.seed, "mc", 0);
  Objective obj{corpus, layout, res.params, eval};

  if (config.variant == Variant::NeuralKernelHP) {
    run_adaptive(obj, config, res);
  } else {
    run_lbfgs(obj, config, res);
  }
  if (config.max_iterations == 0) {
    res.converged = false;
    if (res.ll_trace.empty())
      res.ll_trace.push_back(res.final_ll.total);
  }
  return res;
}

void check_compatible(const ModelParams &params, const Corpus &corpus) {
  if (params.num_labels() != corpus.num_labels)
    throw DataError("model has " + std::to_string(params.num_labels())
                    + " labels, corpus has "
                    + std::to_string(corpus.num_labels));
  if (params.embedding_dim() != corpus.embedding_dim)
    throw DataError("model embedding dimension "
                    + std::to_string(params.embedding_dim())
                    + " differs from corpus dimension "
                    + std::to_string(corpus.embedding_dim));
}

} // namespace hawkes
