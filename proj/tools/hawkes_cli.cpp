//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Command-line front end: simulate, train, predict, evaluate, grad-check,
// influence-report, kernel-dump, intensity-dump, validate.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hawkes/core.hpp"
#include "hawkes/estimation.hpp"
#include "hawkes/eval.hpp"
#include "hawkes/intensity.hpp"
#include "hawkes/likelihood.hpp"
#include "hawkes/simulation.hpp"
#include "hawkes/util.hpp"

namespace {

using namespace hawkes;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

int available_cores() {
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  bool verbose = false;
  bool reproducible = true;
};

struct TrainingOptions {
  std::string config_file;
  std::vector<std::string> settings;
  std::string variant;
};

void add_training_options(CLI::App *cmd, TrainingOptions &opts) {
  cmd->add_option("--config", opts.config_file,
                  "Flat key=value training config file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--set", opts.settings,
                  "Override a config key (key=value); repeatable");
  cmd->add_option("--variant", opts.variant,
                  "PlainMHP | TextualHP | FullyTextualHP | NeuralKernelHP");
}

// defaults < config file < command-line flags
TrainConfig resolve_config(const TrainingOptions &opts,
                           const GlobalOptions &global) {
  TrainConfig config;
  config.workers = available_cores();
  if (!opts.config_file.empty())
    apply_config_file(config, opts.config_file);
  for (const auto &s : opts.settings) {
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--set", "expected key=value, got '" + s + "'");
    apply_setting(config, s.substr(0, eq), s.substr(eq + 1));
  }
  if (!opts.variant.empty())
    apply_setting(config, "variant", opts.variant);
  if (global.seed)
    config.seed = *global.seed;
  if (global.workers)
    config.workers = *global.workers;
  config.check();
  std::cerr << "resolved config:\n" << describe(config);
  return config;
}

void emit(const std::string &path, const std::string &contents) {
  if (path.empty() || path == "-")
    std::cout << contents;
  else
    write_file_atomic(path, contents);
}

std::vector<double> parse_list(const std::string &what, const std::string &s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw CLI::ValidationError(what, "not a number: '" + item + "'");
    }
  }
  return out;
}

PredictMode parse_mode(const std::string &mode) {
  if (mode == "online")
    return PredictMode::Online;
  if (mode == "oracle")
    return PredictMode::Oracle;
  throw CLI::ValidationError("--mode", "expected online or oracle");
}

int run(int argc, char **argv) {
  CLI::App app{"Hawkes-process stance classifiers for timestamped, "
               "text-embedded event threads"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hawkes 0.1.0");

  GlobalOptions global;
  app.add_option("--seed", global.seed,
                 "Master seed; every random stream derives from it");
  app.add_option("--workers", global.workers,
                 "Worker threads for per-thread and per-fold work")
      ->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", global.verbose, "Extra diagnostics on stderr");
  app.add_flag("--reproducible,!--no-reproducible", global.reproducible,
               "Ordered reductions (always on; results never depend on "
               "--workers)");

  int status = kOk;

  // validate ----------------------------------------------------------------
  auto *validate_cmd = app.add_subcommand("validate", "Check a corpus file");
  std::string validate_path;
  validate_cmd->add_option("corpus", validate_path, "Corpus file")
      ->required();
  validate_cmd->callback([&] {
    Corpus c = load_corpus(validate_path);
    std::cout << "ok: " << c.threads.size() << " threads, " << c.num_events()
              << " events, " << c.num_labels << " labels, dim "
              << c.embedding_dim << '\n';
  });

  // simulate ----------------------------------------------------------------
  auto *sim_cmd = app.add_subcommand(
      "simulate", "Simulate a PlainMHP corpus by thinning");
  std::string sim_out, sim_truth, sim_mu, sim_alpha;
  int sim_labels = 4, sim_threads = 100, sim_dim = 0;
  double sim_omega = 1.0, sim_T = 50.0, sim_sep = 4.0, sim_std = 1.0;
  sim_cmd->add_option("--out", sim_out, "Corpus output path")->required();
  sim_cmd->add_option("--truth", sim_truth,
                      "Ground-truth model output path (PlainMHP)");
  sim_cmd->add_option("--labels", sim_labels, "Number of labels")
      ->check(CLI::Range(2, 1000));
  sim_cmd->add_option("--mu", sim_mu, "Comma list of base rates (default 0.1 each)");
  sim_cmd->add_option("--alpha", sim_alpha,
                      "Row-major comma list (default 0.1 everywhere)");
  sim_cmd->add_option("--omega", sim_omega, "Kernel decay")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--horizon", sim_T, "Observation horizon T (hours)")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--threads", sim_threads, "Number of threads")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--embedding-dim", sim_dim,
                      "Embedding dimension; >= labels attaches label clusters")
      ->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--cluster-separation", sim_sep,
                      "Distance between cluster means");
  sim_cmd->add_option("--cluster-stddev", sim_std, "Cluster standard deviation");
  sim_cmd->callback([&] {
    SimSpec spec;
    spec.mu = Eigen::VectorXd::Constant(sim_labels, 0.1);
    if (!sim_mu.empty()) {
      auto v = parse_list("--mu", sim_mu);
      if (static_cast<int>(v.size()) != sim_labels)
        throw CLI::ValidationError("--mu", "needs one value per label");
      spec.mu = Eigen::Map<Eigen::VectorXd>(v.data(), sim_labels);
    }
    spec.alpha = Eigen::MatrixXd::Constant(sim_labels, sim_labels, 0.1);
    if (!sim_alpha.empty()) {
      auto v = parse_list("--alpha", sim_alpha);
      if (static_cast<int>(v.size()) != sim_labels * sim_labels)
        throw CLI::ValidationError("--alpha", "needs labels^2 values");
      for (int r = 0; r < sim_labels; ++r)
        for (int c = 0; c < sim_labels; ++c)
          spec.alpha(r, c) = v[r * sim_labels + c];
    }
    spec.omega = sim_omega;
    spec.T = sim_T;
    spec.num_threads = sim_threads;
    spec.embedding_dim = sim_dim;
    if (sim_dim > 0) {
      if (sim_dim < sim_labels)
        throw CLI::ValidationError("--embedding-dim", "must be >= --labels");
      spec.clusters = orthogonal_clusters(sim_labels, sim_dim, sim_sep, sim_std);
    }
    if (sim_labels == 4)
      spec.label_names.assign(kStanceLabels.begin(), kStanceLabels.end());
    spec.seed = global.seed.value_or(0);
    spec.workers = global.workers.value_or(available_cores());
    try {
      spec.check();
    } catch (const std::invalid_argument &e) {
      throw DataError(e.what());
    }
    std::cerr << "simulate: seed=" << spec.seed << " labels=" << sim_labels
              << " threads=" << sim_threads << " T=" << sim_T
              << " omega=" << sim_omega << " dim=" << sim_dim << '\n';
    Corpus corpus = simulate(spec);
    save_corpus(corpus, sim_out);
    if (!sim_truth.empty())
      save_model(ground_truth_params(spec), sim_truth);
    std::cout << "simulated " << corpus.threads.size() << " threads, "
              << corpus.num_events() << " events\n";
  });

  // train -------------------------------------------------------------------
  auto *train_cmd = app.add_subcommand("train", "Fit a model to a corpus");
  std::string train_corpus, train_out;
  TrainingOptions train_opts;
  train_cmd->add_option("--corpus", train_corpus, "Corpus file")->required();
  train_cmd->add_option("--out", train_out, "Model output path")->required();
  add_training_options(train_cmd, train_opts);
  train_cmd->callback([&] {
    TrainConfig config = resolve_config(train_opts, global);
    Corpus corpus = load_corpus(train_corpus);
    FitResult res = fit(corpus, config);
    save_model(res, train_out);
    if (global.verbose)
      for (std::size_t i = 0; i < res.ll_trace.size(); ++i)
        std::cerr << "iter " << i << " ll " << res.ll_trace[i] << '\n';
    std::printf("final_ll=%.10g iterations=%d converged=%s\n",
                res.final_ll.total, res.iterations,
                res.converged ? "true" : "false");
  });

  // predict -----------------------------------------------------------------
  auto *predict_cmd =
      app.add_subcommand("predict", "Label every event of a corpus");
  std::string pred_model, pred_corpus, pred_out, pred_mode = "online";
  predict_cmd->add_option("--model", pred_model, "Model file")->required();
  predict_cmd->add_option("--corpus", pred_corpus, "Corpus file")->required();
  predict_cmd->add_option("--out", pred_out, "CSV output path (default stdout)");
  predict_cmd->add_option("--mode", pred_mode, "online | oracle history labels");
  predict_cmd->callback([&] {
    const PredictMode mode = parse_mode(pred_mode);
    ModelParams params = load_model(pred_model);
    Corpus corpus = load_corpus(pred_corpus);
    check_compatible(params, corpus);
    std::ostringstream csv;
    csv.precision(17);
    csv << "thread,event,t,true_label,predicted_label\n";
    std::vector<int> truth, predicted;
    for (const auto &th : corpus.threads) {
      auto p = predict_thread(params, th, mode);
      for (std::size_t n = 0; n < th.size(); ++n) {
        csv << th.name << ',' << n << ',' << th.events[n].time << ','
            << corpus.label_names[th.events[n].label] << ','
            << corpus.label_names[p[n]] << '\n';
        truth.push_back(th.events[n].label);
        predicted.push_back(p[n]);
      }
    }
    emit(pred_out, csv.str());
    if (!truth.empty() && !pred_out.empty()) {
      Confusion c = confusion_matrix(corpus.num_labels, truth, predicted);
      std::printf("events=%zu accuracy=%.6f macro_f1=%.6f\n", truth.size(),
                  micro_accuracy(c), macro_f1(c));
    }
  });

  // evaluate ----------------------------------------------------------------
  auto *eval_cmd = app.add_subcommand(
      "evaluate",
      "Leave-one-thread-out (--corpus) or leave-one-event-out (--event ...)");
  std::string eval_corpus, eval_out, eval_mode = "online";
  std::vector<std::string> eval_events;
  TrainingOptions eval_opts;
  auto *eval_corpus_opt =
      eval_cmd->add_option("--corpus", eval_corpus, "Corpus for leave-one-thread-out");
  auto *eval_events_opt = eval_cmd->add_option(
      "--event", eval_events, "name=path corpus per event; repeatable");
  eval_corpus_opt->excludes(eval_events_opt);
  eval_cmd->add_option("--out", eval_out, "CSV report path");
  eval_cmd->add_option("--mode", eval_mode, "online | oracle history labels");
  add_training_options(eval_cmd, eval_opts);
  eval_cmd->callback([&] {
    if (eval_corpus.empty() && eval_events.empty())
      throw CLI::RequiredError("--corpus or --event");
    EvalConfig config;
    config.train = resolve_config(eval_opts, global);
    config.mode = parse_mode(eval_mode);
    // Folds run concurrently; each fit stays single-threaded.
    config.workers = config.train.workers;
    config.train.workers = 1;
    EvalReport report;
    if (!eval_corpus.empty()) {
      report = leave_one_thread_out(load_corpus(eval_corpus), config);
    } else {
      std::vector<std::pair<std::string, Corpus>> events;
      for (const auto &spec : eval_events) {
        auto eq = spec.find('=');
        if (eq == std::string::npos)
          throw CLI::ValidationError("--event", "expected name=path");
        events.emplace_back(spec.substr(0, eq),
                            load_corpus(spec.substr(eq + 1)));
      }
      report = leave_one_event_out(events, config);
    }
    std::cerr << report.to_table();
    if (!eval_out.empty())
      write_file_atomic(eval_out, report.to_csv());
    std::printf("folds=%zu accuracy=%.6f macro_f1=%.6f\n",
                report.per_fold.size(), report.micro_accuracy,
                report.macro_f1);
  });

  // grad-check --------------------------------------------------------------
  auto *gc_cmd = app.add_subcommand(
      "grad-check", "Compare analytic gradients with finite differences");
  std::string gc_corpus, gc_model, gc_corrupt;
  double gc_tol = -1;
  TrainingOptions gc_opts;
  gc_cmd->add_option("--corpus", gc_corpus, "Corpus file")->required();
  gc_cmd->add_option("--model", gc_model,
                     "Parameters to check at (default: initialization)");
  gc_cmd->add_option("--tolerance", gc_tol,
                     "Max relative error (default 1e-5; 1e-3 for NeuralKernelHP)");
  gc_cmd->add_option("--corrupt-block", gc_corrupt,
                     "Fault injection: negate one analytic entry of this block");
  add_training_options(gc_cmd, gc_opts);
  gc_cmd->callback([&] {
    TrainConfig config = resolve_config(gc_opts, global);
    Corpus corpus = load_corpus(gc_corpus);
    ModelParams params = gc_model.empty()
                             ? init_params(corpus, config, config.seed)
                             : load_model(gc_model);
    check_compatible(params, corpus);
    GradCheckOptions opts;
    opts.tolerance = gc_tol > 0 ? gc_tol
                     : params.variant == Variant::NeuralKernelHP ? 1e-3
                                                                 : 1e-5;
    opts.eval.workers = config.workers;
    opts.eval.mc.samples = config.nn.mc_samples;
    opts.eval.mc.seed = derive_seed(config.seed, "mc", 0);
    if (!gc_corrupt.empty())
      opts.corrupt_block = gc_corrupt;
    GradCheckReport report = grad_check(params, corpus, opts);
    std::cout << report.to_string();
    if (!report.passed)
      status = kNumerical;
  });

  // influence-report --------------------------------------------------------
  auto *infl_cmd = app.add_subcommand(
      "influence-report", "Print the label influence matrix");
  std::string infl_model;
  infl_cmd->add_option("--model", infl_model, "Model file")->required();
  infl_cmd->callback([&] {
    std::cout << influence_report(load_model(infl_model)).to_string();
  });

  // kernel-dump -------------------------------------------------------------
  auto *kd_cmd = app.add_subcommand(
      "kernel-dump", "Neural kernel shape over a dt grid and over text pairs");
  std::string kd_model, kd_out, kd_corpus, kd_pairs_out;
  int kd_points = 100;
  double kd_dt_max = 5.0, kd_pair_dt_max = 1.0;
  kd_cmd->add_option("--model", kd_model, "NeuralKernelHP model file")->required();
  kd_cmd->add_option("--out", kd_out, "dt-grid CSV path (default stdout)");
  kd_cmd->add_option("--points", kd_points, "Grid points")->check(CLI::PositiveNumber);
  kd_cmd->add_option("--dt-max", kd_dt_max, "Grid upper end (hours)");
  kd_cmd->add_option("--corpus", kd_corpus, "Corpus for same-thread pair samples");
  kd_cmd->add_option("--pairs-out", kd_pairs_out, "Pair CSV path");
  kd_cmd->add_option("--pair-dt-max", kd_pair_dt_max,
                     "Largest pair time gap (hours)");
  kd_cmd->callback([&] {
    ModelParams params = load_model(kd_model);
    if (params.variant != Variant::NeuralKernelHP)
      throw DataError(kd_model + ": kernel-dump requires a NeuralKernelHP model");
    KernelCurveOptions opts;
    opts.points = kd_points;
    opts.dt_max = kd_dt_max;
    emit(kd_out, kernel_curve_csv(kernel_dt_curve(params, opts)));
    if (!kd_corpus.empty()) {
      Corpus corpus = load_corpus(kd_corpus);
      check_compatible(params, corpus);
      auto pairs = kernel_pair_samples(params, corpus, kd_pair_dt_max);
      if (kd_pairs_out.empty())
        throw CLI::RequiredError("--pairs-out");
      write_file_atomic(kd_pairs_out, kernel_pairs_csv(pairs));
    }
  });

  // intensity-dump ----------------------------------------------------------
  auto *id_cmd = app.add_subcommand(
      "intensity-dump", "Per-label intensity samples for plotting");
  std::string id_model, id_corpus, id_out;
  int id_grid = 0;
  id_cmd->add_option("--model", id_model, "Model file")->required();
  id_cmd->add_option("--corpus", id_corpus, "Corpus file")->required();
  id_cmd->add_option("--out", id_out, "CSV path (default stdout)");
  id_cmd->add_option("--grid-points", id_grid,
                     "Extra evenly spaced samples per thread")
      ->check(CLI::NonNegativeNumber);
  id_cmd->callback([&] {
    ModelParams params = load_model(id_model);
    Corpus corpus = load_corpus(id_corpus);
    check_compatible(params, corpus);
    std::ostringstream csv;
    write_intensity_csv(params, corpus, csv, id_grid);
    emit(id_out, csv.str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsage;
  }
  return status;
}

} // namespace

int main(int argc, char **argv) {
  try {
    return run(argc, argv);
  } catch (const hawkes::NumericalError &e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const hawkes::DataError &e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::invalid_argument &e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kData;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
}
