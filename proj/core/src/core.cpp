//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "hawkes/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hawkes {

std::size_t Corpus::num_events() const {
  std::size_t n = 0;
  for (const auto &th : threads)
    n += th.size();
  return n;
}

std::string Violation::message() const {
  std::string s;
  if (thread >= 0) {
    s += "thread " + std::to_string(thread);
    if (event >= 0)
      s += " event " + std::to_string(event);
    s += ": ";
  }
  return s + rule;
}

std::vector<Violation> validate(const Corpus &corpus) {
  std::vector<Violation> out;
  auto add = [&](int th, int ev, std::string rule) {
    out.push_back({th, ev, std::move(rule)});
  };

  if (corpus.num_labels < 2)
    add(-1, -1, "num_labels must be at least 2");
  if (corpus.embedding_dim < 0)
    add(-1, -1, "embedding_dim must be non-negative");
  if (!corpus.label_names.empty()
      && static_cast<int>(corpus.label_names.size()) != corpus.num_labels)
    add(-1, -1, "label_names size differs from num_labels");

  for (std::size_t ti = 0; ti < corpus.threads.size(); ++ti) {
    const Thread &th = corpus.threads[ti];
    const int t = static_cast<int>(ti);
    if (!std::isfinite(th.horizon) || th.horizon < 0)
      add(t, -1, "horizon must be finite and non-negative");

    bool sorted = true;
    for (std::size_t ei = 0; ei < th.events.size(); ++ei) {
      const Event &e = th.events[ei];
      const int ev = static_cast<int>(ei);
      if (!std::isfinite(e.time) || e.time < 0)
        add(t, ev, "time must be finite and non-negative");
      if (e.label < 0 || e.label >= corpus.num_labels)
        add(t, ev, "label out of range");
      if (e.mark != th.mark)
        add(t, ev, "mark differs from thread mark");
      if (e.embedding.size() != corpus.embedding_dim)
        add(t, ev, "embedding dimension mismatch");
      else if (!e.embedding.allFinite())
        add(t, ev, "embedding has non-finite entries");
      if (ei > 0 && !(th.events[ei - 1].time < e.time))
        sorted = false;
    }
    if (!sorted)
      add(t, -1, "events not sorted");
    if (!th.events.empty() && th.horizon < th.events.back().time)
      add(t, -1, "horizon before last event");
  }
  return out;
}

std::size_t normalize_threads(Corpus &corpus) {
  std::size_t ties = 0;
  for (std::size_t ti = 0; ti < corpus.threads.size(); ++ti) {
    Thread &th = corpus.threads[ti];
    th.mark = static_cast<int>(ti);
    std::stable_sort(th.events.begin(), th.events.end(),
                     [](const Event &a, const Event &b) {
                       return a.time < b.time;
                     });
    const double last_raw = th.events.empty() ? 0.0 : th.events.back().time;
    for (std::size_t i = 1; i < th.events.size(); ++i) {
      double prev = th.events[i - 1].time;
      if (th.events[i].time <= prev) {
        th.events[i].time = prev + kTieEpsilon;
        ++ties;
      }
    }
    for (auto &e : th.events)
      e.mark = th.mark;
    if (!th.events.empty()) {
      const double last = th.events.back().time;
      if (th.horizon >= last_raw)
        th.horizon = std::max(th.horizon, last);
    }
  }
  return ties;
}

Corpus merge_corpora(const std::vector<const Corpus *> &parts) {
  if (parts.empty())
    throw std::invalid_argument("merge_corpora: no corpora");
  Corpus out;
  out.num_labels = parts.front()->num_labels;
  out.embedding_dim = parts.front()->embedding_dim;
  out.label_names = parts.front()->label_names;
  for (const Corpus *c : parts) {
    if (c->num_labels != out.num_labels
        || c->embedding_dim != out.embedding_dim
        || c->label_names != out.label_names)
      throw std::invalid_argument(
          "merge_corpora: label set or embedding dimension differs");
    for (const auto &th : c->threads) {
      out.threads.push_back(th);
      Thread &added = out.threads.back();
      added.mark = static_cast<int>(out.threads.size() - 1);
      for (auto &e : added.events)
        e.mark = added.mark;
    }
  }
  return out;
}

} // namespace hawkes
