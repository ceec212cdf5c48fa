//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "hawkes/core.hpp"
#include "hawkes/util.hpp"

namespace hawkes {
namespace {
  using json = nlohmann::json;

  class LineError {
  public:
    LineError(std::string_view source, std::size_t line)
        : prefix_(std::string(source) + ":" + std::to_string(line) + ": ") { }

    [[noreturn]] void fail(const std::string &msg) const {
      throw DataError(prefix_ + msg);
    }

  private:
    std::string prefix_;
  };

  void require_fields(const json &rec, const std::set<std::string> &allowed,
                      const std::set<std::string> &required,
                      const LineError &err) {
    std::string unknown;
    for (auto it = rec.begin(); it != rec.end(); ++it) {
      if (!allowed.count(it.key())) {
        if (!unknown.empty())
          unknown += ", ";
        unknown += it.key();
      }
    }
    if (!unknown.empty())
      err.fail("unknown field(s): " + unknown);
    for (const auto &key : required)
      if (!rec.contains(key))
        err.fail("missing field '" + key + "'");
  }

  double number_field(const json &rec, const char *key, const LineError &err) {
    const json &v = rec.at(key);
    if (!v.is_number())
      err.fail(std::string("field '") + key + "' must be a number");
    double d = v.get<double>();
    if (!std::isfinite(d))
      err.fail(std::string("field '") + key + "' must be finite");
    return d;
  }

  int int_field(const json &rec, const char *key, const LineError &err) {
    const json &v = rec.at(key);
    if (!v.is_number_integer())
      err.fail(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
  }

  // Reorders names to the canonical stance order when they are a
  // permutation of it.
  std::vector<std::string> canonical_label_order(std::vector<std::string> names) {
    if (names.size() != kStanceLabels.size())
      return names;
    std::vector<std::string> sorted = names;
    std::vector<std::string> canon(kStanceLabels.begin(), kStanceLabels.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::string> canon_sorted = canon;
    std::sort(canon_sorted.begin(), canon_sorted.end());
    return sorted == canon_sorted ? canon : names;
  }

  struct PendingThread {
    std::string name;
    std::vector<Event> events;
    std::optional<double> horizon;
  };
} // namespace

Corpus parse_corpus(std::istream &in, std::string_view source_name) {
  Corpus corpus;
  bool have_header = false;
  std::unordered_map<std::string, int> label_index;
  std::vector<PendingThread> pending;
  std::unordered_map<std::string, std::size_t> thread_index;

  auto thread_for = [&](const std::string &name) -> PendingThread & {
    auto [it, inserted] = thread_index.try_emplace(name, pending.size());
    if (inserted)
      pending.push_back({name, {}, std::nullopt});
    return pending[it->second];
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char c) { return std::isspace(c); }))
      continue;

    LineError err(source_name, lineno);
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error &e) {
      err.fail(std::string("malformed record: ") + e.what());
    }
    if (!rec.is_object())
      err.fail("record must be a JSON object");
    if (!rec.contains("type") || !rec["type"].is_string())
      err.fail("missing string field 'type'");
    const std::string type = rec["type"].get<std::string>();

    if (type == "header") {
      if (have_header)
        err.fail("duplicate header record");
      require_fields(rec, {"type", "num_labels", "embedding_dim", "label_names"},
                     {"num_labels", "embedding_dim"}, err);
      corpus.num_labels = int_field(rec, "num_labels", err);
      corpus.embedding_dim = int_field(rec, "embedding_dim", err);
      if (corpus.num_labels < 2)
        err.fail("num_labels must be at least 2");
      if (corpus.embedding_dim < 0)
        err.fail("embedding_dim must be non-negative");
      if (rec.contains("label_names")) {
        const json &names = rec["label_names"];
        if (!names.is_array())
          err.fail("label_names must be an array of strings");
        std::vector<std::string> given;
        for (const auto &n : names) {
          if (!n.is_string())
            err.fail("label_names must be an array of strings");
          given.push_back(n.get<std::string>());
        }
        if (static_cast<int>(given.size()) != corpus.num_labels)
          err.fail("label_names has " + std::to_string(given.size())
                   + " entries, expected num_labels");
        corpus.label_names = canonical_label_order(std::move(given));
      } else {
        for (int i = 0; i < corpus.num_labels; ++i)
          corpus.label_names.push_back(std::to_string(i));
      }
      for (int i = 0; i < corpus.num_labels; ++i)
        if (!label_index.try_emplace(corpus.label_names[i], i).second)
          err.fail("duplicate label name '" + corpus.label_names[i] + "'");
      have_header = true;
      continue;
    }

    if (!have_header)
      err.fail("header record must come first");

    if (type == "event") {
      require_fields(rec, {"type", "thread_id", "t", "label", "embedding"},
                     {"thread_id", "t", "label", "embedding"}, err);
      if (!rec["thread_id"].is_string())
        err.fail("field 'thread_id' must be a string");
      Event ev;
      ev.time = number_field(rec, "t", err);
      if (ev.time < 0)
        err.fail("event time must be non-negative");

      const json &label = rec["label"];
      if (label.is_string()) {
        auto it = label_index.find(label.get<std::string>());
        if (it == label_index.end())
          err.fail("unknown label name '" + label.get<std::string>() + "'");
        ev.label = it->second;
      } else if (label.is_number_integer()) {
        ev.label = label.get<int>();
        if (ev.label < 0 || ev.label >= corpus.num_labels)
          err.fail("label index out of range");
      } else {
        err.fail("field 'label' must be a string or integer");
      }

      const json &emb = rec["embedding"];
      if (!emb.is_array())
        err.fail("field 'embedding' must be an array");
      if (static_cast<int>(emb.size()) != corpus.embedding_dim)
        err.fail("embedding has " + std::to_string(emb.size())
                 + " entries, expected " + std::to_string(corpus.embedding_dim));
      ev.embedding.resize(corpus.embedding_dim);
      for (int i = 0; i < corpus.embedding_dim; ++i) {
        if (!emb[i].is_number())
          err.fail("embedding entries must be numbers");
        ev.embedding[i] = emb[i].get<double>();
        if (!std::isfinite(ev.embedding[i]))
          err.fail("embedding entries must be finite");
      }
      thread_for(rec["thread_id"].get<std::string>()).events.push_back(
          std::move(ev));
    } else if (type == "horizon") {
      require_fields(rec, {"type", "thread_id", "T"}, {"thread_id", "T"}, err);
      if (!rec["thread_id"].is_string())
        err.fail("field 'thread_id' must be a string");
      double T = number_field(rec, "T", err);
      if (T < 0)
        err.fail("horizon must be non-negative");
      PendingThread &th = thread_for(rec["thread_id"].get<std::string>());
      if (th.horizon)
        err.fail("duplicate horizon for thread '" + th.name + "'");
      th.horizon = T;
    } else {
      err.fail("unknown record type '" + type + "'");
    }
  }

  if (pending.empty())
    throw DataError(std::string(source_name) + ": no threads");

  for (auto &p : pending) {
    Thread th;
    th.name = std::move(p.name);
    th.events = std::move(p.events);
    th.horizon = p.horizon.value_or(std::numeric_limits<double>::quiet_NaN());
    corpus.threads.push_back(std::move(th));
  }

  std::size_t ties = normalize_threads(corpus);
  if (ties > 0)
    warn(std::string(source_name) + ": separated " + std::to_string(ties)
         + " tied timestamp(s) by multiples of 1e-9 h");
  for (auto &th : corpus.threads)
    if (std::isnan(th.horizon))
      th.horizon = th.events.empty() ? 0.0 : th.events.back().time;

  auto violations = validate(corpus);
  if (!violations.empty()) {
    std::string msg = std::string(source_name) + ": invalid corpus";
    for (const auto &v : violations)
      msg += "\n  " + v.message() + " ('" + corpus.threads[v.thread].name + "')";
    throw DataError(msg);
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path &path, CorpusFormat format) {
  if (format != CorpusFormat::JsonLines)
    throw DataError("unsupported corpus format");
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open corpus " + path.string());
  return parse_corpus(in, path.string());
}

void write_corpus(const Corpus &corpus, std::ostream &out) {
  json header = {{"type", "header"},
                 {"num_labels", corpus.num_labels},
                 {"embedding_dim", corpus.embedding_dim}};
  if (!corpus.label_names.empty())
    header["label_names"] = corpus.label_names;
  out << header.dump() << '\n';

  for (std::size_t ti = 0; ti < corpus.threads.size(); ++ti) {
    const Thread &th = corpus.threads[ti];
    const std::string id = th.name.empty() ? std::to_string(ti) : th.name;
    for (const Event &e : th.events) {
      json rec = {{"type", "event"}, {"thread_id", id}, {"t", e.time}};
      if (!corpus.label_names.empty())
        rec["label"] = corpus.label_names.at(e.label);
      else
        rec["label"] = e.label;
      rec["embedding"] =
          std::vector<double>(e.embedding.data(),
                              e.embedding.data() + e.embedding.size());
      out << rec.dump() << '\n';
    }
    if (th.events.empty() || th.horizon != th.events.back().time)
      out << json{{"type", "horizon"}, {"thread_id", id}, {"T", th.horizon}}
                 .dump()
          << '\n';
  }
}

void save_corpus(const Corpus &corpus, const std::filesystem::path &path) {
  std::ostringstream ss;
  write_corpus(corpus, ss);
  write_file_atomic(path, ss.str());
}

} // namespace hawkes
