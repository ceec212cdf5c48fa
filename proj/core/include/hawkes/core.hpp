//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef HAWKES_CORE_HPP_
#define HAWKES_CORE_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace hawkes {

/// One post: hours since the thread's source post, class label, thread
/// mark, and a precomputed text embedding.
struct Event {
  double time = 0.0;
  int label = 0;
  int mark = 0;
  Eigen::VectorXd embedding;
};

/// Events of one thread, sorted strictly ascending by time, observed on
/// [0, horizon].
struct Thread {
  int mark = 0;
  std::string name;
  std::vector<Event> events;
  double horizon = 0.0;

  std::size_t size() const { return events.size(); }
  bool empty() const { return events.empty(); }
};

struct Corpus {
  std::vector<Thread> threads;
  int num_labels = 0;
  int embedding_dim = 0;
  std::vector<std::string> label_names;

  std::size_t num_events() const;
};

/// Canonical stance vocabulary. Label names that are a permutation of this
/// set are reordered to it on load.
inline constexpr std::array<std::string_view, 4> kStanceLabels = {
    "support", "deny", "question", "comment"};

/// Gap inserted between events that share a timestamp.
inline constexpr double kTieEpsilon = 1e-9;

struct Violation {
  int thread = -1;
  int event = -1; // -1 for thread- or corpus-level rules
  std::string rule;

  std::string message() const;
};

/// Checks every corpus invariant; an empty result means the corpus is valid.
std::vector<Violation> validate(const Corpus &corpus);

enum class CorpusFormat { JsonLines };

/// Parses a corpus in the line-delimited record format (see README).
/// Throws DataError with the offending line number on malformed input and
/// when the result fails validation.
Corpus load_corpus(const std::filesystem::path &path,
                   CorpusFormat format = CorpusFormat::JsonLines);
Corpus parse_corpus(std::istream &in, std::string_view source_name = "<input>");

void save_corpus(const Corpus &corpus, const std::filesystem::path &path);
void write_corpus(const Corpus &corpus, std::ostream &out);

/// Sorts events, resolves timestamp ties by adding k * kTieEpsilon, assigns
/// marks, and raises horizons below the last event time. Returns the number
/// of tie adjustments made.
std::size_t normalize_threads(Corpus &corpus);

/// Concatenates corpora with identical label sets and embedding dimension.
Corpus merge_corpora(const std::vector<const Corpus *> &parts);

} // namespace hawkes

#endif // HAWKES_CORE_HPP_
