//
// Project hawkes-stance - Copyright 2026 The hawkes-stance Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hawkes/core.hpp"
#include "hawkes/util.hpp"

#include "test_support.hpp"

namespace {

using namespace hawkes;
using hawkes::testing::Gen;

Corpus parse(const std::string &text) {
  std::istringstream in(text);
  return parse_corpus(in, "mem");
}

std::string expect_data_error(const std::string &text) {
  try {
    parse(text);
  } catch (const DataError &e) {
    return e.what();
  }
  ADD_FAILURE() << "no DataError for:\n" << text;
  return {};
}

const char *kHeader =
    R"({"type":"header","num_labels":4,"embedding_dim":3})" "\n";

TEST(CorpusIo, LoadsOneThreadTwoEvents) {
  Corpus c = parse(std::string(kHeader) +
                   R"({"type":"event","thread_id":"a","t":0,"label":0,"embedding":[1,2,3]})"
                   "\n"
                   R"({"type":"event","thread_id":"a","t":1.5,"label":3,"embedding":[0,0,1]})"
                   "\n");
  ASSERT_EQ(c.threads.size(), 1u);
  EXPECT_EQ(c.num_events(), 2u);
  EXPECT_EQ(c.embedding_dim, 3);
  EXPECT_EQ(c.threads[0].name, "a");
  EXPECT_DOUBLE_EQ(c.threads[0].horizon, 1.5);
  EXPECT_EQ(c.threads[0].events[1].label, 3);
  EXPECT_DOUBLE_EQ(c.threads[0].events[0].embedding[1], 2.0);
  EXPECT_EQ(c.label_names, (std::vector<std::string>{"0", "1", "2", "3"}));
}

TEST(CorpusIo, EmptyInputHasNoThreads) {
  EXPECT_NE(expect_data_error("").find("no threads"), std::string::npos);
  EXPECT_NE(expect_data_error(kHeader).find("no threads"), std::string::npos);
}

TEST(CorpusIo, NegativeTimeRejected) {
  std::string msg = expect_data_error(
      std::string(kHeader) +
      R"({"type":"event","thread_id":"a","t":-1.0,"label":0,"embedding":[1,2,3]})");
  EXPECT_NE(msg.find("mem:2"), std::string::npos) << msg;
}

TEST(CorpusIo, ErrorsNameTheLine) {
  std::string msg = expect_data_error(
      std::string(kHeader) +
      R"({"type":"event","thread_id":"a","t":0,"label":0,"embedding":[1,2,3]})"
      "\n{not json\n");
  EXPECT_NE(msg.find("mem:3"), std::string::npos) << msg;
}

TEST(CorpusIo, UnknownFieldsListed) {
  std::string msg = expect_data_error(
      std::string(kHeader) +
      R"({"type":"event","thread_id":"a","t":0,"label":0,"embedding":[1,2,3],"user":1,"lang":"en"})");
  EXPECT_NE(msg.find("user"), std::string::npos) << msg;
  EXPECT_NE(msg.find("lang"), std::string::npos) << msg;
}

TEST(CorpusIo, InconsistentEmbeddingDimension) {
  std::string msg = expect_data_error(
      std::string(kHeader) +
      R"({"type":"event","thread_id":"a","t":0,"label":0,"embedding":[1,2]})");
  EXPECT_NE(msg.find("embedding"), std::string::npos) << msg;
}

TEST(CorpusIo, UnknownLabelName) {
  std::string msg = expect_data_error(
      R"({"type":"header","num_labels":4,"embedding_dim":1,"label_names":["support","deny","question","comment"]})"
      "\n"
      R"({"type":"event","thread_id":"a","t":0,"label":"query","embedding":[1]})");
  EXPECT_NE(msg.find("query"), std::string::npos) << msg;
}

TEST(CorpusIo, HeaderMustComeFirst) {
  expect_data_error(
      R"({"type":"event","thread_id":"a","t":0,"label":0,"embedding":[]})"
      "\n"
      R"({"type":"header","num_labels":2,"embedding_dim":0})");
}

TEST(CorpusIo, StanceNamesUseFixedOrder) {
  Corpus c = parse(
      R"({"type":"header","num_labels":4,"embedding_dim":0,"label_names":["comment","question","deny","support"]})"
      "\n"
      R"({"type":"event","thread_id":"a","t":0,"label":"deny","embedding":[]})"
      "\n"
      R"({"type":"event","thread_id":"a","t":1,"label":0,"embedding":[]})");
  EXPECT_EQ(c.label_names,
            (std::vector<std::string>{"support", "deny", "question", "comment"}));
  EXPECT_EQ(c.threads[0].events[0].label, 1);
  // Integer labels are indices into the fixed order.
  EXPECT_EQ(c.threads[0].events[1].label, 0);
}

TEST(CorpusIo, HorizonRecordOverridesDefault) {
  Corpus c = parse(
      R"({"type":"header","num_labels":2,"embedding_dim":0})"
      "\n"
      R"({"type":"event","thread_id":"a","t":2,"label":1,"embedding":[]})"
      "\n"
      R"({"type":"horizon","thread_id":"a","T":7.5})"
      "\n"
      R"({"type":"horizon","thread_id":"empty","T":3})");
  ASSERT_EQ(c.threads.size(), 2u);
  EXPECT_DOUBLE_EQ(c.threads[0].horizon, 7.5);
  EXPECT_TRUE(c.threads[1].empty());
  EXPECT_DOUBLE_EQ(c.threads[1].horizon, 3.0);
}

TEST(CorpusIo, HorizonBeforeLastEventRejected) {
  expect_data_error(
      R"({"type":"header","num_labels":2,"embedding_dim":0})"
      "\n"
      R"({"type":"event","thread_id":"a","t":2,"label":1,"embedding":[]})"
      "\n"
      R"({"type":"horizon","thread_id":"a","T":1})");
}

TEST(CorpusIo, TiesNudgedInInputOrderWithWarning) {
  std::vector<std::string> warnings;
  set_warning_sink([&](std::string_view m) { warnings.emplace_back(m); });
  Corpus c = parse(
      R"({"type":"header","num_labels":2,"embedding_dim":0})"
      "\n"
      R"({"type":"event","thread_id":"a","t":1,"label":1,"embedding":[]})"
      "\n"
      R"({"type":"event","thread_id":"a","t":1,"label":0,"embedding":[]})"
      "\n"
      R"({"type":"event","thread_id":"a","t":1,"label":1,"embedding":[]})"
      "\n"
      R"({"type":"event","thread_id":"a","t":0.5,"label":0,"embedding":[]})");
  set_warning_sink(nullptr);
  const auto &ev = c.threads[0].events;
  ASSERT_EQ(ev.size(), 4u);
  EXPECT_DOUBLE_EQ(ev[0].time, 0.5);
  EXPECT_EQ(ev[1].label, 1);
  EXPECT_EQ(ev[2].label, 0);
  EXPECT_NEAR(ev[2].time, 1.0 + kTieEpsilon, 1e-15);
  EXPECT_NEAR(ev[3].time, 1.0 + 2 * kTieEpsilon, 1e-15);
  EXPECT_GE(c.threads[0].horizon, ev[3].time);
  EXPECT_FALSE(warnings.empty());
}

TEST(CorpusIo, RoundTripProperty) {
  for (int trial = 0; trial < 20; ++trial) {
    Gen gen(100 + trial);
    Corpus c = gen.corpus(gen.integer(2, 5), gen.integer(0, 6),
                          gen.integer(1, 6), 12);
    std::ostringstream out;
    write_corpus(c, out);
    std::istringstream in(out.str());
    Corpus back = parse_corpus(in);
    ASSERT_EQ(back.threads.size(), c.threads.size());
    EXPECT_EQ(back.num_labels, c.num_labels);
    EXPECT_EQ(back.embedding_dim, c.embedding_dim);
    for (std::size_t t = 0; t < c.threads.size(); ++t) {
      const Thread &a = c.threads[t], &b = back.threads[t];
      EXPECT_EQ(a.name, b.name);
      EXPECT_NEAR(a.horizon, b.horizon, 1e-12);
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t n = 0; n < a.size(); ++n) {
        EXPECT_NEAR(a.events[n].time, b.events[n].time, 1e-12);
        EXPECT_EQ(a.events[n].label, b.events[n].label);
        EXPECT_EQ(a.events[n].embedding, b.events[n].embedding);
      }
      for (std::size_t n = 1; n < b.size(); ++n)
        EXPECT_LT(b.events[n - 1].time, b.events[n].time);
    }
  }
}

TEST(CorpusIo, FileRoundTrip) {
  hawkes::testing::TempDir dir;
  Gen gen(7);
  Corpus c = gen.corpus(4, 3, 3, 5);
  save_corpus(c, dir / "c.jsonl");
  Corpus back = load_corpus(dir / "c.jsonl");
  EXPECT_EQ(back.num_events(), c.num_events());
  EXPECT_THROW(load_corpus(dir / "missing.jsonl"), DataError);
}

TEST(Validate, WellFormedIsEmpty) {
  Gen gen(3);
  EXPECT_TRUE(validate(gen.corpus(4, 2, 3, 6)).empty());
}

TEST(Validate, UnsortedEvents) {
  Gen gen(3);
  Corpus c;
  c.num_labels = 4;
  c.embedding_dim = 2;
  c.threads.push_back(gen.thread(4, 2, 3));
  std::swap(c.threads[0].events[0], c.threads[0].events[2]);
  auto v = validate(c);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].message(), "thread 0: events not sorted");
}

TEST(Validate, LabelOutOfRange) {
  Gen gen(3);
  Corpus c;
  c.num_labels = 4;
  c.embedding_dim = 2;
  c.threads.push_back(gen.thread(4, 2, 3));
  c.threads[0].events[1].label = 4;
  auto v = validate(c);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].message(), "thread 0 event 1: label out of range");
}

TEST(Validate, ReportsEveryRule) {
  Gen gen(5);
  Corpus c;
  c.num_labels = 3;
  c.embedding_dim = 2;
  c.threads.push_back(gen.thread(3, 2, 4));
  c.threads[0].events[0].time = -1.0;
  c.threads[0].events[1].embedding = Eigen::VectorXd::Zero(5);
  c.threads[0].events[2].mark = 9;
  c.threads[0].horizon = 0.0;
  auto v = validate(c);
  std::vector<std::string> rules;
  for (const auto &x : v)
    rules.push_back(x.rule);
  auto has = [&](const std::string &r) {
    return std::find(rules.begin(), rules.end(), r) != rules.end();
  };
  EXPECT_TRUE(has("time must be finite and non-negative"));
  EXPECT_TRUE(has("embedding dimension mismatch"));
  EXPECT_TRUE(has("mark differs from thread mark"));
  EXPECT_TRUE(has("horizon before last event"));
}

TEST(Merge, PoolsThreadsAndRenumbersMarks) {
  Gen gen(11);
  Corpus a = gen.corpus(4, 2, 2, 4), b = gen.corpus(4, 2, 3, 4);
  Corpus m = merge_corpora({&a, &b});
  ASSERT_EQ(m.threads.size(), 5u);
  EXPECT_TRUE(validate(m).empty());
  Corpus other = gen.corpus(3, 2, 1, 2);
  EXPECT_THROW(merge_corpora({&a, &other}), std::invalid_argument);
}

TEST(Seeds, DerivedStreamsAreStableAndDistinct) {
  EXPECT_EQ(derive_seed(42, "mc", 3), derive_seed(42, "mc", 3));
  EXPECT_NE(derive_seed(42, "mc", 3), derive_seed(42, "mc", 4));
  EXPECT_NE(derive_seed(42, "mc", 3), derive_seed(42, "init", 3));
  EXPECT_NE(derive_seed(42, "mc", 3), derive_seed(43, "mc", 3));
}

TEST(ParallelFor, CoversEveryIndexOnceAndPropagatesErrors) {
  for (int workers : {1, 3, 8}) {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), workers, [&](std::size_t i) { hits[i]++; });
    for (int h : hits)
      EXPECT_EQ(h, 1);
  }
  EXPECT_THROW(parallel_for(10, 4,
                            [](std::size_t i) {
                              if (i == 7)
                                throw DataError("boom");
                            }),
               DataError);
}

TEST(AtomicWrite, ReplacesContents) {
  hawkes::testing::TempDir dir;
  write_file_atomic(dir / "f.txt", "one");
  write_file_atomic(dir / "f.txt", "two");
  EXPECT_EQ(read_file(dir / "f.txt"), "two");
  int files = 0;
  for ([[maybe_unused]] auto &e : std::filesystem::directory_iterator(dir.path()))
    ++files;
  EXPECT_EQ(files, 1);
}

} // namespace
