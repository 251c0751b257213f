#include <gtest/gtest.h>

#include <sstream>

#include "support/checks.hpp"

using namespace prosa;

TEST(TopicModel, RangesAndOverlap) {
  TopicModel m;
  EXPECT_EQ(m.stride(), 180u);
  EXPECT_EQ(m.first_term(1), 180u);
  EXPECT_EQ(m.vocabulary_size(), 180u * 9 + 200);
  m.overlap_fraction = 1.0;
  EXPECT_THROW(m.validate(), std::invalid_argument);
}

TEST(Profiles, TopicCountsNearUniform) {
  // Over many seeds each of 10 topics should hold about 40 of 400 peers.
  TopicModel m;
  std::vector<double> mean(m.n_topics, 0.0);
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    Rng rng(s);
    for (const auto& p : generate_profiles(400, m, 20.0, rng)) mean[p.home_topic] += 1.0 / seeds;
  }
  // Binomial sd per seed is 6; the mean of 100 has sd 0.6.
  for (double c : mean) EXPECT_NEAR(c, 40.0, 2.5);
}

TEST(Profiles, HomeInterestShare) {
  TopicModel m;
  Rng rng(3);
  const auto ps = generate_profiles(5000, m, 20.0, rng);
  double home = 0;
  for (const auto& p : ps) home += p.query_interest == p.home_topic;
  EXPECT_NEAR(home / ps.size(), m.home_interest, 0.02);
}

TEST(Corpus, SizesAndIds) {
  TopicModel m;
  Rng rng(5);
  const auto profiles = generate_profiles(300, m, 20.0, rng);
  const auto corpus = generate_corpus(m, profiles, rng);
  std::uint64_t next = 0;
  double docs = 0;
  for (std::size_t p = 0; p < corpus.size(); ++p) {
    ASSERT_FALSE(corpus[p].empty());
    docs += corpus[p].size();
    for (const auto& d : corpus[p]) {
      EXPECT_EQ(d.doc_id, next++);
      for (const auto& [t, c] : d.term_frequencies) {
        EXPECT_GE(t, m.first_term(profiles[p].home_topic));
        EXPECT_LT(t, m.first_term(profiles[p].home_topic) + m.terms_per_topic);
      }
    }
  }
  EXPECT_NEAR(docs / corpus.size(), 20.0, 1.0);
}

TEST(Queries, TermCountAndRequired) {
  TopicModel m;
  Rng rng(9);
  const auto profiles = generate_profiles(10, m, 20.0, rng);
  TopicSampler sampler(m);
  double terms = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const auto q = generate_query(profiles[i % 10], sampler, rng);
    terms += q.terms.size();
    ASSERT_GE(q.required, 1u);
    ASSERT_LE(q.required, 5u);
    ASSERT_FALSE(q.terms.empty());
    EXPECT_NEAR(q.qv.norm(), 1.0, 1e-12);
  }
  EXPECT_NEAR(terms / n, 4.0, 0.1);
}

TEST(Sampler, ZeroExponentIsUniform) {
  TopicModel m;
  m.zipf_exponent = 0.0;
  m.terms_per_topic = 20;
  TopicSampler sampler(m);
  Rng rng(1);
  std::vector<double> counts(20, 0.0);
  const int n = 40000;
  for (int i = 0; i < n; ++i) counts[sampler.draw(0, rng)] += 1;
  double chi2 = 0;
  for (double c : counts) chi2 += (c - n / 20.0) * (c - n / 20.0) / (n / 20.0);
  // 19 degrees of freedom; 99.9th percentile is about 43.8.
  EXPECT_LT(chi2, 43.8);
}

TEST(Sampler, ZipfFavoursLowRanks) {
  TopicModel m;
  TopicSampler sampler(m);
  Rng rng(1);
  int first = 0, last = 0;
  for (int i = 0; i < 20000; ++i) {
    const auto t = sampler.draw(2, rng) - m.first_term(2);
    first += t == 0;
    last += t == m.terms_per_topic - 1;
  }
  EXPECT_GT(first, 50 * std::max(last, 1));
}

TEST(Corpus, DumpLoadRoundTrip) {
  TopicModel m;
  Rng rng(2);
  const auto profiles = generate_profiles(25, m, 5.0, rng);
  const auto corpus = generate_corpus(m, profiles, rng);
  std::stringstream s;
  dump_corpus(s, corpus);
  EXPECT_EQ(load_corpus(s, 25), corpus);
}

TEST(Corpus, LoadRejectsMalformed) {
  std::istringstream a("0 1 5\n");
  EXPECT_THROW(load_corpus(a), std::runtime_error);
  std::istringstream b("0 1 5:0\n");
  EXPECT_THROW(load_corpus(b), std::runtime_error);
  std::istringstream c("9 1 5:1\n");
  EXPECT_THROW(load_corpus(c, 3), std::runtime_error);
}
