// Synthetic topic-structured corpus and query workload.
//
// Topic i owns the term range [i * stride, i * stride + terms_per_topic) with
// stride = round(terms_per_topic * (1 - overlap_fraction)), so neighbouring
// topics share their boundary terms. Within a topic, the term at offset r is
// drawn with probability proportional to 1 / (r + 1)^zipf_exponent.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "prosa/overlay.hpp"
#include "prosa/vsm.hpp"

namespace prosa {

struct TopicModel {
  std::uint32_t n_topics = 10;
  std::uint32_t terms_per_topic = 200;
  double overlap_fraction = 0.1;
  double zipf_exponent = 1.0;
  double noise_fraction = 0.0;    // share of tokens drawn from another topic
  double doc_terms_mean = 5.0;    // tokens per document, Poisson, min 1
  double query_terms_mean = 4.0;  // distinct terms per query, Poisson, clamped
  std::uint32_t max_required = 5;
  double home_interest = 0.9;     // P(query_interest == home_topic)

  void validate() const {
    if (n_topics == 0) throw std::invalid_argument("n_topics must be positive");
    if (terms_per_topic == 0) throw std::invalid_argument("every topic needs at least one term");
    if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) {
      throw std::invalid_argument("overlap_fraction must lie in [0, 1)");
    }
    if (zipf_exponent < 0.0) throw std::invalid_argument("zipf_exponent must be non-negative");
    if (!(noise_fraction >= 0.0 && noise_fraction <= 1.0)) {
      throw std::invalid_argument("noise_fraction must lie in [0, 1]");
    }
    if (doc_terms_mean <= 0.0 || query_terms_mean <= 0.0) {
      throw std::invalid_argument("term count means must be positive");
    }
    if (max_required == 0) throw std::invalid_argument("max_required must be positive");
    if (!(home_interest >= 0.0 && home_interest <= 1.0)) {
      throw std::invalid_argument("home_interest must lie in [0, 1]");
    }
  }

  std::uint32_t stride() const {
    auto s = static_cast<std::uint32_t>(std::lround(terms_per_topic * (1.0 - overlap_fraction)));
    return std::max<std::uint32_t>(s, 1);
  }
  TermId first_term(std::uint32_t topic) const { return topic * stride(); }
  std::uint32_t vocabulary_size() const { return stride() * (n_topics - 1) + terms_per_topic; }
};

struct PeerProfile {
  PeerId peer = 0;
  std::uint32_t home_topic = 0;
  double docs_mean = 20.0;
  std::uint32_t query_interest = 0;
};

/// Draws term offsets around a topic's Zipf law.
class TopicSampler {
 public:
  explicit TopicSampler(const TopicModel& model) : model_(model) {
    model.validate();
    std::vector<double> weights(model.terms_per_topic);
    for (std::uint32_t r = 0; r < model.terms_per_topic; ++r) {
      weights[r] = 1.0 / std::pow(static_cast<double>(r + 1), model.zipf_exponent);
    }
    rank_ = std::discrete_distribution<std::uint32_t>(weights.begin(), weights.end());
  }

  TermId draw(std::uint32_t topic, Rng& rng) {
    return model_.first_term(topic) + rank_(rng);
  }

  /// Topic for one document token: home, or with noise_fraction another one.
  std::uint32_t token_topic(std::uint32_t home, Rng& rng) {
    if (model_.n_topics > 1 && model_.noise_fraction > 0.0 &&
        std::bernoulli_distribution(model_.noise_fraction)(rng)) {
      return other_topic(home, rng);
    }
    return home;
  }

  std::uint32_t other_topic(std::uint32_t home, Rng& rng) const {
    std::uniform_int_distribution<std::uint32_t> pick(0, model_.n_topics - 2);
    const auto t = pick(rng);
    return t >= home ? t + 1 : t;
  }

  const TopicModel& model() const { return model_; }

 private:
  TopicModel model_;
  std::discrete_distribution<std::uint32_t> rank_;
};

/// Home topic uniform over topics; query interest equal to home with
/// probability home_interest, otherwise a uniformly chosen other topic.
inline std::vector<PeerProfile> generate_profiles(std::size_t n_peers, const TopicModel& model,
                                                  double docs_mean, Rng& rng) {
  model.validate();
  if (docs_mean <= 0.0) throw std::invalid_argument("docs_mean must be positive");
  TopicSampler sampler(model);
  std::uniform_int_distribution<std::uint32_t> topic(0, model.n_topics - 1);
  std::bernoulli_distribution stays_home(model.home_interest);
  std::vector<PeerProfile> out(n_peers);
  for (std::size_t i = 0; i < n_peers; ++i) {
    auto& p = out[i];
    p.peer = static_cast<PeerId>(i);
    p.home_topic = topic(rng);
    p.docs_mean = docs_mean;
    const bool home = model.n_topics == 1 || stays_home(rng);
    p.query_interest = home ? p.home_topic : sampler.other_topic(p.home_topic, rng);
  }
  return out;
}

/// Poisson(docs_mean) documents per peer (at least one), each with
/// Poisson(doc_terms_mean) tokens (at least one). Doc ids are global and
/// assigned in peer order.
inline std::vector<std::vector<Document>> generate_corpus(const TopicModel& model,
                                                          const std::vector<PeerProfile>& profiles,
                                                          Rng& rng) {
  TopicSampler sampler(model);
  std::poisson_distribution<std::uint32_t> tokens(model.doc_terms_mean);
  std::vector<std::vector<Document>> corpus(profiles.size());
  std::uint64_t next_doc = 0;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const auto& profile = profiles[i];
    if (profile.home_topic >= model.n_topics || profile.query_interest >= model.n_topics) {
      throw std::invalid_argument("profile topic out of range");
    }
    std::poisson_distribution<std::uint32_t> docs(profile.docs_mean);
    const std::uint32_t n_docs = std::max<std::uint32_t>(1, docs(rng));
    corpus[i].reserve(n_docs);
    for (std::uint32_t d = 0; d < n_docs; ++d) {
      Document doc;
      doc.doc_id = next_doc++;
      const std::uint32_t n_tokens = std::max<std::uint32_t>(1, tokens(rng));
      for (std::uint32_t k = 0; k < n_tokens; ++k) {
        ++doc.term_frequencies[sampler.draw(sampler.token_topic(profile.home_topic, rng), rng)];
      }
      corpus[i].push_back(std::move(doc));
    }
  }
  return corpus;
}

struct Query {
  std::vector<TermId> terms;
  TermVector qv;
  std::uint32_t required = 1;
};

/// Poisson(query_terms_mean) distinct terms clamped to [1, terms_per_topic],
/// drawn from the profile's interest topic; `required` uniform in
/// [1, max_required].
inline Query generate_query(const PeerProfile& profile, TopicSampler& sampler, Rng& rng) {
  const auto& model = sampler.model();
  std::poisson_distribution<std::uint32_t> count(model.query_terms_mean);
  const std::uint32_t n_terms = std::clamp<std::uint32_t>(count(rng), 1, model.terms_per_topic);
  Query q;
  q.terms.reserve(n_terms);
  while (q.terms.size() < n_terms) {
    const TermId t = sampler.draw(profile.query_interest, rng);
    if (std::find(q.terms.begin(), q.terms.end(), t) == q.terms.end()) q.terms.push_back(t);
  }
  q.qv = build_query_vector(q.terms);
  q.required = std::uniform_int_distribution<std::uint32_t>(1, model.max_required)(rng);
  return q;
}

/// Line format: `peer_id doc_id term:count term:count ...`.
inline void dump_corpus(std::ostream& out, const std::vector<std::vector<Document>>& corpus) {
  for (std::size_t p = 0; p < corpus.size(); ++p) {
    for (const auto& doc : corpus[p]) {
      out << p << ' ' << doc.doc_id;
      for (const auto& [term, count] : doc.term_frequencies) out << ' ' << term << ':' << count;
      out << '\n';
    }
  }
}

/// Inverse of dump_corpus. Peers without documents in the file get an empty
/// list; `n_peers` = 0 sizes the result from the largest peer id seen.
inline std::vector<std::vector<Document>> load_corpus(std::istream& in, std::size_t n_peers = 0) {
  std::vector<std::vector<Document>> corpus(n_peers);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::size_t peer = 0;
    Document doc;
    if (!(fields >> peer >> doc.doc_id)) {
      throw std::runtime_error("malformed corpus line " + std::to_string(line_no));
    }
    std::string pair;
    while (fields >> pair) {
      const auto colon = pair.find(':');
      if (colon == std::string::npos) {
        throw std::runtime_error("malformed term on corpus line " + std::to_string(line_no));
      }
      const auto term = static_cast<TermId>(std::stoul(pair.substr(0, colon)));
      const auto count = static_cast<std::uint32_t>(std::stoul(pair.substr(colon + 1)));
      if (count == 0) throw std::runtime_error("zero count on corpus line " + std::to_string(line_no));
      doc.term_frequencies[term] += count;
    }
    doc.validate();
    if (n_peers != 0 && peer >= n_peers) {
      throw std::runtime_error("peer id out of range on corpus line " + std::to_string(line_no));
    }
    if (peer >= corpus.size()) corpus.resize(peer + 1);
    corpus[peer].push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace prosa
