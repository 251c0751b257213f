// Vector space model: document, query and peer vectors, plus the
// intersection dot product used as relevance everywhere in the overlay.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace prosa {

using TermId = std::uint32_t;

/// Sparse term -> weight vector. Entries are kept sorted by term and never
/// hold a zero weight, so relevance is a linear merge.
class TermVector {
 public:
  using Entry = std::pair<TermId, double>;

  TermVector() = default;

  /// Builds from arbitrary (term, weight) pairs. Duplicate terms are summed,
  /// zero weights dropped. Negative weights are rejected.
  static TermVector from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    TermVector v;
    for (const auto& [term, weight] : entries) {
      if (weight < 0.0 || !std::isfinite(weight)) {
        throw std::invalid_argument("negative or non-finite term weight");
      }
      if (weight == 0.0) continue;
      if (!v.entries_.empty() && v.entries_.back().first == term) {
        v.entries_.back().second += weight;
      } else {
        v.entries_.emplace_back(term, weight);
      }
    }
    return v;
  }

  static TermVector from_entries(std::initializer_list<Entry> entries) {
    return from_entries(std::vector<Entry>(entries));
  }

  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool normalized() const { return normalized_; }

  /// Weight of `term`, 0 when absent.
  double weight(TermId term) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), term,
        [](const Entry& e, TermId t) { return e.first < t; });
    return (it != entries_.end() && it->first == term) ? it->second : 0.0;
  }

  double norm() const {
    double sum = 0.0;
    for (const auto& e : entries_) sum += e.second * e.second;
    return std::sqrt(sum);
  }

  /// Euclidean normalization. The empty vector stays empty and is not
  /// flagged as normalized.
  TermVector normalize() const {
    TermVector out = *this;
    const double n = norm();
    if (n == 0.0) return out;
    for (auto& e : out.entries_) e.second /= n;
    out.normalized_ = true;
    return out;
  }

  /// Element-wise sum; the result is un-normalized.
  TermVector operator+(const TermVector& other) const {
    TermVector out;
    out.entries_.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
      if (b == other.entries_.end() ||
          (a != entries_.end() && a->first < b->first)) {
        out.entries_.push_back(*a++);
      } else if (a == entries_.end() || b->first < a->first) {
        out.entries_.push_back(*b++);
      } else {
        out.entries_.emplace_back(a->first, a->second + b->second);
        ++a;
        ++b;
      }
    }
    return out;
  }

  friend bool operator==(const TermVector&, const TermVector&) = default;

 private:
  std::vector<Entry> entries_;
  bool normalized_ = false;
};

/// Sum over shared terms of the weight products. Symmetric, non-negative,
/// zero exactly when the supports are disjoint.
inline double relevance(const TermVector& a, const TermVector& b) {
  auto ea = a.entries();
  auto eb = b.entries();
  auto ia = ea.begin();
  auto ib = eb.begin();
  double sum = 0.0;
  while (ia != ea.end() && ib != eb.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      sum += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

struct Document {
  std::uint64_t doc_id = 0;
  std::map<TermId, std::uint32_t> term_frequencies;

  void validate() const {
    if (term_frequencies.empty()) throw std::invalid_argument("empty document");
    for (const auto& [term, count] : term_frequencies) {
      if (count == 0) throw std::invalid_argument("zero term count in document");
    }
  }

  friend bool operator==(const Document&, const Document&) = default;
};

namespace detail {

inline double log_weight(double frequency) { return 1.0 + std::log(frequency); }

inline TermVector weigh(const std::map<TermId, std::uint64_t>& counts) {
  std::vector<TermVector::Entry> entries;
  entries.reserve(counts.size());
  for (const auto& [term, count] : counts) {
    entries.emplace_back(term, log_weight(static_cast<double>(count)));
  }
  return TermVector::from_entries(std::move(entries));
}

}  // namespace detail

/// w = 1 + ln(f) per term. Deliberately left un-normalized.
inline TermVector build_document_vector(const Document& doc) {
  doc.validate();
  std::vector<TermVector::Entry> entries;
  entries.reserve(doc.term_frequencies.size());
  for (const auto& [term, count] : doc.term_frequencies) {
    entries.emplace_back(term, detail::log_weight(count));
  }
  return TermVector::from_entries(std::move(entries));
}

/// Frequencies summed over all documents, weighted with 1 + ln(F), then
/// normalized.
inline TermVector build_peer_vector(std::span<const Document> docs) {
  if (docs.empty()) throw std::invalid_argument("peer has no documents");
  std::map<TermId, std::uint64_t> totals;
  for (const auto& doc : docs) {
    doc.validate();
    for (const auto& [term, count] : doc.term_frequencies) totals[term] += count;
  }
  return detail::weigh(totals).normalize();
}

/// Same weighting as the peer vector, applied to in-query multiplicities.
inline TermVector build_query_vector(std::span<const TermId> terms) {
  if (terms.empty()) throw std::invalid_argument("empty query");
  std::map<TermId, std::uint64_t> counts;
  for (TermId t : terms) ++counts[t];
  return detail::weigh(counts).normalize();
}

inline TermVector build_query_vector(std::initializer_list<TermId> terms) {
  return build_query_vector(std::span<const TermId>(terms.begin(), terms.size()));
}

}  // namespace prosa
