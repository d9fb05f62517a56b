// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kernelguard::retrieval {

// Analyzer settings, fixed by construction: shingles of 2..3 tokens,
// edge n-grams of 1..20 characters, 25 query terms per field.
inline constexpr int kMinShingleSize = 2;
inline constexpr int kMaxShingleSize = 3;
inline constexpr int kMinGram = 1;
inline constexpr int kMaxGram = 20;
inline constexpr std::size_t kMaxQueryTermsPerField = 25;
inline constexpr std::size_t kDefaultCandidateLimit = 100;

inline constexpr std::string_view kIndexMagic = "KGIDX1";

enum class RetrievalErrorKind { DuplicateDocId, BadIndexFile };

class RetrievalError : public std::runtime_error {
public:
  RetrievalError(RetrievalErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  RetrievalErrorKind kind() const { return kind_; }

private:
  RetrievalErrorKind kind_;
};

/// Standard tokenizer: lowercased maximal runs of ASCII alphanumerics and
/// underscores; every other byte separates.
std::vector<std::string> tokenize(std::string_view text);

/// Term multiset as term -> occurrence count (ordered for determinism).
using TermCounts = std::map<std::string, std::uint32_t>;

/// Space-joined runs of 2 and 3 consecutive tokens.
TermCounts shingles(const std::vector<std::string>& tokens, int min_size = kMinShingleSize,
                    int max_size = kMaxShingleSize);

/// Per-token prefixes of length 1..min(20, token length).
TermCounts edge_ngrams(const std::vector<std::string>& tokens, int min_gram = kMinGram,
                       int max_gram = kMaxGram);

enum class Field : int { Shingle = 0, EdgeGram = 1 };
inline constexpr int kFieldCount = 2;

struct AnalyzedDocument {
  std::string doc_id;
  TermCounts shingle_terms;
  TermCounts edgegram_terms;
  // Total term occurrences per field; the per-field length norm is
  // 1/sqrt(length) with 0 for an empty field.
  std::uint64_t shingle_length = 0;
  std::uint64_t edgegram_length = 0;
};

AnalyzedDocument analyze(const std::string& doc_id, std::string_view text);

struct Candidate {
  std::string doc_id;
  double score = 0.0;
};

struct CandidateSet {
  std::vector<Candidate> entries;  // scores non-increasing
  std::size_t limit = kDefaultCandidateLimit;
};

/// Append-only inverted index over two analyzer fields. Single writer;
/// immutable and safe for concurrent queries once finalize() has run.
class InvertedIndex {
public:
  void add(const std::string& doc_id, const std::string& text, std::string meta = {});

  /// Sorts every postings list by doc id. Called automatically by save()
  /// and by the more-like-this entry points; idempotent.
  void finalize();

  std::size_t doc_count() const { return docs_.size(); }
  bool contains(const std::string& doc_id) const;

  /// Number of documents containing the term in the given field.
  std::uint32_t doc_freq(Field field, const std::string& term) const;

  const std::string& doc_id(std::uint32_t ordinal) const { return docs_[ordinal].id; }
  const std::string& doc_text(std::uint32_t ordinal) const { return docs_[ordinal].text; }
  const std::string& doc_meta(std::uint32_t ordinal) const { return docs_[ordinal].meta; }

  /// Top-`limit` documents most similar to the query text. Per field the
  /// up-to-25 query terms with the highest tf*idf are selected, with
  /// idf = ln(1 + (N - df + 0.5)/(df + 0.5)); each candidate scores
  /// sum(tf_cand * idf) / sqrt(field length), fields add, ties break on
  /// lexicographic doc id. Only documents with a positive score appear.
  CandidateSet more_like_this(std::string_view query_text,
                              std::size_t limit = kDefaultCandidateLimit) const;

  void save(std::ostream& out) const;
  static InvertedIndex load(std::istream& in);

  // Exposed for tests and persistence: postings as (ordinal, tf).
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>* postings(
      Field field, const std::string& term) const;
  std::vector<std::string> terms(Field field) const;

private:
  friend CandidateSet more_like_this_merged(const InvertedIndex* base, const InvertedIndex* extra,
                                            std::string_view query_text, std::size_t limit);

  struct DocInfo {
    std::string id;
    std::string text;
    std::string meta;
    double inv_len[kFieldCount] = {0.0, 0.0};
  };

  std::vector<DocInfo> docs_;
  std::map<std::string, std::uint32_t> id_to_ordinal_;
  std::map<std::string, std::vector<std::pair<std::uint32_t, std::uint32_t>>>
      postings_[kFieldCount];
  bool sorted_ = true;
};

/// Scores against the union of two disjoint indexes with pooled document
/// frequencies; byte-identical to a single index holding both document
/// sets. Either pointer may be null.
CandidateSet more_like_this_merged(const InvertedIndex* base, const InvertedIndex* extra,
                                   std::string_view query_text,
                                   std::size_t limit = kDefaultCandidateLimit);

}  // namespace kernelguard::retrieval
