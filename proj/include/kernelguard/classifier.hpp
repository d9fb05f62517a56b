// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kernelguard/corpus.hpp"
#include "kernelguard/kernels.hpp"

namespace kernelguard::classifier {

enum class ClassifierErrorKind { MissingAst, MixedCommit, InvalidConfig };

class ClassifierError : public std::runtime_error {
public:
  ClassifierError(ClassifierErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ClassifierErrorKind kind() const { return kind_; }

private:
  ClassifierErrorKind kind_;
};

enum class Prediction { BugInducing, Clean };

std::string_view prediction_name(Prediction p);

/// K-NN configuration. The decision is biased toward buggy changes: the
/// query is flagged whenever any of the top-k matches is bug-inducing.
struct ClassifierConfig {
  int k = 1;
  kernels::KernelConfig kernel_cfg{};
  std::size_t candidate_limit = retrieval::kDefaultCandidateLimit;
  int threads = 0;
};

/// Extra fields rendered into reports; populated for the top-k matches.
struct MatchDetail {
  std::string commit_hash;
  std::string method_name;
  std::string source_text;
};

struct RankedMatch {
  std::string change_id;
  int rank = 0;  // 1-based, dense
  double kernel_score = 0.0;
  double retrieval_score = 0.0;
  corpus::ChangeLabel label = corpus::ChangeLabel::BugFixing;
  std::int64_t timestamp = 0;
  std::optional<MatchDetail> detail;
};

struct SuggestedFix {
  std::string change_id;
  std::string commit_hash;
  std::string source_text;
};

struct ClassificationResult {
  std::string query_change_id;
  std::string query_method_name;
  std::string query_commit_hash;
  std::string query_source;
  Prediction predicted_label = Prediction::Clean;
  int decision_k = 1;
  /// Full kernel-ranked candidate list (ranks dense, scores non-increasing);
  /// the decision looks at the first k entries only.
  std::vector<RankedMatch> matches;
  std::optional<SuggestedFix> suggested_fix;
};

/// Biased decision from the first min(k, |matches|) entries.
Prediction prediction_at_k(const ClassificationResult& result, int k);

/// Two-stage classification of one method-level change: retrieve up to
/// candidate_limit textually similar past changes, re-rank them by
/// normalized tree-kernel similarity (ties: retrieval score, then recency,
/// then change id), then apply the biased top-k rule. An empty candidate
/// set yields Clean.
ClassificationResult classify(const corpus::ChangeRecord& query,
                              const corpus::IndexSnapshot& snapshot,
                              const ClassifierConfig& cfg);

/// Classifies every method of one commit against the snapshot strictly
/// before the commit's timestamp. All records must share commit hash and
/// timestamp.
std::vector<ClassificationResult> classify_commit(std::span<const corpus::ChangeRecord> methods,
                                                  const corpus::SnapshotSeries& series,
                                                  const ClassifierConfig& cfg);

bool any_risky(std::span<const ClassificationResult> results);

/// Plain-text risky-commit report: per flagged method the matched past
/// change with score and rank, the two sources side by side, and the
/// recorded fix when one resolves. Deterministic.
std::string render_report(std::span<const ClassificationResult> results);

/// Machine-readable variant, one JSON object per result.
std::string render_report_jsonl(std::span<const ClassificationResult> results);

/// Inverse of render_report_jsonl, for re-rendering saved results.
std::vector<ClassificationResult> parse_report_jsonl(std::istream& in);

}  // namespace kernelguard::classifier
