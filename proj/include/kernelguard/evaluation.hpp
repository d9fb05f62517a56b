// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kernelguard/classifier.hpp"
#include "kernelguard/corpus.hpp"
#include "kernelguard/kernels.hpp"

namespace kernelguard::evaluation {

enum class EvalErrorKind { EmptyQuerySet, InsufficientEntries, InsufficientHistory };

class EvalError : public std::runtime_error {
public:
  EvalError(EvalErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  EvalErrorKind kind() const { return kind_; }

private:
  EvalErrorKind kind_;
};

/// One query's system-ranked results; relevance comes solely from ground
/// truth.
struct RankedList {
  std::string query_id;
  std::vector<std::pair<std::string, bool>> entries;  // (item id, relevant)
};

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
};

struct MetricsReport {
  std::map<int, double> precision_at_k;
  double map = 0.0;
  double mrr = 0.0;
  std::map<int, double> topk_accuracy;
  double f_score = 0.0;
  double accuracy = 0.0;
  std::size_t query_count = 0;
};

/// Mean over queries of |relevant in top k| / k. Lists shorter than k are
/// not padded; the denominator stays k.
double precision_at_k(std::span<const RankedList> lists, int k);

/// MAP with AP_q = (sum of precision@i over relevant positions i) /
/// total_relevant[q]; relevant items missing from a list contribute 0.
double mean_average_precision(std::span<const RankedList> lists,
                              const std::map<std::string, int>& total_relevant);

/// Mean of 1/rank of the first relevant entry; 0 for queries without one.
double mean_reciprocal_rank(std::span<const RankedList> lists);

/// Fraction of queries whose biased top-k prediction matches the ground
/// truth (bug-inducing <-> flagged, bug-fixing <-> clean).
double topk_accuracy(
    std::span<const std::pair<corpus::ChangeLabel, classifier::Prediction>> predictions, int k);

/// (F-score, Accuracy); F is 0 when precision+recall is 0. The positive
/// class is bug-inducing.
std::pair<double, double> f_score_and_accuracy(const ConfusionCounts& counts);

// ---------------------------------------------------------------------------
// clone detection harness
// ---------------------------------------------------------------------------

enum class CloneEvalScope { InterProjectByFunctionality, IntraProject, ByCloneType };

struct CloneEvalOptions {
  CloneEvalScope scope = CloneEvalScope::InterProjectByFunctionality;
  int precision_k = 10;
  /// Minimum clone size (lines) applied to ByCloneType runs.
  int min_lines = 6;
  std::vector<corpus::CloneType> types = {corpus::CloneType::T1, corpus::CloneType::T2,
                                          corpus::CloneType::VST3, corpus::CloneType::ST3};
  int threads = 0;
};

struct CloneEvalResult {
  /// Keyed by functionality id, project, or clone type depending on scope.
  std::map<std::string, MetricsReport> groups;
  std::size_t unparseable_entries = 0;
};

/// Ranks every in-scope entry against the others of its pool by kernel
/// similarity and scores Precision@k and MAP against the clone ground
/// truth. Queries without any relevant in-pool partner are excluded from
/// MAP (and, for type groups, from that type's query set).
CloneEvalResult run_clone_eval(const corpus::CloneBench& bench,
                               const kernels::KernelConfig& kernel_cfg,
                               const CloneEvalOptions& options);

// ---------------------------------------------------------------------------
// time-aware defect detection harness
// ---------------------------------------------------------------------------

struct DefectEvalOptions {
  /// When set, only records at or after this time are replayed as queries;
  /// earlier records only seed the indexes. Unset replays every record,
  /// cold starts included.
  std::optional<std::int64_t> eval_from;
  int threads = 0;
};

struct DefectReport {
  MetricsReport metrics;
  ConfusionCounts counts;
  /// Matches whose timestamp is not strictly earlier than their query's;
  /// must be zero.
  std::uint64_t time_violations = 0;
};

/// Replays each project's records in timestamp order, classifying every
/// query against the snapshot strictly before it. Reports TopK@1, TopK@5,
/// MRR (relevant = same ground-truth label as the query), F-score, and
/// Accuracy per project, with confusion counts taken at cfg.k.
std::map<std::string, DefectReport> run_defect_eval(std::span<const corpus::ChangeRecord> records,
                                                    const classifier::ClassifierConfig& cfg,
                                                    const DefectEvalOptions& options = {});

}  // namespace kernelguard::evaluation
