// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "kernelguard/ast.hpp"
#include "kernelguard/retrieval.hpp"

namespace kernelguard::corpus {

enum class CorpusErrorKind {
  MalformedRecord,
  UnknownLabel,
  EmptyCorpus,
  UnsortedInput,
  DanglingReference,
  IoError,
};

class CorpusError : public std::runtime_error {
public:
  CorpusError(CorpusErrorKind kind, const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), kind_(kind), line_(line) {}
  CorpusErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

private:
  CorpusErrorKind kind_;
  std::size_t line_;
};

enum class ChangeLabel { BugInducing, BugFixing };

std::string_view change_label_name(ChangeLabel label);

/// One method-level change. Timestamps are UTC epoch seconds. The AST is
/// carried as its s-expression when the dataset supplies one; otherwise it
/// is derived on demand from source_text via the built-in parser.
struct ChangeRecord {
  std::string change_id;
  std::string project;
  std::string commit_hash;
  std::string file_path;
  std::string method_name;
  std::int64_t timestamp = 0;
  ChangeLabel label = ChangeLabel::BugFixing;
  std::string source_text;
  std::optional<std::string> ast_sexpr;
  std::optional<std::string> paired_fix_id;
};

enum class CorpusFormat { JSONL, TechnicalDebtCSV };

/// Reads labeled method-level changes and returns them sorted by
/// (timestamp, change_id). Deletion, refactoring, and non-source changes
/// are dropped based on the record's change_type; additions and
/// modifications (and records without a change_type) are kept.
std::vector<ChangeRecord> ingest_changes(const std::filesystem::path& path, CorpusFormat format);

/// Parses one JSONL change object. Returns nullopt for filtered-out change
/// types. Commit payloads carry no label; pass require_label=false there.
std::optional<ChangeRecord> parse_change_jsonl(const std::string& line, std::size_t line_no,
                                               bool require_label);

/// One-line JSON rendering, inverse of parse_change_jsonl.
std::string change_to_jsonl(const ChangeRecord& record);

// RFC 3339 timestamp handling (seconds resolution, UTC).
std::int64_t parse_rfc3339(std::string_view text);  // throws CorpusError on failure
std::string format_rfc3339(std::int64_t epoch_seconds);

// Calendar month boundaries in UTC.
std::int64_t month_start(std::int64_t epoch_seconds);
std::int64_t next_month_start(std::int64_t epoch_seconds);

struct TimePeriod {
  int index = 0;  // 1-based
  std::int64_t start = 0;
  std::int64_t end = 0;  // exclusive
};

/// Lazily parsed, shared AST cache keyed by change id. Parse failures are
/// cached as null.
class AstCache {
public:
  std::shared_ptr<const ast::Tree> get_or_parse(const ChangeRecord& record) const;

private:
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, std::shared_ptr<const ast::Tree>> cache_;
};

/// Immutable view of every record strictly before some point in time,
/// backed by a prebuilt cumulative monthly index plus a small index over
/// same-month records. Safe for concurrent queries.
class IndexSnapshot {
public:
  IndexSnapshot() = default;
  IndexSnapshot(std::shared_ptr<const std::vector<ChangeRecord>> records,
                std::shared_ptr<const retrieval::InvertedIndex> base,
                std::shared_ptr<const retrieval::InvertedIndex> extra,
                std::shared_ptr<const AstCache> ast_cache);

  std::size_t record_count() const;
  bool empty() const { return record_count() == 0; }

  retrieval::CandidateSet more_like_this(
      std::string_view query_text, std::size_t limit = retrieval::kDefaultCandidateLimit) const;

  /// Record lookup by change id; null when the id is not in this snapshot.
  const ChangeRecord* find(const std::string& change_id) const;

  /// AST for an indexed record, parsed lazily and cached; null when the
  /// source cannot be parsed.
  std::shared_ptr<const ast::Tree> ast_for(const std::string& change_id) const;

  /// Change ids of every record in this snapshot (sorted).
  std::vector<std::string> member_ids() const;

private:
  std::shared_ptr<const std::vector<ChangeRecord>> records_;
  std::shared_ptr<const retrieval::InvertedIndex> base_;
  std::shared_ptr<const retrieval::InvertedIndex> extra_;
  std::shared_ptr<const AstCache> ast_cache_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

/// Cumulative month-wise snapshots: snapshot N indexes every record of
/// periods 1..N. Immutable once built.
class SnapshotSeries {
public:
  /// Records must be sorted by (timestamp, change_id) and non-empty;
  /// throws EmptyCorpus / UnsortedInput otherwise.
  static SnapshotSeries build(std::vector<ChangeRecord> records);

  const std::vector<TimePeriod>& periods() const { return periods_; }
  const std::vector<ChangeRecord>& records() const { return *records_; }
  std::size_t snapshot_count() const { return periods_.size(); }

  /// Cumulative snapshot through period `index` (1-based).
  IndexSnapshot snapshot_at(int index) const;

  /// Records in period `index` only (for reporting).
  std::size_t records_in_period(int index) const;

  /// Snapshot of everything strictly earlier than `query_time`: the last
  /// full month-wise index before the query's month plus the same-month
  /// records with a strictly smaller timestamp. Empty when nothing
  /// qualifies.
  IndexSnapshot snapshot_for(std::int64_t query_time) const;

private:
  std::shared_ptr<const std::vector<ChangeRecord>> records_;
  std::vector<TimePeriod> periods_;
  // cumulative record count per period, aligned with periods_
  std::vector<std::size_t> cumulative_counts_;
  std::vector<std::shared_ptr<const retrieval::InvertedIndex>> monthly_;
  std::shared_ptr<const AstCache> ast_cache_;
};

inline SnapshotSeries build_snapshots(std::vector<ChangeRecord> records) {
  return SnapshotSeries::build(std::move(records));
}

// ---------------------------------------------------------------------------
// clone benchmark adapter
// ---------------------------------------------------------------------------

enum class CloneType { T1, T2, VST3, ST3, MT3, WT3T4 };

std::optional<CloneType> clone_type_from_name(std::string_view name);
std::string_view clone_type_name(CloneType type);

struct CloneBenchEntry {
  int functionality_id = 0;
  std::string method_id;
  /// Derived from the method id: the part before the first "__", or
  /// "default" when the id carries no project prefix.
  std::string project;
  std::string source_text;
  int line_count = 0;
};

struct ClonePairInfo {
  bool is_true = false;
  std::optional<CloneType> type;  // set for true pairs when tagged
};

/// Ground truth over unordered method pairs.
class CloneGroundTruth {
public:
  void add(const std::string& a, const std::string& b, ClonePairInfo info);
  const ClonePairInfo* find(const std::string& a, const std::string& b) const;
  std::size_t size() const { return pairs_.size(); }

private:
  std::map<std::pair<std::string, std::string>, ClonePairInfo> pairs_;
};

struct CloneBench {
  std::vector<CloneBenchEntry> entries;
  CloneGroundTruth ground_truth;
};

/// Directory layout: functionality_<id>/<method_id>.java plus pairs.csv
/// with columns id1,id2,is_true,clone_type.
CloneBench ingest_clonebench(const std::filesystem::path& dir);

}  // namespace kernelguard::corpus
