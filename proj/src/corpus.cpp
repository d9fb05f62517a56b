// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

#include "kernelguard/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kernelguard/java_parser.hpp"

namespace kernelguard::corpus {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(std::size_t line, const std::string& why) {
  throw CorpusError(CorpusErrorKind::MalformedRecord,
                    "malformed record at line " + std::to_string(line) + ": " + why, line);
}

std::optional<ChangeLabel> label_from_name(std::string_view name) {
  if (name == "bug_inducing" || name == "bug-inducing" || name == "inducing") {
    return ChangeLabel::BugInducing;
  }
  if (name == "bug_fixing" || name == "bug-fixing" || name == "fixing") {
    return ChangeLabel::BugFixing;
  }
  return std::nullopt;
}

// Change kinds kept by ingestion; deletions, refactorings, and non-source
// changes are filtered out.
bool keep_change_type(std::string_view type) {
  return type.empty() || type == "add" || type == "addition" || type == "added" ||
         type == "modify" || type == "modification" || type == "modified";
}

bool known_change_type(std::string_view type) {
  return keep_change_type(type) || type == "delete" || type == "deletion" || type == "deleted" ||
         type == "refactoring" || type == "non_source" || type == "non-source" ||
         type == "documentation";
}

// Howard Hinnant's civil-date algorithms (public domain).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  y = static_cast<int>(yr + (m <= 2));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  return a >= 0 ? a / b : -((-a + b - 1) / b);
}

// Minimal RFC 4180 CSV reader: quoted fields with "" escapes, records may
// span lines inside quotes.
class CsvReader {
public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Returns false at end of input. `line` reports the 1-based line the
  // record started on.
  bool next(std::vector<std::string>& fields, std::size_t& line) {
    fields.clear();
    int c = in_.get();
    while (c == '\n') {
      ++line_;
      c = in_.get();
    }
    if (c == EOF) return false;
    line = line_;
    std::string field;
    bool quoted = false;
    while (true) {
      if (c == EOF) {
        fields.push_back(std::move(field));
        return true;
      }
      if (quoted) {
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line_;
          field.push_back(static_cast<char>(c));
        }
      } else if (c == '"' && field.empty()) {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else if (c == '\n') {
        ++line_;
        fields.push_back(std::move(field));
        return true;
      } else if (c != '\r') {
        field.push_back(static_cast<char>(c));
      }
      c = in_.get();
    }
  }

private:
  std::istream& in_;
  std::size_t line_ = 1;
};

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw CorpusError(CorpusErrorKind::IoError, "cannot open file: " + path.string());
  }
  return in;
}

std::vector<ChangeRecord> ingest_jsonl(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  std::vector<ChangeRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto record = parse_change_jsonl(line, line_no, /*require_label=*/true);
    if (record) records.push_back(std::move(*record));
  }
  return records;
}

// Technical-debt CSV column order:
//   change_id,project,commit_hash,file_path,method_name,timestamp,label,
//   change_type,source_text,paired_fix_id
// A header row naming the first column "change_id" is skipped.
std::vector<ChangeRecord> ingest_td_csv(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  CsvReader reader(in);
  std::vector<ChangeRecord> records;
  std::vector<std::string> fields;
  std::size_t line = 0;
  bool first = true;
  while (reader.next(fields, line)) {
    if (first && !fields.empty() && fields[0] == "change_id") {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() < 9) malformed(line, "expected at least 9 columns");
    const std::string& change_type = fields[7];
    if (!known_change_type(change_type)) malformed(line, "unknown change_type '" + change_type + "'");
    if (!keep_change_type(change_type)) continue;

    ChangeRecord record;
    record.change_id = fields[0];
    record.project = fields[1];
    record.commit_hash = fields[2];
    record.file_path = fields[3];
    record.method_name = fields[4];
    try {
      record.timestamp = parse_rfc3339(fields[5]);
    } catch (const CorpusError&) {
      malformed(line, "unparseable timestamp");
    }
    auto label = label_from_name(fields[6]);
    if (!label) {
      throw CorpusError(CorpusErrorKind::UnknownLabel,
                        "unknown label '" + fields[6] + "' at line " + std::to_string(line), line);
    }
    record.label = *label;
    record.source_text = fields[8];
    if (fields.size() > 9 && !fields[9].empty()) record.paired_fix_id = fields[9];
    if (record.change_id.empty()) malformed(line, "empty change_id");
    records.push_back(std::move(record));
  }
  return records;
}

void sort_records(std::vector<ChangeRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const ChangeRecord& a, const ChangeRecord& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.change_id < b.change_id;
  });
}

std::shared_ptr<const retrieval::InvertedIndex> build_index(
    const std::vector<ChangeRecord>& records, std::size_t begin, std::size_t end) {
  auto index = std::make_shared<retrieval::InvertedIndex>();
  for (std::size_t i = begin; i < end; ++i) {
    index->add(records[i].change_id, records[i].source_text);
  }
  index->finalize();
  return index;
}

}  // namespace

std::string_view change_label_name(ChangeLabel label) {
  return label == ChangeLabel::BugInducing ? "bug_inducing" : "bug_fixing";
}

std::optional<ChangeRecord> parse_change_jsonl(const std::string& line, std::size_t line_no,
                                               bool require_label) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) malformed(line_no, "invalid JSON object");
  std::string change_type = j.value("change_type", "");
  if (!known_change_type(change_type)) {
    malformed(line_no, "unknown change_type '" + change_type + "'");
  }
  if (!keep_change_type(change_type)) return std::nullopt;

  ChangeRecord record;
  auto required = [&](const char* field) -> std::string {
    if (!j.contains(field) || !j.at(field).is_string()) {
      malformed(line_no, std::string("missing string field '") + field + "'");
    }
    return j.at(field).get<std::string>();
  };
  record.change_id = required("change_id");
  record.project = j.value("project", "");
  record.commit_hash = j.value("commit_hash", "");
  record.file_path = j.value("file_path", "");
  record.method_name = j.value("method_name", "");
  record.source_text = required("source_text");
  try {
    record.timestamp = parse_rfc3339(required("timestamp"));
  } catch (const CorpusError&) {
    malformed(line_no, "unparseable timestamp");
  }
  std::string label_text = j.value("label", "");
  if (label_text.empty()) {
    if (require_label) malformed(line_no, "missing field 'label'");
  } else {
    auto label = label_from_name(label_text);
    if (!label) {
      throw CorpusError(CorpusErrorKind::UnknownLabel,
                        "unknown label '" + label_text + "' at line " + std::to_string(line_no),
                        line_no);
    }
    record.label = *label;
  }
  if (j.contains("ast") && j.at("ast").is_string()) {
    record.ast_sexpr = j.at("ast").get<std::string>();
  }
  if (j.contains("paired_fix_id") && j.at("paired_fix_id").is_string()) {
    record.paired_fix_id = j.at("paired_fix_id").get<std::string>();
  }
  return record;
}

std::string change_to_jsonl(const ChangeRecord& record) {
  json j;
  j["change_id"] = record.change_id;
  j["project"] = record.project;
  j["commit_hash"] = record.commit_hash;
  j["file_path"] = record.file_path;
  j["method_name"] = record.method_name;
  j["timestamp"] = format_rfc3339(record.timestamp);
  j["label"] = std::string(change_label_name(record.label));
  j["source_text"] = record.source_text;
  if (record.ast_sexpr) j["ast"] = *record.ast_sexpr;
  if (record.paired_fix_id) j["paired_fix_id"] = *record.paired_fix_id;
  return j.dump();
}

std::int64_t parse_rfc3339(std::string_view text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  int n = 0;
  std::string buf(text);
  if (std::sscanf(buf.c_str(), "%d-%d-%dT%d:%d:%d%n", &y, &mo, &d, &h, &mi, &s, &n) != 6 &&
      std::sscanf(buf.c_str(), "%d-%d-%d %d:%d:%d%n", &y, &mo, &d, &h, &mi, &s, &n) != 6) {
    // date-only form
    if (std::sscanf(buf.c_str(), "%d-%d-%d%n", &y, &mo, &d, &n) == 3 &&
        static_cast<std::size_t>(n) == buf.size()) {
      h = mi = s = 0;
      n = static_cast<int>(buf.size());
    } else {
      throw CorpusError(CorpusErrorKind::MalformedRecord,
                        "unparseable RFC 3339 timestamp: " + buf);
    }
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60) {
    throw CorpusError(CorpusErrorKind::MalformedRecord, "timestamp out of range: " + buf);
  }
  std::size_t rest = static_cast<std::size_t>(n);
  std::int64_t offset = 0;
  if (rest < buf.size() && buf[rest] == '.') {
    ++rest;  // fractional seconds are parsed and dropped
    while (rest < buf.size() && std::isdigit(static_cast<unsigned char>(buf[rest]))) ++rest;
  }
  if (rest < buf.size()) {
    char c = buf[rest];
    if (c == 'Z' || c == 'z') {
      ++rest;
    } else if (c == '+' || c == '-') {
      int oh = 0, om = 0, consumed = 0;
      if (std::sscanf(buf.c_str() + rest + 1, "%2d:%2d%n", &oh, &om, &consumed) == 2 ||
          std::sscanf(buf.c_str() + rest + 1, "%2d%2d%n", &oh, &om, &consumed) == 2) {
        offset = (c == '+' ? 1 : -1) * (oh * 3600 + om * 60);
        rest += 1 + static_cast<std::size_t>(consumed);
      } else {
        throw CorpusError(CorpusErrorKind::MalformedRecord, "bad timezone offset: " + buf);
      }
    }
  }
  if (rest != buf.size()) {
    throw CorpusError(CorpusErrorKind::MalformedRecord, "trailing timestamp text: " + buf);
  }
  std::int64_t days = days_from_civil(y, mo, d);
  return days * 86400 + h * 3600 + mi * 60 + s - offset;
}

std::string format_rfc3339(std::int64_t epoch_seconds) {
  std::int64_t days = floor_div(epoch_seconds, 86400);
  std::int64_t rem = epoch_seconds - days * 86400;
  int y, m, d;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                static_cast<int>(rem / 3600), static_cast<int>((rem % 3600) / 60),
                static_cast<int>(rem % 60));
  return buf;
}

std::int64_t month_start(std::int64_t epoch_seconds) {
  int y, m, d;
  civil_from_days(floor_div(epoch_seconds, 86400), y, m, d);
  return days_from_civil(y, m, 1) * 86400;
}

std::int64_t next_month_start(std::int64_t epoch_seconds) {
  int y, m, d;
  civil_from_days(floor_div(epoch_seconds, 86400), y, m, d);
  if (++m > 12) {
    m = 1;
    ++y;
  }
  return days_from_civil(y, m, 1) * 86400;
}

std::vector<ChangeRecord> ingest_changes(const std::filesystem::path& path, CorpusFormat format) {
  std::vector<ChangeRecord> records =
      format == CorpusFormat::JSONL ? ingest_jsonl(path) : ingest_td_csv(path);
  sort_records(records);
  return records;
}

std::shared_ptr<const ast::Tree> AstCache::get_or_parse(const ChangeRecord& record) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(record.change_id);
    if (it != cache_.end()) return it->second;
  }
  std::shared_ptr<const ast::Tree> tree;
  try {
    if (record.ast_sexpr) {
      tree = std::make_shared<const ast::Tree>(ast::parse_sexpr(*record.ast_sexpr));
    } else {
      std::vector<std::string> methods = {record.source_text};
      tree = std::make_shared<const ast::Tree>(
          ast::parse_java_subset(ast::wrap_in_dummy_class(methods)));
    }
  } catch (const std::exception&) {
    tree = nullptr;  // negative-cache unparseable sources
  }
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = cache_.emplace(record.change_id, tree);
  return it->second;
}

IndexSnapshot::IndexSnapshot(std::shared_ptr<const std::vector<ChangeRecord>> records,
                             std::shared_ptr<const retrieval::InvertedIndex> base,
                             std::shared_ptr<const retrieval::InvertedIndex> extra,
                             std::shared_ptr<const AstCache> ast_cache)
    : records_(std::move(records)),
      base_(std::move(base)),
      extra_(std::move(extra)),
      ast_cache_(std::move(ast_cache)) {
  if (records_) {
    by_id_.reserve(records_->size());
    for (std::size_t i = 0; i < records_->size(); ++i) {
      by_id_.emplace((*records_)[i].change_id, i);
    }
  }
}

std::size_t IndexSnapshot::record_count() const {
  std::size_t n = 0;
  if (base_) n += base_->doc_count();
  if (extra_) n += extra_->doc_count();
  return n;
}

retrieval::CandidateSet IndexSnapshot::more_like_this(std::string_view query_text,
                                                      std::size_t limit) const {
  return retrieval::more_like_this_merged(base_.get(), extra_.get(), query_text, limit);
}

const ChangeRecord* IndexSnapshot::find(const std::string& change_id) const {
  bool member = (base_ && base_->contains(change_id)) || (extra_ && extra_->contains(change_id));
  if (!member) return nullptr;
  auto it = by_id_.find(change_id);
  return it == by_id_.end() ? nullptr : &(*records_)[it->second];
}

std::shared_ptr<const ast::Tree> IndexSnapshot::ast_for(const std::string& change_id) const {
  const ChangeRecord* record = find(change_id);
  if (!record || !ast_cache_) return nullptr;
  return ast_cache_->get_or_parse(*record);
}

std::vector<std::string> IndexSnapshot::member_ids() const {
  std::vector<std::string> ids;
  ids.reserve(record_count());
  auto collect = [&](const retrieval::InvertedIndex* index) {
    if (!index) return;
    for (std::uint32_t i = 0; i < index->doc_count(); ++i) ids.push_back(index->doc_id(i));
  };
  collect(base_.get());
  collect(extra_.get());
  std::sort(ids.begin(), ids.end());
  return ids;
}

SnapshotSeries SnapshotSeries::build(std::vector<ChangeRecord> records) {
  if (records.empty()) {
    throw CorpusError(CorpusErrorKind::EmptyCorpus, "cannot build snapshots of an empty corpus");
  }
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].timestamp < records[i - 1].timestamp) {
      throw CorpusError(CorpusErrorKind::UnsortedInput,
                        "records are not sorted by timestamp (position " + std::to_string(i) + ")");
    }
  }

  SnapshotSeries series;
  series.records_ = std::make_shared<const std::vector<ChangeRecord>>(std::move(records));
  series.ast_cache_ = std::make_shared<const AstCache>();
  const auto& sorted = *series.records_;

  std::int64_t start = month_start(sorted.front().timestamp);
  std::int64_t last = sorted.back().timestamp;
  std::size_t cursor = 0;
  int index = 1;
  while (start <= last) {
    std::int64_t end = next_month_start(start);
    while (cursor < sorted.size() && sorted[cursor].timestamp < end) ++cursor;
    series.periods_.push_back({index, start, end});
    series.cumulative_counts_.push_back(cursor);
    series.monthly_.push_back(build_index(sorted, 0, cursor));
    start = end;
    ++index;
  }
  return series;
}

IndexSnapshot SnapshotSeries::snapshot_at(int index) const {
  if (index < 1 || static_cast<std::size_t>(index) > periods_.size()) return {};
  return IndexSnapshot(records_, monthly_[static_cast<std::size_t>(index - 1)], nullptr,
                       ast_cache_);
}

std::size_t SnapshotSeries::records_in_period(int index) const {
  if (index < 1 || static_cast<std::size_t>(index) > periods_.size()) return 0;
  std::size_t i = static_cast<std::size_t>(index - 1);
  return cumulative_counts_[i] - (i == 0 ? 0 : cumulative_counts_[i - 1]);
}

IndexSnapshot SnapshotSeries::snapshot_for(std::int64_t query_time) const {
  std::int64_t query_month = month_start(query_time);

  // last full period ending at or before the query's month
  std::shared_ptr<const retrieval::InvertedIndex> base;
  std::size_t base_count = 0;
  for (std::size_t i = 0; i < periods_.size() && periods_[i].end <= query_month; ++i) {
    base = monthly_[i];
    base_count = cumulative_counts_[i];
  }

  // strictly earlier records from the query's own month
  const auto& sorted = *records_;
  std::size_t begin = base_count;
  std::size_t end = begin;
  while (end < sorted.size() && sorted[end].timestamp < query_time &&
         month_start(sorted[end].timestamp) == query_month) {
    ++end;
  }
  std::shared_ptr<retrieval::InvertedIndex> extra;
  if (end > begin) {
    auto built = std::make_shared<retrieval::InvertedIndex>();
    for (std::size_t r = begin; r < end; ++r) {
      built->add(sorted[r].change_id, sorted[r].source_text);
    }
    built->finalize();
    extra = std::move(built);
  }

  if (!base && !extra) return {};
  return IndexSnapshot(records_, base, extra, ast_cache_);
}

// ---------------------------------------------------------------------------
// clone benchmark
// ---------------------------------------------------------------------------

std::optional<CloneType> clone_type_from_name(std::string_view name) {
  if (name == "T1" || name == "t1" || name == "Type-1") return CloneType::T1;
  if (name == "T2" || name == "t2" || name == "Type-2") return CloneType::T2;
  if (name == "VST3" || name == "vst3") return CloneType::VST3;
  if (name == "ST3" || name == "st3") return CloneType::ST3;
  if (name == "MT3" || name == "mt3") return CloneType::MT3;
  if (name == "WT3T4" || name == "wt3t4" || name == "WT3/T4") return CloneType::WT3T4;
  return std::nullopt;
}

std::string_view clone_type_name(CloneType type) {
  switch (type) {
    case CloneType::T1: return "T1";
    case CloneType::T2: return "T2";
    case CloneType::VST3: return "VST3";
    case CloneType::ST3: return "ST3";
    case CloneType::MT3: return "MT3";
    case CloneType::WT3T4: return "WT3T4";
  }
  return "T1";
}

void CloneGroundTruth::add(const std::string& a, const std::string& b, ClonePairInfo info) {
  auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
  pairs_[std::move(key)] = info;
}

const ClonePairInfo* CloneGroundTruth::find(const std::string& a, const std::string& b) const {
  auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
  auto it = pairs_.find(key);
  return it == pairs_.end() ? nullptr : &it->second;
}

namespace {

int count_lines(const std::string& text) {
  if (text.empty()) return 0;
  int lines = 0;
  bool any = false;
  for (char c : text) {
    any = true;
    if (c == '\n') {
      ++lines;
      any = false;
    }
  }
  return lines + (any ? 1 : 0);
}

std::string project_of(const std::string& method_id) {
  auto pos = method_id.find("__");
  return pos == std::string::npos ? std::string("default") : method_id.substr(0, pos);
}

}  // namespace

CloneBench ingest_clonebench(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw CorpusError(CorpusErrorKind::IoError, "not a directory: " + dir.string());
  }

  CloneBench bench;
  std::vector<fs::path> functionality_dirs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory() && entry.path().filename().string().rfind("functionality_", 0) == 0) {
      functionality_dirs.push_back(entry.path());
    }
  }
  std::sort(functionality_dirs.begin(), functionality_dirs.end());

  for (const auto& fdir : functionality_dirs) {
    std::string name = fdir.filename().string();
    int functionality_id = std::atoi(name.c_str() + std::string("functionality_").size());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(fdir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".java") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      std::ifstream in = open_or_throw(file);
      std::ostringstream buffer;
      buffer << in.rdbuf();
      CloneBenchEntry entry;
      entry.functionality_id = functionality_id;
      entry.method_id = file.stem().string();
      entry.project = project_of(entry.method_id);
      entry.source_text = buffer.str();
      entry.line_count = count_lines(entry.source_text);
      bench.entries.push_back(std::move(entry));
    }
  }

  std::map<std::string, bool> known_ids;
  for (const auto& entry : bench.entries) known_ids[entry.method_id] = true;

  auto pairs_path = dir / "pairs.csv";
  auto in = open_or_throw(pairs_path);
  CsvReader reader(in);
  std::vector<std::string> fields;
  std::size_t line = 0;
  bool first = true;
  while (reader.next(fields, line)) {
    if (first && !fields.empty() && (fields[0] == "id1" || fields[0] == "method_id1")) {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() < 3) malformed(line, "pairs.csv needs id1,id2,is_true[,clone_type]");
    const std::string& a = fields[0];
    const std::string& b = fields[1];
    for (const auto* id : {&a, &b}) {
      if (!known_ids.count(*id)) {
        throw CorpusError(CorpusErrorKind::DanglingReference,
                          "pairs.csv references unknown method id '" + *id + "' at line " +
                              std::to_string(line),
                          line);
      }
    }
    ClonePairInfo info;
    info.is_true = fields[2] == "true" || fields[2] == "1" || fields[2] == "TRUE";
    if (fields.size() > 3 && !fields[3].empty()) {
      auto type = clone_type_from_name(fields[3]);
      if (!type) malformed(line, "unknown clone type '" + fields[3] + "'");
      info.type = type;
    }
    bench.ground_truth.add(a, b, info);
  }
  return bench;
}

}  // namespace kernelguard::corpus
