// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kernelguard/classifier.hpp"
#include "kernelguard/corpus.hpp"
#include "kernelguard/evaluation.hpp"
#include "kernelguard/kernels.hpp"

namespace {

using namespace kernelguard;
using nlohmann::json;

constexpr std::string_view kSeriesMagic = "KGSERIES1";

constexpr int kExitClean = 0;
constexpr int kExitRisky = 1;
constexpr int kExitError = 2;

struct KernelFlags {
  std::string kernel = "ptk";
  double lambda = 0.4;
  double mu = 0.4;
  int k = 1;
  std::size_t candidates = 100;
  int threads = 0;
};

void add_kernel_flags(CLI::App* cmd, KernelFlags& flags) {
  cmd->add_option("--kernel", flags.kernel, "Tree kernel: stk, sstk, or ptk")
      ->check(CLI::IsMember({"stk", "sstk", "ptk"}))
      ->capture_default_str();
  cmd->add_option("--lambda", flags.lambda, "Vertical decay in (0,1]")->capture_default_str();
  cmd->add_option("--mu", flags.mu, "Horizontal decay in (0,1], partial tree kernel only")
      ->capture_default_str();
  cmd->add_option("--k", flags.k, "K-NN neighborhood size")->capture_default_str();
  cmd->add_option("--candidates", flags.candidates, "Candidate retrieval limit")
      ->capture_default_str();
  cmd->add_option("--threads", flags.threads, "Worker threads (0 = auto)")
      ->envname("KERNELGUARD_THREADS")
      ->capture_default_str();
}

kernels::KernelConfig kernel_config(const KernelFlags& flags) {
  kernels::KernelConfig cfg;
  cfg.kind = *kernels::kernel_kind_from_name(flags.kernel);
  cfg.lambda = flags.lambda;
  cfg.mu = flags.mu;
  cfg.normalize = true;
  return cfg;
}

classifier::ClassifierConfig classifier_config(const KernelFlags& flags) {
  classifier::ClassifierConfig cfg;
  cfg.k = flags.k;
  cfg.kernel_cfg = kernel_config(flags);
  cfg.candidate_limit = flags.candidates;
  cfg.threads = flags.threads;
  return cfg;
}

corpus::CorpusFormat parse_format(const std::string& name) {
  return name == "tdcsv" ? corpus::CorpusFormat::TechnicalDebtCSV : corpus::CorpusFormat::JSONL;
}

void write_series(const corpus::SnapshotSeries& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write series file: " + path);
  json header;
  header["magic"] = std::string(kSeriesMagic);
  header["version"] = 1;
  header["record_count"] = series.records().size();
  out << header.dump() << "\n";
  for (const auto& record : series.records()) {
    out << corpus::change_to_jsonl(record) << "\n";
  }
}

corpus::SnapshotSeries load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open series file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("series file is empty: " + path);
  json header = json::parse(line, nullptr, false);
  if (header.is_discarded() || header.value("magic", "") != kSeriesMagic) {
    throw std::runtime_error("not a snapshot series file (bad magic): " + path);
  }
  std::vector<corpus::ChangeRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto record = corpus::parse_change_jsonl(line, line_no, /*require_label=*/true);
    if (record) records.push_back(std::move(*record));
  }
  return corpus::SnapshotSeries::build(std::move(records));
}

std::vector<corpus::ChangeRecord> load_payload(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open payload file: " + path);
  std::vector<corpus::ChangeRecord> methods;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto record = corpus::parse_change_jsonl(line, line_no, /*require_label=*/false);
    if (record) methods.push_back(std::move(*record));
  }
  return methods;
}

void emit(const std::string& content, const std::string& out_path) {
  std::cout << content;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write output file: " + out_path);
    out << content;
  }
}

json metrics_to_json(const evaluation::MetricsReport& m) {
  json j;
  for (const auto& [k, v] : m.precision_at_k) j["precision_at_" + std::to_string(k)] = v;
  for (const auto& [k, v] : m.topk_accuracy) j["topk_" + std::to_string(k)] = v;
  if (m.map > 0.0 || !m.precision_at_k.empty()) j["map"] = m.map;
  if (!m.topk_accuracy.empty()) {
    j["mrr"] = m.mrr;
    j["f_score"] = m.f_score;
    j["accuracy"] = m.accuracy;
  }
  j["queries"] = m.query_count;
  return j;
}

int cmd_index(const std::string& corpus_path, const std::string& format,
              const std::string& project, const std::string& out_path) {
  auto records = corpus::ingest_changes(corpus_path, parse_format(format));
  if (!project.empty()) {
    std::erase_if(records, [&](const corpus::ChangeRecord& r) { return r.project != project; });
  }
  auto series = corpus::build_snapshots(std::move(records));
  if (!out_path.empty()) write_series(series, out_path);
  for (const auto& period : series.periods()) {
    std::cout << "snapshot " << period.index << " (" << corpus::format_rfc3339(period.start)
              << " .. " << corpus::format_rfc3339(period.end) << "): "
              << series.records_in_period(period.index) << " records\n";
  }
  std::cout << series.snapshot_count() << " snapshots\n";
  return kExitClean;
}

int cmd_classify(const std::string& index_path, const std::string& payload_path,
                 const KernelFlags& flags, bool as_json, const std::string& out_path) {
  auto series = load_series(index_path);
  auto methods = load_payload(payload_path);
  auto results = classifier::classify_commit(methods, series, classifier_config(flags));
  emit(as_json ? classifier::render_report_jsonl(results) : classifier::render_report(results),
       out_path);
  return classifier::any_risky(results) ? kExitRisky : kExitClean;
}

int cmd_evaluate_defects(const std::string& corpus_path, const std::string& format,
                         const std::string& project, const std::string& eval_from,
                         const KernelFlags& flags, const std::string& out_path) {
  auto records = corpus::ingest_changes(corpus_path, parse_format(format));
  if (!project.empty()) {
    std::erase_if(records, [&](const corpus::ChangeRecord& r) { return r.project != project; });
  }
  evaluation::DefectEvalOptions options;
  options.threads = flags.threads;
  if (!eval_from.empty()) options.eval_from = corpus::parse_rfc3339(eval_from);
  auto reports = evaluation::run_defect_eval(records, classifier_config(flags), options);

  std::ostringstream table;
  table << "project                       K=1    K=5    MRR    Accuracy F-score  queries\n";
  json out_json;
  char buf[160];
  for (const auto& [name, report] : reports) {
    const auto& m = report.metrics;
    std::snprintf(buf, sizeof(buf), "%-28s %-6.2f %-6.2f %-6.2f %-8.2f %-8.2f %zu\n", name.c_str(),
                  m.topk_accuracy.at(1), m.topk_accuracy.at(5), m.mrr, m.accuracy, m.f_score,
                  m.query_count);
    table << buf;
    json j = metrics_to_json(m);
    j["time_violations"] = report.time_violations;
    out_json[name] = std::move(j);
    if (report.time_violations > 0) {
      std::cerr << "warning: " << report.time_violations << " time-travel violations in project "
                << name << "\n";
    }
  }
  std::cout << table.str();
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write output file: " + out_path);
    out << out_json.dump(2) << "\n";
  }
  return kExitClean;
}

int cmd_evaluate_clones(const std::string& bench_path, const std::string& scope, int min_lines,
                        const std::vector<std::string>& types, int precision_k,
                        const KernelFlags& flags, const std::string& out_path) {
  auto bench = corpus::ingest_clonebench(bench_path);
  evaluation::CloneEvalOptions options;
  options.precision_k = precision_k;
  options.min_lines = min_lines;
  options.threads = flags.threads;
  if (scope == "intra") {
    options.scope = evaluation::CloneEvalScope::IntraProject;
  } else if (scope == "types") {
    options.scope = evaluation::CloneEvalScope::ByCloneType;
  } else {
    options.scope = evaluation::CloneEvalScope::InterProjectByFunctionality;
  }
  if (!types.empty()) {
    options.types.clear();
    for (const auto& name : types) {
      auto type = corpus::clone_type_from_name(name);
      if (!type) throw std::runtime_error("unknown clone type: " + name);
      options.types.push_back(*type);
    }
  }
  auto result = evaluation::run_clone_eval(bench, kernel_config(flags), options);

  std::ostringstream table;
  table << "group                P@" << precision_k << "    MAP    queries\n";
  json out_json;
  char buf[120];
  for (const auto& [group, m] : result.groups) {
    std::snprintf(buf, sizeof(buf), "%-20s %-6.2f %-6.2f %zu\n", group.c_str(),
                  m.precision_at_k.count(precision_k) ? m.precision_at_k.at(precision_k) : 0.0,
                  m.map, m.query_count);
    table << buf;
    out_json[group] = metrics_to_json(m);
  }
  std::cout << table.str();
  if (result.unparseable_entries > 0) {
    std::cerr << "note: " << result.unparseable_entries
              << " entries were outside the supported parser subset and were skipped\n";
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write output file: " + out_path);
    out << out_json.dump(2) << "\n";
  }
  return kExitClean;
}

int cmd_report(const std::string& results_path) {
  std::ifstream in(results_path);
  if (!in) throw std::runtime_error("cannot open results file: " + results_path);
  auto results = classifier::parse_report_jsonl(in);
  std::cout << classifier::render_report(results);
  return classifier::any_risky(results) ? kExitRisky : kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KernelGuard: commit-time defect detection with tree kernels"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Optional key=value config file; flags win over file values");

  std::string corpus_path, format = "jsonl", project, out_path;
  auto* index = app.add_subcommand("index", "Build month-wise snapshot series from a corpus");
  index->add_option("--corpus", corpus_path, "Change corpus file")->required();
  index->add_option("--format", format, "Corpus format: jsonl or tdcsv")
      ->check(CLI::IsMember({"jsonl", "tdcsv"}));
  index->add_option("--project", project, "Restrict to one project");
  index->add_option("--out", out_path, "Series output file");

  KernelFlags classify_flags;
  std::string index_path, payload_path, classify_out;
  bool classify_json = false;
  auto* classify = app.add_subcommand("classify", "Classify one commit's method-level changes");
  classify->add_option("--index", index_path, "Snapshot series file")->required();
  classify->add_option("--payload", payload_path, "Commit payload (JSONL of methods)")->required();
  classify->add_flag("--json", classify_json, "Emit machine-readable JSON lines");
  classify->add_option("--out", classify_out, "Also write the report to this file");
  add_kernel_flags(classify, classify_flags);

  KernelFlags defects_flags;
  std::string defects_corpus, defects_format = "jsonl", defects_project, defects_from, defects_out;
  auto* defects = app.add_subcommand("evaluate-defects", "Time-aware defect detection evaluation");
  defects->add_option("--corpus", defects_corpus, "Change corpus file")->required();
  defects->add_option("--format", defects_format, "Corpus format: jsonl or tdcsv")
      ->check(CLI::IsMember({"jsonl", "tdcsv"}));
  defects->add_option("--project", defects_project, "Restrict to one project");
  defects->add_option("--eval-from", defects_from,
                      "Replay only records at/after this RFC 3339 time as queries");
  defects->add_option("--out", defects_out, "Metrics JSON output file");
  add_kernel_flags(defects, defects_flags);

  KernelFlags clones_flags;
  std::string bench_path, clone_scope = "inter", clones_out;
  std::vector<std::string> clone_types;
  int min_lines = 6, precision_k = 10;
  auto* clones = app.add_subcommand("evaluate-clones", "Clone detection evaluation");
  clones->add_option("--bench", bench_path, "Clone benchmark directory")->required();
  clones->add_option("--scope", clone_scope, "inter, intra, or types")
      ->check(CLI::IsMember({"inter", "intra", "types"}));
  clones->add_option("--min-lines", min_lines, "Minimum clone size for type-wise runs")
      ->capture_default_str();
  clones->add_option("--types", clone_types, "Clone types for type-wise runs")->delimiter(',');
  clones->add_option("--pk", precision_k, "Precision cutoff")->capture_default_str();
  clones->add_option("--out", clones_out, "Metrics JSON output file");
  add_kernel_flags(clones, clones_flags);

  std::string results_path;
  auto* report = app.add_subcommand("report", "Render a saved JSON-lines result as text");
  report->add_option("--results", results_path, "JSON-lines classification results")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitError;
  }

  try {
    if (index->parsed()) return cmd_index(corpus_path, format, project, out_path);
    if (classify->parsed()) {
      return cmd_classify(index_path, payload_path, classify_flags, classify_json, classify_out);
    }
    if (defects->parsed()) {
      return cmd_evaluate_defects(defects_corpus, defects_format, defects_project, defects_from,
                                  defects_flags, defects_out);
    }
    if (clones->parsed()) {
      return cmd_evaluate_clones(bench_path, clone_scope, min_lines, clone_types, precision_k,
                                 clones_flags, clones_out);
    }
    if (report->parsed()) return cmd_report(results_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
