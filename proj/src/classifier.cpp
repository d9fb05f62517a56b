// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

#include "kernelguard/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "kernelguard/java_parser.hpp"
#include "kernelguard/parallel.hpp"

namespace kernelguard::classifier {

namespace {

using nlohmann::json;

void validate_config(const ClassifierConfig& cfg) {
  if (cfg.k < 1) throw ClassifierError(ClassifierErrorKind::InvalidConfig, "k must be >= 1");
  if (static_cast<std::size_t>(cfg.k) > cfg.candidate_limit) {
    throw ClassifierError(ClassifierErrorKind::InvalidConfig,
                          "k must not exceed the candidate limit");
  }
}

std::shared_ptr<const ast::Tree> query_tree(const corpus::ChangeRecord& query) {
  try {
    if (query.ast_sexpr) {
      return std::make_shared<const ast::Tree>(ast::parse_sexpr(*query.ast_sexpr));
    }
    std::vector<std::string> methods = {query.source_text};
    return std::make_shared<const ast::Tree>(
        ast::parse_java_subset(ast::wrap_in_dummy_class(methods)));
  } catch (const std::exception& e) {
    throw ClassifierError(ClassifierErrorKind::MissingAst,
                          "query change " + query.change_id + " has no usable AST: " + e.what());
  }
}

constexpr std::size_t kReportColumnWidth = 56;

void append_side_by_side(std::ostringstream& out, const std::string& left,
                         const std::string& right) {
  auto split = [](const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
    return lines;
  };
  auto lhs = split(left);
  auto rhs = split(right);
  std::size_t rows = std::max(lhs.size(), rhs.size());
  for (std::size_t i = 0; i < rows; ++i) {
    std::string l = i < lhs.size() ? lhs[i] : "";
    std::string r = i < rhs.size() ? rhs[i] : "";
    if (l.size() > kReportColumnWidth) l = l.substr(0, kReportColumnWidth - 3) + "...";
    if (r.size() > kReportColumnWidth) r = r.substr(0, kReportColumnWidth - 3) + "...";
    l.resize(kReportColumnWidth, ' ');
    out << "  " << l << " | " << r << "\n";
  }
}

}  // namespace

std::string_view prediction_name(Prediction p) {
  return p == Prediction::BugInducing ? "bug_inducing" : "clean";
}

Prediction prediction_at_k(const ClassificationResult& result, int k) {
  std::size_t considered = std::min<std::size_t>(result.matches.size(), static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < considered; ++i) {
    if (result.matches[i].label == corpus::ChangeLabel::BugInducing) {
      return Prediction::BugInducing;
    }
  }
  return Prediction::Clean;
}

ClassificationResult classify(const corpus::ChangeRecord& query,
                              const corpus::IndexSnapshot& snapshot,
                              const ClassifierConfig& cfg) {
  validate_config(cfg);
  auto tree = query_tree(query);

  ClassificationResult result;
  result.query_change_id = query.change_id;
  result.query_method_name = query.method_name;
  result.query_commit_hash = query.commit_hash;
  result.query_source = query.source_text;
  result.decision_k = cfg.k;

  auto candidates = snapshot.more_like_this(query.source_text, cfg.candidate_limit);
  if (candidates.entries.empty()) return result;  // Clean with no matches

  struct Scored {
    const corpus::ChangeRecord* record;
    std::shared_ptr<const ast::Tree> tree;
    double retrieval_score;
    double kernel_score;
  };
  std::vector<Scored> scored;
  scored.reserve(candidates.entries.size());
  for (const auto& entry : candidates.entries) {
    const corpus::ChangeRecord* record = snapshot.find(entry.doc_id);
    if (!record) continue;
    auto candidate_tree = snapshot.ast_for(entry.doc_id);
    if (!candidate_tree) continue;  // unparseable candidates cannot be ranked
    scored.push_back({record, std::move(candidate_tree), entry.score, 0.0});
  }

  parallel_for(scored.size(), cfg.threads, [&](std::size_t i) {
    scored[i].kernel_score = kernels::kernel(*tree, *scored[i].tree, cfg.kernel_cfg).value;
  });

  std::vector<std::size_t> order(scored.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scored[a].kernel_score != scored[b].kernel_score) {
      return scored[a].kernel_score > scored[b].kernel_score;
    }
    if (scored[a].retrieval_score != scored[b].retrieval_score) {
      return scored[a].retrieval_score > scored[b].retrieval_score;
    }
    if (scored[a].record->timestamp != scored[b].record->timestamp) {
      return scored[a].record->timestamp > scored[b].record->timestamp;
    }
    return scored[a].record->change_id < scored[b].record->change_id;
  });

  result.matches.reserve(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const Scored& s = scored[order[pos]];
    RankedMatch match;
    match.change_id = s.record->change_id;
    match.rank = static_cast<int>(pos + 1);
    match.kernel_score = s.kernel_score;
    match.retrieval_score = s.retrieval_score;
    match.label = s.record->label;
    match.timestamp = s.record->timestamp;
    if (pos < static_cast<std::size_t>(cfg.k)) {
      match.detail = MatchDetail{s.record->commit_hash, s.record->method_name,
                                 s.record->source_text};
    }
    result.matches.push_back(std::move(match));
  }

  result.predicted_label = prediction_at_k(result, cfg.k);

  if (result.predicted_label == Prediction::BugInducing) {
    std::size_t considered =
        std::min<std::size_t>(result.matches.size(), static_cast<std::size_t>(cfg.k));
    for (std::size_t i = 0; i < considered; ++i) {
      if (result.matches[i].label != corpus::ChangeLabel::BugInducing) continue;
      const corpus::ChangeRecord* record = snapshot.find(result.matches[i].change_id);
      if (record && record->paired_fix_id) {
        if (const corpus::ChangeRecord* fix = snapshot.find(*record->paired_fix_id)) {
          result.suggested_fix = SuggestedFix{fix->change_id, fix->commit_hash, fix->source_text};
        }
      }
      break;  // only the best bug-inducing match proposes a fix
    }
  }
  return result;
}

std::vector<ClassificationResult> classify_commit(std::span<const corpus::ChangeRecord> methods,
                                                  const corpus::SnapshotSeries& series,
                                                  const ClassifierConfig& cfg) {
  validate_config(cfg);
  if (methods.empty()) return {};
  for (const auto& m : methods) {
    if (m.commit_hash != methods.front().commit_hash) {
      throw ClassifierError(ClassifierErrorKind::MixedCommit,
                            "methods span multiple commits: " + methods.front().commit_hash +
                                " vs " + m.commit_hash);
    }
    if (m.timestamp != methods.front().timestamp) {
      throw ClassifierError(ClassifierErrorKind::MixedCommit,
                            "methods of commit " + m.commit_hash + " have differing timestamps");
    }
  }
  auto snapshot = series.snapshot_for(methods.front().timestamp);
  std::vector<ClassificationResult> results;
  results.reserve(methods.size());
  for (const auto& method : methods) {
    results.push_back(classify(method, snapshot, cfg));
  }
  return results;
}

bool any_risky(std::span<const ClassificationResult> results) {
  return std::any_of(results.begin(), results.end(), [](const ClassificationResult& r) {
    return r.predicted_label == Prediction::BugInducing;
  });
}

std::string render_report(std::span<const ClassificationResult> results) {
  std::ostringstream out;
  out << "KernelGuard commit report\n";
  out << "=========================\n";
  if (!results.empty() && !results.front().query_commit_hash.empty()) {
    out << "commit: " << results.front().query_commit_hash << "\n";
  }
  std::size_t flagged = 0;
  for (const auto& r : results) {
    if (r.predicted_label == Prediction::BugInducing) ++flagged;
  }
  out << "methods analyzed: " << results.size() << ", flagged risky: " << flagged << "\n";

  if (flagged == 0) {
    out << "\nno risky changes detected\n";
    return out.str();
  }

  for (const auto& r : results) {
    if (r.predicted_label != Prediction::BugInducing) continue;
    const RankedMatch* top = nullptr;
    for (const auto& m : r.matches) {
      if (m.rank > r.decision_k) break;
      if (m.label == corpus::ChangeLabel::BugInducing) {
        top = &m;
        break;
      }
    }
    out << "\n[RISKY] method "
        << (r.query_method_name.empty() ? r.query_change_id : r.query_method_name) << " (change "
        << r.query_change_id << ")\n";
    if (top) {
      out << "  matched past bug-inducing change " << top->change_id;
      if (top->detail && !top->detail->commit_hash.empty()) {
        out << " from commit " << top->detail->commit_hash;
      }
      char score[32];
      std::snprintf(score, sizeof(score), "%.4f", top->kernel_score);
      out << "\n  kernel score " << score << ", rank " << top->rank << "\n";
      out << "  --- incoming change" << std::string(kReportColumnWidth - 18, ' ')
          << "| --- matched past change\n";
      append_side_by_side(out, r.query_source, top->detail ? top->detail->source_text : "");
    }
    if (r.suggested_fix) {
      out << "  recorded fix: change " << r.suggested_fix->change_id;
      if (!r.suggested_fix->commit_hash.empty()) {
        out << " (commit " << r.suggested_fix->commit_hash << ")";
      }
      out << "\n";
      std::istringstream fix(r.suggested_fix->source_text);
      std::string line;
      while (std::getline(fix, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out << "    " << line << "\n";
      }
    } else {
      out << "  no recorded fix for the matched change\n";
    }
  }
  return out.str();
}

std::string render_report_jsonl(std::span<const ClassificationResult> results) {
  std::ostringstream out;
  for (const auto& r : results) {
    json j;
    j["query_change_id"] = r.query_change_id;
    j["query_method_name"] = r.query_method_name;
    j["query_commit_hash"] = r.query_commit_hash;
    j["query_source"] = r.query_source;
    j["predicted_label"] = std::string(prediction_name(r.predicted_label));
    j["k"] = r.decision_k;
    json matches = json::array();
    for (const auto& m : r.matches) {
      json jm;
      jm["change_id"] = m.change_id;
      jm["rank"] = m.rank;
      jm["kernel_score"] = m.kernel_score;
      jm["retrieval_score"] = m.retrieval_score;
      jm["label"] = std::string(corpus::change_label_name(m.label));
      jm["timestamp"] = corpus::format_rfc3339(m.timestamp);
      if (m.detail) {
        jm["commit_hash"] = m.detail->commit_hash;
        jm["method_name"] = m.detail->method_name;
        jm["source_text"] = m.detail->source_text;
      }
      matches.push_back(std::move(jm));
    }
    j["matches"] = std::move(matches);
    if (r.suggested_fix) {
      j["suggested_fix"] = {{"change_id", r.suggested_fix->change_id},
                            {"commit_hash", r.suggested_fix->commit_hash},
                            {"source_text", r.suggested_fix->source_text}};
    }
    out << j.dump() << "\n";
  }
  return out.str();
}

std::vector<ClassificationResult> parse_report_jsonl(std::istream& in) {
  std::vector<ClassificationResult> results;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line);
    ClassificationResult r;
    r.query_change_id = j.value("query_change_id", "");
    r.query_method_name = j.value("query_method_name", "");
    r.query_commit_hash = j.value("query_commit_hash", "");
    r.query_source = j.value("query_source", "");
    r.predicted_label =
        j.value("predicted_label", "clean") == "bug_inducing" ? Prediction::BugInducing
                                                              : Prediction::Clean;
    r.decision_k = j.value("k", 1);
    for (const auto& jm : j.value("matches", json::array())) {
      RankedMatch m;
      m.change_id = jm.value("change_id", "");
      m.rank = jm.value("rank", 0);
      m.kernel_score = jm.value("kernel_score", 0.0);
      m.retrieval_score = jm.value("retrieval_score", 0.0);
      m.label = jm.value("label", "bug_fixing") == "bug_inducing"
                    ? corpus::ChangeLabel::BugInducing
                    : corpus::ChangeLabel::BugFixing;
      if (jm.contains("timestamp")) m.timestamp = corpus::parse_rfc3339(jm.at("timestamp").get<std::string>());
      if (jm.contains("source_text")) {
        m.detail = MatchDetail{jm.value("commit_hash", ""), jm.value("method_name", ""),
                               jm.value("source_text", "")};
      }
      r.matches.push_back(std::move(m));
    }
    if (j.contains("suggested_fix")) {
      const auto& jf = j.at("suggested_fix");
      r.suggested_fix = SuggestedFix{jf.value("change_id", ""), jf.value("commit_hash", ""),
                                     jf.value("source_text", "")};
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace kernelguard::classifier
