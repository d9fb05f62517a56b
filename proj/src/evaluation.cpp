// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

#include "kernelguard/evaluation.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>

#include "kernelguard/java_parser.hpp"
#include "kernelguard/parallel.hpp"

namespace kernelguard::evaluation {

namespace {

void require_queries(std::size_t count) {
  if (count == 0) throw EvalError(EvalErrorKind::EmptyQuerySet, "no queries to evaluate");
}

struct ParsedEntry {
  const corpus::CloneBenchEntry* entry;
  std::shared_ptr<const ast::Tree> tree;
};

// Pools of parsed entries keyed by group; entries that do not parse are
// dropped and counted.
std::map<std::string, std::vector<ParsedEntry>> build_pools(
    const corpus::CloneBench& bench, const CloneEvalOptions& options,
    std::size_t& unparseable) {
  std::map<std::string, std::vector<ParsedEntry>> pools;
  for (const auto& entry : bench.entries) {
    if (options.scope == CloneEvalScope::ByCloneType && entry.line_count < options.min_lines) {
      continue;
    }
    std::shared_ptr<const ast::Tree> tree;
    try {
      std::vector<std::string> methods = {entry.source_text};
      tree = std::make_shared<const ast::Tree>(
          ast::parse_java_subset(ast::wrap_in_dummy_class(methods)));
    } catch (const std::exception&) {
      ++unparseable;
      continue;
    }
    std::string key = options.scope == CloneEvalScope::IntraProject
                          ? entry.project
                          : std::to_string(entry.functionality_id);
    pools[key].push_back({&entry, std::move(tree)});
  }
  return pools;
}

struct PoolRanking {
  std::string pool_key;
  const corpus::CloneBenchEntry* query;
  std::vector<const corpus::CloneBenchEntry*> ranked;  // best first
};

// Ranks every entry of every pool against the rest of its pool.
std::vector<PoolRanking> rank_pools(const std::map<std::string, std::vector<ParsedEntry>>& pools,
                                    const kernels::KernelConfig& kernel_cfg, int threads) {
  struct Task {
    const std::string* pool_key;
    const std::vector<ParsedEntry>* pool;
    std::size_t query_index;
  };
  std::vector<Task> tasks;
  for (const auto& [key, pool] : pools) {
    if (pool.size() < 2) continue;
    for (std::size_t i = 0; i < pool.size(); ++i) tasks.push_back({&key, &pool, i});
  }

  std::vector<PoolRanking> rankings(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t t) {
    const Task& task = tasks[t];
    const auto& pool = *task.pool;
    std::vector<kernels::CandidateTree> candidates;
    candidates.reserve(pool.size() - 1);
    std::unordered_map<std::string, const corpus::CloneBenchEntry*> by_id;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (i == task.query_index) continue;
      candidates.push_back({pool[i].entry->method_id, pool[i].tree.get(), std::nullopt});
      by_id.emplace(pool[i].entry->method_id, pool[i].entry);
    }
    auto ranked = kernels::rank_candidates(*pool[task.query_index].tree, candidates, kernel_cfg, 1);
    PoolRanking result;
    result.pool_key = *task.pool_key;
    result.query = pool[task.query_index].entry;
    result.ranked.reserve(ranked.size());
    for (const auto& r : ranked) result.ranked.push_back(by_id.at(r.id));
    rankings[t] = std::move(result);
  });
  return rankings;
}

MetricsReport score_group(const std::vector<RankedList>& lists,
                          const std::map<std::string, int>& total_relevant, int precision_k) {
  MetricsReport report;
  report.query_count = lists.size();
  report.precision_at_k[precision_k] = precision_at_k(lists, precision_k);

  std::vector<RankedList> with_relevant;
  std::map<std::string, int> positive_counts;
  for (const auto& list : lists) {
    auto it = total_relevant.find(list.query_id);
    if (it != total_relevant.end() && it->second > 0) {
      with_relevant.push_back(list);
      positive_counts.emplace(list.query_id, it->second);
    }
  }
  report.map = with_relevant.empty() ? 0.0 : mean_average_precision(with_relevant, positive_counts);
  return report;
}

}  // namespace

double precision_at_k(std::span<const RankedList> lists, int k) {
  if (k < 1) throw EvalError(EvalErrorKind::EmptyQuerySet, "k must be >= 1");
  require_queries(lists.size());
  double sum = 0.0;
  for (const auto& list : lists) {
    std::size_t hits = 0;
    std::size_t depth = std::min<std::size_t>(list.entries.size(), static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < depth; ++i) {
      if (list.entries[i].second) ++hits;
    }
    sum += static_cast<double>(hits) / static_cast<double>(k);
  }
  return sum / static_cast<double>(lists.size());
}

double mean_average_precision(std::span<const RankedList> lists,
                              const std::map<std::string, int>& total_relevant) {
  require_queries(lists.size());
  double sum = 0.0;
  for (const auto& list : lists) {
    auto it = total_relevant.find(list.query_id);
    if (it == total_relevant.end() || it->second <= 0) {
      throw EvalError(EvalErrorKind::EmptyQuerySet,
                      "query " + list.query_id + " has no positive total_relevant count");
    }
    double ap = 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
      if (list.entries[i].second) {
        ++hits;
        ap += static_cast<double>(hits) / static_cast<double>(i + 1);
      }
    }
    sum += ap / static_cast<double>(it->second);  // unretrieved relevant items contribute 0
  }
  return sum / static_cast<double>(lists.size());
}

double mean_reciprocal_rank(std::span<const RankedList> lists) {
  require_queries(lists.size());
  double sum = 0.0;
  for (const auto& list : lists) {
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
      if (list.entries[i].second) {
        sum += 1.0 / static_cast<double>(i + 1);
        break;
      }
    }
  }
  return sum / static_cast<double>(lists.size());
}

double topk_accuracy(
    std::span<const std::pair<corpus::ChangeLabel, classifier::Prediction>> predictions, int k) {
  if (k < 1) throw EvalError(EvalErrorKind::EmptyQuerySet, "k must be >= 1");
  require_queries(predictions.size());
  std::size_t correct = 0;
  for (const auto& [truth, predicted] : predictions) {
    bool positive_truth = truth == corpus::ChangeLabel::BugInducing;
    bool positive_prediction = predicted == classifier::Prediction::BugInducing;
    if (positive_truth == positive_prediction) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(predictions.size());
}

std::pair<double, double> f_score_and_accuracy(const ConfusionCounts& counts) {
  if (counts.total() == 0) {
    throw EvalError(EvalErrorKind::EmptyQuerySet, "confusion counts are empty");
  }
  double precision = counts.tp + counts.fp > 0
                         ? static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fp)
                         : 0.0;
  double recall = counts.tp + counts.fn > 0
                      ? static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fn)
                      : 0.0;
  double f = precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
  double accuracy = static_cast<double>(counts.tp + counts.tn) / static_cast<double>(counts.total());
  return {f, accuracy};
}

CloneEvalResult run_clone_eval(const corpus::CloneBench& bench,
                               const kernels::KernelConfig& kernel_cfg,
                               const CloneEvalOptions& options) {
  CloneEvalResult result;
  auto pools = build_pools(bench, options, result.unparseable_entries);

  std::size_t in_scope = 0;
  for (const auto& [key, pool] : pools) in_scope += pool.size();
  if (in_scope < 2) {
    throw EvalError(EvalErrorKind::InsufficientEntries,
                    "fewer than 2 parseable entries in scope");
  }

  auto rankings = rank_pools(pools, kernel_cfg, options.threads);

  if (options.scope != CloneEvalScope::ByCloneType) {
    // group by pool key (functionality or project)
    std::map<std::string, std::vector<RankedList>> lists_by_group;
    std::map<std::string, std::map<std::string, int>> relevant_by_group;
    for (const auto& ranking : rankings) {
      RankedList list;
      list.query_id = ranking.query->method_id;
      int relevant_total = 0;
      for (const auto* candidate : ranking.ranked) {
        const auto* info = bench.ground_truth.find(ranking.query->method_id, candidate->method_id);
        bool relevant = info && info->is_true;
        if (relevant) ++relevant_total;
        list.entries.emplace_back(candidate->method_id, relevant);
      }
      relevant_by_group[ranking.pool_key][list.query_id] = relevant_total;
      lists_by_group[ranking.pool_key].push_back(std::move(list));
    }
    for (const auto& [group, lists] : lists_by_group) {
      result.groups[group] = score_group(lists, relevant_by_group[group], options.precision_k);
    }
    return result;
  }

  // ByCloneType: the same per-functionality rankings, scored per type with
  // relevance restricted to true pairs of that type.
  for (corpus::CloneType type : options.types) {
    std::vector<RankedList> lists;
    std::map<std::string, int> total_relevant;
    for (const auto& ranking : rankings) {
      RankedList list;
      list.query_id = ranking.query->method_id;
      int relevant_total = 0;
      for (const auto* candidate : ranking.ranked) {
        const auto* info = bench.ground_truth.find(ranking.query->method_id, candidate->method_id);
        bool relevant = info && info->is_true && info->type && *info->type == type;
        if (relevant) ++relevant_total;
        list.entries.emplace_back(candidate->method_id, relevant);
      }
      if (relevant_total > 0) {  // the type's query set
        total_relevant[list.query_id] = relevant_total;
        lists.push_back(std::move(list));
      }
    }
    MetricsReport report;
    if (!lists.empty()) {
      report = score_group(lists, total_relevant, options.precision_k);
    }
    result.groups[std::string(corpus::clone_type_name(type))] = std::move(report);
  }
  return result;
}

std::map<std::string, DefectReport> run_defect_eval(std::span<const corpus::ChangeRecord> records,
                                                    const classifier::ClassifierConfig& cfg,
                                                    const DefectEvalOptions& options) {
  std::map<std::string, std::vector<corpus::ChangeRecord>> by_project;
  for (const auto& record : records) by_project[record.project].push_back(record);
  require_queries(by_project.size());

  std::map<std::string, DefectReport> reports;
  for (auto& [project, project_records] : by_project) {
    auto series = corpus::SnapshotSeries::build(std::move(project_records));
    if (series.periods().size() < 2) {
      throw EvalError(EvalErrorKind::InsufficientHistory,
                      "project " + project + " spans fewer than 2 time periods");
    }

    const auto& sorted = series.records();
    std::vector<std::size_t> queries;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (!options.eval_from || sorted[i].timestamp >= *options.eval_from) queries.push_back(i);
    }
    require_queries(queries.size());

    classifier::ClassifierConfig per_query_cfg = cfg;
    per_query_cfg.threads = 1;  // parallelism lives at the query level

    std::vector<classifier::ClassificationResult> results(queries.size());
    parallel_for(queries.size(), options.threads, [&](std::size_t qi) {
      const auto& query = sorted[queries[qi]];
      auto snapshot = series.snapshot_for(query.timestamp);
      results[qi] = classifier::classify(query, snapshot, per_query_cfg);
    });

    DefectReport report;
    std::vector<std::pair<corpus::ChangeLabel, classifier::Prediction>> at_1, at_5;
    double rr_sum = 0.0;
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
      const auto& query = sorted[queries[qi]];
      const auto& result = results[qi];

      for (const auto& match : result.matches) {
        if (match.timestamp >= query.timestamp) ++report.time_violations;
      }

      at_1.emplace_back(query.label, classifier::prediction_at_k(result, 1));
      at_5.emplace_back(query.label, classifier::prediction_at_k(result, 5));

      auto predicted = classifier::prediction_at_k(result, cfg.k);
      bool truth_positive = query.label == corpus::ChangeLabel::BugInducing;
      bool predicted_positive = predicted == classifier::Prediction::BugInducing;
      if (truth_positive && predicted_positive) ++report.counts.tp;
      if (truth_positive && !predicted_positive) ++report.counts.fn;
      if (!truth_positive && predicted_positive) ++report.counts.fp;
      if (!truth_positive && !predicted_positive) ++report.counts.tn;

      for (const auto& match : result.matches) {
        if (match.label == query.label) {
          rr_sum += 1.0 / static_cast<double>(match.rank);
          break;
        }
      }
    }

    report.metrics.query_count = queries.size();
    report.metrics.topk_accuracy[1] = topk_accuracy(at_1, 1);
    report.metrics.topk_accuracy[5] = topk_accuracy(at_5, 5);
    report.metrics.mrr = rr_sum / static_cast<double>(queries.size());
    auto [f, acc] = f_score_and_accuracy(report.counts);
    report.metrics.f_score = f;
    report.metrics.accuracy = acc;
    reports.emplace(project, std::move(report));
  }
  return reports;
}

}  // namespace kernelguard::evaluation
