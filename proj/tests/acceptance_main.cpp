// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Criteria pin the tolerances the project ships with.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kernelguard/classifier.hpp"
#include "kernelguard/corpus.hpp"
#include "kernelguard/evaluation.hpp"
#include "kernelguard/kernels.hpp"
#include "kernelguard/retrieval.hpp"
#include "../tests/test_util.hpp"

using namespace kernelguard;
using kernels::KernelKind;

namespace {

struct Check {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --------------------------------------------------------------------------
// criterion bodies
// --------------------------------------------------------------------------

void kernel_oracle_equivalence(Check& check) {
  auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(11001);
  for (int i = 0; i < 200; ++i) {
    auto a = kgtest::random_tree(rng, 10, 3);
    auto b = kgtest::random_tree(rng, 10, 3);
    for (auto kind : {KernelKind::STK, KernelKind::SSTK, KernelKind::PTK}) {
      auto fa = kernels::oracle_fragments(a, kind);
      auto fb = kernels::oracle_fragments(b, kind);
      long long expected = std::llround(kernels::fragment_dot(fa, fb));
      double value = kernels::kernel(a, b, {kind, 1.0, 1.0, false}).value;
      check.require(std::llround(value) == expected && std::abs(value - expected) < 1e-9,
                    "kernel/oracle mismatch on pair " + std::to_string(i));
    }
  }
  check.require(seconds_since(start) < 10.0, "oracle equivalence exceeded 10 s");
}

void normalization_identities(Check& check) {
  std::mt19937 rng(11002);
  for (int i = 0; i < 100; ++i) {
    auto a = kgtest::random_tree(rng, 12, 3, true);
    auto b = kgtest::random_tree(rng, 12, 3, true);
    for (auto kind : {KernelKind::STK, KernelKind::SSTK, KernelKind::PTK}) {
      kernels::KernelConfig cfg{kind, 0.4, 0.4, true};
      double ab = kernels::kernel(a, b, cfg).value;
      double ba = kernels::kernel(b, a, cfg).value;
      check.require(ab == ba, "kernel symmetry violated");
      double self = kernels::kernel(a, a, cfg).value;
      bool degenerate = kind != KernelKind::PTK && a.node_count() == 1;
      if (!degenerate) {
        check.require(std::abs(self - 1.0) <= 1e-12, "self-similarity not 1 within 1e-12");
      }
    }
  }
}

void fragment_family_containment(Check& check) {
  std::mt19937 rng(11003);
  for (int i = 0; i < 100; ++i) {
    auto t = kgtest::random_tree(rng, 10, 3);
    auto stk = kernels::fragment_total(kernels::oracle_fragments(t, KernelKind::STK));
    auto sstk = kernels::fragment_total(kernels::oracle_fragments(t, KernelKind::SSTK));
    auto ptk = kernels::fragment_total(kernels::oracle_fragments(t, KernelKind::PTK));
    check.require(stk <= sstk && sstk <= ptk, "fragment families do not nest");
  }
}

void analyzer_bit_exactness(Check& check) {
  namespace rt = retrieval;
  check.require(rt::tokenize("int i = 0;") == std::vector<std::string>{"int", "i", "0"},
                "tokenize(\"int i = 0;\")");
  check.require(rt::tokenize("").empty(), "tokenize empty");
  check.require(rt::tokenize("foo_bar(Baz)") == std::vector<std::string>{"foo_bar", "baz"},
                "tokenize identifiers");

  auto sh = rt::shingles({"int", "i", "0"});
  check.require(sh.size() == 3 && sh.count("int i") && sh.count("i 0") && sh.count("int i 0"),
                "shingles of [int, i, 0]");
  check.require(rt::shingles({"a"}).empty(), "single token has no shingles");
  auto ab = rt::shingles({"a", "b"});
  check.require(ab.size() == 1 && ab.count("a b"), "two-token shingle");

  auto grams = rt::edge_ngrams({"int"});
  check.require(grams.size() == 3 && grams.count("i") && grams.count("in") && grams.count("int"),
                "edge n-grams of int");
  auto single = rt::edge_ngrams({"a"});
  check.require(single.size() == 1 && single.count("a"), "edge n-grams of a");
  auto capped = rt::edge_ngrams({std::string(25, 'x')});
  check.require(capped.size() == 20 && capped.count(std::string(20, 'x')) &&
                    !capped.count(std::string(21, 'x')),
                "edge n-grams cap at 20");
  check.require(rt::kMinShingleSize == 2 && rt::kMaxShingleSize == 3 && rt::kMinGram == 1 &&
                    rt::kMaxGram == 20,
                "analyzer constants");
}

void retrieval_brute_force(Check& check) {
  std::mt19937 rng(11005);
  retrieval::InvertedIndex index;
  std::vector<std::string> texts;
  static const char* kWords[] = {"int",  "value", "sum",   "if",    "return", "foo",
                                 "bar",  "index", "count", "width", "height", "flag",
                                 "temp", "x",     "y",     "0",     "1",      "42"};
  std::uniform_int_distribution<int> word(0, 17);
  std::uniform_int_distribution<int> words_per_doc(4, 28);
  for (int i = 0; i < 200; ++i) {
    std::string text;
    int n = words_per_doc(rng);
    for (int w = 0; w < n; ++w) {
      text += kWords[word(rng)];
      text += (w % 5 == 2) ? ";\n" : " ";
    }
    texts.push_back(text);
    index.add("doc" + std::to_string(i), text);
  }
  index.finalize();

  for (int q = 0; q < 50; ++q) {
    std::string query;
    if (q % 2 == 0) {
      query = texts[static_cast<std::size_t>(q * 3 % 200)];
    } else {
      int n = words_per_doc(rng);
      for (int w = 0; w < n; ++w) {
        query += kWords[word(rng)];
        query += " ";
      }
    }
    auto fast = index.more_like_this(query, 100);
    auto slow = kgtest::brute_force_mlt(index, query, 100);
    bool same = fast.entries.size() == slow.size();
    for (std::size_t i = 0; same && i < slow.size(); ++i) {
      same = fast.entries[i].doc_id == slow[i].doc_id;
    }
    check.require(same, "brute-force retrieval mismatch on query " + std::to_string(q));
  }
}

void planted_corpus_end_to_end(Check& check) {
  auto start = std::chrono::steady_clock::now();
  kgtest::PlantedOptions options;
  options.families = 8;
  options.queries = 200;
  options.seed = 991;
  auto planted = kgtest::planted_type2_corpus(options);

  classifier::ClassifierConfig cfg;  // k=1, PTK, lambda=mu=0.4, 100 candidates
  evaluation::DefectEvalOptions eval_options;
  eval_options.eval_from = planted.queries_from;
  auto reports = evaluation::run_defect_eval(planted.records, cfg, eval_options);
  const auto& report = reports.at("planted");

  check.require(report.metrics.query_count == 200, "expected 200 queries");
  check.require(std::abs(report.metrics.topk_accuracy.at(1) - 1.0) < 1e-12, "TopK@1 != 1.0");
  check.require(std::abs(report.metrics.mrr - 1.0) < 1e-12, "MRR != 1.0");
  check.require(std::abs(report.metrics.f_score - 1.0) < 1e-12, "F-score != 1.0");
  check.require(std::abs(report.metrics.accuracy - 1.0) < 1e-12, "Accuracy != 1.0");
  check.require(seconds_since(start) < 60.0, "planted run exceeded 60 s");
}

void time_safety_audit(Check& check) {
  std::mt19937 rng(11007);
  std::vector<corpus::ChangeRecord> records;
  std::uniform_int_distribution<int> family(0, 7);
  std::uniform_int_distribution<int> day(1, 27);
  std::uniform_int_distribution<int> hour(0, 23);
  std::uniform_int_distribution<int> minute(0, 58);
  for (int i = 0; i < 360; ++i) {
    int month = 1 + i % 12;  // spread across a full year
    int f = family(rng);
    corpus::ChangeRecord r;
    r.change_id = "r" + std::to_string(i);
    r.project = "audit";
    r.commit_hash = "c" + std::to_string(i);
    r.method_name = "m" + std::to_string(i);
    r.timestamp = kgtest::ts(2021, month, day(rng), hour(rng), minute(rng));
    r.label = f % 2 == 0 ? corpus::ChangeLabel::BugInducing : corpus::ChangeLabel::BugFixing;
    r.source_text = kgtest::family_source(f, "n" + std::to_string(i) + "a",
                                          "n" + std::to_string(i) + "b",
                                          "n" + std::to_string(i) + "c");
    records.push_back(r);
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const corpus::ChangeRecord& a, const corpus::ChangeRecord& b) {
                     if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                     return a.change_id < b.change_id;
                   });

  classifier::ClassifierConfig cfg;
  auto reports = evaluation::run_defect_eval(records, cfg, {});
  const auto& report = reports.at("audit");
  check.require(report.metrics.query_count == 360, "expected 360 queries");
  check.require(report.time_violations == 0,
                "found " + std::to_string(report.time_violations) + " time-travel violations");
}

void metric_hand_checks(Check& check) {
  using evaluation::RankedList;
  auto list_of = [](std::vector<bool> pattern) {
    RankedList list;
    list.query_id = "q";
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      list.entries.emplace_back("i" + std::to_string(i), pattern[i]);
    }
    return list;
  };
  std::vector<RankedList> ten(1, list_of(std::vector<bool>(10, true)));
  check.require(std::abs(evaluation::precision_at_k(ten, 10) - 1.0) < 1e-9, "P@10 all relevant");

  std::vector<RankedList> half(1, list_of({true, false, true, false}));
  check.require(std::abs(evaluation::precision_at_k(half, 4) - 0.5) < 1e-9, "P@4 RNRN");

  std::vector<RankedList> adjacent(1, list_of({true, true}));
  std::map<std::string, int> two{{"q", 2}};
  check.require(std::abs(evaluation::mean_average_precision(adjacent, two) - 1.0) < 1e-9,
                "AP adjacent");
  std::vector<RankedList> gapped(1, list_of({true, false, true}));
  check.require(
      std::abs(evaluation::mean_average_precision(gapped, two) - (1.0 + 2.0 / 3.0) / 2.0) < 1e-9,
      "AP with gap");

  std::vector<RankedList> ranks = {list_of({true}), list_of({false, true}),
                                   list_of({false, false, false, true})};
  check.require(
      std::abs(evaluation::mean_reciprocal_rank(ranks) - (1.0 + 0.5 + 0.25) / 3.0) < 1e-9,
      "MRR 1,2,4");
  std::vector<RankedList> none = {list_of({false, false})};
  check.require(std::abs(evaluation::mean_reciprocal_rank(none)) < 1e-9, "MRR no relevant");

  using Pair = std::pair<corpus::ChangeLabel, classifier::Prediction>;
  std::vector<Pair> three_of_four = {
      {corpus::ChangeLabel::BugInducing, classifier::Prediction::BugInducing},
      {corpus::ChangeLabel::BugInducing, classifier::Prediction::Clean},
      {corpus::ChangeLabel::BugFixing, classifier::Prediction::Clean},
      {corpus::ChangeLabel::BugFixing, classifier::Prediction::Clean},
  };
  check.require(std::abs(evaluation::topk_accuracy(three_of_four, 1) - 0.75) < 1e-9, "TopK 3/4");

  auto perfect = evaluation::f_score_and_accuracy({5, 0, 5, 0});
  check.require(std::abs(perfect.first - 1.0) < 1e-9 && std::abs(perfect.second - 1.0) < 1e-9,
                "F/Acc perfect");
  auto mixed = evaluation::f_score_and_accuracy({3, 1, 4, 2});
  check.require(std::abs(mixed.first - 2.0 * 0.75 * 0.6 / 1.35) < 1e-9, "F mixed");
  check.require(std::abs(mixed.second - 0.7) < 1e-9, "Acc mixed");
  auto degenerate = evaluation::f_score_and_accuracy({0, 0, 1, 3});
  check.require(degenerate.first == 0.0, "F degenerate");
}

// A method body with enough statements to reach a few hundred AST nodes.
std::string bulk_method(const std::string& name, int statements, const std::string& tag) {
  std::ostringstream out;
  out << "public int " << name << "(int seed0) {\n";
  for (int i = 1; i <= statements; ++i) {
    out << "  int seed" << i << " = seed" << (i - 1) << " " << (i % 2 ? "+" : "*") << " "
        << (1000 + i) << ";\n";
  }
  out << "  if (seed1 < seed" << statements << ") { return checkBulk(seed" << statements
      << ", \"" << tag << "\"); }\n";
  out << "  return seed" << statements << ";\n}\n";
  return out.str();
}

void latency_envelope(Check& check) {
  std::mt19937 rng(11009);
  std::vector<corpus::ChangeRecord> records;
  records.reserve(10000);
  std::uniform_int_distribution<int> day(1, 27);
  std::uniform_int_distribution<int> hour(0, 23);
  std::uniform_int_distribution<int> minute(0, 59);
  for (int i = 0; i < 10000; ++i) {
    corpus::ChangeRecord r;
    r.change_id = "h" + std::to_string(i);
    r.project = "latency";
    r.commit_hash = "c" + std::to_string(i);
    r.method_name = "m" + std::to_string(i);
    r.timestamp = kgtest::ts(2021, 1 + i % 6, day(rng), hour(rng), minute(rng));
    r.label = i % 3 == 0 ? corpus::ChangeLabel::BugInducing : corpus::ChangeLabel::BugFixing;
    if (i % 10 == 0) {
      // large methods: several hundred AST nodes each
      r.source_text =
          bulk_method("bulk" + std::to_string(i % 40), 70, "bulktag" + std::to_string(i % 40));
    } else {
      std::string suffix = std::to_string(i);
      r.source_text = kgtest::family_source(i % 8, "p" + suffix + "x", "q" + suffix + "y",
                                            "r" + suffix + "z");
    }
    records.push_back(r);
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const corpus::ChangeRecord& a, const corpus::ChangeRecord& b) {
                     if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                     return a.change_id < b.change_id;
                   });

  auto series = corpus::build_snapshots(std::move(records));

  // one commit of five methods, two of them large
  std::vector<corpus::ChangeRecord> commit;
  auto commit_time = kgtest::ts(2021, 7, 15, 12);
  for (int m = 0; m < 5; ++m) {
    corpus::ChangeRecord r;
    r.change_id = "commit_m" + std::to_string(m);
    r.project = "latency";
    r.commit_hash = "commitL";
    r.method_name = "method" + std::to_string(m);
    r.timestamp = commit_time;
    r.label = corpus::ChangeLabel::BugFixing;
    r.source_text = m < 2 ? bulk_method("bulk" + std::to_string(m * 7), 70,
                                        "bulktag" + std::to_string(m * 7))
                          : kgtest::family_source(m, "fresha", "freshb", "freshc");
    commit.push_back(r);
  }

  auto start = std::chrono::steady_clock::now();
  classifier::ClassifierConfig cfg;
  cfg.candidate_limit = 100;
  auto results = classifier::classify_commit(commit, series, cfg);
  double elapsed = seconds_since(start);

  check.require(results.size() == 5, "expected 5 classification results");
  std::size_t with_matches = 0;
  for (const auto& r : results) {
    if (!r.matches.empty()) ++with_matches;
  }
  check.require(with_matches == 5, "every method should retrieve candidates");
  check.require(elapsed < 60.0,
                "classification took " + std::to_string(elapsed) + " s (limit 60 s)");
  std::fprintf(stderr, "  (latency: 5 methods vs 10000-record snapshot in %.2f s)\n", elapsed);
}

void dataset_spot_check(Check& check) {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "kg_acceptance_td";
  fs::create_directories(dir);
  auto path = dir / "td_mini.csv";
  {
    std::ofstream out(path);
    out << "change_id,project,commit_hash,file_path,method_name,timestamp,label,change_type,"
           "source_text,paired_fix_id\n";
    std::mt19937 rng(11010);
    int id = 0;
    for (int month = 1; month <= 4; ++month) {
      for (int i = 0; i < 10; ++i) {
        int f = id % 4;
        bool inducing = f % 2 == 0;
        std::string source = kgtest::family_source(
            f, "a" + std::to_string(id), "b" + std::to_string(id), "c" + std::to_string(id));
        std::string quoted = "\"";
        for (char c : source) {
          if (c == '"') quoted += "\"\"";
          else quoted += c;
        }
        quoted += "\"";
        char ts_buf[40];
        std::snprintf(ts_buf, sizeof(ts_buf), "2021-%02d-%02dT10:%02d:00Z", month, 2 + i * 2,
                      id % 60);
        out << "td" << id << ",tdmini,hash" << id << ",src/T.java,method" << f << "," << ts_buf
            << "," << (inducing ? "bug_inducing" : "bug_fixing")
            << ",modification," << quoted << ",\n";
        ++id;
      }
    }
  }

  auto records = corpus::ingest_changes(path, corpus::CorpusFormat::TechnicalDebtCSV);
  check.require(records.size() == 40, "expected 40 technical-debt records");

  classifier::ClassifierConfig cfg;
  auto reports = evaluation::run_defect_eval(records, cfg, {});
  check.require(reports.count("tdmini") == 1, "expected a tdmini report");
  const auto& metrics = reports.at("tdmini").metrics;
  check.require(metrics.topk_accuracy.at(5) >= metrics.topk_accuracy.at(1) - 1e-12,
                "TopK@5 < TopK@1");
  check.require(reports.at("tdmini").time_violations == 0, "time violations in tdmini");
}

struct Criterion {
  int id;
  std::string name;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "kernel-oracle equivalence (200 random pairs, unit decay, < 10 s)",
       kernel_oracle_equivalence},
      {2, "normalization identities and exact symmetry", normalization_identities},
      {3, "fragment-family containment STK <= SSTK <= PTK", fragment_family_containment},
      {4, "analyzer bit-exactness (tokenize / shingles / edge n-grams)", analyzer_bit_exactness},
      {5, "retrieval equals brute-force scoring (200 docs, 50 queries)", retrieval_brute_force},
      {6, "planted near-duplicate corpus scores 1.0 end to end (200 queries, < 60 s)",
       planted_corpus_end_to_end},
      {7, "time-safety audit over a randomized 12-month corpus", time_safety_audit},
      {8, "metric hand-checks within 1e-9", metric_hand_checks},
      {9, "latency: 5-method commit vs 10,000-record snapshot in < 60 s", latency_envelope},
      {10, "dataset-backed spot check (technical-debt format, TopK@5 >= TopK@1)",
       dataset_spot_check},
  };

  int failures = 0;
  for (auto& criterion : criteria) {
    Check check;
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    if (check.failures.empty()) {
      std::printf("[PASS] criterion %d: %s\n", criterion.id, criterion.name.c_str());
    } else {
      ++failures;
      std::printf("[FAIL] criterion %d: %s\n", criterion.id, criterion.name.c_str());
      for (const auto& why : check.failures) {
        std::printf("       - %s\n", why.c_str());
      }
    }
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
