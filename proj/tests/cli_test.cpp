// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

// Exercises the command-line surface end to end: exit codes, report
// content, and the evaluate tables, against the built binary.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kernelguard/corpus.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

int checks_failed = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++checks_failed;
    std::cerr << "FAILED: " << what << "\n";
  }
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

RunResult run(const std::string& args) {
  fs::path out_file = fs::temp_directory_path() / "kg_cli_out.txt";
  std::string command = std::string(KERNELGUARD_CLI_PATH) + " " + args + " > " +
                        out_file.string() + " 2> /dev/null";
  int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_file);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  return result;
}

fs::path work_dir() {
  auto dir = fs::temp_directory_path() / "kg_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_corpus(const fs::path& dir) {
  kgtest::PlantedOptions options;
  options.families = 4;
  options.queries = 16;
  options.pair_fixes = true;
  auto planted = kgtest::planted_type2_corpus(options);
  auto path = dir / "corpus.jsonl";
  std::ofstream out(path);
  for (const auto& record : planted.records) {
    out << kernelguard::corpus::change_to_jsonl(record) << "\n";
  }
  return path;
}

std::string payload_line(const std::string& id, const std::string& source) {
  kernelguard::corpus::ChangeRecord r;
  r.change_id = id;
  r.project = "planted";
  r.commit_hash = "payload_commit";
  r.method_name = "method_" + id;
  r.timestamp = kgtest::ts(2022, 3, 10, 9);
  r.source_text = source;
  return kernelguard::corpus::change_to_jsonl(r);
}

}  // namespace

int main() {
  auto dir = work_dir();
  auto corpus_path = write_corpus(dir);
  auto series_path = dir / "series.kgs";

  // index
  auto indexed = run("index --corpus " + corpus_path.string() + " --out " + series_path.string());
  expect(indexed.exit_code == 0, "index exits 0");
  expect(indexed.output.find("4 snapshots") != std::string::npos,
         "index prints the snapshot count, got: " + indexed.output);
  expect(indexed.output.find("snapshot 1") != std::string::npos, "index prints per-period counts");

  auto missing = run("index --corpus " + (dir / "nope.jsonl").string());
  expect(missing.exit_code == 2, "missing corpus file exits 2");

  auto empty_path = dir / "empty.jsonl";
  std::ofstream(empty_path).close();
  auto empty = run("index --corpus " + empty_path.string());
  expect(empty.exit_code == 2, "empty corpus exits 2");

  // classify: a near-duplicate of a bug-inducing family must flag
  auto risky_payload = dir / "risky.jsonl";
  {
    std::ofstream out(risky_payload);
    out << payload_line("pm1", kgtest::family_source(0, "pva", "pvb", "pvc")) << "\n";
    out << payload_line("pm2", "public long novelShape(long unseen) { return unseen; }") << "\n";
  }
  auto risky = run("classify --index " + series_path.string() + " --payload " +
                   risky_payload.string());
  expect(risky.exit_code == 1, "risky payload exits 1");
  expect(risky.output.find("[RISKY]") != std::string::npos, "report marks the risky method");
  expect(risky.output.find("c_seed_0") != std::string::npos ||
             risky.output.find("c_query_") != std::string::npos,
         "report names the matched commit: " + risky.output);
  expect(risky.output.find("recorded fix") != std::string::npos,
         "report proposes the recorded fix");

  // clean payload
  auto clean_payload = dir / "clean.jsonl";
  {
    std::ofstream out(clean_payload);
    out << payload_line("pc1", "public double fresh(double a, double b) { return a / b; }")
        << "\n";
  }
  auto clean = run("classify --index " + series_path.string() + " --payload " +
                   clean_payload.string());
  expect(clean.exit_code == 0, "clean payload exits 0");
  expect(clean.output.find("no risky changes detected") != std::string::npos,
         "clean report says so");

  // malformed payload
  auto broken_payload = dir / "broken.jsonl";
  {
    std::ofstream out(broken_payload);
    out << "{ this is not json\n";
  }
  auto broken = run("classify --index " + series_path.string() + " --payload " +
                    broken_payload.string());
  expect(broken.exit_code == 2, "malformed payload exits 2");

  // json report round-trips through the report subcommand
  auto results_path = dir / "results.jsonl";
  auto as_json = run("classify --index " + series_path.string() + " --payload " +
                     risky_payload.string() + " --json --out " + results_path.string());
  expect(as_json.exit_code == 1, "json classify keeps the exit contract");
  auto reported = run("report --results " + results_path.string());
  expect(reported.exit_code == 1, "report keeps the exit contract");
  expect(reported.output.find("[RISKY]") != std::string::npos, "report renders the saved run");

  // evaluate-defects on the planted corpus
  auto eval = run("evaluate-defects --corpus " + corpus_path.string() +
                  " --eval-from 2021-02-01T00:00:00Z --out " + (dir / "metrics.json").string());
  expect(eval.exit_code == 0, "evaluate-defects exits 0");
  expect(eval.output.find("planted") != std::string::npos, "defect table lists the project");
  expect(eval.output.find("1.00") != std::string::npos, "planted corpus scores 1.00");
  expect(fs::exists(dir / "metrics.json"), "metrics JSON written");

  // evaluate-clones over a small synthetic benchmark
  auto bench = dir / "bench";
  fs::create_directories(bench / "functionality_3");
  auto write = [](const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
  };
  write(bench / "functionality_3" / "pa__m1.java",
        "public int add(int a, int b) {\n  int c = a + b;\n  int d = c * 2;\n  int e = d + 1;\n"
        "  int f = e - a;\n  return f;\n}\n");
  write(bench / "functionality_3" / "pa__m2.java",
        "public int add(int x, int y) {\n  int z = x + y;\n  int w = z * 2;\n  int v = w + 1;\n"
        "  int u = v - x;\n  return u;\n}\n");
  write(bench / "functionality_3" / "pb__m3.java",
        "public String other() {\n  if (check(7)) { return \"yes\"; }\n  return \"no\";\n}\n");
  write(bench / "pairs.csv", "id1,id2,is_true,clone_type\npa__m1,pa__m2,true,T2\n");

  auto clones = run("evaluate-clones --bench " + bench.string() + " --scope types --min-lines 6 " +
                    "--types T1,T2,VST3,ST3");
  expect(clones.exit_code == 0, "evaluate-clones exits 0");
  expect(clones.output.find("T2") != std::string::npos, "type table has a T2 row");

  // unknown flags and modes exit 2
  auto bad_flag = run("evaluate-clones --bench " + bench.string() + " --scope sideways");
  expect(bad_flag.exit_code == 2, "unknown scope exits 2");
  auto bad_option = run("classify --index x --payload y --frobnicate");
  expect(bad_option.exit_code == 2, "unknown flag exits 2");

  if (checks_failed > 0) {
    std::cerr << checks_failed << " CLI checks failed\n";
    return 1;
  }
  std::cout << "all CLI checks passed\n";
  return 0;
}
