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

#include "kernelguard/ast.hpp"

namespace kernelguard::kernels {

enum class KernelKind { STK, SSTK, PTK };

std::string_view kernel_kind_name(KernelKind kind);
std::optional<KernelKind> kernel_kind_from_name(std::string_view name);

/// Kernel configuration. `lambda` is the vertical decay applied per matched
/// production/node, `mu` the horizontal decay of the partial tree kernel
/// (ignored for STK/SSTK). Defaults follow the conventions of the usual
/// kernel toolkits.
struct KernelConfig {
  KernelKind kind = KernelKind::PTK;
  double lambda = 0.4;
  double mu = 0.4;
  bool normalize = true;
};

struct SimilarityScore {
  double value = 0.0;
};

enum class KernelErrorKind { DegenerateTree, TreeTooLargeForOracle, InvalidConfig };

class KernelError : public std::runtime_error {
public:
  KernelError(KernelErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  KernelErrorKind kind() const { return kind_; }

private:
  KernelErrorKind kind_;
};

/// Tree kernel value K(t1, t2). Symmetric bit-for-bit: arguments are
/// evaluated in a canonical order, so K(a, b) and K(b, a) run the same
/// floating-point computation. With normalize the result is
/// K(t1,t2) / sqrt(K(t1,t1) * K(t2,t2)), defined as 0 when either
/// self-kernel is 0 (possible for single-node trees under STK/SSTK).
SimilarityScore kernel(const ast::Tree& t1, const ast::Tree& t2, const KernelConfig& cfg);

// Per-node-pair recursions, exposed for tests and diagnostics. Productions
// compare the node label (kind and value) plus the ordered child labels.
// A pair of leaves scores 0 under STK/SSTK: single nodes are not fragments
// of those families. The partial tree kernel matches on labels alone and
// does count single nodes (the mu*lambda^2 base term).
double delta_stk(const ast::Tree& t1, std::uint32_t n1, const ast::Tree& t2, std::uint32_t n2,
                 double lambda);
double delta_sstk(const ast::Tree& t1, std::uint32_t n1, const ast::Tree& t2, std::uint32_t n2,
                  double lambda);
double delta_ptk(const ast::Tree& t1, std::uint32_t n1, const ast::Tree& t2, std::uint32_t n2,
                 double lambda, double mu);

/// Multiset of fragments keyed by canonical s-expression, value = number of
/// occurrences. Houses the h_i(T) counts of the kernel feature map.
using FragmentMultiset = std::map<std::string, std::int64_t>;

inline constexpr std::size_t kDefaultOracleCap = 12;

/// Exhaustive fragment enumeration for small trees; the independent oracle
/// the kernel recursions are tested against.
///   STK:  every node together with its entire descendancy; single-leaf
///         fragments excluded.
///   SSTK: fragments where each included node takes all of its children or
///         none; at least 2 nodes.
///   PTK:  label-, order-, and ancestry-preserving fragments with arbitrary
///         ordered child subsequences; single nodes included.
FragmentMultiset oracle_fragments(const ast::Tree& tree, KernelKind kind,
                                  std::size_t max_nodes = kDefaultOracleCap);

/// Dot product of two fragment multisets (exact over shared keys).
double fragment_dot(const FragmentMultiset& a, const FragmentMultiset& b);

/// Total fragment count of a multiset (sum of multiplicities).
std::int64_t fragment_total(const FragmentMultiset& m);

struct CandidateTree {
  std::string id;
  const ast::Tree* tree = nullptr;
  // Recency is the secondary tie-break when present.
  std::optional<std::int64_t> timestamp;
};

struct Ranked {
  std::string id;
  int rank = 0;  // 1-based, dense
  SimilarityScore score;
};

/// Scores every candidate against the query and sorts descending. Ties
/// break by more recent timestamp, then lexicographic id. Candidate
/// kernels may be evaluated in parallel; the result is deterministic.
std::vector<Ranked> rank_candidates(const ast::Tree& query, std::span<const CandidateTree> candidates,
                                    const KernelConfig& cfg, int threads = 0);

}  // namespace kernelguard::kernels
