// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

#include "kernelguard/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "kernelguard/parallel.hpp"

namespace kernelguard::kernels {

namespace {

using ast::Tree;

void validate_config(const KernelConfig& cfg) {
  if (!(cfg.lambda > 0.0) || cfg.lambda > 1.0) {
    throw KernelError(KernelErrorKind::InvalidConfig, "lambda must lie in (0, 1]");
  }
  if (cfg.kind == KernelKind::PTK && (!(cfg.mu > 0.0) || cfg.mu > 1.0)) {
    throw KernelError(KernelErrorKind::InvalidConfig, "mu must lie in (0, 1]");
  }
}

bool labels_equal(const Tree& t1, std::uint32_t n1, const Tree& t2, std::uint32_t n2) {
  return t1.label(n1) == t2.label(n2);
}

// Production = node label plus the ordered child label sequence.
bool productions_equal(const Tree& t1, std::uint32_t n1, const Tree& t2, std::uint32_t n2) {
  if (!labels_equal(t1, n1, t2, n2)) return false;
  const auto& c1 = t1.node(n1).children;
  const auto& c2 = t2.node(n2).children;
  if (c1.size() != c2.size()) return false;
  for (std::size_t j = 0; j < c1.size(); ++j) {
    if (!(t1.label(c1[j]) == t2.label(c2[j]))) return false;
  }
  return true;
}

// Memoized per-pair evaluation state for one kernel call.
struct DeltaContext {
  const Tree* t1;
  const Tree* t2;
  double lambda;
  double mu;
  std::unordered_map<std::uint64_t, double> memo;

  std::uint64_t key(std::uint32_t a, std::uint32_t b) const {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }
};

double stk(DeltaContext& ctx, std::uint32_t n1, std::uint32_t n2);
double sstk(DeltaContext& ctx, std::uint32_t n1, std::uint32_t n2);
double ptk(DeltaContext& ctx, std::uint32_t n1, std::uint32_t n2);

double stk(DeltaContext& ctx, std::uint32_t n1, std::uint32_t n2) {
  auto k = ctx.key(n1, n2);
  if (auto it = ctx.memo.find(k); it != ctx.memo.end()) return it->second;
  double result = 0.0;
  if (productions_equal(*ctx.t1, n1, *ctx.t2, n2) && !ctx.t1->is_leaf(n1)) {
    const auto& c1 = ctx.t1->node(n1).children;
    const auto& c2 = ctx.t2->node(n2).children;
    result = ctx.lambda;
    for (std::size_t j = 0; j < c1.size(); ++j) {
      if (ctx.t1->is_leaf(c1[j]) && ctx.t2->is_leaf(c2[j])) continue;  // matched via production
      double d = stk(ctx, c1[j], c2[j]);
      if (d == 0.0) {  // full descendancy required
        result = 0.0;
        break;
      }
      result *= d;
    }
  }
  ctx.memo.emplace(k, result);
  return result;
}

double sstk(DeltaContext& ctx, std::uint32_t n1, std::uint32_t n2) {
  auto k = ctx.key(n1, n2);
  if (auto it = ctx.memo.find(k); it != ctx.memo.end()) return it->second;
  double result = 0.0;
  if (productions_equal(*ctx.t1, n1, *ctx.t2, n2) && !ctx.t1->is_leaf(n1)) {
    const auto& c1 = ctx.t1->node(n1).children;
    const auto& c2 = ctx.t2->node(n2).children;
    result = ctx.lambda;
    for (std::size_t j = 0; j < c1.size(); ++j) {
      result *= 1.0 + sstk(ctx, c1[j], c2[j]);
    }
  }
  ctx.memo.emplace(k, result);
  return result;
}

// Gap-weighted sum over equal-length ordered child subsequences, computed
// with the standard quadratic dynamic program per subsequence length.
// Weights follow lambda^(span(J1)+span(J2)) where span covers first..last.
double ptk_child_sum(DeltaContext& ctx, const std::vector<std::uint32_t>& c1,
                     const std::vector<std::uint32_t>& c2) {
  const std::size_t n = c1.size();
  const std::size_t m = c2.size();
  if (n == 0 || m == 0) return 0.0;
  const double lambda = ctx.lambda;
  const double lambda2 = lambda * lambda;

  // pairwise child deltas
  std::vector<double> match(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      match[i * m + j] = ptk(ctx, c1[i], c2[j]);
    }
  }

  auto at = [m](std::vector<double>& v, std::size_t i, std::size_t j) -> double& {
    return v[i * (m + 1) + j];
  };

  // dp[p](i,j): weight of subsequence pairs of length p ending exactly at
  // (i, j), 1-based. acc(i,j) carries the lambda-decayed prefix sums of the
  // previous length.
  std::vector<double> dp((n + 1) * (m + 1), 0.0);
  std::vector<double> dp_next((n + 1) * (m + 1), 0.0);
  std::vector<double> acc((n + 1) * (m + 1), 0.0);

  double total = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      double d = lambda2 * match[(i - 1) * m + (j - 1)];
      at(dp, i, j) = d;
      total += d;
    }
  }

  const std::size_t p_max = std::min(n, m);
  for (std::size_t p = 2; p <= p_max; ++p) {
    // acc(i,j) = sum_{i'<=i, j'<=j} lambda^{(i-i') + (j-j')} dp(i',j')
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= m; ++j) {
        at(acc, i, j) = at(dp, i, j) + lambda * at(acc, i - 1, j) + lambda * at(acc, i, j - 1) -
                        lambda2 * at(acc, i - 1, j - 1);
      }
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= m; ++j) {
        double d = match[(i - 1) * m + (j - 1)];
        double v = d == 0.0 ? 0.0 : d * lambda2 * at(acc, i - 1, j - 1);
        at(dp_next, i, j) = v;
        total += v;
      }
    }
    dp.swap(dp_next);
  }
  return total;
}

double ptk(DeltaContext& ctx, std::uint32_t n1, std::uint32_t n2) {
  auto k = ctx.key(n1, n2);
  if (auto it = ctx.memo.find(k); it != ctx.memo.end()) return it->second;
  double result = 0.0;
  if (labels_equal(*ctx.t1, n1, *ctx.t2, n2)) {
    double sum = ptk_child_sum(ctx, ctx.t1->node(n1).children, ctx.t2->node(n2).children);
    result = ctx.mu * (ctx.lambda * ctx.lambda + sum);
  }
  ctx.memo.emplace(k, result);
  return result;
}

// Join key for the top-level node-pair selection: the node label for PTK,
// the full production for STK/SSTK. Rendered as a one-level s-expression,
// which is injective because label values escape parentheses.
std::string pair_key(const Tree& t, std::uint32_t n, bool with_children) {
  std::string key = "(";
  key += ast::label_to_string(t.label(n));
  if (with_children) {
    for (auto c : t.node(n).children) {
      key.push_back('(');
      key += ast::label_to_string(t.label(c));
      key.push_back(')');
    }
  }
  key.push_back(')');
  return key;
}

std::vector<std::pair<std::string, std::uint32_t>> join_keys(const Tree& t, KernelKind kind) {
  const bool with_children = kind != KernelKind::PTK;
  std::vector<std::pair<std::string, std::uint32_t>> keys;
  keys.reserve(t.node_count());
  for (std::uint32_t n = 0; n < t.node_count(); ++n) {
    // leaf pairs score 0 under STK/SSTK; skip them at the top level
    if (with_children && t.is_leaf(n)) continue;
    keys.emplace_back(pair_key(t, n, with_children), n);
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

double raw_kernel(const Tree& t1, const Tree& t2, const KernelConfig& cfg) {
  DeltaContext ctx{&t1, &t2, cfg.lambda, cfg.mu, {}};

  auto k1 = join_keys(t1, cfg.kind);
  auto k2 = join_keys(t2, cfg.kind);

  double total = 0.0;
  std::size_t i = 0, j = 0;
  while (i < k1.size() && j < k2.size()) {
    int cmp = k1[i].first.compare(k2[j].first);
    if (cmp < 0) {
      ++i;
    } else if (cmp > 0) {
      ++j;
    } else {
      std::size_t i_end = i, j_end = j;
      while (i_end < k1.size() && k1[i_end].first == k1[i].first) ++i_end;
      while (j_end < k2.size() && k2[j_end].first == k2[j].first) ++j_end;
      for (std::size_t a = i; a < i_end; ++a) {
        for (std::size_t b = j; b < j_end; ++b) {
          switch (cfg.kind) {
            case KernelKind::STK: total += stk(ctx, k1[a].second, k2[b].second); break;
            case KernelKind::SSTK: total += sstk(ctx, k1[a].second, k2[b].second); break;
            case KernelKind::PTK: total += ptk(ctx, k1[a].second, k2[b].second); break;
          }
        }
      }
      i = i_end;
      j = j_end;
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// fragment enumeration oracle
// ---------------------------------------------------------------------------

// Expanded subset-tree renderings of the subtree under `n`: the node with
// all of its children, each child either stopped (bare leaf) or expanded
// recursively. Leaves cannot expand.
const std::vector<std::string>& sstk_expansions(const Tree& t, std::uint32_t n,
                                                std::vector<std::vector<std::string>>& memo) {
  auto& out = memo[n];
  if (!out.empty() || t.is_leaf(n)) return out;
  const auto& children = t.node(n).children;
  std::vector<std::vector<std::string>> choices(children.size());
  for (std::size_t j = 0; j < children.size(); ++j) {
    auto c = children[j];
    choices[j].push_back("(" + ast::label_to_string(t.label(c)) + ")");
    for (const auto& e : sstk_expansions(t, c, memo)) choices[j].push_back(e);
  }
  std::vector<std::string> acc = {"(" + ast::label_to_string(t.label(n))};
  for (const auto& options : choices) {
    std::vector<std::string> next;
    next.reserve(acc.size() * options.size());
    for (const auto& prefix : acc) {
      for (const auto& option : options) next.push_back(prefix + option);
    }
    acc = std::move(next);
  }
  for (auto& s : acc) s.push_back(')');
  out = std::move(acc);
  return out;
}

// All partial trees rooted at `n`: the node alone, or the node with any
// nonempty ordered subsequence of children, each carrying one of its own
// partial trees.
const std::vector<std::string>& ptk_partials(const Tree& t, std::uint32_t n,
                                             std::vector<std::vector<std::string>>& memo) {
  auto& out = memo[n];
  if (!out.empty()) return out;
  const auto& children = t.node(n).children;
  std::string open = "(" + ast::label_to_string(t.label(n));
  std::vector<std::string> acc = {open};
  for (auto c : children) {
    const auto& child_partials = ptk_partials(t, c, memo);
    std::vector<std::string> next = acc;  // subsequences skipping this child
    for (const auto& prefix : acc) {
      for (const auto& p : child_partials) next.push_back(prefix + p);
    }
    acc = std::move(next);
  }
  for (auto& s : acc) s.push_back(')');
  out = std::move(acc);
  return out;
}

}  // namespace

std::string_view kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::STK: return "stk";
    case KernelKind::SSTK: return "sstk";
    case KernelKind::PTK: return "ptk";
  }
  return "ptk";
}

std::optional<KernelKind> kernel_kind_from_name(std::string_view name) {
  if (name == "stk" || name == "STK") return KernelKind::STK;
  if (name == "sstk" || name == "SSTK") return KernelKind::SSTK;
  if (name == "ptk" || name == "PTK") return KernelKind::PTK;
  return std::nullopt;
}

double delta_stk(const Tree& t1, std::uint32_t n1, const Tree& t2, std::uint32_t n2,
                 double lambda) {
  DeltaContext ctx{&t1, &t2, lambda, 1.0, {}};
  return stk(ctx, n1, n2);
}

double delta_sstk(const Tree& t1, std::uint32_t n1, const Tree& t2, std::uint32_t n2,
                  double lambda) {
  DeltaContext ctx{&t1, &t2, lambda, 1.0, {}};
  return sstk(ctx, n1, n2);
}

double delta_ptk(const Tree& t1, std::uint32_t n1, const Tree& t2, std::uint32_t n2, double lambda,
                 double mu) {
  DeltaContext ctx{&t1, &t2, lambda, mu, {}};
  return ptk(ctx, n1, n2);
}

SimilarityScore kernel(const ast::Tree& t1, const ast::Tree& t2, const KernelConfig& cfg) {
  validate_config(cfg);
  if (t1.empty() || t2.empty()) {
    throw KernelError(KernelErrorKind::DegenerateTree, "kernel of an empty tree");
  }
  // Canonical argument order keeps K(a, b) and K(b, a) bit-identical.
  const Tree* a = &t1;
  const Tree* b = &t2;
  if (b->canonical() < a->canonical()) std::swap(a, b);

  double k12 = raw_kernel(*a, *b, cfg);
  if (!cfg.normalize) return {k12};
  if (k12 == 0.0) return {0.0};
  double k11 = raw_kernel(*a, *a, cfg);
  double k22 = raw_kernel(*b, *b, cfg);
  if (k11 <= 0.0 || k22 <= 0.0) return {0.0};
  return {k12 / (std::sqrt(k11) * std::sqrt(k22))};
}

FragmentMultiset oracle_fragments(const ast::Tree& tree, KernelKind kind, std::size_t max_nodes) {
  if (tree.empty()) {
    throw KernelError(KernelErrorKind::DegenerateTree, "oracle of an empty tree");
  }
  if (tree.node_count() > max_nodes) {
    throw KernelError(KernelErrorKind::TreeTooLargeForOracle,
                      "tree has " + std::to_string(tree.node_count()) +
                          " nodes; oracle enumeration is capped at " + std::to_string(max_nodes));
  }
  FragmentMultiset counts;
  switch (kind) {
    case KernelKind::STK:
      for (std::uint32_t n = 0; n < tree.node_count(); ++n) {
        if (tree.is_leaf(n)) continue;  // single leaves are not subtrees
        ++counts[tree.subtree_string(n)];
      }
      break;
    case KernelKind::SSTK: {
      std::vector<std::vector<std::string>> memo(tree.node_count());
      for (std::uint32_t n = 0; n < tree.node_count(); ++n) {
        for (const auto& f : sstk_expansions(tree, n, memo)) ++counts[f];
      }
      break;
    }
    case KernelKind::PTK: {
      std::vector<std::vector<std::string>> memo(tree.node_count());
      for (std::uint32_t n = 0; n < tree.node_count(); ++n) {
        for (const auto& f : ptk_partials(tree, n, memo)) ++counts[f];
      }
      break;
    }
  }
  return counts;
}

double fragment_dot(const FragmentMultiset& a, const FragmentMultiset& b) {
  const FragmentMultiset& small = a.size() <= b.size() ? a : b;
  const FragmentMultiset& large = a.size() <= b.size() ? b : a;
  double total = 0.0;
  for (const auto& [key, count] : small) {
    auto it = large.find(key);
    if (it != large.end()) total += static_cast<double>(count) * static_cast<double>(it->second);
  }
  return total;
}

std::int64_t fragment_total(const FragmentMultiset& m) {
  std::int64_t total = 0;
  for (const auto& [key, count] : m) total += count;
  return total;
}

std::vector<Ranked> rank_candidates(const ast::Tree& query,
                                    std::span<const CandidateTree> candidates,
                                    const KernelConfig& cfg, int threads) {
  std::vector<double> scores(candidates.size(), 0.0);
  parallel_for(candidates.size(), threads, [&](std::size_t i) {
    scores[i] = kernel(query, *candidates[i].tree, cfg).value;
  });

  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    auto ta = candidates[a].timestamp.value_or(std::numeric_limits<std::int64_t>::min());
    auto tb = candidates[b].timestamp.value_or(std::numeric_limits<std::int64_t>::min());
    if (ta != tb) return ta > tb;
    return candidates[a].id < candidates[b].id;
  });

  std::vector<Ranked> ranked;
  ranked.reserve(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    ranked.push_back({candidates[order[pos]].id, static_cast<int>(pos + 1), {scores[order[pos]]}});
  }
  return ranked;
}

}  // namespace kernelguard::kernels
