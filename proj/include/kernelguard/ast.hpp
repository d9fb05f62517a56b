// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kernelguard::ast {

// Hard ceiling on tree depth; protects the recursive kernel evaluators.
inline constexpr std::size_t kMaxTreeDepth = 10000;

enum class TreeErrorKind {
  UnbalancedParens,
  EmptyLabel,
  TrailingGarbage,
  UnexpectedCharacter,
  DepthLimitExceeded,
  InvalidLabel,
  EmptyTree,
};

class TreeError : public std::runtime_error {
public:
  TreeError(TreeErrorKind kind, std::size_t offset, const std::string& what);

  TreeErrorKind kind() const { return kind_; }
  // Byte offset into the input for parse errors; 0 for build-time errors.
  std::size_t offset() const { return offset_; }

private:
  TreeErrorKind kind_;
  std::size_t offset_;
};

/// Node label: a kind such as "MethodDeclaration", optionally carrying a
/// value ("SimpleName:foo"). Kinds never contain parentheses, colons, or
/// whitespace. Values are stored trimmed at both ends; interior whitespace
/// is significant and preserved.
struct Label {
  std::string kind;
  std::optional<std::string> value;

  bool operator==(const Label&) const = default;
};

// Canonical one-token rendering, "kind" or "kind:value" with '(' ')' '\'
// escaped inside the value.
std::string label_to_string(const Label& label);

/// Rooted, ordered, labeled tree. Immutable once built; safe to share
/// across threads. Node 0 is always the root and nodes are stored in
/// pre-order.
class Tree {
public:
  struct Node {
    Label label;
    std::vector<std::uint32_t> children;
  };

  Tree() = default;

  bool empty() const { return nodes_.empty(); }
  std::size_t node_count() const { return nodes_.size(); }
  std::uint32_t root() const { return 0; }
  const Node& node(std::uint32_t id) const { return nodes_[id]; }
  const Label& label(std::uint32_t id) const { return nodes_[id].label; }
  bool is_leaf(std::uint32_t id) const { return nodes_[id].children.empty(); }

  /// Canonical s-expression of the whole tree, cached at construction.
  /// Equal strings imply structural equality.
  const std::string& canonical() const { return canonical_; }

  /// Canonical s-expression of the subtree rooted at `id`.
  std::string subtree_string(std::uint32_t id) const;

  bool operator==(const Tree& other) const { return canonical_ == other.canonical_; }

private:
  friend class TreeBuilder;

  std::vector<Node> nodes_;
  std::string canonical_;
};

/// Incremental pre-order construction; call build() once at the end.
class TreeBuilder {
public:
  std::uint32_t add_root(Label label);
  std::uint32_t add_child(std::uint32_t parent, Label label);
  Tree build();

private:
  std::vector<Tree::Node> nodes_;
  bool has_root_ = false;
};

/// Parses a single balanced s-expression. Grammar:
///   tree  := '(' label tree* ')'
///   label := kind (':' value)?
/// Whitespace between tokens and around ':' is tolerated and dropped.
/// Values run to the next unescaped parenthesis; `\(`, `\)` and `\\`
/// escape literal parentheses and backslashes inside values.
Tree parse_sexpr(std::string_view text);

/// Canonical serialization: no whitespace between tokens, no spaces around
/// ':'. parse_sexpr(serialize_sexpr(t)) is structurally equal to t.
std::string serialize_sexpr(const Tree& tree);

/// Reads a line-delimited multi-tree stream (".asts" files); blank lines
/// are skipped.
std::vector<Tree> parse_sexpr_lines(std::istream& in);

}  // namespace kernelguard::ast
