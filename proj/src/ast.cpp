// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

#include "kernelguard/ast.hpp"

#include <algorithm>
#include <istream>
#include <utility>

namespace kernelguard::ast {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string describe(TreeErrorKind kind) {
  switch (kind) {
    case TreeErrorKind::UnbalancedParens: return "unbalanced parentheses";
    case TreeErrorKind::EmptyLabel: return "empty label";
    case TreeErrorKind::TrailingGarbage: return "trailing garbage";
    case TreeErrorKind::UnexpectedCharacter: return "unexpected character";
    case TreeErrorKind::DepthLimitExceeded: return "tree depth limit exceeded";
    case TreeErrorKind::InvalidLabel: return "invalid label";
    case TreeErrorKind::EmptyTree: return "empty tree";
  }
  return "tree error";
}

[[noreturn]] void fail(TreeErrorKind kind, std::size_t offset) {
  throw TreeError(kind, offset,
                  describe(kind) + " at offset " + std::to_string(offset));
}

void append_escaped_value(std::string& out, std::string_view value) {
  for (char c : value) {
    if (c == '(' || c == ')' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
}

void append_label(std::string& out, const Label& label) {
  out += label.kind;
  if (label.value) {
    out.push_back(':');
    append_escaped_value(out, *label.value);
  }
}

void validate_label(const Label& label) {
  if (label.kind.empty()) throw TreeError(TreeErrorKind::InvalidLabel, 0, "label kind is empty");
  for (char c : label.kind) {
    if (c == '(' || c == ')' || c == ':' || is_space(c)) {
      throw TreeError(TreeErrorKind::InvalidLabel, 0,
                      "label kind contains parenthesis, colon, or whitespace: " + label.kind);
    }
  }
  if (label.value && label.value->empty()) {
    throw TreeError(TreeErrorKind::InvalidLabel, 0, "label value is empty");
  }
}

Label trimmed(Label label) {
  if (label.value) {
    std::string& v = *label.value;
    std::size_t b = 0, e = v.size();
    while (b < e && is_space(v[b])) ++b;
    while (e > b && is_space(v[e - 1])) --e;
    v = v.substr(b, e - b);
  }
  return label;
}

// Serializes the subtree under `id` with an explicit stack; safe at the
// depth ceiling.
void serialize_into(const std::vector<Tree::Node>& nodes, std::uint32_t id, std::string& out) {
  // frame: (node, next child position); -1 marks "emit open + label".
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;
  stack.emplace_back(id, 0);
  out.push_back('(');
  append_label(out, nodes[id].label);
  while (!stack.empty()) {
    auto& [n, next] = stack.back();
    const auto& children = nodes[n].children;
    if (next < children.size()) {
      std::uint32_t c = children[next++];
      out.push_back('(');
      append_label(out, nodes[c].label);
      stack.emplace_back(c, 0);
    } else {
      out.push_back(')');
      stack.pop_back();
    }
  }
}

}  // namespace

TreeError::TreeError(TreeErrorKind kind, std::size_t offset, const std::string& what)
    : std::runtime_error(what), kind_(kind), offset_(offset) {}

std::string label_to_string(const Label& label) {
  std::string out;
  append_label(out, label);
  return out;
}

std::uint32_t TreeBuilder::add_root(Label label) {
  if (has_root_) throw TreeError(TreeErrorKind::InvalidLabel, 0, "tree already has a root");
  label = trimmed(std::move(label));
  validate_label(label);
  nodes_.push_back({std::move(label), {}});
  has_root_ = true;
  return 0;
}

std::uint32_t TreeBuilder::add_child(std::uint32_t parent, Label label) {
  if (parent >= nodes_.size()) {
    throw TreeError(TreeErrorKind::InvalidLabel, 0, "parent node does not exist");
  }
  label = trimmed(std::move(label));
  validate_label(label);
  auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({std::move(label), {}});
  nodes_[parent].children.push_back(id);
  return id;
}

Tree TreeBuilder::build() {
  if (nodes_.empty()) throw TreeError(TreeErrorKind::EmptyTree, 0, "cannot build an empty tree");

  std::vector<std::size_t> depth(nodes_.size(), 1);
  for (std::uint32_t n = 0; n < nodes_.size(); ++n) {
    for (std::uint32_t c : nodes_[n].children) {
      depth[c] = depth[n] + 1;  // children have higher ids: single pass works
      if (depth[c] > kMaxTreeDepth) {
        throw TreeError(TreeErrorKind::DepthLimitExceeded, 0,
                        "tree exceeds maximum depth of " + std::to_string(kMaxTreeDepth));
      }
    }
  }

  Tree tree;
  tree.nodes_ = std::move(nodes_);
  serialize_into(tree.nodes_, 0, tree.canonical_);
  nodes_.clear();
  has_root_ = false;
  return tree;
}

std::string Tree::subtree_string(std::uint32_t id) const {
  std::string out;
  serialize_into(nodes_, id, out);
  return out;
}

Tree parse_sexpr(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&] { while (i < n && is_space(text[i])) ++i; };

  skip_ws();
  if (i >= n || text[i] != '(') fail(TreeErrorKind::UnbalancedParens, i);

  TreeBuilder builder;
  std::vector<std::uint32_t> stack;

  while (true) {
    // at '(' — read one label
    ++i;
    skip_ws();
    std::size_t kind_start = i;
    while (i < n && text[i] != '(' && text[i] != ')' && text[i] != ':' && !is_space(text[i])) ++i;
    if (i == kind_start) fail(TreeErrorKind::EmptyLabel, i);
    std::string kind(text.substr(kind_start, i - kind_start));

    skip_ws();
    std::optional<std::string> value;
    if (i < n && text[i] == ':') {
      ++i;
      skip_ws();
      std::size_t value_start = i;
      std::string raw;
      while (i < n && text[i] != '(' && text[i] != ')') {
        if (text[i] == '\\' && i + 1 < n &&
            (text[i + 1] == '(' || text[i + 1] == ')' || text[i + 1] == '\\')) {
          raw.push_back(text[i + 1]);
          i += 2;
        } else {
          raw.push_back(text[i]);
          ++i;
        }
      }
      if (i >= n) fail(TreeErrorKind::UnbalancedParens, n);
      while (!raw.empty() && is_space(raw.back())) raw.pop_back();
      if (raw.empty()) fail(TreeErrorKind::EmptyLabel, value_start);
      value = std::move(raw);
    }

    Label label{std::move(kind), std::move(value)};
    std::uint32_t id = stack.empty() ? builder.add_root(std::move(label))
                                     : builder.add_child(stack.back(), std::move(label));
    stack.push_back(id);

    // consume closers and find the next child, if any
    bool open_next = false;
    while (!open_next) {
      skip_ws();
      if (i >= n) fail(TreeErrorKind::UnbalancedParens, n);
      if (text[i] == ')') {
        ++i;
        stack.pop_back();
        if (stack.empty()) {
          skip_ws();
          if (i < n) fail(TreeErrorKind::TrailingGarbage, i);
          return builder.build();
        }
      } else if (text[i] == '(') {
        if (stack.size() >= kMaxTreeDepth) fail(TreeErrorKind::DepthLimitExceeded, i);
        open_next = true;
      } else {
        fail(TreeErrorKind::UnexpectedCharacter, i);
      }
    }
  }
}

std::string serialize_sexpr(const Tree& tree) {
  if (tree.empty()) throw TreeError(TreeErrorKind::EmptyTree, 0, "cannot serialize an empty tree");
  return tree.canonical();
}

std::vector<Tree> parse_sexpr_lines(std::istream& in) {
  std::vector<Tree> trees;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t b = 0, e = line.size();
    while (b < e && is_space(line[b])) ++b;
    while (e > b && is_space(line[e - 1])) --e;
    if (b == e) continue;
    trees.push_back(parse_sexpr(std::string_view(line).substr(b, e - b)));
  }
  return trees;
}

}  // namespace kernelguard::ast
