// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "kernelguard/ast.hpp"

namespace kernelguard::ast {

class JavaParseError : public std::runtime_error {
public:
  enum class Kind { Syntax, UnsupportedConstruct, EmptyInput };

  JavaParseError(Kind kind, int line, int column, const std::string& what,
                 std::string construct = {});

  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }
  // Name of the offending construct for UnsupportedConstruct errors.
  const std::string& construct() const { return construct_; }

private:
  Kind kind_;
  int line_;
  int column_;
  std::string construct_;
};

inline constexpr std::string_view kDummyClassName = "__KernelGuardWrapper__";

/// Wraps complete method bodies in a single dummy class so they parse as a
/// compilation unit. Throws JavaParseError(EmptyInput) on an empty list.
std::string wrap_in_dummy_class(std::span<const std::string> method_sources);

/// Parses a compilation unit of the supported Java-like subset into a tree
/// using the standard JDT node vocabulary (CompilationUnit, TypeDeclaration,
/// MethodDeclaration, Block, IfStatement, ReturnStatement, InfixExpression,
/// VariableDeclarationStatement/Fragment, SingleVariableDeclaration,
/// MethodInvocation, SimpleName, NumberLiteral, StringLiteral,
/// BooleanLiteral, PrimitiveType, SimpleType, Modifier,
/// TYPE_DECLARATION_KIND, INFIX_EXPRESSION_OPERATOR).
///
/// Supported: class and method declarations, modifiers, primitive and
/// simple types, local variable declarations with initializers, if/else,
/// return, blocks, infix expressions (== != < > <= >= + - * / && ||),
/// method calls with an optional simple receiver, identifiers, and
/// number/string/boolean literals. Anything else raises
/// UnsupportedConstruct naming the construct.
Tree parse_java_subset(std::string_view source);

}  // namespace kernelguard::ast
