// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

#include <doctest.h>

#include "kernelguard/ast.hpp"
#include "kernelguard/java_parser.hpp"

using namespace kernelguard;

namespace {

constexpr const char* kExampleSource =
    "public class Example {   \n"
    "\tpublic String foo(int i) { \t\n"
    "\t\tif (i == 0) return \"Foo!\";    \n"
    "\t}\n"
    "}\n";

constexpr const char* kExampleCanonical =
    "(CompilationUnit(TypeDeclaration(Modifier:public)(TYPE_DECLARATION_KIND:class)"
    "(SimpleName:Example)(MethodDeclaration(Modifier:public)(SimpleType(SimpleName:String))"
    "(SimpleName:foo)(SingleVariableDeclaration(PrimitiveType:int)(SimpleName:i))"
    "(Block(IfStatement(InfixExpression(SimpleName:i)(INFIX_EXPRESSION_OPERATOR:==)"
    "(NumberLiteral:0))(ReturnStatement(StringLiteral:\"Foo!\")))))))";

}  // namespace

TEST_CASE("the example class parses to the expected s-expression") {
  auto tree = ast::parse_java_subset(kExampleSource);
  CHECK(tree.canonical() == kExampleCanonical);
  CHECK(tree.node_count() == 21);
}

TEST_CASE("empty class") {
  auto tree = ast::parse_java_subset("class X {}");
  CHECK(tree.canonical() ==
        "(CompilationUnit(TypeDeclaration(TYPE_DECLARATION_KIND:class)(SimpleName:X)))");
}

TEST_CASE("local variable declaration matches the standard fragment shape") {
  auto source = ast::wrap_in_dummy_class(std::vector<std::string>{"void m() { int i = 0; }"});
  auto tree = ast::parse_java_subset(source);
  CHECK(tree.canonical().find("(VariableDeclarationStatement(PrimitiveType:int)"
                              "(VariableDeclarationFragment(SimpleName:i)(NumberLiteral:0)))") !=
        std::string::npos);
}

TEST_CASE("wrap_in_dummy_class") {
  std::vector<std::string> methods = {"public String foo(int i) { return \"x\"; }"};
  auto wrapped = ast::wrap_in_dummy_class(methods);
  CHECK(wrapped.find("public class __KernelGuardWrapper__ {") == 0);
  CHECK(wrapped.find("public String foo") != std::string::npos);

  std::vector<std::string> two = {"int a() { return 1; }", "int b() { return 2; }"};
  auto both = ast::wrap_in_dummy_class(two);
  CHECK(both.find("int a()") < both.find("int b()"));

  CHECK_THROWS_AS(ast::wrap_in_dummy_class(std::vector<std::string>{}), ast::JavaParseError);
}

TEST_CASE("declarations, calls, and operators") {
  auto tree = ast::parse_java_subset(
      "class T { int f(int a, long b) {\n"
      "  int x = a * 2 + 1, y = 7;\n"
      "  boolean flag = true;\n"
      "  if (a <= b && x != y) { log(\"hi\", x); return x / y; } else return y - 1;\n"
      "} }");
  const auto& s = tree.canonical();
  CHECK(s.find("(InfixExpression(InfixExpression(SimpleName:a)(INFIX_EXPRESSION_OPERATOR:*)"
               "(NumberLiteral:2))(INFIX_EXPRESSION_OPERATOR:+)(NumberLiteral:1))") !=
        std::string::npos);
  CHECK(s.find("(BooleanLiteral:true)") != std::string::npos);
  CHECK(s.find("(MethodInvocation(SimpleName:log)(StringLiteral:\"hi\")(SimpleName:x))") !=
        std::string::npos);
  CHECK(s.find("(INFIX_EXPRESSION_OPERATOR:&&)") != std::string::npos);
}

TEST_CASE("method call with simple receiver") {
  auto tree = ast::parse_java_subset("class T { void f() { sys.print(1); } }");
  CHECK(tree.canonical().find(
            "(MethodInvocation(SimpleName:sys)(SimpleName:print)(NumberLiteral:1))") !=
        std::string::npos);
}

TEST_CASE("grouping parentheses are not AST nodes") {
  auto a = ast::parse_java_subset("class T { int f(int x) { return (x + 1) * 2; } }");
  CHECK(a.canonical().find("(InfixExpression(InfixExpression(SimpleName:x)"
                           "(INFIX_EXPRESSION_OPERATOR:+)(NumberLiteral:1))"
                           "(INFIX_EXPRESSION_OPERATOR:*)(NumberLiteral:2))") !=
        std::string::npos);
}

TEST_CASE("unsupported constructs are named") {
  auto expect_unsupported = [](std::string_view source, std::string_view construct) {
    try {
      ast::parse_java_subset(source);
      FAIL_CHECK("expected UnsupportedConstruct for: " << source);
    } catch (const ast::JavaParseError& e) {
      CHECK(e.kind() == ast::JavaParseError::Kind::UnsupportedConstruct);
      CHECK(e.construct() == construct);
    }
  };
  expect_unsupported("class T { void f() { while (true) { } } }", "while statement");
  expect_unsupported("class T { void f() { for (;;) { } } }", "for statement");
  expect_unsupported("class T { void f(int i) { i = 5; } }", "assignment");
  expect_unsupported("class T { int[] f() { return null; } }", "array type");
  expect_unsupported("class T { void f() { int x = a.b; } }", "field access");
  expect_unsupported("class T { T() { } }", "constructor declaration");
  expect_unsupported("class T { int x; }", "field declaration");
  expect_unsupported("interface I { }", "interface declaration");
}

TEST_CASE("syntax errors carry line and column") {
  try {
    ast::parse_java_subset("class T {\n  void f( { }\n}");
    FAIL_CHECK("expected a syntax error");
  } catch (const ast::JavaParseError& e) {
    CHECK(e.kind() == ast::JavaParseError::Kind::Syntax);
    CHECK(e.line() == 2);
    CHECK(e.column() > 0);
  }
}

TEST_CASE("parsing is deterministic") {
  auto a = ast::parse_java_subset(kExampleSource);
  auto b = ast::parse_java_subset(kExampleSource);
  CHECK(a.canonical() == b.canonical());
}
