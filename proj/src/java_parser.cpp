// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 KernelGuard Contributors

#include "kernelguard/java_parser.hpp"

#include <array>
#include <cctype>
#include <memory>
#include <utility>
#include <vector>

namespace kernelguard::ast {

namespace {

constexpr std::array<std::string_view, 8> kModifiers = {
    "public", "private", "protected", "static", "final", "abstract", "synchronized", "native"};

constexpr std::array<std::string_view, 9> kPrimitiveTypes = {
    "int", "long", "short", "byte", "char", "boolean", "float", "double", "void"};

constexpr std::array<std::string_view, 10> kUnsupportedStatements = {
    "while", "for", "do", "switch", "try", "throw", "break", "continue", "synchronized", "assert"};

bool contains(std::span<const std::string_view> set, std::string_view s) {
  for (auto v : set)
    if (v == s) return true;
  return false;
}

struct Token {
  enum class Type { Ident, Number, String, Punct, End };
  Type type = Type::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { tokenize(); }

  const std::vector<Token>& tokens() const { return tokens_; }

private:
  [[noreturn]] void syntax_error(const std::string& msg) {
    throw JavaParseError(JavaParseError::Kind::Syntax, line_, col_,
                         "syntax error at " + std::to_string(line_) + ":" + std::to_string(col_) +
                             ": " + msg);
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (pos_ >= src_.size()) return;
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void push(Token::Type type, std::string text, int line, int col) {
    tokens_.push_back({type, std::move(text), line, col});
  }

  void tokenize() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        advance();
        advance();
        while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos_ >= src_.size()) syntax_error("unterminated block comment");
        advance();
        advance();
        continue;
      }
      int line = line_, col = col_;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
        std::string text;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '$') {
          text.push_back(peek());
          advance();
        }
        push(Token::Type::Ident, std::move(text), line, col);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string text;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          text.push_back(peek());
          advance();
        }
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
          text.push_back('.');
          advance();
          while (std::isdigit(static_cast<unsigned char>(peek()))) {
            text.push_back(peek());
            advance();
          }
        }
        // integer suffixes as written (0L, 1.5f)
        if (peek() == 'L' || peek() == 'l' || peek() == 'f' || peek() == 'F' || peek() == 'd' ||
            peek() == 'D') {
          text.push_back(peek());
          advance();
        }
        push(Token::Type::Number, std::move(text), line, col);
        continue;
      }
      if (c == '"') {
        std::string text;
        text.push_back('"');
        advance();
        while (pos_ < src_.size() && peek() != '"') {
          if (peek() == '\\') {
            text.push_back(peek());
            advance();
            if (pos_ >= src_.size()) break;
          }
          if (peek() == '\n') syntax_error("unterminated string literal");
          text.push_back(peek());
          advance();
        }
        if (pos_ >= src_.size()) syntax_error("unterminated string literal");
        text.push_back('"');
        advance();
        push(Token::Type::String, std::move(text), line, col);
        continue;
      }
      // two-character operators first
      static constexpr std::array<std::string_view, 6> two = {"==", "!=", "<=", ">=", "&&", "||"};
      std::string pair{c, peek(1)};
      bool matched = false;
      for (auto op : two) {
        if (pair == op) {
          advance();
          advance();
          push(Token::Type::Punct, std::string(op), line, col);
          matched = true;
          break;
        }
      }
      if (matched) continue;
      static constexpr std::string_view singles = "(){};,.<>+-*/=![]";
      if (singles.find(c) != std::string_view::npos) {
        advance();
        push(Token::Type::Punct, std::string(1, c), line, col);
        continue;
      }
      syntax_error(std::string("unexpected character '") + c + "'");
    }
    tokens_.push_back({Token::Type::End, "", line_, col_});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  std::vector<Token> tokens_;
};

// Lightweight parse node; converted into an ast::Tree at the end.
struct JNode {
  Label label;
  std::vector<std::unique_ptr<JNode>> children;
};

std::unique_ptr<JNode> make_node(std::string kind, std::optional<std::string> value = {}) {
  auto n = std::make_unique<JNode>();
  n->label = Label{std::move(kind), std::move(value)};
  return n;
}

class Parser {
public:
  explicit Parser(std::string_view src) : lexer_(src) {}

  Tree parse_compilation_unit() {
    auto unit = make_node("CompilationUnit");
    if (at_end()) syntax_error("expected a class declaration");
    while (!at_end()) unit->children.push_back(parse_type_declaration());

    TreeBuilder builder;
    emit(*unit, builder, /*parent=*/0, /*is_root=*/true);
    return builder.build();
  }

private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    const auto& toks = lexer_.tokens();
    return i < toks.size() ? toks[i] : toks.back();
  }

  const Token& next() {
    const Token& t = peek();
    if (t.type != Token::Type::End) ++pos_;
    return t;
  }

  bool at_end() const { return peek().type == Token::Type::End; }

  bool at_punct(std::string_view p, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.type == Token::Type::Punct && t.text == p;
  }

  bool at_ident(std::size_t ahead = 0) const { return peek(ahead).type == Token::Type::Ident; }

  bool at_keyword(std::string_view kw, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.type == Token::Type::Ident && t.text == kw;
  }

  [[noreturn]] void syntax_error(const std::string& msg) const {
    const Token& t = peek();
    throw JavaParseError(JavaParseError::Kind::Syntax, t.line, t.column,
                         "syntax error at " + std::to_string(t.line) + ":" +
                             std::to_string(t.column) + ": " + msg);
  }

  [[noreturn]] void unsupported(const std::string& construct) const {
    const Token& t = peek();
    throw JavaParseError(JavaParseError::Kind::UnsupportedConstruct, t.line, t.column,
                         "unsupported construct at " + std::to_string(t.line) + ":" +
                             std::to_string(t.column) + ": " + construct,
                         construct);
  }

  void expect_punct(std::string_view p) {
    if (!at_punct(p)) syntax_error("expected '" + std::string(p) + "'");
    next();
  }

  std::string expect_ident(const std::string& what) {
    if (!at_ident()) syntax_error("expected " + what);
    return next().text;
  }

  std::vector<std::unique_ptr<JNode>> parse_modifiers() {
    std::vector<std::unique_ptr<JNode>> mods;
    while (at_ident() && contains(kModifiers, peek().text)) {
      mods.push_back(make_node("Modifier", next().text));
    }
    return mods;
  }

  std::unique_ptr<JNode> parse_type() {
    if (!at_ident()) syntax_error("expected a type");
    if (contains(kPrimitiveTypes, peek().text)) {
      auto t = make_node("PrimitiveType", next().text);
      check_no_type_suffix();
      return t;
    }
    std::string name = next().text;
    check_no_type_suffix();
    auto t = make_node("SimpleType");
    t->children.push_back(make_node("SimpleName", name));
    return t;
  }

  void check_no_type_suffix() {
    if (at_punct("[")) unsupported("array type");
    if (at_punct("<")) {
      // `List<...>` in type position; relational '<' never follows a type
      if (at_ident(1) && (at_punct(">", 2) || at_punct(",", 2))) unsupported("generic type");
    }
  }

  std::unique_ptr<JNode> parse_type_declaration() {
    auto mods = parse_modifiers();
    if (at_keyword("interface") || at_keyword("enum") || at_keyword("record")) {
      unsupported(peek().text + " declaration");
    }
    if (!at_keyword("class")) syntax_error("expected 'class'");
    next();
    std::string name = expect_ident("class name");
    if (at_keyword("extends") || at_keyword("implements")) unsupported("class inheritance clause");
    expect_punct("{");

    auto decl = make_node("TypeDeclaration");
    for (auto& m : mods) decl->children.push_back(std::move(m));
    decl->children.push_back(make_node("TYPE_DECLARATION_KIND", "class"));
    decl->children.push_back(make_node("SimpleName", name));
    while (!at_punct("}")) {
      if (at_end()) syntax_error("unterminated class body");
      decl->children.push_back(parse_member());
    }
    next();
    return decl;
  }

  std::unique_ptr<JNode> parse_member() {
    auto mods = parse_modifiers();
    if (at_keyword("class")) unsupported("nested class declaration");
    if (!at_ident()) syntax_error("expected a member declaration");
    // constructor: Ident '(' — no return type
    if (at_punct("(", 1)) unsupported("constructor declaration");
    auto type = parse_type();
    std::string name = expect_ident("method name");
    if (!at_punct("(")) unsupported("field declaration");
    next();

    auto method = make_node("MethodDeclaration");
    for (auto& m : mods) method->children.push_back(std::move(m));
    method->children.push_back(std::move(type));
    method->children.push_back(make_node("SimpleName", name));
    if (!at_punct(")")) {
      while (true) {
        auto param = make_node("SingleVariableDeclaration");
        param->children.push_back(parse_type());
        param->children.push_back(make_node("SimpleName", expect_ident("parameter name")));
        method->children.push_back(std::move(param));
        if (at_punct(",")) {
          next();
          continue;
        }
        break;
      }
    }
    expect_punct(")");
    if (at_keyword("throws")) unsupported("throws clause");
    if (!at_punct("{")) syntax_error("expected method body");
    method->children.push_back(parse_block());
    return method;
  }

  std::unique_ptr<JNode> parse_block() {
    expect_punct("{");
    auto block = make_node("Block");
    while (!at_punct("}")) {
      if (at_end()) syntax_error("unterminated block");
      block->children.push_back(parse_statement());
    }
    next();
    return block;
  }

  std::unique_ptr<JNode> parse_statement() {
    if (at_punct("{")) return parse_block();
    if (at_keyword("if")) return parse_if();
    if (at_keyword("return")) {
      next();
      auto ret = make_node("ReturnStatement");
      if (!at_punct(";")) ret->children.push_back(parse_expression());
      expect_punct(";");
      return ret;
    }
    if (at_ident() && contains(kUnsupportedStatements, peek().text)) {
      unsupported(peek().text + " statement");
    }
    if (at_keyword("new")) unsupported("new expression");
    if (at_ident()) {
      bool primitive = contains(kPrimitiveTypes, peek().text);
      if (primitive || at_ident(1)) return parse_variable_declaration();
      if (at_punct("=", 1)) unsupported("assignment");
      auto stmt = make_node("ExpressionStatement");
      stmt->children.push_back(parse_expression());
      expect_punct(";");
      return stmt;
    }
    syntax_error("expected a statement");
  }

  std::unique_ptr<JNode> parse_if() {
    next();
    expect_punct("(");
    auto stmt = make_node("IfStatement");
    stmt->children.push_back(parse_expression());
    expect_punct(")");
    stmt->children.push_back(parse_statement());
    if (at_keyword("else")) {
      next();
      stmt->children.push_back(parse_statement());
    }
    return stmt;
  }

  std::unique_ptr<JNode> parse_variable_declaration() {
    auto decl = make_node("VariableDeclarationStatement");
    decl->children.push_back(parse_type());
    while (true) {
      auto frag = make_node("VariableDeclarationFragment");
      frag->children.push_back(make_node("SimpleName", expect_ident("variable name")));
      if (at_punct("=")) {
        next();
        frag->children.push_back(parse_expression());
      }
      decl->children.push_back(std::move(frag));
      if (at_punct(",")) {
        next();
        continue;
      }
      break;
    }
    expect_punct(";");
    return decl;
  }

  std::unique_ptr<JNode> parse_expression() { return parse_binary(0); }

  // precedence levels, lowest first
  static constexpr std::array<std::array<std::string_view, 4>, 6> kLevels = {{
      {"||", "", "", ""},
      {"&&", "", "", ""},
      {"==", "!=", "", ""},
      {"<", ">", "<=", ">="},
      {"+", "-", "", ""},
      {"*", "/", "", ""},
  }};

  bool at_level_op(std::size_t level) const {
    if (peek().type != Token::Type::Punct) return false;
    for (auto op : kLevels[level]) {
      if (!op.empty() && peek().text == op) return true;
    }
    return false;
  }

  std::unique_ptr<JNode> parse_binary(std::size_t level) {
    if (level >= kLevels.size()) return parse_primary();
    auto left = parse_binary(level + 1);
    while (at_level_op(level)) {
      std::string op = next().text;
      auto right = parse_binary(level + 1);
      auto infix = make_node("InfixExpression");
      infix->children.push_back(std::move(left));
      infix->children.push_back(make_node("INFIX_EXPRESSION_OPERATOR", op));
      infix->children.push_back(std::move(right));
      left = std::move(infix);
    }
    return left;
  }

  std::unique_ptr<JNode> parse_primary() {
    if (at_punct("(")) {
      next();
      auto inner = parse_expression();  // grouping parentheses are not AST nodes
      expect_punct(")");
      return inner;
    }
    if (peek().type == Token::Type::Number) return make_node("NumberLiteral", next().text);
    if (peek().type == Token::Type::String) return make_node("StringLiteral", next().text);
    if (at_keyword("true") || at_keyword("false")) return make_node("BooleanLiteral", next().text);
    if (at_keyword("null")) unsupported("null literal");
    if (at_keyword("new")) unsupported("new expression");
    if (at_punct("-") || at_punct("!")) unsupported("unary operator");
    if (at_ident()) {
      std::string first = next().text;
      if (at_punct("(")) return parse_invocation({}, first);
      if (at_punct(".")) {
        next();
        std::string second = expect_ident("member name");
        if (at_punct("(")) return parse_invocation(first, second);
        unsupported("field access");
      }
      return make_node("SimpleName", first);
    }
    syntax_error("expected an expression");
  }

  std::unique_ptr<JNode> parse_invocation(std::optional<std::string> receiver, std::string name) {
    expect_punct("(");
    auto call = make_node("MethodInvocation");
    if (receiver) call->children.push_back(make_node("SimpleName", *receiver));
    call->children.push_back(make_node("SimpleName", name));
    if (!at_punct(")")) {
      while (true) {
        call->children.push_back(parse_expression());
        if (at_punct(",")) {
          next();
          continue;
        }
        break;
      }
    }
    expect_punct(")");
    return call;
  }

  void emit(const JNode& node, TreeBuilder& builder, std::uint32_t parent, bool is_root) {
    std::uint32_t id =
        is_root ? builder.add_root(node.label) : builder.add_child(parent, node.label);
    for (const auto& child : node.children) emit(*child, builder, id, false);
  }

  Lexer lexer_;
  std::size_t pos_ = 0;
};

}  // namespace

JavaParseError::JavaParseError(Kind kind, int line, int column, const std::string& what,
                               std::string construct)
    : std::runtime_error(what),
      kind_(kind),
      line_(line),
      column_(column),
      construct_(std::move(construct)) {}

std::string wrap_in_dummy_class(std::span<const std::string> method_sources) {
  if (method_sources.empty()) {
    throw JavaParseError(JavaParseError::Kind::EmptyInput, 0, 0,
                         "no method sources to wrap");
  }
  std::string out = "public class ";
  out += kDummyClassName;
  out += " {\n";
  for (const auto& method : method_sources) {
    out += method;
    out += "\n";
  }
  out += "}\n";
  return out;
}

Tree parse_java_subset(std::string_view source) {
  Parser parser(source);
  return parser.parse_compilation_unit();
}

}  // namespace kernelguard::ast
