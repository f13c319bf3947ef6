#pragma once

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "iff/level.hpp"

namespace iff {

struct SourcePos {
  int line = 0;
  int column = 0;
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

// ---------------------------------------------------------------------------
// Tokens

enum class TokenKind { lparen, rparen, lbracket, rbracket, lbrace, rbrace, symbol, variable, keyword };

struct Token {
  TokenKind kind;
  std::string text;
  int line;
  int column;
};

class SyntaxError : public std::runtime_error {
 public:
  enum class Code {
    illegal_character,
    unbalanced_parens,
    malformed_quantifier,
    arity_error,
    unexpected_token,
    malformed_namespace,
    duplicate_namespace,
  };

  SyntaxError(Code code, int line, int column, const std::string& message);

  Code code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }
  /// Stable identifier such as `UnbalancedParens`.
  std::string_view code_name() const;

 private:
  Code code_;
  int line_;
  int column_;
};

struct LexOptions {
  /// Braces are only meaningful in interpretation files.
  bool braces = false;
};

/// Splits source text into tokens. Comments (`;` to end of line) and whitespace
/// are dropped; `((#n+1).set:set` style grouped level prefixes are folded into
/// one symbol.
std::vector<Token> tokenize(std::string_view text, LexOptions options = {});

bool is_keyword_text(std::string_view word);

// ---------------------------------------------------------------------------
// Expressions

class Expr;
using ExprRef = std::shared_ptr<const Expr>;

enum class Op { and_, or_, implies, iff, not_ };
enum class Quant { forall, exists };

std::string_view op_text(Op op);
std::string_view quant_text(Quant q);

struct Name {
  std::string text;
};

/// `name` keeps the spelling used in source, normally with its leading `?`.
struct Variable {
  std::string name;
};

struct Tuple {
  std::vector<Expr> items;
};

struct Apply {
  ExprRef head;
  std::vector<Expr> args;
};

struct Equation {
  ExprRef lhs;
  ExprRef rhs;
};

struct Connective {
  Op op;
  std::vector<Expr> args;
};

/// A sort-restricted binding `(SORT ?v)`. A null sort marks an unrestricted
/// binding written `?v`, which the checker rejects.
struct Binding {
  ExprRef sort;
  std::string variable;
};

struct Quantifier {
  Quant kind;
  std::vector<Binding> bindings;
  ExprRef body;
};

class Expr {
 public:
  using Node = std::variant<Name, Variable, Tuple, Apply, Equation, Connective, Quantifier>;

  Expr(Node node, SourcePos pos = {}) : node_(std::move(node)), pos_(pos) {}

  static Expr name(std::string text, SourcePos pos = {});
  static Expr variable(std::string name, SourcePos pos = {});
  static Expr tuple(std::vector<Expr> items, SourcePos pos = {});
  static Expr apply(Expr head, std::vector<Expr> args, SourcePos pos = {});
  static Expr equation(Expr lhs, Expr rhs, SourcePos pos = {});
  static Expr connective(Op op, std::vector<Expr> args, SourcePos pos = {});
  static Expr quantifier(Quant kind, std::vector<Binding> bindings, Expr body, SourcePos pos = {});

  const Node& node() const { return node_; }
  SourcePos pos() const { return pos_; }

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node_);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(node_);
  }

  /// Structural equality; source positions are ignored.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  Node node_;
  SourcePos pos_;
};

inline ExprRef share(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

/// Parses exactly one expression from `tokens`.
Expr parse_expr(std::span<const Token> tokens);
/// Convenience: tokenize then parse_expr.
Expr parse_expr(std::string_view text);

/// Every top-level expression in `text`, in order.
std::vector<Expr> parse_expr_list(std::string_view text);

/// Canonical single-line rendering; `parse_expr(print_canonical(e)) == e`.
std::string print_canonical(const Expr& e);

/// Tagged tree dump, e.g. `(Equation (Name a) (Name a))`.
std::string dump_ast(const Expr& e);

// ---------------------------------------------------------------------------
// Source units

struct NamespaceBlock {
  std::string name;
  Level level;
  std::vector<Expr> axioms;
  SourcePos pos;
};

struct SourceUnit {
  std::string file;
  std::vector<NamespaceBlock> namespaces;
  /// Comments are dropped by the lexer and never reach canonical output.
  bool comments_preserved = false;
};

/// Parses a `.iff` file: a sequence of `(namespace NAME (level LVL) AXIOM...)`.
SourceUnit parse_unit(std::string_view text, std::string file = "<input>");

/// Canonical file rendering: one namespace header per block, one axiom per line.
std::string print_unit(const SourceUnit& unit);

}  // namespace iff
