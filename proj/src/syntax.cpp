#include "iff/syntax.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace iff {

SyntaxError::SyntaxError(Code code, int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      code_(code),
      line_(line),
      column_(column) {}

std::string_view SyntaxError::code_name() const {
  switch (code_) {
    case Code::illegal_character: return "IllegalCharacter";
    case Code::unbalanced_parens: return "UnbalancedParens";
    case Code::malformed_quantifier: return "MalformedQuantifier";
    case Code::arity_error: return "ArityError";
    case Code::unexpected_token: return "UnexpectedToken";
    case Code::malformed_namespace: return "MalformedNamespace";
    case Code::duplicate_namespace: return "DuplicateNamespace";
  }
  return "SyntaxError";
}

namespace {

constexpr std::array<std::string_view, 7> kWordKeywords = {"forall", "exists", "and", "or",
                                                           "implies", "iff", "not"};

bool is_symbol_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '#' ||
         c == '+' || c == '.' || c == ':' || c == '_' || c == '-';
}

class Lexer {
 public:
  Lexer(std::string_view text, LexOptions opts) : text_(text), opts_(opts) {}

  std::vector<Token> run() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == '\n') {
        advance();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        advance();
        continue;
      }
      if (c == ';') {
        while (i_ < text_.size() && text_[i_] != '\n') advance();
        continue;
      }
      int line = line_, col = col_;
      switch (c) {
        case '(':
          if (try_grouped_prefix()) break;
          emit(TokenKind::lparen, "(", line, col);
          advance();
          break;
        case ')': emit(TokenKind::rparen, ")", line, col); advance(); break;
        case '[': emit(TokenKind::lbracket, "[", line, col); advance(); break;
        case ']': emit(TokenKind::rbracket, "]", line, col); advance(); break;
        case '=': emit(TokenKind::keyword, "=", line, col); advance(); break;
        case '{':
        case '}':
          if (!opts_.braces) illegal(line, col, c);
          emit(c == '{' ? TokenKind::lbrace : TokenKind::rbrace, std::string(1, c), line, col);
          advance();
          break;
        case '?': {
          advance();
          std::string word = scan_symbol();
          if (word.empty()) illegal(line_, col_, i_ < text_.size() ? text_[i_] : '?');
          emit(TokenKind::variable, "?" + word, line, col);
          break;
        }
        default: {
          if (!is_symbol_char(c)) illegal(line, col, c);
          std::string word = scan_symbol();
          bool operator_position = !out_.empty() && out_.back().kind == TokenKind::lparen;
          TokenKind kind = operator_position && is_keyword_text(word) ? TokenKind::keyword : TokenKind::symbol;
          emit(kind, std::move(word), line, col);
          break;
        }
      }
    }
    return std::move(out_);
  }

 private:
  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  std::string scan_symbol() {
    std::string word;
    while (i_ < text_.size() && is_symbol_char(text_[i_])) {
      word.push_back(text_[i_]);
      advance();
    }
    return word;
  }

  // `(#n+1).set:set` is typographic grouping of the level prefix; fold it to
  // `#n+1.set:set`.
  bool try_grouped_prefix() {
    std::size_t j = i_ + 1;
    if (j >= text_.size() || text_[j] != '#') return false;
    std::size_t k = j;
    while (k < text_.size() && is_symbol_char(text_[k])) {
      if (text_[k] == '.' || text_[k] == ':') return false;
      ++k;
    }
    if (k + 1 >= text_.size() || text_[k] != ')' || text_[k + 1] != '.') return false;
    int line = line_, col = col_;
    advance();  // (
    std::string word = scan_symbol();
    advance();  // )
    word += scan_symbol();
    emit(TokenKind::symbol, std::move(word), line, col);
    return true;
  }

  [[noreturn]] void illegal(int line, int col, char c) {
    std::string shown = (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f)
                            ? "byte 0x" + to_hex(static_cast<unsigned char>(c))
                            : std::string("'") + c + "'";
    throw SyntaxError(SyntaxError::Code::illegal_character, line, col, "illegal character " + shown);
  }

  static std::string to_hex(unsigned char b) {
    const char* digits = "0123456789abcdef";
    return {digits[b >> 4], digits[b & 15]};
  }

  void emit(TokenKind k, std::string text, int line, int col) {
    out_.push_back(Token{k, std::move(text), line, col});
  }

  std::string_view text_;
  LexOptions opts_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
  std::vector<Token> out_;
};

}  // namespace

bool is_keyword_text(std::string_view word) {
  return word == "=" || std::find(kWordKeywords.begin(), kWordKeywords.end(), word) != kWordKeywords.end();
}

std::vector<Token> tokenize(std::string_view text, LexOptions options) {
  return Lexer(text, options).run();
}

// ---------------------------------------------------------------------------
// Expr

std::string_view op_text(Op op) {
  switch (op) {
    case Op::and_: return "and";
    case Op::or_: return "or";
    case Op::implies: return "implies";
    case Op::iff: return "iff";
    case Op::not_: return "not";
  }
  return "";
}

std::string_view quant_text(Quant q) { return q == Quant::forall ? "forall" : "exists"; }

Expr Expr::name(std::string text, SourcePos pos) { return Expr(Name{std::move(text)}, pos); }
Expr Expr::variable(std::string name, SourcePos pos) { return Expr(Variable{std::move(name)}, pos); }
Expr Expr::tuple(std::vector<Expr> items, SourcePos pos) { return Expr(Tuple{std::move(items)}, pos); }
Expr Expr::apply(Expr head, std::vector<Expr> args, SourcePos pos) {
  return Expr(Apply{share(std::move(head)), std::move(args)}, pos);
}
Expr Expr::equation(Expr lhs, Expr rhs, SourcePos pos) {
  return Expr(Equation{share(std::move(lhs)), share(std::move(rhs))}, pos);
}
Expr Expr::connective(Op op, std::vector<Expr> args, SourcePos pos) {
  return Expr(Connective{op, std::move(args)}, pos);
}
Expr Expr::quantifier(Quant kind, std::vector<Binding> bindings, Expr body, SourcePos pos) {
  return Expr(Quantifier{kind, std::move(bindings), share(std::move(body))}, pos);
}

namespace {

bool ref_eq(const ExprRef& a, const ExprRef& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

struct NodeEq {
  bool operator()(const Name& a, const Name& b) const { return a.text == b.text; }
  bool operator()(const Variable& a, const Variable& b) const { return a.name == b.name; }
  bool operator()(const Tuple& a, const Tuple& b) const { return a.items == b.items; }
  bool operator()(const Apply& a, const Apply& b) const { return ref_eq(a.head, b.head) && a.args == b.args; }
  bool operator()(const Equation& a, const Equation& b) const {
    return ref_eq(a.lhs, b.lhs) && ref_eq(a.rhs, b.rhs);
  }
  bool operator()(const Connective& a, const Connective& b) const { return a.op == b.op && a.args == b.args; }
  bool operator()(const Quantifier& a, const Quantifier& b) const {
    if (a.kind != b.kind || a.bindings.size() != b.bindings.size()) return false;
    for (std::size_t i = 0; i < a.bindings.size(); ++i) {
      if (a.bindings[i].variable != b.bindings[i].variable) return false;
      if (!ref_eq(a.bindings[i].sort, b.bindings[i].sort)) return false;
    }
    return ref_eq(a.body, b.body);
  }
  template <class A, class B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool operator==(const Expr& a, const Expr& b) { return std::visit(NodeEq{}, a.node_, b.node_); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : toks_(tokens) {}

  Expr parse_one() {
    if (at_end()) throw SyntaxError(SyntaxError::Code::unbalanced_parens, 1, 1, "empty input");
    return expr();
  }

  bool at_end() const { return i_ >= toks_.size(); }
  const Token& peek() const { return toks_[i_]; }
  std::size_t index() const { return i_; }

  const Token& take() {
    if (at_end()) eof_error();
    return toks_[i_++];
  }

  [[noreturn]] void eof_error() const {
    int line = toks_.empty() ? 1 : toks_.back().line;
    int col = toks_.empty() ? 1 : toks_.back().column;
    throw SyntaxError(SyntaxError::Code::unbalanced_parens, line, col, "unexpected end of input: missing ')'");
  }

  Expr expr() {
    const Token& t = take();
    SourcePos pos{t.line, t.column};
    switch (t.kind) {
      case TokenKind::symbol:
        if (bound_as_symbol(t.text)) return Expr::variable(t.text, pos);
        return Expr::name(t.text, pos);
      case TokenKind::variable: return Expr::variable(t.text, pos);
      case TokenKind::lbracket: return tuple(pos);
      case TokenKind::lparen: return list(pos);
      case TokenKind::rparen:
      case TokenKind::rbracket:
        throw SyntaxError(SyntaxError::Code::unbalanced_parens, t.line, t.column,
                          "unexpected '" + t.text + "'");
      case TokenKind::keyword:
        throw SyntaxError(SyntaxError::Code::unexpected_token, t.line, t.column,
                          "keyword '" + t.text + "' outside operator position");
      default:
        throw SyntaxError(SyntaxError::Code::unexpected_token, t.line, t.column,
                          "unexpected '" + t.text + "'");
    }
  }

 private:
  Expr tuple(SourcePos pos) {
    std::vector<Expr> items;
    while (true) {
      if (at_end()) eof_error();
      if (peek().kind == TokenKind::rbracket) break;
      if (peek().kind == TokenKind::rparen)
        throw SyntaxError(SyntaxError::Code::unbalanced_parens, peek().line, peek().column,
                          "')' closes '[' opened at " + std::to_string(pos.line) + ":" +
                              std::to_string(pos.column));
      items.push_back(expr());
    }
    ++i_;
    if (items.size() < 2)
      throw SyntaxError(SyntaxError::Code::arity_error, pos.line, pos.column, "a tuple needs at least two items");
    return Expr::tuple(std::move(items), pos);
  }

  std::vector<Expr> rest_of_list(SourcePos open) {
    std::vector<Expr> items;
    while (true) {
      if (at_end()) eof_error();
      if (peek().kind == TokenKind::rparen) break;
      if (peek().kind == TokenKind::rbracket)
        throw SyntaxError(SyntaxError::Code::unbalanced_parens, peek().line, peek().column,
                          "']' closes '(' opened at " + std::to_string(open.line) + ":" +
                              std::to_string(open.column));
      items.push_back(expr());
    }
    ++i_;
    return items;
  }

  Expr list(SourcePos pos) {
    if (at_end()) eof_error();
    const Token& head = peek();
    if (head.kind == TokenKind::rparen)
      throw SyntaxError(SyntaxError::Code::arity_error, pos.line, pos.column, "empty list");
    if (head.kind == TokenKind::keyword) {
      ++i_;
      if (head.text == "=") {
        auto args = rest_of_list(pos);
        if (args.size() != 2)
          throw SyntaxError(SyntaxError::Code::arity_error, pos.line, pos.column,
                            "'=' takes exactly 2 arguments, got " + std::to_string(args.size()));
        return Expr::equation(std::move(args[0]), std::move(args[1]), pos);
      }
      if (head.text == "forall") return quantifier(Quant::forall, pos);
      if (head.text == "exists") return quantifier(Quant::exists, pos);
      return connective(head.text, pos);
    }
    Expr fn = expr();
    auto args = rest_of_list(pos);
    if (args.empty())
      throw SyntaxError(SyntaxError::Code::arity_error, pos.line, pos.column, "application without arguments");
    return Expr::apply(std::move(fn), std::move(args), pos);
  }

  Expr connective(const std::string& word, SourcePos pos) {
    Op op = word == "and" ? Op::and_
          : word == "or" ? Op::or_
          : word == "implies" ? Op::implies
          : word == "iff" ? Op::iff
                          : Op::not_;
    auto args = rest_of_list(pos);
    auto arity = [&](bool ok, const char* need) {
      if (!ok)
        throw SyntaxError(SyntaxError::Code::arity_error, pos.line, pos.column,
                          "'" + word + "' takes " + need + " argument(s), got " + std::to_string(args.size()));
    };
    switch (op) {
      case Op::not_: arity(args.size() == 1, "exactly 1"); break;
      case Op::implies:
      case Op::iff: arity(args.size() == 2, "exactly 2"); break;
      case Op::and_:
      case Op::or_: arity(args.size() >= 2, "at least 2"); break;
    }
    if ((op == Op::and_ || op == Op::or_) && args.size() > 2) {
      Expr acc = Expr::connective(op, {std::move(args[0]), std::move(args[1])}, pos);
      for (std::size_t k = 2; k < args.size(); ++k) acc = Expr::connective(op, {std::move(acc), std::move(args[k])}, pos);
      return acc;
    }
    return Expr::connective(op, std::move(args), pos);
  }

  [[noreturn]] void bad_quantifier(const Token& at, const std::string& why) {
    throw SyntaxError(SyntaxError::Code::malformed_quantifier, at.line, at.column, why);
  }

  std::string binding_variable(const Token& t) {
    if (t.kind == TokenKind::variable) return t.text;
    if (t.kind == TokenKind::symbol && !is_keyword_text(t.text)) return t.text;
    bad_quantifier(t, "expected a variable in binding, got '" + t.text + "'");
  }

  Expr quantifier(Quant q, SourcePos pos) {
    if (at_end()) eof_error();
    const Token& open = take();
    if (open.kind != TokenKind::lparen) bad_quantifier(open, "expected '(' starting the binding list");
    std::vector<Binding> bindings;
    std::size_t scope_mark = symbol_scope_.size();
    while (true) {
      if (at_end()) eof_error();
      const Token& t = take();
      if (t.kind == TokenKind::rparen) break;
      if (t.kind == TokenKind::variable) {
        bindings.push_back(Binding{nullptr, t.text});
        continue;
      }
      if (t.kind != TokenKind::lparen) bad_quantifier(t, "a binding must be '(SORT ?var)'");
      if (at_end()) eof_error();
      if (peek().kind == TokenKind::keyword) bad_quantifier(peek(), "keyword '" + peek().text + "' used as a sort");
      if (peek().kind == TokenKind::rparen) bad_quantifier(peek(), "empty binding");
      Expr sort = expr();
      if (at_end()) eof_error();
      const Token& var = take();
      if (var.kind == TokenKind::rparen) bad_quantifier(var, "binding is missing its variable");
      std::string name = binding_variable(var);
      if (at_end()) eof_error();
      const Token& close = take();
      if (close.kind != TokenKind::rparen) bad_quantifier(close, "a binding pairs one sort with one variable");
      if (var.kind == TokenKind::symbol) symbol_scope_.push_back(name);
      bindings.push_back(Binding{share(std::move(sort)), std::move(name)});
    }
    if (bindings.empty()) bad_quantifier(open, "empty binding list");
    if (at_end()) eof_error();
    if (peek().kind == TokenKind::rparen) bad_quantifier(peek(), "quantifier without a body");
    Expr body = expr();
    if (at_end()) eof_error();
    const Token& close = take();
    if (close.kind != TokenKind::rparen) bad_quantifier(close, "quantifier takes one body");
    symbol_scope_.resize(scope_mark);
    return Expr::quantifier(q, std::move(bindings), std::move(body), pos);
  }

  bool bound_as_symbol(const std::string& s) const {
    return std::find(symbol_scope_.begin(), symbol_scope_.end(), s) != symbol_scope_.end();
  }

  std::span<const Token> toks_;
  std::size_t i_ = 0;
  // Bound variables written without `?`, as in `(forall ((X0 x0)) P)`.
  std::vector<std::string> symbol_scope_;
};

}  // namespace

Expr parse_expr(std::span<const Token> tokens) {
  Parser p(tokens);
  Expr e = p.parse_one();
  if (!p.at_end()) {
    const Token& t = p.peek();
    auto code = t.kind == TokenKind::rparen || t.kind == TokenKind::rbracket ? SyntaxError::Code::unbalanced_parens
                                                                             : SyntaxError::Code::unexpected_token;
    throw SyntaxError(code, t.line, t.column, "trailing input after expression: '" + t.text + "'");
  }
  return e;
}

Expr parse_expr(std::string_view text) {
  auto toks = tokenize(text);
  return parse_expr(std::span<const Token>(toks));
}

std::vector<Expr> parse_expr_list(std::string_view text) {
  auto toks = tokenize(text);
  Parser p{std::span<const Token>(toks)};
  std::vector<Expr> out;
  while (!p.at_end()) out.push_back(p.parse_one());
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_to(std::string& out, const Expr& e);

void print_list(std::string& out, const std::vector<Expr>& items) {
  for (const auto& x : items) {
    out += ' ';
    print_to(out, x);
  }
}

void print_to(std::string& out, const Expr& e) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Name>) {
          out += n.text;
        } else if constexpr (std::is_same_v<T, Variable>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, Tuple>) {
          out += '[';
          for (std::size_t i = 0; i < n.items.size(); ++i) {
            if (i) out += ' ';
            print_to(out, n.items[i]);
          }
          out += ']';
        } else if constexpr (std::is_same_v<T, Apply>) {
          out += '(';
          print_to(out, *n.head);
          print_list(out, n.args);
          out += ')';
        } else if constexpr (std::is_same_v<T, Equation>) {
          out += "(= ";
          print_to(out, *n.lhs);
          out += ' ';
          print_to(out, *n.rhs);
          out += ')';
        } else if constexpr (std::is_same_v<T, Connective>) {
          out += '(';
          out += op_text(n.op);
          print_list(out, n.args);
          out += ')';
        } else if constexpr (std::is_same_v<T, Quantifier>) {
          out += '(';
          out += quant_text(n.kind);
          out += " (";
          for (std::size_t i = 0; i < n.bindings.size(); ++i) {
            if (i) out += ' ';
            const auto& b = n.bindings[i];
            if (!b.sort) {
              out += b.variable;
              continue;
            }
            out += '(';
            print_to(out, *b.sort);
            out += ' ';
            out += b.variable;
            out += ')';
          }
          out += ") ";
          print_to(out, *n.body);
          out += ')';
        }
      },
      e.node());
}

void dump_to(std::string& out, const Expr& e) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Name>) {
          out += "(Name " + n.text + ")";
        } else if constexpr (std::is_same_v<T, Variable>) {
          out += "(Variable " + n.name + ")";
        } else if constexpr (std::is_same_v<T, Tuple>) {
          out += "(Tuple";
          for (const auto& x : n.items) {
            out += ' ';
            dump_to(out, x);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, Apply>) {
          out += "(Apply ";
          dump_to(out, *n.head);
          for (const auto& x : n.args) {
            out += ' ';
            dump_to(out, x);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, Equation>) {
          out += "(Equation ";
          dump_to(out, *n.lhs);
          out += ' ';
          dump_to(out, *n.rhs);
          out += ')';
        } else if constexpr (std::is_same_v<T, Connective>) {
          out += "(Connective ";
          out += op_text(n.op);
          for (const auto& x : n.args) {
            out += ' ';
            dump_to(out, x);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, Quantifier>) {
          out += "(Quantifier ";
          out += quant_text(n.kind);
          out += " (";
          for (std::size_t i = 0; i < n.bindings.size(); ++i) {
            if (i) out += ' ';
            out += "(Binding ";
            if (n.bindings[i].sort) dump_to(out, *n.bindings[i].sort);
            else out += "unsorted";
            out += ' ' + n.bindings[i].variable + ')';
          }
          out += ") ";
          dump_to(out, *n.body);
          out += ')';
        }
      },
      e.node());
}

}  // namespace

std::string print_canonical(const Expr& e) {
  std::string out;
  print_to(out, e);
  return out;
}

std::string dump_ast(const Expr& e) {
  std::string out;
  dump_to(out, e);
  return out;
}

// ---------------------------------------------------------------------------
// Units

SourceUnit parse_unit(std::string_view text, std::string file) {
  auto toks = tokenize(text);
  std::span<const Token> all(toks);
  SourceUnit unit;
  unit.file = std::move(file);
  std::set<std::string> seen;

  std::size_t i = 0;
  auto need = [&](TokenKind k, const char* what) -> const Token& {
    if (i >= all.size()) {
      const Token& last = all.back();
      throw SyntaxError(SyntaxError::Code::unbalanced_parens, last.line, last.column,
                        std::string("unexpected end of input, expected ") + what);
    }
    const Token& t = all[i];
    if (t.kind != k) {
      auto code = (t.kind == TokenKind::rparen || t.kind == TokenKind::rbracket) && k != TokenKind::rparen
                      ? SyntaxError::Code::unbalanced_parens
                      : SyntaxError::Code::malformed_namespace;
      throw SyntaxError(code, t.line, t.column, std::string("expected ") + what + ", got '" + t.text + "'");
    }
    ++i;
    return t;
  };

  while (i < all.size()) {
    const Token& open = need(TokenKind::lparen, "'(namespace'");
    const Token& kw = need(TokenKind::symbol, "'namespace'");
    if (kw.text != "namespace")
      throw SyntaxError(SyntaxError::Code::malformed_namespace, kw.line, kw.column,
                        "top-level forms must be namespace blocks, got '" + kw.text + "'");
    const Token& name = need(TokenKind::symbol, "namespace name");
    need(TokenKind::lparen, "'(level'");
    const Token& lv = need(TokenKind::symbol, "'level'");
    if (lv.text != "level")
      throw SyntaxError(SyntaxError::Code::malformed_namespace, lv.line, lv.column,
                        "expected '(level LVL)' after namespace name");
    const Token& lvl = need(TokenKind::symbol, "level value");
    auto level = parse_level_decl(lvl.text);
    if (!level)
      throw SyntaxError(SyntaxError::Code::malformed_namespace, lvl.line, lvl.column,
                        "unknown level '" + lvl.text + "' (expected 0, a positive integer, generic, meta, type or iff)");
    need(TokenKind::rparen, "')' closing the level declaration");
    if (!seen.insert(name.text).second)
      throw SyntaxError(SyntaxError::Code::duplicate_namespace, name.line, name.column,
                        "namespace '" + name.text + "' declared twice");

    NamespaceBlock block{name.text, *level, {}, {open.line, open.column}};
    while (true) {
      if (i >= all.size())
        throw SyntaxError(SyntaxError::Code::unbalanced_parens, open.line, open.column,
                          "namespace '" + name.text + "' is never closed");
      if (all[i].kind == TokenKind::rparen) {
        ++i;
        break;
      }
      // Find the extent of one axiom, then hand it to the expression parser.
      std::size_t start = i;
      int depth = 0;
      do {
        if (i >= all.size())
          throw SyntaxError(SyntaxError::Code::unbalanced_parens, all[start].line, all[start].column,
                            "unclosed expression");
        TokenKind k = all[i].kind;
        if (k == TokenKind::lparen || k == TokenKind::lbracket) ++depth;
        else if (k == TokenKind::rparen || k == TokenKind::rbracket) --depth;
        ++i;
      } while (depth > 0);
      if (depth < 0)
        throw SyntaxError(SyntaxError::Code::unbalanced_parens, all[i - 1].line, all[i - 1].column,
                          "unexpected '" + all[i - 1].text + "'");
      block.axioms.push_back(parse_expr(all.subspan(start, i - start)));
    }
    unit.namespaces.push_back(std::move(block));
  }
  return unit;
}

std::string print_unit(const SourceUnit& unit) {
  std::string out;
  for (std::size_t n = 0; n < unit.namespaces.size(); ++n) {
    const auto& ns = unit.namespaces[n];
    if (n) out += '\n';
    out += "(namespace " + ns.name + " (level " + ns.level.decl_text() + ")";
    for (const auto& ax : ns.axioms) out += "\n  " + print_canonical(ax);
    out += ")\n";
  }
  return out;
}

}  // namespace iff
