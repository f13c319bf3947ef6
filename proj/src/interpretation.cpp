#include "iff/interpretation.hpp"

#include <vector>

#include "iff/syntax.hpp"

namespace iff {

std::string_view denotation_kind(const Denotation& d) {
  switch (d.index()) {
    case 0: return "set";
    case 1: return "function";
    case 2: return "predicate";
    case 3: return "relation";
    default: return "element";
  }
}

Value encode(const Denotation& d) {
  return std::visit(
      [](const auto& x) -> Value {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FinSet>) return x.to_value();
        else if constexpr (std::is_same_v<T, FinFunction>) return x.graph();
        else if constexpr (std::is_same_v<T, FinPredicate> || std::is_same_v<T, FinRelation>) return x.extent().to_value();
        else return x;
      },
      d);
}

InterpretationError::InterpretationError(Code c, int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      code_(c),
      line_(line),
      column_(column) {}

std::string_view InterpretationError::code_name() const {
  switch (code_) {
    case Code::unknown_head: return "UnknownHead";
    case Code::malformed_entry: return "MalformedEntry";
    case Code::duplicate_binding: return "DuplicateBinding";
    case Code::unbound_reference: return "UnboundReference";
    case Code::invalid_denotation: return "InvalidDenotation";
  }
  return "InterpretationError";
}

void Interpretation::bind(const std::string& name, Denotation d) {
  if (bindings_.contains(name))
    throw InterpretationError(InterpretationError::Code::duplicate_binding, 0, 0, name + " is bound twice");
  bindings_.emplace(name, std::move(d));
}

const Denotation* Interpretation::find(std::string_view name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

namespace {

using ICode = InterpretationError::Code;

class Reader {
 public:
  explicit Reader(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Interpretation run() {
    expect(TokenKind::lparen, "(");
    if (word("interpretation") != "interpretation") fail(ICode::malformed_entry, prev(), "expected `interpretation`");
    while (!at(TokenKind::rparen)) entry();
    expect(TokenKind::rparen, ")");
    if (pos_ != toks_.size()) fail(ICode::malformed_entry, toks_[pos_], "trailing input after the interpretation");
    return std::move(interp_);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Interpretation interp_;

  [[noreturn]] void fail(ICode c, const Token& at, const std::string& msg) const {
    throw InterpretationError(c, at.line, at.column, msg);
  }

  const Token& peek() const {
    if (pos_ >= toks_.size()) {
      const Token& last = toks_.back();
      throw SyntaxError(SyntaxError::Code::unbalanced_parens, last.line, last.column, "unexpected end of input");
    }
    return toks_[pos_];
  }
  const Token& prev() const { return toks_[pos_ - 1]; }
  bool at(TokenKind k) const { return peek().kind == k; }

  const Token& expect(TokenKind k, std::string_view what) {
    const Token& t = peek();
    if (t.kind != k) fail(ICode::malformed_entry, t, "expected `" + std::string(what) + "`, found `" + t.text + "`");
    ++pos_;
    return t;
  }

  std::string word(std::string_view what = "a name") {
    const Token& t = peek();
    if (t.kind != TokenKind::symbol && t.kind != TokenKind::keyword)
      fail(ICode::malformed_entry, t, "expected " + std::string(what) + ", found `" + t.text + "`");
    ++pos_;
    return t.text;
  }

  void bind(const Token& at, const std::string& name, Denotation d) {
    if (interp_.find(name)) fail(ICode::duplicate_binding, at, name + " is bound twice");
    interp_.bind(name, std::move(d));
  }

  const FinSet& set_ref() {
    const Token& t = peek();
    std::string name = word("a set name");
    const Denotation* d = interp_.find(name);
    if (!d) fail(ICode::unbound_reference, t, name + " is not bound by an earlier entry");
    const FinSet* s = std::get_if<FinSet>(d);
    if (!s) fail(ICode::invalid_denotation, t, name + " denotes a " + std::string(denotation_kind(*d)) + ", not a set");
    return *s;
  }

  Value value() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::symbol:
      case TokenKind::keyword: {
        ++pos_;
        if (const Denotation* d = interp_.find(t.text)) return encode(*d);
        return Value::atom(t.text);
      }
      case TokenKind::lbracket: {
        ++pos_;
        std::vector<Value> items;
        while (!at(TokenKind::rbracket)) items.push_back(value());
        ++pos_;
        if (items.size() < 2) fail(ICode::malformed_entry, t, "a bracketed tuple needs at least two values");
        return Value::tuple(items);
      }
      case TokenKind::lbrace: {
        ++pos_;
        std::vector<Value> items;
        while (!at(TokenKind::rbrace)) items.push_back(value());
        ++pos_;
        return Value::set(std::move(items));
      }
      default: fail(ICode::malformed_entry, t, "expected a value, found `" + t.text + "`");
    }
  }

  std::vector<Value> value_list() {
    expect(TokenKind::lparen, "(");
    std::vector<Value> out;
    while (!at(TokenKind::rparen)) out.push_back(value());
    ++pos_;
    return out;
  }

  std::vector<std::pair<Value, Value>> pair_list() {
    expect(TokenKind::lparen, "(");
    std::vector<std::pair<Value, Value>> out;
    while (!at(TokenKind::rparen)) {
      expect(TokenKind::lparen, "(");
      Value x = value();
      Value y = value();
      expect(TokenKind::rparen, ")");
      out.emplace_back(std::move(x), std::move(y));
    }
    ++pos_;
    return out;
  }

  template <class Build>
  Denotation checked(const Token& at, Build build) {
    try {
      return build();
    } catch (const SemanticError& e) {
      fail(ICode::invalid_denotation, at, e.what());
    } catch (const std::invalid_argument& e) {
      fail(ICode::invalid_denotation, at, e.what());
    }
  }

  void entry() {
    expect(TokenKind::lparen, "(");
    const Token& head_tok = peek();
    std::string head = word("an entry head");
    const Token& name_tok = peek();
    std::string name = word();
    Denotation d;
    if (head == "set") {
      auto vs = value_list();
      d = FinSet(std::move(vs));
    } else if (head == "element") {
      const Token& st = peek();
      const FinSet& s = set_ref();
      Value v = value();
      if (!s.contains(v)) fail(ICode::invalid_denotation, st, v.to_string() + " is not a member of " + st.text);
      d = v;
    } else if (head == "function") {
      expect(TokenKind::lparen, "(");
      FinSet src = set_ref();
      FinSet tgt = set_ref();
      expect(TokenKind::rparen, ")");
      auto graph = pair_list();
      d = checked(name_tok, [&]() -> Denotation {
        return FinFunction::from_graph(std::move(src), std::move(tgt), Value::fn(std::move(graph)));
      });
    } else if (head == "predicate") {
      FinSet genus = set_ref();
      auto vs = value_list();
      d = checked(name_tok, [&]() -> Denotation { return FinPredicate(std::move(genus), FinSet(std::move(vs))); });
    } else if (head == "relation") {
      expect(TokenKind::lparen, "(");
      FinSet c0 = set_ref();
      FinSet c1 = set_ref();
      expect(TokenKind::rparen, ")");
      std::vector<Value> ext;
      for (auto& [x, y] : pair_list()) ext.push_back(Value::pair(x, y));
      d = checked(name_tok, [&]() -> Denotation { return FinRelation(std::move(c0), std::move(c1), FinSet(std::move(ext))); });
    } else {
      fail(ICode::unknown_head, head_tok, "unknown interpretation entry `" + head + "`");
    }
    expect(TokenKind::rparen, ")");
    bind(name_tok, name, std::move(d));
  }
};

}  // namespace

Interpretation parse_interpretation(std::string_view text) {
  auto toks = tokenize(text, LexOptions{.braces = true});
  if (toks.empty()) throw InterpretationError(ICode::malformed_entry, 1, 1, "empty interpretation");
  return Reader(std::move(toks)).run();
}

}  // namespace iff
