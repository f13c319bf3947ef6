#include "iff/modelcheck.hpp"

#include <algorithm>
#include <functional>

namespace iff {

EvalError::EvalError(Code c, SourcePos pos, const std::string& message)
    : std::runtime_error(message), code_(c), pos_(pos) {}

std::string_view EvalError::code_name() const {
  switch (code_) {
    case Code::unbound_name: return "UnboundName";
    case Code::unbound_variable: return "UnboundVariable";
    case Code::not_a_function: return "NotAFunction";
    case Code::out_of_domain: return "OutOfDomain";
    case Code::sort_not_finite: return "SortNotFinite";
    case Code::not_a_predicate: return "NotAPredicate";
  }
  return "EvalError";
}

AxiomEvalError::AxiomEvalError(const EvalError& cause, std::string file, std::string namespace_name, std::size_t index)
    : std::runtime_error(file + ":" + std::to_string(cause.pos().line) + ":" + std::to_string(cause.pos().column) +
                         " [" + namespace_name + "] axiom " + std::to_string(index + 1) + ": " + cause.what()),
      cause_(cause),
      namespace_name_(std::move(namespace_name)) {}

namespace {

using ECode = EvalError::Code;

[[noreturn]] void fail(ECode c, const Expr& at, const std::string& msg) { throw EvalError(c, at.pos(), msg); }

const Denotation* find_name(const std::string& text, const EvalScope& scope) {
  if (const Denotation* d = scope.interp.find(text)) return d;
  try {
    if (scope.context) {
      if (const Denotation* d = scope.interp.find(resolve(text, *scope.context).render())) return d;
    }
    return scope.interp.find(parse_name(text).base);
  } catch (const NameError&) {
    return nullptr;
  }
}

const Denotation& lookup(const Expr& e, const std::string& text, const EvalScope& scope) {
  const Denotation* d = find_name(text, scope);
  if (!d) fail(ECode::unbound_name, e, "no binding for " + text);
  return *d;
}

Value apply_graph(const Value& fn, const Value& arg, const Expr& at) {
  auto y = fn.lookup(arg);
  if (!y) fail(ECode::out_of_domain, at, arg.to_string() + " is outside the domain of " + fn.to_string());
  return *y;
}

Value argument(const std::vector<Expr>& args, const EvalScope& scope, const Valuation& v) {
  if (args.size() == 1) return eval_term(args[0], scope, v);
  std::vector<Value> items;
  for (const auto& a : args) items.push_back(eval_term(a, scope, v));
  return Value::tuple(items);
}

bool test_membership(const Expr& head, const std::vector<Expr>& args, const EvalScope& scope, const Valuation& v) {
  Value arg = argument(args, scope, v);
  auto value_test = [&](const Value& s) {
    if (!s.is_set()) fail(ECode::not_a_predicate, head, s.to_string() + " is not a set");
    return s.contains(arg);
  };
  const Name* n = head.as<Name>();
  if (!n) return value_test(eval_term(head, scope, v));
  const Denotation& d = lookup(head, n->text, scope);
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FinSet>) {
          return x.contains(arg);
        } else if constexpr (std::is_same_v<T, FinPredicate> || std::is_same_v<T, FinRelation>) {
          return x.extent().contains(arg);
        } else if constexpr (std::is_same_v<T, FinFunction>) {
          if (x.target() != omega()) fail(ECode::not_a_predicate, head, n->text + " is not truth-valued");
          if (!x.source().contains(arg))
            fail(ECode::out_of_domain, head, arg.to_string() + " is outside the domain of " + n->text);
          return x(arg) == truth(true);
        } else {
          return value_test(x);
        }
      },
      d);
}

std::vector<Value> sort_domain(const Binding& b, const EvalScope& scope, const Valuation& v, const Expr& at) {
  if (!b.sort) fail(ECode::sort_not_finite, at, b.variable + " has no sort to range over");
  const Expr& s = *b.sort;
  auto members_of = [&](const Value& x) {
    if (!x.is_set()) fail(ECode::sort_not_finite, s, "sort of " + b.variable + " is not a set: " + x.to_string());
    auto m = x.members();
    return std::vector<Value>(m.begin(), m.end());
  };
  const Name* n = s.as<Name>();
  if (!n) return members_of(eval_term(s, scope, v));
  const Denotation& d = lookup(s, n->text, scope);
  return std::visit(
      [&](const auto& x) -> std::vector<Value> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FinSet>) {
          return {x.begin(), x.end()};
        } else if constexpr (std::is_same_v<T, FinPredicate> || std::is_same_v<T, FinRelation>) {
          return {x.extent().begin(), x.extent().end()};
        } else if constexpr (std::is_same_v<T, FinFunction>) {
          if (x.target() != omega()) fail(ECode::sort_not_finite, s, n->text + " denotes a function, not a sort");
          auto ext = fiber(x).extent();
          return {ext.begin(), ext.end()};
        } else {
          return members_of(x);
        }
      },
      d);
}

/// Calls `visit` with every extension of `v` over `bindings`, in canonical
/// order, until it returns false. Returns false when stopped early.
bool for_each_assignment(const std::vector<Binding>& bindings, std::size_t i, const EvalScope& scope, Valuation& v,
                         const Expr& at, const std::function<bool(Valuation&)>& visit) {
  if (i == bindings.size()) return visit(v);
  const auto& b = bindings[i];
  auto domain = sort_domain(b, scope, v, at);
  auto saved = v.find(b.variable) != v.end() ? std::optional<Value>(v.at(b.variable)) : std::nullopt;
  bool completed = true;
  for (const auto& x : domain) {
    v[b.variable] = x;
    if (!for_each_assignment(bindings, i + 1, scope, v, at, visit)) {
      completed = false;
      break;
    }
  }
  if (saved) v[b.variable] = *saved;
  else v.erase(b.variable);
  return completed;
}

}  // namespace

Value eval_term(const Expr& t, const EvalScope& scope, const Valuation& v) {
  if (const auto* n = t.as<Name>()) return encode(lookup(t, n->text, scope));
  if (const auto* var = t.as<Variable>()) {
    auto it = v.find(var->name);
    if (it == v.end()) fail(ECode::unbound_variable, t, var->name + " is not bound");
    return it->second;
  }
  if (const auto* tup = t.as<Tuple>()) {
    std::vector<Value> items;
    for (const auto& x : tup->items) items.push_back(eval_term(x, scope, v));
    return Value::tuple(items);
  }
  if (const auto* app = t.as<Apply>()) {
    Value arg = argument(app->args, scope, v);
    const Expr& head = *app->head;
    if (const auto* hn = head.as<Name>()) {
      const Denotation& d = lookup(head, hn->text, scope);
      if (const auto* f = std::get_if<FinFunction>(&d)) {
        if (!f->source().contains(arg))
          fail(ECode::out_of_domain, t, arg.to_string() + " is outside the domain of " + hn->text);
        return (*f)(arg);
      }
      if (const auto* x = std::get_if<Value>(&d); x && x->is_fn()) return apply_graph(*x, arg, t);
      fail(ECode::not_a_function, head, hn->text + " denotes a " + std::string(denotation_kind(d)));
    }
    Value h = eval_term(head, scope, v);
    if (!h.is_fn()) fail(ECode::not_a_function, head, h.to_string() + " is not a function");
    return apply_graph(h, arg, t);
  }
  fail(ECode::not_a_function, t, "a formula is not a term: " + print_canonical(t));
}

Value eval_term(const Expr& t, const Interpretation& i, const Valuation& v) { return eval_term(t, EvalScope{i, {}}, v); }

bool holds(const Expr& s, const EvalScope& scope, const Valuation& v) {
  if (const auto* eq = s.as<Equation>()) return eval_term(*eq->lhs, scope, v) == eval_term(*eq->rhs, scope, v);
  if (const auto* c = s.as<Connective>()) {
    const auto& a = c->args;
    switch (c->op) {
      case Op::not_: return !holds(a[0], scope, v);
      case Op::and_: return holds(a[0], scope, v) && holds(a[1], scope, v);
      case Op::or_: return holds(a[0], scope, v) || holds(a[1], scope, v);
      case Op::implies: return !holds(a[0], scope, v) || holds(a[1], scope, v);
      case Op::iff: return holds(a[0], scope, v) == holds(a[1], scope, v);
    }
  }
  if (const auto* q = s.as<Quantifier>()) {
    Valuation w = v;
    bool forall = q->kind == Quant::forall;
    bool stopped = !for_each_assignment(q->bindings, 0, scope, w, s, [&](Valuation& u) {
      // Stop at the first counterexample (forall) or witness (exists).
      return holds(*q->body, scope, u) == forall;
    });
    return forall ? !stopped : stopped;
  }
  if (const auto* app = s.as<Apply>()) return test_membership(*app->head, app->args, scope, v);
  fail(ECode::not_a_predicate, s, "not a sentence: " + print_canonical(s));
}

bool holds(const Expr& s, const Interpretation& i, const Valuation& v) { return holds(s, EvalScope{i, {}}, v); }

std::vector<AxiomReport> check_theory(const SourceUnit& unit, const Interpretation& i) {
  std::vector<AxiomReport> out;
  for (const auto& block : unit.namespaces) {
    std::optional<NamespaceContext> ctx;
    try {
      ctx = context_of(block);
    } catch (const NameError&) {
    }
    EvalScope scope{i, ctx};
    for (std::size_t k = 0; k < block.axioms.size(); ++k) {
      const Expr& ax = block.axioms[k];
      AxiomReport r{block.name, k, ax.pos(), print_canonical(ax), true, {}};
      try {
        r.holds = holds(ax, scope);
        if (!r.holds) {
          std::vector<Binding> bindings;
          const Expr* body = &ax;
          while (const auto* q = body->as<Quantifier>()) {
            if (q->kind != Quant::forall) break;
            bindings.insert(bindings.end(), q->bindings.begin(), q->bindings.end());
            body = q->body.get();
          }
          Valuation v;
          for_each_assignment(bindings, 0, scope, v, ax, [&](Valuation& u) {
            if (holds(*body, scope, u)) return true;
            for (const auto& b : bindings) r.counterexample.emplace_back(b.variable, u.at(b.variable));
            return false;
          });
        }
      } catch (const EvalError& e) {
        throw AxiomEvalError(e, unit.file, block.name, k);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixed points and diagonal arguments

FinSet fixed_points(const FinFunction& t) {
  if (t.source() != t.target())
    throw SemanticError(SemanticError::Code::not_endofunction, "fixed points need an endofunction");
  std::vector<Value> out;
  for (std::size_t i = 0; i < t.source().size(); ++i)
    if (t.images()[i] == t.source()[i]) out.push_back(t.source()[i]);
  return FinSet(std::move(out));
}

std::optional<FinFunction> fixed_point_free_witness(const FinSet& y, std::uint64_t cap) {
  require_within_cap(count_functions(y.size(), y.size()), cap, "endofunction sweep");
  std::optional<FinFunction> found;
  for_each_function(y, y, [&](const FinFunction& t) {
    if (!fixed_points(t).empty()) return true;
    found = t;
    return false;
  });
  return found;
}

bool has_fpp(const FinSet& y, std::uint64_t cap) { return !fixed_point_free_witness(y, cap).has_value(); }

CantorResult verify_cantor(const FinSet& x, std::uint64_t cap) {
  FinSet px = power_set(x);
  require_within_cap(count_functions(x.size(), px.size()), cap, "Cantor sweep");
  CantorResult r;
  for_each_function(x, px, [&](const FinFunction& f) {
    ++r.checked;
    std::vector<Value> diag;
    for (const auto& e : x)
      if (!f(e).contains(e)) diag.push_back(e);
    Value d = Value::set(std::move(diag));
    auto img = f.images();
    bool missed = std::find(img.begin(), img.end(), d) == img.end();
    if (is_surjective(f) || !missed) {
      r.holds = false;
      if (!r.counterexample) r.counterexample = f;
    }
    r.sample = f;
    r.sample_diagonal = d;
    return true;
  });
  return r;
}

FppTransferResult verify_fpp_transfer(const FinSet& x, const FinSet& y, std::uint64_t cap) {
  FppTransferResult r;
  r.tau = fixed_point_free_witness(y, cap);
  if (!r.tau) {
    r.y_has_fpp = true;
    return r;
  }
  FinSet xx = product(x, x).carrier;
  require_within_cap(count_functions(xx.size(), y.size()), cap, "fixed point transfer sweep");
  const FinFunction& tau = *r.tau;
  for_each_function(xx, y, [&](const FinFunction& phi) {
    ++r.checked;
    FinFunction g = curry(phi, x, x, y);
    std::vector<Value::Mapping> diag;
    for (const auto& e : x) diag.emplace_back(e, tau(phi(Value::pair(e, e))));
    Value d = Value::fn(std::move(diag));
    auto img = g.images();
    bool missed = std::find(img.begin(), img.end(), d) == img.end();
    if (is_surjective(g) || !missed) {
      r.holds = false;
      if (!r.counterexample) r.counterexample = phi;
    }
    return true;
  });
  return r;
}

}  // namespace iff
