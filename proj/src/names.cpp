#include "iff/names.hpp"

#include <algorithm>

namespace iff {

std::string_view NameError::code_name() const {
  switch (code_) {
    case Code::malformed_name: return "MalformedName";
    case Code::not_generic: return "NotGeneric";
    case Code::duplicate_definition: return "DuplicateDefinition";
    case Code::level_mismatch: return "LevelMismatch";
  }
  return "NameError";
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t k = s.find(sep, start);
    out.emplace_back(s.substr(start, k == std::string_view::npos ? s.npos : k - start));
    if (k == std::string_view::npos) break;
    start = k + 1;
  }
  return out;
}

[[noreturn]] void malformed(std::string_view text, const std::string& why) {
  throw NameError(NameError::Code::malformed_name, "malformed name '" + std::string(text) + "': " + why);
}

std::string join_path(const Level& level, const std::vector<std::string>& path) {
  std::string out = level.prefix();
  for (const auto& seg : path) out += "." + seg;
  return out;
}

}  // namespace

std::string QualifiedName::render() const {
  if (!level) return base;
  return join_path(*level, path) + ":" + base;
}

QualifiedName parse_name(std::string_view text) {
  if (text.empty()) malformed(text, "empty");
  auto colon = text.find(':');
  if (colon == std::string_view::npos) return QualifiedName{std::nullopt, {}, std::string(text)};
  if (text.find(':', colon + 1) != std::string_view::npos) malformed(text, "more than one ':'");
  std::string_view base = text.substr(colon + 1);
  if (base.empty()) malformed(text, "empty base");
  auto segs = split(text.substr(0, colon), '.');
  auto level = parse_level_prefix(segs.front());
  if (!level) malformed(text, "unknown level prefix '" + segs.front() + "'");
  QualifiedName q{*level, {segs.begin() + 1, segs.end()}, std::string(base)};
  for (const auto& s : q.path)
    if (s.empty()) malformed(text, "empty namespace segment");
  return q;
}

QualifiedName instantiate(const QualifiedName& name, int n) {
  if (!name.level || !name.level->is_generic())
    throw NameError(NameError::Code::not_generic, "name '" + name.render() + "' is not at a generic level");
  QualifiedName out = name;
  out.level = iff::instantiate(*name.level, n);
  return out;
}

std::string NamespaceContext::render() const { return join_path(level, path); }

NamespaceContext context_of(const NamespaceBlock& block) {
  if (block.name.find(':') != std::string::npos)
    malformed(block.name, "namespace names cannot contain ':'");
  auto segs = split(block.name, '.');
  for (const auto& s : segs)
    if (s.empty()) malformed(block.name, "empty namespace segment");
  if (auto prefix = parse_level_prefix(segs.front())) {
    if (!(*prefix == block.level))
      throw NameError(NameError::Code::level_mismatch, "namespace '" + block.name + "' is declared at level " +
                                                           block.level.decl_text() + " but its prefix says " +
                                                           prefix->prefix());
    return NamespaceContext{*prefix, {segs.begin() + 1, segs.end()}};
  }
  return NamespaceContext{block.level, segs};
}

QualifiedName resolve(std::string_view text, const NamespaceContext& context) {
  QualifiedName q = parse_name(text);
  if (q.qualified()) return q;
  return QualifiedName{context.level, context.path, q.base};
}

bool in_subtree(const NamespaceContext& inner, const NamespaceContext& outer) {
  if (!(inner.level == outer.level) || inner.path.size() < outer.path.size()) return false;
  return std::equal(outer.path.begin(), outer.path.end(), inner.path.begin());
}

Expr qualify(const Expr& e, const NamespaceContext& ctx) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Name>) {
          return Expr::name(resolve(n.text, ctx).render(), e.pos());
        } else if constexpr (std::is_same_v<T, Variable>) {
          return e;
        } else if constexpr (std::is_same_v<T, Tuple>) {
          std::vector<Expr> items;
          for (const auto& x : n.items) items.push_back(qualify(x, ctx));
          return Expr::tuple(std::move(items), e.pos());
        } else if constexpr (std::is_same_v<T, Apply>) {
          std::vector<Expr> args;
          for (const auto& x : n.args) args.push_back(qualify(x, ctx));
          return Expr::apply(qualify(*n.head, ctx), std::move(args), e.pos());
        } else if constexpr (std::is_same_v<T, Equation>) {
          return Expr::equation(qualify(*n.lhs, ctx), qualify(*n.rhs, ctx), e.pos());
        } else if constexpr (std::is_same_v<T, Connective>) {
          std::vector<Expr> args;
          for (const auto& x : n.args) args.push_back(qualify(x, ctx));
          return Expr::connective(n.op, std::move(args), e.pos());
        } else {
          std::vector<Binding> bs;
          for (const auto& b : n.bindings)
            bs.push_back(Binding{b.sort ? share(qualify(*b.sort, ctx)) : nullptr, b.variable});
          return Expr::quantifier(n.kind, std::move(bs), qualify(*n.body, ctx), e.pos());
        }
      },
      e.node());
}

std::string_view kind_text(SymbolKind k) {
  switch (k) {
    case SymbolKind::unknown: return "unknown";
    case SymbolKind::set: return "set";
    case SymbolKind::function: return "function";
    case SymbolKind::predicate: return "predicate";
    case SymbolKind::relation: return "relation";
    case SymbolKind::element: return "element";
  }
  return "unknown";
}

namespace {

SymbolKind kind_from_classifier_base(const std::string& base) {
  if (base == "set") return SymbolKind::set;
  if (base == "function") return SymbolKind::function;
  if (base == "predicate") return SymbolKind::predicate;
  if (base == "relation") return SymbolKind::relation;
  return SymbolKind::unknown;
}

class TableBuilder {
 public:
  explicit TableBuilder(SymbolTable& table) : table_(table) {}

  void unit(const SourceUnit& u) {
    for (const auto& block : u.namespaces) {
      NamespaceContext ctx = context_of(block);
      for (std::size_t a = 0; a < block.axioms.size(); ++a) {
        site_ = Site{u.file, {}, block.name, ctx, Role::term, a};
        ctx_ = &ctx;
        block_ = &block;
        axiom(block.axioms[a]);
      }
    }
  }

 private:
  bool housed_here(const QualifiedName& q) const {
    return q.level && *q.level == ctx_->level && q.path == ctx_->path;
  }

  void axiom(const Expr& e) {
    definitional_head_ = nullptr;
    // A top-level declaration `(C x)` defines x when x lives here and C is
    // strictly more abstract.
    if (const auto* ap = e.as<Apply>(); ap && ap->args.size() == 1) {
      const auto* head = ap->head->as<Name>();
      const auto* subj = ap->args[0].as<Name>();
      if (head && subj) {
        QualifiedName hq = resolve(head->text, *ctx_);
        QualifiedName sq = resolve(subj->text, *ctx_);
        if (housed_here(sq) && (*hq.level <=> *sq.level) == std::partial_ordering::greater) {
          record(hq, *ap->head, Role::classifier, false);
          record(sq, ap->args[0], Role::subject, true, kind_from_classifier_base(hq.base));
          return;
        }
      }
    }
    // `(forall (...) (iff (H ...) ...))` defines H when H lives here.
    const Expr* body = &e;
    while (const auto* q = body->as<Quantifier>()) {
      if (q->kind != Quant::forall) break;
      body = q->body.get();
    }
    if (const auto* c = body->as<Connective>(); c && c->op == Op::iff) {
      if (const auto* ap = c->args[0].as<Apply>()) {
        if (const auto* h = ap->head->as<Name>(); h && housed_here(resolve(h->text, *ctx_)))
          definitional_head_ = ap->head.get();
      }
    }
    sentence(e);
  }

  void sentence(const Expr& e) {
    if (const auto* ap = e.as<Apply>()) {
      if (ap->head->is<Name>()) {
        Role role = ap->args.size() == 1 ? Role::classifier : Role::relation_head;
        name(*ap->head, role);
      } else {
        term(*ap->head, Role::function_head);
      }
      for (const auto& a : ap->args) term(a, ap->args.size() == 1 ? Role::subject : Role::term);
    } else if (const auto* eq = e.as<Equation>()) {
      term(*eq->lhs, Role::term);
      term(*eq->rhs, Role::term);
    } else if (const auto* c = e.as<Connective>()) {
      for (const auto& a : c->args) sentence(a);
    } else if (const auto* q = e.as<Quantifier>()) {
      for (const auto& b : q->bindings)
        if (b.sort) term(*b.sort, Role::sort);
      sentence(*q->body);
    } else {
      term(e, Role::term);
    }
  }

  void term(const Expr& e, Role role) {
    if (e.is<Name>()) {
      name(e, role);
    } else if (const auto* ap = e.as<Apply>()) {
      term(*ap->head, Role::function_head);
      for (const auto& a : ap->args) term(a, Role::term);
    } else if (const auto* t = e.as<Tuple>()) {
      for (const auto& x : t->items) term(x, Role::term);
    }
  }

  void name(const Expr& e, Role role) {
    QualifiedName q = resolve(e.as<Name>()->text, *ctx_);
    bool defining = &e == definitional_head_;
    record(q, e, role, defining);
  }

  void record(const QualifiedName& q, const Expr& at, Role role, bool defining,
              SymbolKind declared = SymbolKind::unknown) {
    std::string key = q.render();
    auto [it, fresh] = table_.entries.try_emplace(key);
    SymbolEntry& entry = it->second;
    if (fresh) entry.name = q;
    Site s = site_;
    s.pos = at.pos();
    s.role = role;
    if (defining) {
      if (entry.defining_namespace && *entry.defining_namespace != block_->name)
        throw NameError(NameError::Code::duplicate_definition,
                        "'" + key + "' is defined in namespace '" + *entry.defining_namespace + "' and again in '" +
                            block_->name + "'");
      entry.defining_namespace = block_->name;
      entry.definitions.push_back(std::move(s));
    } else {
      entry.references.push_back(std::move(s));
    }
    SymbolKind inferred = declared;
    if (inferred == SymbolKind::unknown) {
      if (role == Role::classifier) inferred = SymbolKind::set;
      else if (role == Role::function_head) inferred = SymbolKind::function;
      else if (role == Role::relation_head) inferred = SymbolKind::relation;
    }
    if (inferred == SymbolKind::unknown) return;
    if (entry.kind == SymbolKind::unknown) {
      entry.kind = inferred;
    } else if (entry.kind != inferred &&
               std::find(entry.conflicting_kinds.begin(), entry.conflicting_kinds.end(), inferred) ==
                   entry.conflicting_kinds.end()) {
      entry.conflicting_kinds.push_back(inferred);
    }
  }

  SymbolTable& table_;
  Site site_;
  const NamespaceContext* ctx_ = nullptr;
  const NamespaceBlock* block_ = nullptr;
  const Expr* definitional_head_ = nullptr;
};

}  // namespace

SymbolTable build_symbol_table(std::span<const SourceUnit> units) {
  SymbolTable table;
  TableBuilder builder(table);
  for (const auto& u : units) builder.unit(u);
  return table;
}

SymbolTable build_symbol_table(const SourceUnit& unit) { return build_symbol_table(std::span(&unit, 1)); }

}  // namespace iff
