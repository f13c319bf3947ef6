#include "iff/checks.hpp"

#include <algorithm>
#include <set>

namespace iff {

std::string_view form_text(FormKind k) {
  switch (k) {
    case FormKind::declaration: return "Declaration";
    case FormKind::equation: return "EquationForm";
    case FormKind::relational: return "RelationalExpr";
    case FormKind::negated_atomic: return "NegatedAtomic";
    case FormKind::first_order: return "FirstOrder";
    case FormKind::illformed: return "Illformed";
  }
  return "Illformed";
}

bool is_atomic(FormKind k, bool strict) {
  switch (k) {
    case FormKind::declaration:
    case FormKind::equation:
    case FormKind::relational: return true;
    case FormKind::negated_atomic: return !strict;
    default: return false;
  }
}

// ---------------------------------------------------------------------------
// Form classification

namespace {

bool has_variable(const Expr& e) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Name>) return false;
        else if constexpr (std::is_same_v<T, Variable>) return true;
        else if constexpr (std::is_same_v<T, Tuple>)
          return std::any_of(n.items.begin(), n.items.end(), has_variable);
        else if constexpr (std::is_same_v<T, Apply>)
          return has_variable(*n.head) || std::any_of(n.args.begin(), n.args.end(), has_variable);
        else if constexpr (std::is_same_v<T, Equation>) return has_variable(*n.lhs) || has_variable(*n.rhs);
        else if constexpr (std::is_same_v<T, Connective>)
          return std::any_of(n.args.begin(), n.args.end(), has_variable);
        else return true;
      },
      e.node());
}

bool unary_term(const Expr& t);

bool tuple_of_unary_terms(const Expr& t) {
  const auto* tu = t.as<Tuple>();
  return tu && std::all_of(tu->items.begin(), tu->items.end(), unary_term);
}

// Names and nested unary applications; a single tuple argument counts as one.
bool unary_term(const Expr& t) {
  if (t.is<Name>()) return true;
  if (t.is<Tuple>()) return tuple_of_unary_terms(t);
  const auto* ap = t.as<Apply>();
  if (!ap || !ap->head->is<Name>() || ap->args.size() != 1) return false;
  return unary_term(ap->args[0]);
}

bool is_plain_atomic(FormKind k) {
  return k == FormKind::declaration || k == FormKind::equation || k == FormKind::relational;
}

FormClass illformed(std::string why) { return {FormKind::illformed, std::move(why)}; }

}  // namespace

FormClass classify_form(const Expr& e) {
  if (e.is<Quantifier>()) return {FormKind::first_order, {}};
  if (const auto* c = e.as<Connective>()) {
    if (c->op == Op::not_ && is_plain_atomic(classify_form(c->args[0]).kind))
      return {FormKind::negated_atomic, {}};
    return {FormKind::first_order, {}};
  }
  if (has_variable(e)) return {FormKind::first_order, {}};

  if (const auto* eq = e.as<Equation>()) {
    if (unary_term(*eq->lhs) && unary_term(*eq->rhs)) return {FormKind::equation, {}};
    return illformed("equation term uses a function of more than one argument");
  }
  if (const auto* ap = e.as<Apply>()) {
    if (!ap->head->is<Name>()) return illformed("atom head is not a name");
    if (ap->args.size() == 1) {
      const Expr& arg = ap->args[0];
      if (const auto* tu = arg.as<Tuple>()) {
        if (tu->items.size() != 2) return illformed("tuple subject with more than two components");
        if (!tuple_of_unary_terms(arg)) return illformed("non-unary function in term");
        return {FormKind::relational, {}};
      }
      if (!unary_term(arg)) return illformed("non-unary function in term");
      return {FormKind::declaration, {}};
    }
    if (ap->args.size() == 2) {
      if (!unary_term(ap->args[0]) || !unary_term(ap->args[1])) return illformed("non-unary function in term");
      return {FormKind::relational, {}};
    }
    return illformed("atom with " + std::to_string(ap->args.size()) + " arguments");
  }
  return illformed("not a sentence");
}

// ---------------------------------------------------------------------------
// Restricted quantification

namespace {

class QuantifierChecker {
 public:
  explicit QuantifierChecker(const AxiomSite& site) : site_(site) {}

  std::vector<Diagnostic> run(const Expr& e) {
    walk(e);
    return std::move(out_);
  }

 private:
  void walk(const Expr& e) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Variable>) {
            occurrence(n.name, e.pos());
          } else if constexpr (std::is_same_v<T, Tuple>) {
            for (const auto& x : n.items) walk(x);
          } else if constexpr (std::is_same_v<T, Apply>) {
            walk(*n.head);
            for (const auto& x : n.args) walk(x);
          } else if constexpr (std::is_same_v<T, Equation>) {
            walk(*n.lhs);
            walk(*n.rhs);
          } else if constexpr (std::is_same_v<T, Connective>) {
            for (const auto& x : n.args) walk(x);
          } else if constexpr (std::is_same_v<T, Quantifier>) {
            quantifier(n, e.pos());
          }
        },
        e.node());
  }

  void quantifier(const Quantifier& q, SourcePos pos) {
    std::size_t mark = scope_.size();
    for (std::size_t i = 0; i < q.bindings.size(); ++i) {
      const Binding& b = q.bindings[i];
      if (!b.sort) {
        emit("UNSORTED-BINDING", pos, "binding of " + b.variable + " has no sort; quantification must be restricted");
      } else {
        auto saved = pending_;
        for (std::size_t j = i; j < q.bindings.size(); ++j) pending_.push_back(q.bindings[j].variable);
        walk(*b.sort);
        pending_ = std::move(saved);
      }
      scope_.push_back(b.variable);
    }
    walk(*q.body);
    scope_.resize(mark);
  }

  void occurrence(const std::string& v, SourcePos pos) {
    if (std::find(scope_.begin(), scope_.end(), v) != scope_.end()) return;
    bool later = std::find(pending_.begin(), pending_.end(), v) != pending_.end();
    std::string code = later ? "USE-BEFORE-BINDING" : "FREE-VARIABLE";
    if (!reported_.insert(code + " " + v).second) return;
    emit(code, pos, later ? "variable " + v + " is used in a sort before it is bound"
                          : "variable " + v + " is not bound by any enclosing quantifier");
  }

  void emit(std::string code, SourcePos pos, std::string message) {
    out_.push_back(Diagnostic{std::move(code), Severity::error, site_.file, pos.line, pos.column,
                              site_.namespace_name, std::move(message)});
  }

  const AxiomSite& site_;
  std::vector<std::string> scope_;
  std::vector<std::string> pending_;
  std::set<std::string> reported_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> check_restricted_quantifiers(const Expr& e, const AxiomSite& site) {
  return QuantifierChecker(site).run(e);
}

// ---------------------------------------------------------------------------
// Stratification

namespace {

void collect_names(const Expr& e, std::vector<const Expr*>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Name>) {
          out.push_back(&e);
        } else if constexpr (std::is_same_v<T, Tuple>) {
          for (const auto& x : n.items) collect_names(x, out);
        } else if constexpr (std::is_same_v<T, Apply>) {
          collect_names(*n.head, out);
          for (const auto& x : n.args) collect_names(x, out);
        } else if constexpr (std::is_same_v<T, Equation>) {
          collect_names(*n.lhs, out);
          collect_names(*n.rhs, out);
        } else if constexpr (std::is_same_v<T, Connective>) {
          for (const auto& x : n.args) collect_names(x, out);
        } else if constexpr (std::is_same_v<T, Quantifier>) {
          for (const auto& b : n.bindings)
            if (b.sort) collect_names(*b.sort, out);
          collect_names(*n.body, out);
        }
      },
      e.node());
}

Diagnostic make(std::string code, Severity sev, const std::string& file, SourcePos pos, const std::string& ns,
                std::string message) {
  return Diagnostic{std::move(code), sev, file, pos.line, pos.column, ns, std::move(message)};
}

}  // namespace

std::vector<Diagnostic> check_stratification(const SourceUnit& unit, const SymbolTable& table) {
  std::vector<Diagnostic> out;
  for (const auto& block : unit.namespaces) {
    NamespaceContext ctx;
    try {
      ctx = context_of(block);
    } catch (const NameError& err) {
      out.push_back(make("MALFORMED-NAME", Severity::error, unit.file, block.pos, block.name, err.what()));
      continue;
    }
    const Level housing = ctx.level;
    for (const auto& ax : block.axioms) {
      std::vector<const Expr*> names;
      collect_names(ax, names);
      for (const Expr* n : names) {
        QualifiedName q;
        try {
          q = resolve(n->as<Name>()->text, ctx);
        } catch (const NameError& err) {
          out.push_back(make("MALFORMED-NAME", Severity::error, unit.file, n->pos(), block.name, err.what()));
          continue;
        }
        auto c = *q.level <=> housing;
        if (c == std::partial_ordering::less) {
          out.push_back(make("LEVEL-DOWNREF", Severity::error, unit.file, n->pos(), block.name,
                             "axiom at level " + housing.prefix() + " references " + q.render() +
                                 " from the more concrete level " + q.level->prefix()));
        } else if (c == std::partial_ordering::unordered) {
          out.push_back(make("LEVEL-INCOMPARABLE", Severity::warning, unit.file, n->pos(), block.name,
                             "level of " + q.render() + " cannot be compared with " + housing.prefix() +
                                 " until n is instantiated"));
        }
      }

      if (classify_form(ax).kind != FormKind::declaration) continue;
      const auto* ap = ax.as<Apply>();
      const auto* head = ap->head->as<Name>();
      const auto* subj = ap->args[0].as<Name>();
      if (!head || !subj) continue;
      try {
        QualifiedName hq = resolve(head->text, ctx);
        QualifiedName sq = resolve(subj->text, ctx);
        if ((*hq.level <=> *sq.level) == std::partial_ordering::equivalent)
          out.push_back(make("SAME-LEVEL-CLASSIFIER", Severity::warning, unit.file, ap->head->pos(), block.name,
                             "classifier " + hq.render() + " is at the same level as its subject " + sq.render()));
      } catch (const NameError&) {
        // already reported above
      }
    }
  }

  for (const auto& [key, entry] : table.entries) {
    if (entry.definitions.empty() || entry.definitions.front().housing.level.kind() != Level::Kind::obj) continue;
    for (const auto& site : entry.references) {
      if (site.role != Role::classifier || site.file != unit.file) continue;
      out.push_back(make("OBJ-CLASSIFIER", Severity::error, site.file, site.pos, site.namespace_name,
                         "object-level name " + key + " is used as a classifier"));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conceptual warrant

std::vector<Diagnostic> warrant_report(std::span<const SourceUnit> /*units*/, const SymbolTable& table) {
  std::vector<Diagnostic> out;
  for (const auto& [key, entry] : table.entries) {
    if (!entry.defining_namespace || entry.definitions.empty()) continue;
    const Site& def = entry.definitions.front();
    if (def.housing.level.kind() == Level::Kind::obj) continue;
    const Level& level = *entry.name.level;

    const Site* witness = nullptr;
    std::string why;
    for (const auto& ref : entry.references) {
      if ((ref.housing.level <=> level) == std::partial_ordering::less) {
        witness = &ref;
        why = "lower level " + ref.housing.level.prefix();
        break;
      }
      if (!in_subtree(ref.housing, def.housing)) {
        witness = &ref;
        why = "peripheral namespace " + ref.namespace_name;
        break;
      }
    }
    if (witness) {
      out.push_back(make("WARRANT-OK", Severity::info, def.file, def.pos, def.namespace_name,
                         key + " is needed by the " + why + " at " + witness->file + ":" +
                             std::to_string(witness->pos.line) + ":" + std::to_string(witness->pos.column)));
    } else {
      out.push_back(make("UNWARRANTED-TERM", Severity::warning, def.file, def.pos, def.namespace_name,
                         key + " is never referenced from a lower level or a peripheral namespace"));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Atomicity

std::vector<NamespaceProfile> atomicity_profile(const SourceUnit& unit) {
  std::vector<NamespaceProfile> out;
  for (const auto& block : unit.namespaces) {
    NamespaceProfile p;
    p.name = block.name;
    p.level = block.level;
    for (const auto& ax : block.axioms) {
      FormKind k = classify_form(ax).kind;
      ++p.counts[static_cast<std::size_t>(k)];
      ++p.total;
      p.atomic = p.atomic && is_atomic(k, false);
      p.strictly_atomic = p.strictly_atomic && is_atomic(k, true);
    }
    out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pipeline

std::vector<Diagnostic> check_units(std::span<const SourceUnit> units, const CheckOptions& options) {
  std::vector<Diagnostic> out;
  SymbolTable table;
  bool have_table = true;
  try {
    table = build_symbol_table(units);
  } catch (const NameError& err) {
    have_table = false;
    std::string code = err.code() == NameError::Code::duplicate_definition ? "DUPLICATE-DEFINITION"
                       : err.code() == NameError::Code::level_mismatch      ? "LEVEL-MISMATCH"
                                                                            : "MALFORMED-NAME";
    out.push_back(Diagnostic{code, Severity::error, units.empty() ? "" : units.front().file, 0, 0, "", err.what()});
  }

  for (const auto& unit : units) {
    for (const auto& block : unit.namespaces) {
      AxiomSite site{unit.file, block.name};
      bool natural = !block.level.is_metashell();
      for (const auto& ax : block.axioms) {
        FormClass fc = classify_form(ax);
        SourcePos pos = ax.pos();
        if (fc.kind == FormKind::illformed) {
          out.push_back(make("ILLFORMED-AXIOM", Severity::error, unit.file, pos, block.name, fc.reason));
        } else if (natural && !is_atomic(fc.kind, options.strict_atomic)) {
          out.push_back(make("NOT-ATOMIC", options.strict_atomic ? Severity::error : Severity::warning, unit.file,
                             pos, block.name,
                             std::string("natural-part axiom is ") + std::string(form_text(fc.kind)) +
                                 "; categorical design asks for declarations, equations or relational expressions"));
        }
        auto q = check_restricted_quantifiers(ax, site);
        out.insert(out.end(), q.begin(), q.end());
      }
    }
    if (have_table) {
      auto s = check_stratification(unit, table);
      out.insert(out.end(), s.begin(), s.end());
    }
  }

  if (have_table) {
    for (const auto& [key, entry] : table.entries) {
      if (entry.conflicting_kinds.empty()) continue;
      const Site& at = entry.definitions.empty() ? entry.references.front() : entry.definitions.front();
      std::string kinds(kind_text(entry.kind));
      for (auto k : entry.conflicting_kinds) kinds += ", " + std::string(kind_text(k));
      out.push_back(make("KIND-CONFLICT", Severity::warning, at.file, at.pos, at.namespace_name,
                         key + " is used with conflicting kinds: " + kinds));
    }
    if (options.warrant) {
      auto w = warrant_report(units, table);
      out.insert(out.end(), w.begin(), w.end());
    }
  }
  sort_diagnostics(out);
  return out;
}

}  // namespace iff
