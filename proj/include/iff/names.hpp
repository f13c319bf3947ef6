#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iff/level.hpp"
#include "iff/syntax.hpp"

namespace iff {

class NameError : public std::runtime_error {
 public:
  enum class Code { malformed_name, not_generic, duplicate_definition, level_mismatch };
  NameError(Code c, const std::string& what) : std::runtime_error(what), code_(c) {}
  Code code() const { return code_; }
  std::string_view code_name() const;

 private:
  Code code_;
};

/// `<levelprefix>.<path>:<base>`, e.g. `type.ftn:belonging`, `iff:set`.
/// An unqualified name (`belonging`) has no level and an empty path until it
/// is resolved against a namespace context.
struct QualifiedName {
  std::optional<Level> level;
  std::vector<std::string> path;
  std::string base;

  bool qualified() const { return level.has_value(); }
  std::string render() const;
  friend bool operator==(const QualifiedName&, const QualifiedName&) = default;
};

QualifiedName parse_name(std::string_view text);

/// Replaces a Generic(k) level by Finite(n + k).
QualifiedName instantiate(const QualifiedName& name, int n);

/// Where an unqualified name lands: the level and path of a namespace.
struct NamespaceContext {
  Level level = Level::obj();
  std::vector<std::string> path;

  /// Rendered namespace prefix, e.g. `type.ftn`, `#n.set`, `iff`.
  std::string render() const;
  friend bool operator==(const NamespaceContext&, const NamespaceContext&) = default;
};

/// Context of a namespace block. A name starting with a level prefix
/// (`type.ftn`, `#n.set`) takes its level from it and must agree with the
/// declared level; any other name (`abc`) is a path at the declared level.
NamespaceContext context_of(const NamespaceBlock& block);

QualifiedName resolve(std::string_view text, const NamespaceContext& context);

/// True when `inner` lies in the namespace subtree rooted at `outer`.
bool in_subtree(const NamespaceContext& inner, const NamespaceContext& outer);

/// Rewrites every Name in `e` to its fully-qualified rendering.
Expr qualify(const Expr& e, const NamespaceContext& context);

// ---------------------------------------------------------------------------
// Symbol table

enum class SymbolKind { unknown, set, function, predicate, relation, element };
std::string_view kind_text(SymbolKind k);

/// How an occurrence uses a name.
enum class Role {
  subject,         // argument of a unary classifier atom
  classifier,      // head of a unary atom
  relation_head,   // head of a binary atom
  function_head,   // head of an application inside a term
  term,            // any other term position
  sort,            // quantifier binding sort
};

struct Site {
  std::string file;
  SourcePos pos;
  std::string namespace_name;
  NamespaceContext housing;
  Role role = Role::term;
  std::size_t axiom_index = 0;
};

struct SymbolEntry {
  QualifiedName name;
  /// Namespace block that defines the name, if any.
  std::optional<std::string> defining_namespace;
  SymbolKind kind = SymbolKind::unknown;
  std::vector<Site> definitions;
  std::vector<Site> references;
  /// Kinds inferred from usage that disagreed with `kind`.
  std::vector<SymbolKind> conflicting_kinds;
};

struct SymbolTable {
  std::map<std::string, SymbolEntry> entries;

  const SymbolEntry* find(const std::string& rendered) const {
    auto it = entries.find(rendered);
    return it == entries.end() ? nullptr : &it->second;
  }
};

/// Records definitions (subjects of strictly-higher classifiers and heads of
/// definitional `iff` axioms, when they resolve into the housing namespace)
/// and every name occurrence as a reference. Throws DuplicateDefinition when
/// two namespace blocks define the same name.
SymbolTable build_symbol_table(std::span<const SourceUnit> units);
SymbolTable build_symbol_table(const SourceUnit& unit);

}  // namespace iff
