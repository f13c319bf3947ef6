#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iff/diagnostic.hpp"
#include "iff/names.hpp"
#include "iff/syntax.hpp"

namespace iff {

/// Syntactic form of an axiom. Atomic forms are ground.
enum class FormKind { declaration, equation, relational, negated_atomic, first_order, illformed };

inline constexpr std::array<FormKind, 6> kAllFormKinds = {FormKind::declaration,    FormKind::equation,
                                                          FormKind::relational,     FormKind::negated_atomic,
                                                          FormKind::first_order,    FormKind::illformed};

std::string_view form_text(FormKind k);

struct FormClass {
  FormKind kind;
  std::string reason;  // set for illformed
};

FormClass classify_form(const Expr& e);

/// Declaration, EquationForm and RelationalExpr are atomic; NegatedAtomic is
/// atomic unless `strict`.
bool is_atomic(FormKind k, bool strict = false);

/// Where an axiom lives, for diagnostics.
struct AxiomSite {
  std::string file;
  std::string namespace_name;
};

/// UNSORTED-BINDING, FREE-VARIABLE and USE-BEFORE-BINDING errors. Empty means
/// every variable is bound by a sorted binding before use.
std::vector<Diagnostic> check_restricted_quantifiers(const Expr& e, const AxiomSite& site = {});

/// LEVEL-DOWNREF (error), LEVEL-INCOMPARABLE (warning), SAME-LEVEL-CLASSIFIER
/// (warning), OBJ-CLASSIFIER (error), MALFORMED-NAME (error).
std::vector<Diagnostic> check_stratification(const SourceUnit& unit, const SymbolTable& table);

/// UNWARRANTED-TERM (warning) or WARRANT-OK (info) for every defined name
/// above the object level.
std::vector<Diagnostic> warrant_report(std::span<const SourceUnit> units, const SymbolTable& table);

struct NamespaceProfile {
  std::string name;
  Level level = Level::obj();
  std::array<std::size_t, kAllFormKinds.size()> counts{};
  std::size_t total = 0;
  bool atomic = true;
  bool strictly_atomic = true;

  std::size_t count(FormKind k) const { return counts[static_cast<std::size_t>(k)]; }
};

std::vector<NamespaceProfile> atomicity_profile(const SourceUnit& unit);

struct CheckOptions {
  bool strict_atomic = false;
  bool warrant = false;
};

/// The full static pipeline over a set of units: symbol table, form
/// classification, restricted quantification, stratification and (optionally)
/// warrant. Diagnostics are sorted.
std::vector<Diagnostic> check_units(std::span<const SourceUnit> units, const CheckOptions& options = {});

}  // namespace iff
