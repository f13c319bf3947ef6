#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "iff/finset.hpp"

namespace iff {

/// What a name stands for in a finite interpretation.
using Denotation = std::variant<FinSet, FinFunction, FinPredicate, FinRelation, Value>;

std::string_view denotation_kind(const Denotation& d);

/// The Value a denotation contributes when used as a term: sets become
/// SetVals, functions FnVals, predicates and relations the SetVal of their
/// extent, individuals themselves.
Value encode(const Denotation& d);

class InterpretationError : public std::runtime_error {
 public:
  enum class Code { unknown_head, malformed_entry, duplicate_binding, unbound_reference, invalid_denotation };
  InterpretationError(Code c, int line, int column, const std::string& message);
  Code code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }
  std::string_view code_name() const;

 private:
  Code code_;
  int line_;
  int column_;
};

class Interpretation {
 public:
  /// Throws InterpretationError(duplicate_binding) when `name` is taken.
  void bind(const std::string& name, Denotation d);
  const Denotation* find(std::string_view name) const;
  const std::map<std::string, Denotation, std::less<>>& bindings() const { return bindings_; }
  std::size_t size() const { return bindings_.size(); }

 private:
  std::map<std::string, Denotation, std::less<>> bindings_;
};

/// Reads the interpretation format:
///
///   (interpretation
///     (set NAME (v ...))
///     (element NAME SETNAME v)
///     (function NAME (SRC TGT) ((x y) ...))
///     (predicate NAME GENUS (v ...))
///     (relation NAME (C0 C1) ((x y) ...)))
///
/// A value `v` is an atom symbol, a pair `[v v]` (longer brackets nest to the
/// right) or a set `{v ...}`. A symbol already bound by an earlier entry
/// stands for that entry's encoding. SRC, TGT, GENUS, C0, C1 and SETNAME must
/// name earlier `set` entries. Syntax problems raise SyntaxError; everything
/// else raises InterpretationError.
Interpretation parse_interpretation(std::string_view text);

}  // namespace iff
