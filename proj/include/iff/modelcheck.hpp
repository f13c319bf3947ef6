#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iff/finset.hpp"
#include "iff/interpretation.hpp"
#include "iff/names.hpp"
#include "iff/syntax.hpp"

namespace iff {

class EvalError : public std::runtime_error {
 public:
  enum class Code { unbound_name, unbound_variable, not_a_function, out_of_domain, sort_not_finite, not_a_predicate };
  EvalError(Code c, SourcePos pos, const std::string& message);
  Code code() const { return code_; }
  SourcePos pos() const { return pos_; }
  std::string_view code_name() const;

 private:
  Code code_;
  SourcePos pos_;
};

/// Variable assignments, keyed by the variable's source spelling (`?a`).
using Valuation = std::map<std::string, Value, std::less<>>;

/// How names are looked up: the spelling as written, then its resolution in
/// `context` (when given), then the bare base name.
struct EvalScope {
  const Interpretation& interp;
  std::optional<NamespaceContext> context;
};

Value eval_term(const Expr& t, const EvalScope& scope, const Valuation& v = {});
Value eval_term(const Expr& t, const Interpretation& i, const Valuation& v = {});

bool holds(const Expr& s, const EvalScope& scope, const Valuation& v = {});
bool holds(const Expr& s, const Interpretation& i, const Valuation& v = {});

struct AxiomReport {
  std::string namespace_name;
  std::size_t index = 0;
  SourcePos pos;
  std::string text;
  bool holds = true;
  /// Leading universal variables in binding order, for the first falsifying
  /// assignment. Empty for false sentences without leading universals.
  std::vector<std::pair<std::string, Value>> counterexample;
};

/// Raised by check_theory; `what()` names the namespace and axiom.
class AxiomEvalError : public std::runtime_error {
 public:
  AxiomEvalError(const EvalError& cause, std::string file, std::string namespace_name, std::size_t index);
  const EvalError& cause() const { return cause_; }
  const std::string& namespace_name() const { return namespace_name_; }

 private:
  EvalError cause_;
  std::string namespace_name_;
};

std::vector<AxiomReport> check_theory(const SourceUnit& unit, const Interpretation& i);

// ---------------------------------------------------------------------------
// Fixed points and diagonal arguments

/// Throws SemanticError(not_endofunction).
FinSet fixed_points(const FinFunction& t);
/// The first endofunction on `y` (in enumeration order) without fixed points.
std::optional<FinFunction> fixed_point_free_witness(const FinSet& y, std::uint64_t cap = kDefaultEnumerationCap);
bool has_fpp(const FinSet& y, std::uint64_t cap = kDefaultEnumerationCap);

struct CantorResult {
  bool holds = true;
  std::uint64_t checked = 0;
  /// A surjection X -> P(X), if one were found.
  std::optional<FinFunction> counterexample;
  /// The last enumerated f with its diagonal set {x : x not in f(x)}.
  std::optional<FinFunction> sample;
  std::optional<Value> sample_diagonal;
};

/// Checks every f : X -> P(X) for non-surjectivity and that the diagonal set
/// is missed. Throws SizeCapExceeded.
CantorResult verify_cantor(const FinSet& x, std::uint64_t cap = kDefaultEnumerationCap);

struct FppTransferResult {
  bool holds = true;
  bool y_has_fpp = false;
  std::uint64_t checked = 0;
  /// Fixed-point-free endofunction of Y driving the diagonal argument.
  std::optional<FinFunction> tau;
  /// A map phi : X x X -> Y with surjective curry, if one were found.
  std::optional<FinFunction> counterexample;
};

/// When Y has a fixed-point-free endofunction tau, no phi : X x X -> Y has a
/// surjective curry, and x |-> tau(phi(x, x)) is missed by every curry.
/// Vacuous when Y has the fixed point property. Throws SizeCapExceeded.
FppTransferResult verify_fpp_transfer(const FinSet& x, const FinSet& y, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace iff
