#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "iff/diagnostic.hpp"
#include "iff/finset.hpp"
#include "iff/interpretation.hpp"

namespace iff {

class MetastackError : public std::runtime_error {
 public:
  enum class Code { cap_exceeded, level_out_of_range, not_a_family, not_in_ptilde, bad_config };
  MetastackError(Code c, const std::string& what) : std::runtime_error(what), code_(c) {}
  Code code() const { return code_; }
  std::string_view code_name() const;

 private:
  Code code_;
};

/// Atoms have rank 0; a set has rank one more than its highest-ranked member,
/// so the empty set has rank 1.
std::size_t rank(const Value& v);

struct UniverseConfig {
  std::size_t atoms = 2;
  std::size_t depth = 2;
  std::size_t breadth = 4;
  /// Largest level that is listed set by set. A larger level is kept as a
  /// membership test plus its exact size, and only the top level may be.
  std::uint64_t level_bound = std::uint64_t{1} << 16;
  /// Largest function collection built by verify_source_chain.
  std::uint64_t function_bound = std::uint64_t{1} << 16;
};

/// set_k: every set of rank <= k over the atoms, with every set along the way
/// holding at most `breadth` members.
struct UniverseLevel {
  std::size_t k = 0;
  /// |set_k|, saturating at UINT64_MAX.
  std::uint64_t count = 0;
  /// Sorted members when listed; empty when the level is only a predicate.
  std::vector<Value> sets;
  bool listed = false;
};

class StratifiedUniverse {
 public:
  /// Throws MetastackError(bad_config) for atoms == 0 or depth == 0 and
  /// MetastackError(cap_exceeded) when a level below the top exceeds
  /// `level_bound`.
  explicit StratifiedUniverse(const UniverseConfig& config);

  const UniverseConfig& config() const { return config_; }
  std::size_t depth() const { return config_.depth; }
  std::size_t breadth() const { return config_.breadth; }
  const FinSet& atoms() const { return atoms_; }
  /// Levels 1..depth. Throws level_out_of_range.
  const UniverseLevel& level(std::size_t k) const;
  /// Membership of `v` in set_k; level 0 is the collection of atoms.
  bool contains(std::size_t k, const Value& v) const;
  /// atoms + set_{k-1}: what level-k sets are made of.
  std::uint64_t ground_size(std::size_t k) const;
  /// The listed ground of level k. Throws cap_exceeded if set_{k-1} is not listed.
  std::vector<Value> ground(std::size_t k) const;
  /// SetVal of set_k. Throws cap_exceeded for an unlisted level.
  Value encoding(std::size_t k) const;

 private:
  UniverseConfig config_;
  FinSet atoms_;
  std::vector<UniverseLevel> levels_;
  std::vector<std::unordered_set<Value, ValueHash>> index_;
};

StratifiedUniverse build_universe(std::size_t atoms, std::size_t depth, std::size_t breadth);

/// { x in X | x in Y in Z for some Y }. Throws not_a_family when a member of
/// Z is not a set.
Value bounded_union(const FinSet& x, const Value& z);
/// { x | x in Y in Z for some Y }, for Z a set of level-k sets. Throws
/// not_in_ptilde otherwise.
Value unbounded_union(const Value& z, const StratifiedUniverse& u, std::size_t k);
/// univ_k, the union of all level-k sets. Requires a listed level k.
Value universe(const StratifiedUniverse& u, std::size_t k);

// ---------------------------------------------------------------------------
// Verdicts

enum class Verdict { pass, truncated, violated };
std::string_view verdict_text(Verdict v);

struct CheckRow {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::uint64_t instances = 0;
  std::uint64_t truncated = 0;
  /// One witness per violated instance.
  std::vector<std::string> violations;
  std::string note;
};

/// set_k ⊂ set_{k+1}, set_k ∈ set_{k+1} and set_k ∉ set_k for every level.
std::vector<CheckRow> check_chain(const StratifiedUniverse& u);

/// bounded_union(X, Z) = unbounded_union(Z) ∩ X for every listed level-1 set
/// X and every family Z of its subsets.
CheckRow check_union_agreement(const StratifiedUniverse& u);

/// One row per analog: membership, subset, doubleton, singleton, power,
/// isomorph, bounded-union, unbounded-union.
std::vector<CheckRow> grothendieck_rows(const StratifiedUniverse& u);

/// ANALOG-VIOLATION (error) per violated instance, TRUNCATED (warning) once
/// per row that hit a representability limit.
std::vector<Diagnostic> check_grothendieck_analogs(const StratifiedUniverse& u);

// ---------------------------------------------------------------------------
// Kernel orders

bool order_subset(const FinSet& a, const FinSet& b);
/// f.source ⊆ g.source, f.target ⊆ g.target and g agrees with f on f.source.
bool order_restriction(const FinFunction& f, const FinFunction& g);
/// Restriction where f.source is exactly the part of g.source that g sends
/// into f.target.
bool order_opt_restriction(const FinFunction& f, const FinFunction& g);
/// genus_p ⊆ genus_q and extent_p = extent_q ∩ genus_p.
bool order_delimitation(const FinPredicate& p, const FinPredicate& q);
/// Components included and extent_r = extent_s ∩ (comp0_r x comp1_r).
bool order_abridgment(const FinRelation& r, const FinRelation& s);

enum class OrderKind { subset, restriction, opt_restriction, delimitation, abridgment };
/// Dispatch on denotations. Throws SemanticError(kind_mismatch).
bool kernel_order(OrderKind kind, const Denotation& a, const Denotation& b);

// ---------------------------------------------------------------------------
// Source and target chains

struct SourceChainResult {
  bool holds = true;
  /// Functions between sets of at most this many members were built.
  std::size_t size_limit = 0;
  /// Per consecutive level pair k, k+1.
  std::vector<std::string> steps;
};

/// Builds ftn_k (graphs between level-k sets) for consecutive levels and
/// checks ∂0^k ⊑ ∂0^{k+1} and ∂1^k ⊑ ∂1^{k+1}. A function value is the pair
/// `[[source target] graph]`. Throws bad_config for depth < 2.
SourceChainResult verify_source_chain(const StratifiedUniverse& u);

}  // namespace iff
