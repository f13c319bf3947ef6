#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "iff/value.hpp"

namespace iff {

class SemanticError : public std::runtime_error {
 public:
  enum class Code {
    invalid_function,
    invalid_predicate,
    invalid_relation,
    invalid_category,
    not_composable,
    source_mismatch,
    target_mismatch,
    target_not_omega,
    genus_mismatch,
    not_in_component,
    not_a_part,
    not_pointwise_composable,
    not_endofunction,
    out_of_domain,
    kind_mismatch,
  };
  SemanticError(Code c, const std::string& what) : std::runtime_error(what), code_(c) {}
  Code code() const { return code_; }
  std::string_view code_name() const;

 private:
  Code code_;
};

/// A finite set of Values, kept sorted and duplicate-free.
class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::vector<Value> elements);
  FinSet(std::initializer_list<Value> elements) : FinSet(std::vector<Value>(elements)) {}

  /// The members of a SetVal.
  static FinSet of(const Value& set_value);
  /// `{0, 1, ..., n-1}` as atoms.
  static FinSet numbered(std::size_t n);

  std::span<const Value> elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  bool contains(const Value& x) const;
  std::optional<std::size_t> index_of(const Value& x) const;
  const Value& operator[](std::size_t i) const { return elems_[i]; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  Value to_value() const { return Value::set(elems_); }
  bool subset_of(const FinSet& other) const;
  std::string to_string() const { return to_value().to_string(); }

  friend bool operator==(const FinSet&, const FinSet&) = default;

 private:
  std::vector<Value> elems_;
};

/// A total function between finite sets. Images are stored in the order of
/// `source().elements()`.
class FinFunction {
 public:
  FinFunction(FinSet source, FinSet target, std::vector<Value> images);

  static FinFunction from_rule(FinSet source, FinSet target, const std::function<Value(const Value&)>& rule);
  /// Reads an FnVal graph; throws invalid_function unless it is total on
  /// `source` and lands in `target`.
  static FinFunction from_graph(FinSet source, FinSet target, const Value& graph);

  const FinSet& source() const { return source_; }
  const FinSet& target() const { return target_; }
  std::span<const Value> images() const { return images_; }

  /// Throws out_of_domain for `x` outside the source.
  const Value& operator()(const Value& x) const;

  /// FnVal encoding of the graph.
  Value graph() const;

  friend bool operator==(const FinFunction&, const FinFunction&) = default;

 private:
  FinSet source_;
  FinSet target_;
  std::vector<Value> images_;
};

/// A part of `genus` given by its extent.
class FinPredicate {
 public:
  FinPredicate(FinSet genus, FinSet extent);
  const FinSet& genus() const { return genus_; }
  const FinSet& extent() const { return extent_; }
  /// The canonical mono `extent -> genus`.
  FinFunction inclusion() const;
  friend bool operator==(const FinPredicate&, const FinPredicate&) = default;

 private:
  FinSet genus_;
  FinSet extent_;
};

class FinRelation {
 public:
  /// `extent` must consist of pairs `[x y]` with x in comp0 and y in comp1.
  FinRelation(FinSet comp0, FinSet comp1, FinSet extent);
  const FinSet& comp0() const { return comp0_; }
  const FinSet& comp1() const { return comp1_; }
  const FinSet& extent() const { return extent_; }
  bool holds(const Value& x, const Value& y) const { return extent_.contains(Value::pair(x, y)); }
  friend bool operator==(const FinRelation&, const FinRelation&) = default;

 private:
  FinSet comp0_;
  FinSet comp1_;
  FinSet extent_;
};

struct FinSpan {
  FinFunction leg0;
  FinFunction leg1;
  FinSpan(FinFunction l0, FinFunction l1);
  const FinSet& vertex() const { return leg0.source(); }
};

/// A finite category with composition in diagrammatic order: `comp(f, g)` is
/// defined when `tgt(f) == src(g)` and means "f then g". All category laws
/// are checked on construction.
class FinCategory {
 public:
  using Table = std::map<std::pair<Value, Value>, Value>;

  FinCategory(FinSet objects, FinSet morphisms, FinFunction src, FinFunction tgt, FinFunction ident, Table comp);

  /// Only identities.
  static FinCategory discrete(const FinSet& objects);

  const FinSet& objects() const { return objects_; }
  const FinSet& morphisms() const { return morphisms_; }
  const FinFunction& src() const { return src_; }
  const FinFunction& tgt() const { return tgt_; }
  const FinFunction& ident() const { return ident_; }
  std::optional<Value> compose(const Value& f, const Value& g) const;
  /// The composition map from composable pairs `[f g]` to morphisms.
  FinFunction composition() const;

 private:
  FinSet objects_;
  FinSet morphisms_;
  FinFunction src_;
  FinFunction tgt_;
  FinFunction ident_;
  Table comp_;
};

// ---------------------------------------------------------------------------
// Enumeration

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 20;

/// An exhaustive enumeration would visit more candidates than allowed.
class SizeCapExceeded : public std::runtime_error {
 public:
  SizeCapExceeded(const std::string& what, std::uint64_t needed, std::uint64_t cap)
      : std::runtime_error(what + ": " + std::to_string(needed) + " candidates exceed the cap of " +
                           std::to_string(cap)),
        needed_(needed),
        cap_(cap) {}
  std::uint64_t needed() const { return needed_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t needed_;
  std::uint64_t cap_;
};

/// Throws SizeCapExceeded when `needed > cap`.
void require_within_cap(std::uint64_t needed, std::uint64_t cap, const std::string& what);

/// |b|^|a|, saturating at UINT64_MAX.
std::uint64_t count_functions(std::size_t a, std::size_t b);

/// Visits every function a -> b in lexicographic order of image tuples.
/// Stops early when `visit` returns false.
void for_each_function(const FinSet& a, const FinSet& b, const std::function<bool(const FinFunction&)>& visit);
std::vector<FinFunction> all_functions(const FinSet& a, const FinSet& b);

// ---------------------------------------------------------------------------
// Category structure of finite sets

FinFunction identity(const FinSet& a);
/// Diagrammatic: x maps to g(f(x)). Throws not_composable.
FinFunction compose(const FinFunction& f, const FinFunction& g);

FinSet initial();
FinSet terminal();
/// The truth values {false, true}; also the subobject classifier.
FinSet omega();
Value truth(bool b);
/// omega -> omega, swapping the truth values.
FinFunction negation();
FinFunction from_initial(const FinSet& a);
FinFunction to_terminal(const FinSet& a);

struct Product {
  FinSet carrier;
  FinFunction pi0;
  FinFunction pi1;
};

Product product(const FinSet& a, const FinSet& b);
/// <f, g> into the product of the targets; throws source_mismatch.
FinFunction pairing(const FinFunction& f, const FinFunction& g);
/// f x g between products.
FinFunction product_map(const FinFunction& f, const FinFunction& g);

FinSet power_set(const FinSet& a);
/// Direct image, covariant.
FinFunction power_map(const FinFunction& f);

/// All FnVal graphs a -> b.
FinSet exponent(const FinSet& a, const FinSet& b);
FinSet hom_set(const FinSet& a, const FinSet& b);
/// exponent(a, b) x a -> b.
FinFunction evaluation(const FinSet& a, const FinSet& b);
/// f : c x a -> b becomes c -> exponent(a, b). Throws source_mismatch.
FinFunction curry(const FinFunction& f, const FinSet& c, const FinSet& a, const FinSet& b);
/// Inverse of curry.
FinFunction uncurry(const FinFunction& g, const FinSet& c, const FinSet& a, const FinSet& b);
/// Precomposition with h : a' -> a, as exponent(a, b) -> exponent(a', b).
FinFunction exponent_map(const FinFunction& h, const FinSet& b);

// ---------------------------------------------------------------------------
// Subobjects

std::vector<FinPredicate> subobjects(const FinSet& a);
/// genus -> omega, true exactly on the extent.
FinFunction characteristic(const FinPredicate& p);
/// Elements sent to true. Throws target_not_omega.
FinPredicate fiber(const FinFunction& chi);
/// Intersection of extents. Throws genus_mismatch.
FinPredicate binary_meet(const FinPredicate& p, const FinPredicate& q);
/// Pullback of a part along h : a' -> genus.
FinPredicate inverse_image(const FinFunction& h, const FinPredicate& p);
/// {y : [x y] in r}. Throws not_in_component.
FinSet relation_fiber01(const FinRelation& r, const Value& x);

struct ImageFactorization {
  FinPredicate image;
  FinFunction corestriction;
};
/// f = corestriction ; image.inclusion().
ImageFactorization image_factorization(const FinFunction& f);

FinRelation span_to_relation(const FinSpan& s);
FinSpan relation_to_span(const FinRelation& r);
/// A relation viewed as a predicate on comp0 x comp1.
FinPredicate relation_as_predicate(const FinRelation& r);

// ---------------------------------------------------------------------------
// Elements, parts, belonging

bool is_injective(const FinFunction& f);
bool is_surjective(const FinFunction& f);
bool is_element(const FinFunction& x, const FinSet& set);
bool is_part(const FinFunction& b);
/// A proof p with compose(p, y) == x, if one exists. Throws target_mismatch.
std::optional<FinFunction> belongs(const FinFunction& x, const FinFunction& y);
/// Both must be parts of one set. Throws not_a_part / target_mismatch.
bool includes(const FinFunction& a, const FinFunction& b);
/// `b` must be a part. Throws not_a_part / target_mismatch.
bool member(const FinFunction& x, const FinFunction& b);

// ---------------------------------------------------------------------------
// Internal categories

struct Pullback {
  FinSet carrier;
  FinFunction pi0;
  FinFunction pi1;
};

/// mor x_obj mor: pairs [f g] with tgt(f) == src(g).
Pullback composable_pairs(const FinCategory& c);

/// Pointwise composition of two X-parameterized morphisms. Throws
/// source_mismatch, target_mismatch or not_pointwise_composable.
FinFunction gen_compose(const FinFunction& f, const FinFunction& g, const FinCategory& c);

}  // namespace iff
