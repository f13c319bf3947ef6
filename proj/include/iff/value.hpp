#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace iff {

/// Canonical element representation: atoms, pairs, finite sets and finite
/// function graphs. Immutable; copies share structure. Equality and ordering
/// are structural, which makes SetVal members and FnVal keys canonical.
class Value {
 public:
  enum class Kind { atom, pair, set, fn };
  using Mapping = std::pair<Value, Value>;

  static Value atom(std::string label);
  static Value pair(Value first, Value second);
  /// Members are sorted and deduplicated.
  static Value set(std::vector<Value> members);
  /// Throws std::invalid_argument when a key maps to two different values.
  static Value fn(std::vector<Mapping> graph);

  /// Right-associated pairs for arity > 2: `[a b c]` is `[a [b c]]`.
  static Value tuple(std::span<const Value> items);

  Kind kind() const;
  bool is_atom() const { return kind() == Kind::atom; }
  bool is_pair() const { return kind() == Kind::pair; }
  bool is_set() const { return kind() == Kind::set; }
  bool is_fn() const { return kind() == Kind::fn; }

  const std::string& label() const;
  const Value& first() const;
  const Value& second() const;
  std::span<const Value> members() const;
  std::span<const Mapping> graph() const;

  /// Membership for SetVal; false for every other kind.
  bool contains(const Value& x) const;
  /// Image of `key` under an FnVal graph.
  std::optional<Value> lookup(const Value& key) const;

  /// `a`, `[a b]`, `{a b}`, `{a->x b->y}`.
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b);

  /// Structural hash, computed once at construction.
  std::size_t hash() const;

  /// Default-constructed values are the atom with an empty label.
  Value();

 private:
  struct Node;
  static std::shared_ptr<const Node> make(Node n);
  explicit Value(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct ValueHash {
  std::size_t operator()(const Value& v) const { return v.hash(); }
};

/// Atoms `0`, `1`, ... `n-1`.
std::vector<Value> numbered_atoms(std::size_t n);

}  // namespace iff
