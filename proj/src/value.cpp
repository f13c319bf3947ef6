#include "iff/value.hpp"

#include <algorithm>
#include <stdexcept>

namespace iff {

struct Value::Node {
  std::variant<std::string, std::pair<Value, Value>, std::vector<Value>, std::vector<Mapping>> data;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t h) { return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)); }

}  // namespace

std::shared_ptr<const Value::Node> Value::make(Node n) {
  std::size_t h = n.data.index();
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, std::string>) {
          h = mix(h, std::hash<std::string>{}(d));
        } else if constexpr (std::is_same_v<T, std::pair<Value, Value>>) {
          h = mix(mix(h, d.first.hash()), d.second.hash());
        } else if constexpr (std::is_same_v<T, std::vector<Value>>) {
          for (const auto& m : d) h = mix(h, m.hash());
        } else {
          for (const auto& [k, v] : d) h = mix(mix(h, k.hash()), v.hash());
        }
      },
      n.data);
  n.hash = h;
  return std::make_shared<const Node>(std::move(n));
}

std::size_t Value::hash() const { return node_->hash; }

bool operator==(const Value& a, const Value& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  return (a <=> b) == 0;
}

Value::Value() : Value(atom("")) {}

Value Value::atom(std::string label) {
  return Value(make(Node{std::move(label)}));
}

Value Value::pair(Value first, Value second) {
  return Value(make(Node{std::make_pair(std::move(first), std::move(second))}));
}

Value Value::set(std::vector<Value> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return Value(make(Node{std::move(members)}));
}

Value Value::fn(std::vector<Mapping> graph) {
  std::sort(graph.begin(), graph.end(), [](const Mapping& a, const Mapping& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < graph.size(); ++i) {
    if (graph[i].first == graph[i - 1].first) {
      if (graph[i].second != graph[i - 1].second)
        throw std::invalid_argument("function graph maps " + graph[i].first.to_string() + " twice");
    }
  }
  graph.erase(std::unique(graph.begin(), graph.end(),
                          [](const Mapping& a, const Mapping& b) { return a.first == b.first; }),
              graph.end());
  return Value(make(Node{std::move(graph)}));
}

Value Value::tuple(std::span<const Value> items) {
  if (items.size() < 2) throw std::invalid_argument("a tuple needs at least two items");
  Value acc = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) acc = pair(items[i], acc);
  return acc;
}

Value::Kind Value::kind() const { return static_cast<Kind>(node_->data.index()); }

const std::string& Value::label() const { return std::get<std::string>(node_->data); }
const Value& Value::first() const { return std::get<std::pair<Value, Value>>(node_->data).first; }
const Value& Value::second() const { return std::get<std::pair<Value, Value>>(node_->data).second; }
std::span<const Value> Value::members() const { return std::get<std::vector<Value>>(node_->data); }
std::span<const Value::Mapping> Value::graph() const { return std::get<std::vector<Mapping>>(node_->data); }

bool Value::contains(const Value& x) const {
  if (!is_set()) return false;
  auto m = members();
  return std::binary_search(m.begin(), m.end(), x);
}

std::optional<Value> Value::lookup(const Value& key) const {
  if (!is_fn()) return std::nullopt;
  auto g = graph();
  auto it = std::lower_bound(g.begin(), g.end(), key, [](const Mapping& m, const Value& k) { return m.first < k; });
  if (it == g.end() || it->first != key) return std::nullopt;
  return it->second;
}

std::string Value::to_string() const {
  switch (kind()) {
    case Kind::atom: return label();
    case Kind::pair: return "[" + first().to_string() + " " + second().to_string() + "]";
    case Kind::set: {
      std::string out = "{";
      bool sep = false;
      for (const auto& m : members()) {
        if (sep) out += ' ';
        out += m.to_string();
        sep = true;
      }
      return out + "}";
    }
    case Kind::fn: {
      std::string out = "{";
      bool sep = false;
      for (const auto& [k, v] : graph()) {
        if (sep) out += ' ';
        out += k.to_string() + "->" + v.to_string();
        sep = true;
      }
      return out + "}";
    }
  }
  return {};
}

namespace {

template <class Range, class Cmp>
std::strong_ordering lex(const Range& a, const Range& b, Cmp cmp) {
  auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (auto c = cmp(a[i], b[i]); c != 0) return c;
  return a.size() <=> b.size();
}

}  // namespace

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->data.index() <=> b.node_->data.index(); c != 0) return c;
  switch (a.kind()) {
    case Value::Kind::atom: {
      int c = a.label().compare(b.label());
      return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    case Value::Kind::pair:
      if (auto c = a.first() <=> b.first(); c != 0) return c;
      return a.second() <=> b.second();
    case Value::Kind::set:
      return lex(a.members(), b.members(), [](const Value& x, const Value& y) { return x <=> y; });
    case Value::Kind::fn:
      return lex(a.graph(), b.graph(), [](const Value::Mapping& x, const Value::Mapping& y) {
        if (auto c = x.first <=> y.first; c != 0) return c;
        return x.second <=> y.second;
      });
  }
  return std::strong_ordering::equal;
}

std::vector<Value> numbered_atoms(std::size_t n) {
  std::vector<Value> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(Value::atom(std::to_string(i)));
  return out;
}

}  // namespace iff
