#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "iff/finset.hpp"
#include "iff/syntax.hpp"

namespace iff::testing {

inline std::string corpus_path(const std::string& name) { return std::string(IFF_CORPUS_DIR) + "/" + name; }

inline std::string read_corpus(const std::string& name) {
  std::ifstream in(corpus_path(name), std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Seeded source of test cases; every property test replays the same stream.
class Gen {
 public:
  explicit Gen(std::uint32_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin() { return below(2) == 1; }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

  FinSet set(std::size_t max_size) { return FinSet::numbered(below(max_size + 1)); }

  FinSet subset(const FinSet& s) {
    std::vector<Value> out;
    for (const auto& x : s)
      if (coin()) out.push_back(x);
    return FinSet(std::move(out));
  }

  FinFunction function(const FinSet& a, const FinSet& b) {
    std::vector<Value> images;
    for (std::size_t i = 0; i < a.size(); ++i) images.push_back(b[below(b.size())]);
    return FinFunction(a, b, std::move(images));
  }

  /// Terms over a fixed vocabulary; `depth` bounds nesting.
  Expr term(int depth, const std::vector<std::string>& vars) {
    std::size_t roll = below(depth > 0 ? 4 : 2);
    if (roll == 0 || (roll == 1 && vars.empty())) return Expr::name(pick(names()));
    if (roll == 1) return Expr::variable(pick(vars));
    if (roll == 2) {
      std::vector<Expr> items;
      for (std::size_t i = 0, n = 2 + below(2); i < n; ++i) items.push_back(term(depth - 1, vars));
      return Expr::tuple(std::move(items));
    }
    Expr head = coin() || depth < 2 ? Expr::name(pick(heads())) : term_apply(depth - 1, vars);
    std::vector<Expr> args;
    for (std::size_t i = 0, n = 1 + below(2); i < n; ++i) args.push_back(term(depth - 1, vars));
    return Expr::apply(std::move(head), std::move(args));
  }

  /// Sentences and formulas; variables introduced by quantifiers are `?v0`, `?v1`, ...
  Expr formula(int depth, std::vector<std::string> vars = {}) {
    std::size_t roll = below(depth > 0 ? 6 : 2);
    switch (roll) {
      case 0: return Expr::apply(Expr::name(pick(heads())), {term(1, vars)});
      case 1: return Expr::equation(term(1, vars), term(1, vars));
      case 2: {
        Op op = pick(std::vector<Op>{Op::and_, Op::or_, Op::implies, Op::iff});
        return Expr::connective(op, {formula(depth - 1, vars), formula(depth - 1, vars)});
      }
      case 3: return Expr::connective(Op::not_, {formula(depth - 1, vars)});
      default: {
        std::vector<Binding> bs;
        for (std::size_t i = 0, n = 1 + below(2); i < n; ++i) {
          std::string v = "?v" + std::to_string(vars.size());
          bs.push_back(Binding{share(Expr::name(pick(heads()))), v});
          vars.push_back(v);
        }
        Quant q = coin() ? Quant::forall : Quant::exists;
        return Expr::quantifier(q, std::move(bs), formula(depth - 1, vars));
      }
    }
  }

 private:
  Expr term_apply(int depth, const std::vector<std::string>& vars) {
    return Expr::apply(Expr::name(pick(heads())), {term(depth, vars)});
  }

  static const std::vector<std::string>& names() {
    static const std::vector<std::string> v{"a", "b", "x-1", "#n.set:set", "type.ftn:source", "iff:set", "A"};
    return v;
  }
  static const std::vector<std::string>& heads() {
    static const std::vector<std::string> v{"f", "g", "set", "#n+1.ftn:function", "meta.grp:unit"};
    return v;
  }

  std::mt19937 rng_;
};

}  // namespace iff::testing
