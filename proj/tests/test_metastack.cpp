#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <set>
#include <string>

#include "iff/metastack.hpp"
#include "support.hpp"

using namespace iff;
using iff::testing::Gen;

namespace {

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Levels built by bitmask over an explicitly grown ground, independent of
/// the library's subset walker.
std::vector<std::set<Value>> oracle_levels(std::size_t atoms, std::size_t depth, std::size_t breadth) {
  std::vector<Value> ground;
  for (std::size_t i = 0; i < atoms; ++i) ground.push_back(Value::atom(std::string(1, char('a' + i))));
  const std::vector<Value> base = ground;
  std::vector<std::set<Value>> out;
  for (std::size_t k = 1; k <= depth; ++k) {
    std::set<Value> level;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ground.size()); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) > breadth) continue;
      std::vector<Value> members;
      for (std::size_t i = 0; i < ground.size(); ++i)
        if (mask >> i & 1) members.push_back(ground[i]);
      level.insert(Value::set(members));
    }
    out.push_back(level);
    ground = base;
    ground.insert(ground.end(), level.begin(), level.end());
  }
  return out;
}

std::size_t oracle_rank(const Value& v) {
  if (!v.is_set()) return 0;
  std::size_t r = 0;
  for (const auto& m : v.members()) r = std::max(r, oracle_rank(m));
  return r + 1;
}

bool all_pass_or_truncated(const std::vector<CheckRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.verdict != Verdict::violated; });
}

}  // namespace

TEST_CASE("rank counts nesting depth") {
  Value a = Value::atom("a");
  CHECK(rank(a) == 0);
  CHECK(rank(Value::set({})) == 1);
  CHECK(rank(Value::set({a})) == 1);
  CHECK(rank(Value::set({Value::set({})})) == 2);
  CHECK(rank(Value::set({a, Value::set({Value::set({a})})})) == 3);
}

TEST_CASE("levels match a bitmask enumeration") {
  for (std::size_t atoms = 1; atoms <= 3; ++atoms)
    for (std::size_t breadth = 0; breadth <= 4; ++breadth) {
      std::size_t depth = atoms == 3 && breadth >= 3 ? 2 : 3;
      // The bitmask oracle needs the ground below 2^20.
      auto ref = oracle_levels(atoms, std::min<std::size_t>(depth, 2), breadth);
      auto u = build_universe(atoms, depth, breadth);
      for (std::size_t k = 1; k <= ref.size(); ++k) {
        INFO("atoms=" << atoms << " breadth=" << breadth << " k=" << k);
        const auto& lv = u.level(k);
        REQUIRE(lv.listed);
        CHECK(lv.count == ref[k - 1].size());
        CHECK(std::set<Value>(lv.sets.begin(), lv.sets.end()) == ref[k - 1]);
      }
    }
}

TEST_CASE("level sizes follow the bounded-subset count") {
  for (std::size_t atoms = 1; atoms <= 3; ++atoms)
    for (std::size_t breadth = 0; breadth <= 4; ++breadth) {
      auto u = build_universe(atoms, 3, breadth);
      std::uint64_t below = 0;
      for (std::size_t k = 1; k <= 3; ++k) {
        std::uint64_t g = atoms + below;
        std::uint64_t expected = 0;
        for (std::uint64_t j = 0; j <= std::min<std::uint64_t>(g, breadth); ++j) expected += choose(g, j);
        CHECK(u.ground_size(k) == g);
        CHECK(u.level(k).count == expected);
        below = expected;
      }
    }
}

TEST_CASE("every listed set has bounded rank and breadth") {
  auto u = build_universe(2, 3, 3);
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto& lv = u.level(k);
    if (!lv.listed) continue;
    for (const auto& s : lv.sets) {
      CHECK(oracle_rank(s) <= k);
      CHECK(rank(s) == oracle_rank(s));
      CHECK(s.members().size() <= 3);
      for (const auto& m : s.members()) CHECK((!m.is_set() || (k > 1 && u.contains(k - 1, m))));
    }
  }
}

TEST_CASE("membership agrees with the listing") {
  auto u = build_universe(2, 3, 2);
  auto ref = oracle_levels(2, 2, 2);
  for (std::size_t k = 1; k <= 2; ++k) {
    for (const auto& s : ref[k - 1]) CHECK(u.contains(k, s));
    // Sets one rank too high are never members.
    for (const auto& s : ref[k - 1])
      if (oracle_rank(Value::set({s})) > k) CHECK_FALSE(u.contains(k, Value::set({s})));
  }
  CHECK(u.contains(0, Value::atom("a")));
  CHECK_FALSE(u.contains(0, Value::set({})));
  CHECK_FALSE(u.contains(1, Value::atom("a")));
  CHECK_FALSE(u.contains(1, Value::set({Value::atom("a"), Value::atom("b"), Value::atom("c")})));
}

TEST_CASE("configuration errors") {
  auto code = [](auto&& build) {
    try {
      build();
    } catch (const MetastackError& e) {
      return e.code();
    }
    FAIL("no metastack error");
    return MetastackError::Code::bad_config;
  };
  CHECK(code([] { build_universe(0, 2, 2); }) == MetastackError::Code::bad_config);
  CHECK(code([] { build_universe(2, 0, 2); }) == MetastackError::Code::bad_config);
  CHECK(code([] { build_universe(2, 2, 2).level(3); }) == MetastackError::Code::level_out_of_range);
  CHECK(code([] { StratifiedUniverse(UniverseConfig{.atoms = 3, .depth = 3, .breadth = 4, .level_bound = 10}); }) ==
        MetastackError::Code::cap_exceeded);
  CHECK(code([] { verify_source_chain(build_universe(2, 1, 2)); }) == MetastackError::Code::bad_config);
}

TEST_CASE("the top level may be a predicate") {
  auto u = build_universe(3, 3, 4);
  const auto& top = u.level(3);
  CHECK_FALSE(top.listed);
  CHECK(top.count > u.config().level_bound);
  CHECK_THROWS_AS(u.encoding(3), MetastackError);
  Value a = Value::atom("a"), e = Value::set({});
  Value two = Value::set({Value::set({a}), e});
  CHECK(u.contains(3, Value::set({two, a})));
  CHECK(u.contains(3, Value::set({two, e, Value::set({e})})));
  // Eight members break the breadth bound, and rank 4 breaks the depth.
  CHECK_FALSE(u.contains(3, u.encoding(1)));
  CHECK_FALSE(u.contains(3, Value::set({Value::set({two})})));
}

TEST_CASE("the Cantorian chain over small universes") {
  auto start = std::chrono::steady_clock::now();
  for (std::size_t atoms = 1; atoms <= 3; ++atoms)
    for (std::size_t depth = 1; depth <= 3; ++depth)
      for (std::size_t breadth = 0; breadth <= 4; ++breadth) {
        INFO("atoms=" << atoms << " depth=" << depth << " breadth=" << breadth);
        auto u = build_universe(atoms, depth, breadth);
        auto rows = check_chain(u);
        CHECK_FALSE(rows.empty());
        CHECK(all_pass_or_truncated(rows));
        for (const auto& r : rows) CHECK(r.violations.empty());
      }
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 10.0);
}

TEST_CASE("listed levels grow strictly and contain their predecessors") {
  // Direct check, independent of check_chain.
  auto u = build_universe(2, 3, 4);
  for (std::size_t k = 1; k < 3; ++k) {
    const auto& lo = u.level(k);
    CHECK(lo.count < u.level(k + 1).count);
    for (const auto& s : lo.sets) CHECK(u.contains(k + 1, s));
    Value enc = u.encoding(k);
    CHECK(u.contains(k + 1, enc) == (lo.count <= u.breadth()));
    CHECK_FALSE(u.contains(k, enc));
  }
}

TEST_CASE("bounded union restricts the unbounded one") {
  Value a = Value::atom("a"), b = Value::atom("b"), c = Value::atom("c");
  FinSet x{a, b};
  Value z = Value::set({Value::set({a}), Value::set({b, c}), Value::set({})});
  CHECK(bounded_union(x, z) == Value::set({a, b}));
  CHECK_THROWS_AS(bounded_union(x, Value::set({a})), MetastackError);

  auto u = build_universe(3, 2, 3);
  CHECK(unbounded_union(z, u, 1) == Value::set({a, b, c}));
  CHECK_THROWS_AS(unbounded_union(Value::set({Value::set({z})}), u, 1), MetastackError);

  auto row = check_union_agreement(u);
  CHECK(row.verdict != Verdict::violated);
  CHECK(row.instances > 0);

  Gen g(5);
  auto level1 = u.level(1).sets;
  for (int i = 0; i < 500; ++i) {
    std::vector<Value> family;
    for (const auto& s : level1)
      if (g.below(4) == 0) family.push_back(s);
    Value fam = Value::set(family);
    FinSet xs = g.subset(u.atoms());
    std::set<Value> everything;
    for (const auto& s : family)
      for (const auto& m : s.members()) everything.insert(m);
    std::vector<Value> within;
    for (const auto& m : everything)
      if (xs.contains(m)) within.push_back(m);
    CHECK(unbounded_union(fam, u, 1) == Value::set(std::vector<Value>(everything.begin(), everything.end())));
    CHECK(bounded_union(xs, fam) == Value::set(within));
  }
}

TEST_CASE("universe is the union of a level") {
  auto u = build_universe(2, 2, 2);
  for (std::size_t k = 1; k <= 2; ++k) {
    std::set<Value> all;
    for (const auto& s : u.level(k).sets)
      for (const auto& m : s.members()) all.insert(m);
    CHECK(universe(u, k) == Value::set(std::vector<Value>(all.begin(), all.end())));
  }
}

TEST_CASE("Grothendieck analogs pass or truncate") {
  auto start = std::chrono::steady_clock::now();
  for (std::size_t atoms = 1; atoms <= 3; ++atoms)
    for (std::size_t depth = 1; depth <= 3; ++depth)
      for (std::size_t breadth = 0; breadth <= 4; ++breadth) {
        INFO("atoms=" << atoms << " depth=" << depth << " breadth=" << breadth);
        auto u = build_universe(atoms, depth, breadth);
        auto rows = grothendieck_rows(u);
        CHECK(rows.size() == 8);
        CHECK(all_pass_or_truncated(rows));
        for (const auto& d : check_grothendieck_analogs(u)) CHECK(d.severity != Severity::error);
      }
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 10.0);
}

TEST_CASE("analog rows name the eight closure properties") {
  auto rows = grothendieck_rows(build_universe(2, 2, 4));
  std::vector<std::string> names;
  for (const auto& r : rows) names.push_back(r.name);
  CHECK(names == std::vector<std::string>{"membership", "subset", "doubleton", "singleton", "power", "isomorph",
                                          "bounded-union", "unbounded-union"});
}

TEST_CASE("kernel orders against their definitions") {
  Gen g(44);
  for (int i = 0; i < 400; ++i) {
    FinSet a = g.set(3), b = g.set(3);
    bool sub = std::all_of(a.begin(), a.end(), [&](const Value& v) { return b.contains(v); });
    CHECK(order_subset(a, b) == sub);
    CHECK(order_subset(a, a));

    FinSet genus = g.set(3), wider = g.set(3);
    FinPredicate q(wider, g.subset(wider));
    if (genus.subset_of(wider)) {
      std::vector<Value> cut;
      for (const auto& v : q.extent())
        if (genus.contains(v)) cut.push_back(v);
      FinPredicate p(genus, FinSet(cut));
      CHECK(order_delimitation(p, q));
      if (!cut.empty()) {
        std::vector<Value> fewer(cut.begin() + 1, cut.end());
        CHECK_FALSE(order_delimitation(FinPredicate(genus, FinSet(fewer)), q));
      }
    }
  }
  CHECK(order_delimitation(FinPredicate(FinSet{}, FinSet{}), FinPredicate(FinSet::numbered(1), FinSet{})));
}

TEST_CASE("restriction orders on functions") {
  Gen g(61);
  for (int i = 0; i < 400; ++i) {
    FinSet src = g.set(3), tgt = g.set(3);
    if (tgt.empty() && !src.empty()) continue;
    FinFunction big = g.function(src, tgt);
    FinSet part = g.subset(src);
    std::vector<Value> images;
    for (const auto& x : part) images.push_back(big(x));
    FinFunction small(part, tgt, images);
    CHECK(order_restriction(small, big));
    CHECK(order_restriction(big, big));
    // opt-restriction also needs the part to be the full preimage of tgt.
    CHECK(order_opt_restriction(small, big) == (part == src));
    if (!part.empty() && tgt.size() > 1) {
      std::vector<Value> changed = images;
      changed[0] = changed[0] == tgt[0] ? tgt[1] : tgt[0];
      CHECK_FALSE(order_restriction(FinFunction(part, tgt, changed), big));
    }
  }
}

TEST_CASE("abridgment cuts a relation to smaller components") {
  FinSet c0 = FinSet::numbered(3), c1 = FinSet::numbered(2);
  std::vector<Value> pairs;
  for (const auto& x : c0)
    for (const auto& y : c1)
      if (x != y) pairs.push_back(Value::pair(x, y));
  FinRelation s(c0, c1, FinSet(pairs));
  FinSet d0 = FinSet::numbered(2);
  std::vector<Value> cut;
  for (const auto& p : pairs)
    if (d0.contains(p.first())) cut.push_back(p);
  CHECK(order_abridgment(FinRelation(d0, c1, FinSet(cut)), s));
  CHECK_FALSE(order_abridgment(FinRelation(d0, c1, FinSet{}), s));
  CHECK(kernel_order(OrderKind::abridgment, FinRelation(d0, c1, FinSet(cut)), s));
  CHECK_THROWS_AS(kernel_order(OrderKind::subset, c0, s), SemanticError);
}

TEST_CASE("source and target maps grow along the chain") {
  for (std::size_t atoms = 1; atoms <= 3; ++atoms)
    for (std::size_t breadth = 1; breadth <= 4; ++breadth) {
      INFO("atoms=" << atoms << " breadth=" << breadth);
      auto r = verify_source_chain(build_universe(atoms, 3, breadth));
      CHECK(r.holds);
      CHECK(r.steps.size() == 2);
    }
}

namespace {

/// Every predicate whose genus is a subset of {0 1 2}.
std::vector<FinPredicate> small_predicates() {
  std::vector<FinPredicate> out;
  for (const auto& genus : power_set(FinSet::numbered(3)))
    for (const auto& extent : power_set(FinSet::of(genus))) out.emplace_back(FinSet::of(genus), FinSet::of(extent));
  return out;
}

/// Every relation whose components are subsets of {0 1}.
std::vector<FinRelation> small_relations() {
  std::vector<FinRelation> out;
  for (const auto& c0 : power_set(FinSet::numbered(2)))
    for (const auto& c1 : power_set(FinSet::numbered(2))) {
      FinSet a = FinSet::of(c0), b = FinSet::of(c1);
      for (const auto& extent : power_set(product(a, b).carrier)) out.emplace_back(a, b, FinSet::of(extent));
    }
  return out;
}

/// Every function between subsets of {0 1}.
std::vector<FinFunction> small_functions() {
  std::vector<FinFunction> out;
  for (const auto& s : power_set(FinSet::numbered(2)))
    for (const auto& t : power_set(FinSet::numbered(2)))
      for (auto& f : all_functions(FinSet::of(s), FinSet::of(t))) out.push_back(std::move(f));
  return out;
}

template <class T, class Order>
void check_preorder(const std::vector<T>& xs, Order leq, bool antisymmetric) {
  for (const auto& a : xs) {
    CHECK(leq(a, a));
    for (const auto& b : xs) {
      if (!leq(a, b)) continue;
      if (antisymmetric && leq(b, a)) CHECK(a == b);
      for (const auto& c : xs)
        if (leq(b, c)) CHECK(leq(a, c));
    }
  }
}

}  // namespace

TEST_CASE("delimitation is optimal restriction of inclusions") {
  auto preds = small_predicates();
  CHECK(preds.size() == 27);
  for (const auto& p : preds)
    for (const auto& q : preds) CHECK(order_delimitation(p, q) == order_opt_restriction(p.inclusion(), q.inclusion()));
}

TEST_CASE("abridgment is delimitation of relations read as predicates") {
  auto rels = small_relations();
  for (const auto& r : rels)
    for (const auto& s : rels) {
      bool abridged = order_abridgment(r, s);
      bool delimited = order_delimitation(relation_as_predicate(r), relation_as_predicate(s));
      if (abridged) CHECK(delimited);
      // Empty components hide the other component from the product genus.
      bool full = !r.comp0().empty() && !r.comp1().empty();
      if (full) CHECK(abridged == delimited);
    }
}

TEST_CASE("kernel orders are preorders") {
  std::vector<FinSet> sets;
  for (const auto& s : power_set(FinSet::numbered(3))) sets.push_back(FinSet::of(s));
  check_preorder(sets, order_subset, true);
  check_preorder(small_predicates(), order_delimitation, true);
  auto fns = small_functions();
  check_preorder(fns, order_restriction, false);
  check_preorder(fns, order_opt_restriction, false);
  auto rels = small_relations();
  check_preorder(rels, order_abridgment, false);
}
