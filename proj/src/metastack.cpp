#include "iff/metastack.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace iff {

std::string_view MetastackError::code_name() const {
  switch (code_) {
    case Code::cap_exceeded: return "CapExceeded";
    case Code::level_out_of_range: return "LevelOutOfRange";
    case Code::not_a_family: return "NotAFamily";
    case Code::not_in_ptilde: return "NotInPTilde";
    case Code::bad_config: return "BadConfig";
  }
  return "MetastackError";
}

std::size_t rank(const Value& v) {
  if (!v.is_set()) return 0;
  std::size_t r = 0;
  for (const auto& m : v.members()) r = std::max(r, rank(m));
  return r + 1;
}

namespace {

using MCode = MetastackError::Code;
constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

__extension__ typedef unsigned __int128 Wide;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  Wide p = static_cast<Wide>(a) * b;
  return p > kSaturated ? kSaturated : static_cast<std::uint64_t>(p);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t j) {
  if (j > n) return 0;
  Wide c = 1;
  for (std::uint64_t i = 0; i < j; ++i) {
    c = c * (n - i) / (i + 1);
    if (c > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(c);
}

/// Number of subsets of an n-element ground with at most `cap` members.
std::uint64_t bounded_subsets(std::uint64_t n, std::size_t cap) {
  std::uint64_t total = 0;
  for (std::size_t j = 0; j <= cap; ++j) total = sat_add(total, binomial(n, j));
  return total;
}

/// Visits every subset of `ground` with at most `cap` members.
void for_each_small_subset(const std::vector<Value>& ground, std::size_t cap,
                           const std::function<void(const std::vector<Value>&)>& visit) {
  std::vector<Value> pick;
  std::function<void(std::size_t)> go = [&](std::size_t from) {
    visit(pick);
    if (pick.size() == cap) return;
    for (std::size_t i = from; i < ground.size(); ++i) {
      pick.push_back(ground[i]);
      go(i + 1);
      pick.pop_back();
    }
  };
  go(0);
}

std::vector<Value> all_subsets(std::span<const Value> xs) {
  std::vector<Value> out;
  const std::size_t n = xs.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Value> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(xs[i]);
    out.push_back(Value::set(std::move(s)));
  }
  return out;
}

CheckRow named(std::string name) {
  CheckRow r;
  r.name = std::move(name);
  return r;
}

void finish(CheckRow& row) {
  row.verdict = !row.violations.empty() ? Verdict::violated : row.truncated > 0 ? Verdict::truncated : Verdict::pass;
}

std::string lvl(std::size_t k) { return "set_" + std::to_string(k); }

/// Families scanned per level by the bounded-union row.
constexpr std::uint64_t kFamilyBudget = std::uint64_t{1} << 15;

}  // namespace

// ---------------------------------------------------------------------------
// Universe

StratifiedUniverse::StratifiedUniverse(const UniverseConfig& config) : config_(config) {
  if (config_.atoms == 0) throw MetastackError(MCode::bad_config, "a universe needs at least one atom");
  if (config_.depth == 0) throw MetastackError(MCode::bad_config, "a universe needs at least one level");
  std::vector<Value> atoms;
  for (std::size_t i = 0; i < config_.atoms; ++i) {
    std::string label(1, static_cast<char>('a' + i % 26));
    if (i >= 26) label += std::to_string(i / 26);
    atoms.push_back(Value::atom(std::move(label)));
  }
  atoms_ = FinSet(std::move(atoms));

  for (std::size_t k = 1; k <= config_.depth; ++k) {
    UniverseLevel lv;
    lv.k = k;
    std::uint64_t g = k == 1 ? atoms_.size() : sat_add(atoms_.size(), levels_.back().count);
    lv.count = bounded_subsets(g, config_.breadth);
    if (lv.count <= config_.level_bound) {
      std::vector<Value> ground(atoms_.begin(), atoms_.end());
      if (k > 1) ground.insert(ground.end(), levels_.back().sets.begin(), levels_.back().sets.end());
      for_each_small_subset(ground, config_.breadth, [&](const std::vector<Value>& s) { lv.sets.push_back(Value::set(s)); });
      std::sort(lv.sets.begin(), lv.sets.end());
      lv.listed = true;
      index_.emplace_back(lv.sets.begin(), lv.sets.end());
    } else if (k < config_.depth) {
      throw MetastackError(MCode::cap_exceeded, lvl(k) + " has " + std::to_string(lv.count) +
                                                     " sets, beyond the bound of " +
                                                     std::to_string(config_.level_bound) + " for a non-top level");
    }
    levels_.push_back(std::move(lv));
  }
}

const UniverseLevel& StratifiedUniverse::level(std::size_t k) const {
  if (k == 0 || k > levels_.size())
    throw MetastackError(MCode::level_out_of_range, "level " + std::to_string(k) + " is outside 1.." +
                                                         std::to_string(levels_.size()));
  return levels_[k - 1];
}

bool StratifiedUniverse::contains(std::size_t k, const Value& v) const {
  if (k == 0) return v.is_atom() && atoms_.contains(v);
  const UniverseLevel& lv = level(k);
  if (lv.listed) return index_[k - 1].contains(v);
  if (!v.is_set() || v.members().size() > config_.breadth) return false;
  for (const auto& m : v.members())
    if (!(m.is_atom() ? atoms_.contains(m) : contains(k - 1, m))) return false;
  return true;
}

std::uint64_t StratifiedUniverse::ground_size(std::size_t k) const {
  return k <= 1 ? atoms_.size() : sat_add(atoms_.size(), level(k - 1).count);
}

std::vector<Value> StratifiedUniverse::ground(std::size_t k) const {
  std::vector<Value> g(atoms_.begin(), atoms_.end());
  if (k > 1) {
    const UniverseLevel& below = level(k - 1);
    if (!below.listed) throw MetastackError(MCode::cap_exceeded, lvl(k - 1) + " is not listed");
    g.insert(g.end(), below.sets.begin(), below.sets.end());
  }
  return g;
}

Value StratifiedUniverse::encoding(std::size_t k) const {
  const UniverseLevel& lv = level(k);
  if (!lv.listed) throw MetastackError(MCode::cap_exceeded, lvl(k) + " is not listed");
  return Value::set(lv.sets);
}

StratifiedUniverse build_universe(std::size_t atoms, std::size_t depth, std::size_t breadth) {
  return StratifiedUniverse(UniverseConfig{.atoms = atoms, .depth = depth, .breadth = breadth});
}

// ---------------------------------------------------------------------------
// Unions

Value bounded_union(const FinSet& x, const Value& z) {
  if (!z.is_set()) throw MetastackError(MCode::not_a_family, z.to_string() + " is not a set");
  std::vector<Value> out;
  for (const auto& y : z.members())
    if (!y.is_set()) throw MetastackError(MCode::not_a_family, "member " + y.to_string() + " is not a set");
  for (const auto& e : x)
    for (const auto& y : z.members())
      if (y.contains(e)) {
        out.push_back(e);
        break;
      }
  return Value::set(std::move(out));
}

Value unbounded_union(const Value& z, const StratifiedUniverse& u, std::size_t k) {
  if (!z.is_set()) throw MetastackError(MCode::not_in_ptilde, z.to_string() + " is not a set");
  std::vector<Value> out;
  for (const auto& y : z.members()) {
    if (!u.contains(k, y))
      throw MetastackError(MCode::not_in_ptilde, y.to_string() + " is not a level " + std::to_string(k) + " set");
    auto m = y.members();
    out.insert(out.end(), m.begin(), m.end());
  }
  return Value::set(std::move(out));
}

Value universe(const StratifiedUniverse& u, std::size_t k) {
  const UniverseLevel& lv = u.level(k);
  if (!lv.listed) throw MetastackError(MCode::level_out_of_range, lvl(k) + " is not listed");
  std::vector<Value> out;
  for (const auto& s : lv.sets) {
    auto m = s.members();
    out.insert(out.end(), m.begin(), m.end());
  }
  return Value::set(std::move(out));
}

// ---------------------------------------------------------------------------
// Checks

std::string_view verdict_text(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::truncated: return "TRUNCATED";
    case Verdict::violated: return "VIOLATED";
  }
  return "?";
}

std::vector<CheckRow> check_chain(const StratifiedUniverse& u) {
  CheckRow sub = named("set_k ⊂ set_k+1"), mem = named("set_k ∈ set_k+1"), self = named("set_k ∉ set_k");
  const std::size_t b = u.breadth();
  for (std::size_t k = 1; k <= u.depth(); ++k) {
    const UniverseLevel& lv = u.level(k);
    ++self.instances;
    if (lv.count > b) {
      // Too many members to be a level-k set at all.
    } else if (u.contains(k, u.encoding(k))) {
      self.violations.push_back(lvl(k) + " is a member of itself");
    }
    if (k == u.depth()) continue;

    ++sub.instances;
    for (const auto& x : lv.sets)
      if (!u.contains(k + 1, x)) {
        sub.violations.push_back(x.to_string() + " is in " + lvl(k) + " but not in " + lvl(k + 1));
        break;
      }
    auto top = std::find_if(lv.sets.begin(), lv.sets.end(), [&](const Value& s) { return rank(s) == k; });
    if (b == 0 || top == lv.sets.end()) {
      ++sub.truncated;
      sub.note = "breadth 0 leaves every level equal to {∅}";
    } else {
      Value w = Value::set({*top});
      if (!u.contains(k + 1, w) || u.contains(k, w))
        sub.violations.push_back(w.to_string() + " does not separate " + lvl(k) + " from " + lvl(k + 1));
    }

    ++mem.instances;
    if (lv.count > b) {
      ++mem.truncated;
      mem.note = "|set_k| exceeds the breadth, so set_k is not representable at level k+1";
    } else if (!u.contains(k + 1, u.encoding(k))) {
      mem.violations.push_back(lvl(k) + " is not a member of " + lvl(k + 1));
    }
  }
  std::vector<CheckRow> rows{std::move(sub), std::move(mem), std::move(self)};
  for (auto& r : rows) finish(r);
  return rows;
}

CheckRow check_union_agreement(const StratifiedUniverse& u) {
  CheckRow row = named("bounded = restricted unbounded union");
  const UniverseLevel& l1 = u.level(1);
  for (const auto& x : l1.sets) {
    if (x.members().size() > 3) {
      ++row.truncated;
      row.note = "families over sets with more than 3 members are skipped";
      continue;
    }
    FinSet xs = FinSet::of(x);
    auto subsets = all_subsets(x.members());
    for (const auto& z : all_subsets(subsets)) {
      ++row.instances;
      Value lhs = bounded_union(xs, z);
      Value rhs = unbounded_union(z, u, 1);
      FinSet restricted = FinSet::of(rhs);
      std::vector<Value> meet;
      for (const auto& e : restricted)
        if (xs.contains(e)) meet.push_back(e);
      if (lhs != rhs || lhs != Value::set(meet))
        row.violations.push_back("X = " + x.to_string() + ", Z = " + z.to_string() + ": " + lhs.to_string() +
                                 " vs " + rhs.to_string());
    }
  }
  ++row.instances;
  if (unbounded_union(u.encoding(1), u, 1) != universe(u, 1))
    row.violations.push_back("the union of set_1 differs from univ_1");
  finish(row);
  return row;
}

std::vector<CheckRow> grothendieck_rows(const StratifiedUniverse& u) {
  CheckRow membership = named("membership"), subset = named("subset"), doubleton = named("doubleton"),
           singleton = named("singleton"), power = named("power"), isomorph = named("isomorph"),
           bunion = named("bounded-union"), uunion = named("unbounded-union");
  const std::size_t b = u.breadth();
  auto unlisted = [&](std::size_t k) {
    for (CheckRow* r : {&membership, &subset, &doubleton, &singleton, &power, &isomorph, &bunion, &uunion}) {
      ++r->truncated;
      r->note = lvl(k) + " is too large to scan";
    }
  };
  for (std::size_t k = 1; k <= u.depth(); ++k) {
    const UniverseLevel& lv = u.level(k);
    if (!lv.listed) {
      unlisted(k);
      continue;
    }
    FinSet univ = FinSet::of(universe(u, k));
    std::uint64_t families = 0;
    std::vector<Value> ground = u.ground(k);
    for (const auto& x : lv.sets) {
      auto xm = x.members();
      for (const auto& e : xm) {
        ++membership.instances;
        if (!univ.contains(e)) membership.violations.push_back(e.to_string() + " ∈ " + x.to_string() + " but not in univ_" + std::to_string(k));
        ++singleton.instances;
        Value s = Value::set({e});
        if (!u.contains(k, s)) singleton.violations.push_back(s.to_string() + " is not in " + lvl(k));
        for (const auto& f : xm) {
          ++doubleton.instances;
          Value d = Value::set({e, f});
          if (!u.contains(k, d) || !x.contains(e) || !x.contains(f))
            doubleton.violations.push_back(d.to_string() + " is not a level-" + std::to_string(k) + " part of " + x.to_string());
        }
      }
      auto parts = all_subsets(xm);
      for (const auto& y : parts) {
        ++subset.instances;
        if (!u.contains(k, y)) subset.violations.push_back(y.to_string() + " ⊆ " + x.to_string() + " is not in " + lvl(k));
      }

      // Power: an isomorph of P(X) at level k, and P(X) itself one level up.
      ++power.instances;
      const std::uint64_t p = std::uint64_t{1} << xm.size();
      bool cut = false;
      if (p <= b && ground.size() >= p) {
        Value rep = Value::set(std::vector<Value>(ground.begin(), ground.begin() + static_cast<std::ptrdiff_t>(p)));
        if (!u.contains(k, rep)) power.violations.push_back("no level-" + std::to_string(k) + " isomorph of P(" + x.to_string() + ")");
      } else {
        cut = true;
      }
      if (k < u.depth() && p <= b) {
        Value px = Value::set(parts);
        if (!u.contains(k + 1, px)) power.violations.push_back("P(" + x.to_string() + ") is not in " + lvl(k + 1));
      } else {
        cut = true;
      }
      if (cut) {
        ++power.truncated;
        power.note = "power sets wider than the breadth are not representable";
      }

      // Isomorph: move X along a rotation of the ground.
      ++isomorph.instances;
      std::vector<Value> moved;
      for (const auto& e : xm) {
        auto i = std::lower_bound(ground.begin(), ground.end(), e) - ground.begin();
        moved.push_back(ground[(static_cast<std::size_t>(i) + 1) % ground.size()]);
      }
      Value y = Value::set(moved);
      if (y.members().size() != xm.size() || !u.contains(k, y))
        isomorph.violations.push_back(y.to_string() + " ≅ " + x.to_string() + " is not in " + lvl(k));

      // Bounded union over every representable family of parts of X.
      FinSet xs = FinSet::of(x);
      std::vector<Value> pv(parts.begin(), parts.end());
      if (families + bounded_subsets(pv.size(), b) > kFamilyBudget) {
        ++bunion.truncated;
        bunion.note = "family scan budget of " + std::to_string(kFamilyBudget) + " per level spent";
      } else {
        families += bounded_subsets(pv.size(), b);
        for_each_small_subset(pv, b, [&](const std::vector<Value>& fam) {
          ++bunion.instances;
          Value r = bounded_union(xs, Value::set(fam));
          if (!FinSet::of(r).subset_of(xs) || !u.contains(k, r))
            bunion.violations.push_back("⋃^X of " + Value::set(fam).to_string() + " is not a level-" +
                                        std::to_string(k) + " part of X");
        });
      }

      // Unbounded union of a level-k family of level-k sets.
      bool family = !xm.empty() && std::all_of(xm.begin(), xm.end(), [](const Value& m) { return m.is_set(); });
      if (family) {
        ++uunion.instances;
        Value r = unbounded_union(x, u, k);
        if (r.members().size() > b) {
          ++uunion.truncated;
          uunion.note = "unions wider than the breadth are not representable";
        } else if (!u.contains(k, r)) {
          uunion.violations.push_back("⨆" + x.to_string() + " is not in " + lvl(k));
        }
      }
    }
  }
  std::vector<CheckRow> rows{membership, subset, doubleton, singleton, power, isomorph, bunion, uunion};
  for (auto& r : rows) finish(r);
  return rows;
}

std::vector<Diagnostic> check_grothendieck_analogs(const StratifiedUniverse& u) {
  std::vector<Diagnostic> out;
  for (const auto& row : grothendieck_rows(u)) {
    for (const auto& w : row.violations)
      out.push_back(Diagnostic{"ANALOG-VIOLATION", Severity::error, "<metastack>", 0, 0, row.name, w});
    if (row.truncated > 0)
      out.push_back(Diagnostic{"TRUNCATED", Severity::warning, "<metastack>", 0, 0, row.name,
                               std::to_string(row.truncated) + " of " + std::to_string(row.instances + row.truncated) +
                                   " instances cut off: " + row.note});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Kernel orders

bool order_subset(const FinSet& a, const FinSet& b) { return a.subset_of(b); }

bool order_restriction(const FinFunction& f, const FinFunction& g) {
  if (!f.source().subset_of(g.source()) || !f.target().subset_of(g.target())) return false;
  for (std::size_t i = 0; i < f.source().size(); ++i)
    if (g(f.source()[i]) != f.images()[i]) return false;
  return true;
}

bool order_opt_restriction(const FinFunction& f, const FinFunction& g) {
  if (!order_restriction(f, g)) return false;
  for (std::size_t i = 0; i < g.source().size(); ++i)
    if (f.target().contains(g.images()[i]) != f.source().contains(g.source()[i])) return false;
  return true;
}

bool order_delimitation(const FinPredicate& p, const FinPredicate& q) {
  if (!p.genus().subset_of(q.genus())) return false;
  std::vector<Value> meet;
  for (const auto& x : q.extent())
    if (p.genus().contains(x)) meet.push_back(x);
  return p.extent() == FinSet(std::move(meet));
}

bool order_abridgment(const FinRelation& r, const FinRelation& s) {
  if (!r.comp0().subset_of(s.comp0()) || !r.comp1().subset_of(s.comp1())) return false;
  std::vector<Value> meet;
  for (const auto& p : s.extent())
    if (r.comp0().contains(p.first()) && r.comp1().contains(p.second())) meet.push_back(p);
  return r.extent() == FinSet(std::move(meet));
}

bool kernel_order(OrderKind kind, const Denotation& a, const Denotation& b) {
  auto mismatch = [&]() -> bool {
    throw SemanticError(SemanticError::Code::kind_mismatch,
                        "order does not apply to a " + std::string(denotation_kind(a)) + " and a " +
                            std::string(denotation_kind(b)));
  };
  switch (kind) {
    case OrderKind::subset: {
      auto* x = std::get_if<FinSet>(&a);
      auto* y = std::get_if<FinSet>(&b);
      return x && y ? order_subset(*x, *y) : mismatch();
    }
    case OrderKind::restriction:
    case OrderKind::opt_restriction: {
      auto* x = std::get_if<FinFunction>(&a);
      auto* y = std::get_if<FinFunction>(&b);
      if (!x || !y) return mismatch();
      return kind == OrderKind::restriction ? order_restriction(*x, *y) : order_opt_restriction(*x, *y);
    }
    case OrderKind::delimitation: {
      auto* x = std::get_if<FinPredicate>(&a);
      auto* y = std::get_if<FinPredicate>(&b);
      return x && y ? order_delimitation(*x, *y) : mismatch();
    }
    case OrderKind::abridgment: {
      auto* x = std::get_if<FinRelation>(&a);
      auto* y = std::get_if<FinRelation>(&b);
      return x && y ? order_abridgment(*x, *y) : mismatch();
    }
  }
  return mismatch();
}

// ---------------------------------------------------------------------------
// Source and target chains

namespace {

/// Level-j sets with at most `s` members.
std::vector<Value> narrow_sets(const StratifiedUniverse& u, std::size_t j, std::size_t s) {
  std::vector<Value> out;
  const UniverseLevel& lv = u.level(j);
  if (lv.listed) {
    for (const auto& x : lv.sets)
      if (x.members().size() <= s) out.push_back(x);
  } else {
    for_each_small_subset(u.ground(j), s, [&](const std::vector<Value>& pick) { out.push_back(Value::set(pick)); });
  }
  return out;
}

std::uint64_t narrow_function_count(std::uint64_t ground, std::size_t s) {
  std::uint64_t total = 0;
  for (std::size_t a = 0; a <= s; ++a)
    for (std::size_t c = 0; c <= s; ++c)
      total = sat_add(total, sat_mul(sat_mul(binomial(ground, a), binomial(ground, c)), count_functions(a, c)));
  return total;
}

struct Ends {
  FinFunction source;
  FinFunction target;
};

Ends boundary_maps(const std::vector<Value>& sets) {
  std::vector<Value> fns;
  for (const auto& x : sets)
    for (const auto& y : sets)
      for_each_function(FinSet::of(x), FinSet::of(y), [&](const FinFunction& f) {
        fns.push_back(Value::pair(Value::pair(x, y), f.graph()));
        return true;
      });
  FinSet ftn(std::move(fns));
  FinSet objs(sets);
  return {FinFunction::from_rule(ftn, objs, [](const Value& f) { return f.first().first(); }),
          FinFunction::from_rule(ftn, objs, [](const Value& f) { return f.first().second(); })};
}

}  // namespace

SourceChainResult verify_source_chain(const StratifiedUniverse& u) {
  if (u.depth() < 2) throw MetastackError(MCode::bad_config, "the source chain needs at least two levels");
  SourceChainResult r;
  r.size_limit = u.breadth();
  for (std::size_t k = 1; k < u.depth(); ++k) {
    std::size_t s = 0;
    while (s < u.breadth() && narrow_function_count(u.ground_size(k + 1), s + 1) <= u.config().function_bound) ++s;
    r.size_limit = std::min(r.size_limit, s);
    Ends lo = boundary_maps(narrow_sets(u, k, s));
    Ends hi = boundary_maps(narrow_sets(u, k + 1, s));
    bool src = order_restriction(lo.source, hi.source);
    bool tgt = order_restriction(lo.target, hi.target);
    r.holds = r.holds && src && tgt;
    r.steps.push_back("∂0^" + std::to_string(k) + " ⊑ ∂0^" + std::to_string(k + 1) + ": " + (src ? "holds" : "fails") +
                      ", ∂1^" + std::to_string(k) + " ⊑ ∂1^" + std::to_string(k + 1) + ": " + (tgt ? "holds" : "fails") +
                      " (" + std::to_string(lo.source.source().size()) + " and " +
                      std::to_string(hi.source.source().size()) + " functions between sets of size <= " +
                      std::to_string(s) + ")");
  }
  return r;
}

}  // namespace iff
