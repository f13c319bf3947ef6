// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "iff/checks.hpp"
#include "iff/finset.hpp"
#include "iff/laws.hpp"
#include "iff/metastack.hpp"
#include "iff/modelcheck.hpp"
#include "support.hpp"

using namespace iff;
using iff::testing::read_corpus;

namespace {

constexpr double kTimeLimit = 10.0;

/// Collects the reasons a criterion failed.
struct Outcome {
  std::vector<std::string> problems;
  std::ostringstream summary;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

FinFunction point(const FinSet& s, const Value& x) { return FinFunction(terminal(), s, {x}); }

// 1 ---------------------------------------------------------------------------

void corpus_fidelity(Outcome& v) {
  std::size_t forms = 0;
  for (const char* f : {"example_code.iff", "group.iff"}) {
    SourceUnit u = parse_unit(read_corpus(f), f);
    SourceUnit again = parse_unit(print_unit(u), f);
    v.require(again.namespaces.size() == u.namespaces.size(), std::string(f) + ": namespace count changed");
    for (std::size_t i = 0; i < u.namespaces.size() && i < again.namespaces.size(); ++i) {
      v.require(again.namespaces[i].axioms == u.namespaces[i].axioms,
                std::string(f) + ": " + u.namespaces[i].name + " changed on re-parse");
      forms += u.namespaces[i].axioms.size();
    }
    v.require(print_unit(again) == print_unit(u), std::string(f) + ": canonical form not stable");
  }
  auto rows = parse_expr_list(read_corpus("syntax_tutorial.sexp"));
  for (const auto& e : rows) {
    std::string text = print_canonical(e);
    v.require(parse_expr(text) == e, "tutorial row does not round-trip: " + text);
  }
  forms += rows.size();

  std::vector<SourceUnit> units{parse_unit(read_corpus("example_code.iff"), "example_code.iff"),
                                parse_unit(read_corpus("group.iff"), "group.iff")};
  auto ds = check_units(units);
  std::size_t errors = count_severity(ds, Severity::error);
  v.require(errors == 0, std::to_string(errors) + " error diagnostics on the corpus");
  v.summary << forms << " forms round-trip (" << rows.size() << " tutorial rows), " << errors << " errors";
}

// 2 ---------------------------------------------------------------------------

void atomicity_claim(Outcome& v) {
  SourceUnit u = parse_unit(read_corpus("example_code.iff"), "example_code.iff");
  std::size_t shell_ns = 0, shell_fo_ns = 0, shell_axioms = 0, shell_fo_axioms = 0;
  std::size_t natural_axioms = 0, natural_atomic = 0, negated = 0;
  for (const auto& p : atomicity_profile(u)) {
    if (p.level.is_metashell()) {
      ++shell_ns;
      // A namespace is first order when any of its axioms is.
      if (p.count(FormKind::first_order) > 0) ++shell_fo_ns;
      shell_axioms += p.total;
      shell_fo_axioms += p.count(FormKind::first_order);
    } else {
      natural_axioms += p.total;
      for (auto k : kAllFormKinds)
        if (is_atomic(k)) natural_atomic += p.count(k);
      negated += p.count(FormKind::negated_atomic);
    }
  }
  v.require(shell_ns > 0 && shell_fo_ns == shell_ns, "a metashell namespace has no first-order axiom");
  v.require(natural_axioms > 0 && natural_atomic == natural_axioms, "a natural-part axiom is not atomic");
  v.require(negated == 1, std::to_string(negated) + " negated atoms in the natural part");
  v.summary << "metashell " << shell_fo_ns << "/" << shell_ns << " namespaces first order (" << shell_fo_axioms << "/"
            << shell_axioms << " axioms); natural part " << natural_atomic << "/" << natural_axioms << " atomic, "
            << negated << " negated";
}

// 3 ---------------------------------------------------------------------------

void cantor_suite(Outcome& v) {
  std::uint64_t maps = 0;
  for (std::size_t n = 0; n <= 4; ++n) {
    auto r = verify_cantor(FinSet::numbered(n));
    v.require(r.holds, "Cantor fails at |X| = " + std::to_string(n));
    maps += r.checked;
  }
  for (std::size_t n = 2; n <= 4; ++n) {
    FinSet y = FinSet::numbered(n);
    v.require(!has_fpp(y), "|Y| = " + std::to_string(n) + " has the fixed point property");
    auto w = fixed_point_free_witness(y);
    v.require(w && fixed_points(*w).empty(), "no fixed-point-free witness at |Y| = " + std::to_string(n));
  }
  v.require(fixed_points(negation()).empty(), "negation has a fixed point");
  v.summary << maps << " maps X -> P(X) checked for |X| = 0..4; witnesses for |Y| = 2..4";
}

// 4 ---------------------------------------------------------------------------

void topos_suite(Outcome& v) {
  LawOptions opt{.max_size = 3, .square_size = 2};
  std::uint64_t instances = 0;
  for (const auto& r : {check_classifier_law(opt), check_exponential_law(opt), check_classifier_naturality(opt),
                        check_exponential_naturality(opt)}) {
    v.require(r.passed, r.name + ": " + r.detail);
    instances += r.instances;
  }
  v.summary << instances << " instances over sizes <= 3, squares over sizes <= 2";
}

// 5 ---------------------------------------------------------------------------

void element_theory(Outcome& v) {
  FinSet x = FinSet::numbered(3);
  auto parts = subobjects(x);
  std::uint64_t belongings = 0;
  for (std::size_t s = 0; s <= 2; ++s)
    for (const auto& e : all_functions(FinSet::numbered(s), x))
      for (const auto& part : parts) {
        FinFunction y = part.inclusion();
        std::size_t proofs = 0;
        for_each_function(e.source(), y.source(), [&](const FinFunction& p) {
          if (compose(p, y) == e) ++proofs;
          return true;
        });
        auto b = belongs(e, y);
        v.require(proofs <= 1, "belonging proof not unique");
        v.require(b.has_value() == (proofs == 1), "belongs disagrees with proof search");
        if (b) v.require(compose(*b, y) == e, "belongs returned a wrong proof");
        ++belongings;
      }

  for (const auto& a : parts)
    for (const auto& b : parts) {
      bool implication = true;
      for (const auto& pt : x) {
        FinFunction g = point(x, pt);
        if (member(g, a.inclusion()) && !member(g, b.inclusion())) implication = false;
      }
      v.require(includes(a.inclusion(), b.inclusion()) == implication, "inclusion differs from implication");
    }

  for (const auto& p : parts)
    v.require(image_factorization(p.inclusion()).image.extent() == p.extent(), "pred(ftn(p)) != p");
  Product xx = product(x, x);
  std::size_t relations = 0;
  for (const auto& part : subobjects(xx.carrier)) {
    FinRelation r(x, x, part.extent());
    v.require(span_to_relation(relation_to_span(r)).extent() == r.extent(), "rel(spn(r)) != r");
    ++relations;
  }
  v.summary << belongings << " belongings, " << parts.size() * parts.size() << " inclusions, " << relations
            << " relations";
}

// 6 ---------------------------------------------------------------------------

FinCategory arrow_category() {
  Value a = Value::atom("A"), b = Value::atom("B");
  Value ia = Value::atom("1A"), ib = Value::atom("1B"), f = Value::atom("f");
  FinSet objs{a, b};
  FinSet mors{ia, ib, f};
  auto src = FinFunction::from_rule(mors, objs, [&](const Value& m) { return m == ib ? b : a; });
  auto tgt = FinFunction::from_rule(mors, objs, [&](const Value& m) { return m == ia ? a : b; });
  auto ident = FinFunction::from_rule(objs, mors, [&](const Value& o) { return o == a ? ia : ib; });
  FinCategory::Table comp{{{ia, ia}, ia}, {{ia, f}, f}, {{f, ib}, f}, {{ib, ib}, ib}};
  return FinCategory(objs, mors, src, tgt, ident, comp);
}

void generalized_composition(Outcome& v) {
  FinCategory c = arrow_category();
  Pullback pairs = composable_pairs(c);
  FinSet x = FinSet::numbered(2);
  std::size_t composable = 0;
  for (const auto& f : all_functions(x, c.morphisms()))
    for (const auto& g : all_functions(x, c.morphisms())) {
      bool pointwise = true;
      for (const auto& e : x) pointwise = pointwise && c.tgt()(f(e)) == c.src()(g(e));
      if (!pointwise) continue;
      ++composable;
      auto paired = FinFunction::from_rule(x, pairs.carrier, [&](const Value& e) { return Value::pair(f(e), g(e)); });
      v.require(gen_compose(f, g, c) == compose(paired, c.composition()), "gen_compose differs from pairing");
    }
  v.require(composable == 16, std::to_string(composable) + " composable pairs, expected 16");

  std::size_t terminal_cases = 0;
  for (const auto& m : c.morphisms())
    for (const auto& n : c.morphisms()) {
      auto mn = c.compose(m, n);
      if (!mn) continue;
      ++terminal_cases;
      v.require(gen_compose(point(c.morphisms(), m), point(c.morphisms(), n), c) == point(c.morphisms(), *mn),
                "gen_compose at the terminal differs from compose");
    }
  v.summary << composable << " composable pairs at |X| = 2, " << terminal_cases << " at X = 1";
}

// 7 ---------------------------------------------------------------------------

void metastack_suite(Outcome& v) {
  std::size_t configs = 0, truncated = 0, rows = 0;
  for (std::size_t atoms = 1; atoms <= 3; ++atoms)
    for (std::size_t depth = 1; depth <= 3; ++depth)
      for (std::size_t breadth = 0; breadth <= 4; ++breadth) {
        std::string tag = " at (" + std::to_string(atoms) + "," + std::to_string(depth) + "," +
                          std::to_string(breadth) + ")";
        auto u = build_universe(atoms, depth, breadth);
        std::vector<CheckRow> all = check_chain(u);
        all.push_back(check_union_agreement(u));
        for (auto& r : grothendieck_rows(u)) all.push_back(std::move(r));
        for (const auto& r : all) {
          ++rows;
          v.require(r.verdict != Verdict::violated, r.name + " violated" + tag);
          if (r.verdict == Verdict::truncated) ++truncated;
        }
        if (depth >= 2) v.require(verify_source_chain(u).holds, "source chain fails" + tag);
        ++configs;
      }
  v.summary << configs << " universes, " << rows << " rows, " << truncated << " truncated, none violated";
}

// 8 ---------------------------------------------------------------------------

void semantics_check(Outcome& v) {
  SourceUnit u = parse_unit(read_corpus("group.iff"), "group.iff");
  auto good = check_theory(u, parse_interpretation(read_corpus("z3.interp")));
  v.require(good.size() == 1 && good[0].holds, "Z3 fails the group axiom");
  auto bad = check_theory(u, parse_interpretation(read_corpus("z3_broken.interp")));
  v.require(bad.size() == 1 && !bad[0].holds, "corrupted Z3 passes");
  if (bad.size() == 1 && !bad[0].holds) {
    v.require(!bad[0].counterexample.empty(), "no falsifying valuation");
    v.summary << "Z3 holds; corruption caught with";
    for (const auto& [name, value] : bad[0].counterexample) v.summary << " " << name << "=" << value.to_string();
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"corpus fidelity", corpus_fidelity},
      {"atomicity claim", atomicity_claim},
      {"Cantor suite", cantor_suite},
      {"topos suite", topos_suite},
      {"element theory", element_theory},
      {"generalized composition", generalized_composition},
      {"metastack suite", metastack_suite},
      {"semantics check", semantics_check},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome v;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.problems.push_back(std::string("threw: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > kTimeLimit) v.problems.push_back("took " + std::to_string(secs) + "s");
    bool ok = v.problems.empty();
    if (!ok) ++failures;
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs;
    std::cout << (ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << " (" << time.str()
              << "s): " << (ok ? v.summary.str() : v.problems.front());
    if (v.problems.size() > 1) std::cout << " (+" << v.problems.size() - 1 << " more)";
    std::cout << "\n";
  }
  return failures == 0 ? 0 : 1;
}
