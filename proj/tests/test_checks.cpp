#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "iff/checks.hpp"
#include "support.hpp"

using namespace iff;
using iff::testing::Gen;
using iff::testing::read_corpus;

namespace {

FormKind kind_of(std::string_view text) { return classify_form(parse_expr(text)).kind; }

std::vector<std::string> codes(const std::vector<Diagnostic>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(d.code);
  return out;
}

bool has_code(const std::vector<Diagnostic>& ds, std::string_view code) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.code == code; });
}

/// Counts logical structure independently of the classifier.
struct Shape {
  int variables = 0;
  int quantifiers = 0;
  int connectives = 0;
};

void measure(const Expr& e, Shape& s) {
  if (e.is<Variable>()) ++s.variables;
  if (const auto* t = e.as<Tuple>())
    for (const auto& x : t->items) measure(x, s);
  if (const auto* a = e.as<Apply>()) {
    measure(*a->head, s);
    for (const auto& x : a->args) measure(x, s);
  }
  if (const auto* q = e.as<Equation>()) {
    measure(*q->lhs, s);
    measure(*q->rhs, s);
  }
  if (const auto* c = e.as<Connective>()) {
    ++s.connectives;
    for (const auto& x : c->args) measure(x, s);
  }
  if (const auto* q = e.as<Quantifier>()) {
    ++s.quantifiers;
    measure(*q->body, s);
  }
}

}  // namespace

TEST_CASE("atomic forms") {
  CHECK(kind_of("(A x)") == FormKind::declaration);
  CHECK(kind_of("((#n+1).set:set function)") == FormKind::declaration);
  CHECK(kind_of("(r x y)") == FormKind::relational);
  CHECK(kind_of("((#n+2).set:subset set (#n+1).set:set)") == FormKind::relational);
  CHECK(kind_of("(= (f x) y)") == FormKind::equation);
  CHECK(kind_of("(= ((#n+1).ftn:source source) function)") == FormKind::equation);
  CHECK(kind_of("(= [a b] c)") == FormKind::equation);
  CHECK(kind_of("(not (set set))") == FormKind::negated_atomic);
}

TEST_CASE("first-order and ill-formed axioms") {
  CHECK(kind_of("(A ?x)") == FormKind::first_order);
  CHECK(kind_of("(not (not (A x)))") == FormKind::first_order);
  CHECK(kind_of("(and (A x) (B x))") == FormKind::first_order);
  CHECK(kind_of("(forall ((A ?x)) (B ?x))") == FormKind::first_order);
  CHECK(kind_of("(f x y z)") == FormKind::illformed);
  CHECK(kind_of("a") == FormKind::illformed);
  CHECK(kind_of("[a b]") == FormKind::illformed);
  CHECK(kind_of("(= (f x y) z)") == FormKind::illformed);
  CHECK(kind_of("((f a) x)") == FormKind::illformed);
  CHECK_FALSE(classify_form(parse_expr("(f x y z)")).reason.empty());
}

TEST_CASE("strict atomicity excludes the negated atom") {
  CHECK(is_atomic(FormKind::negated_atomic));
  CHECK_FALSE(is_atomic(FormKind::negated_atomic, true));
  CHECK(is_atomic(FormKind::declaration, true));
  CHECK_FALSE(is_atomic(FormKind::first_order));
}

TEST_CASE("classification is total and agrees with the logical shape") {
  Gen g(77);
  for (int i = 0; i < 3000; ++i) {
    Expr e = g.formula(3);
    FormKind k = classify_form(e).kind;
    CHECK(std::find(kAllFormKinds.begin(), kAllFormKinds.end(), k) != kAllFormKinds.end());
    CHECK(classify_form(e).kind == k);
    Shape s;
    measure(e, s);
    if (is_atomic(k, true)) {
      CHECK(s.variables == 0);
      CHECK(s.quantifiers == 0);
      CHECK(s.connectives == 0);
    }
    if (s.quantifiers > 0 || s.variables > 0) CHECK(k != FormKind::negated_atomic);
    if (s.quantifiers > 0) CHECK(k == FormKind::first_order);
  }
}

TEST_CASE("restricted quantification") {
  CHECK(check_restricted_quantifiers(parse_expr("(forall ((A ?x) (?x ?y)) (B ?y))")).empty());
  CHECK(codes(check_restricted_quantifiers(parse_expr("(forall (?x) (A ?x))"))) ==
        std::vector<std::string>{"UNSORTED-BINDING"});
  CHECK(codes(check_restricted_quantifiers(parse_expr("(forall ((A ?x)) (B ?y))"))) ==
        std::vector<std::string>{"FREE-VARIABLE"});
  CHECK(codes(check_restricted_quantifiers(parse_expr("(forall ((?y ?x) (A ?y)) (B ?x))"))) ==
        std::vector<std::string>{"USE-BEFORE-BINDING"});
  CHECK(codes(check_restricted_quantifiers(parse_expr("(B ?z)"))) == std::vector<std::string>{"FREE-VARIABLE"});
}

TEST_CASE("restricted-quantifier diagnostics carry positions and sites") {
  auto ds = check_restricted_quantifiers(parse_expr("(forall ((A ?x))\n  (B ?y))"), AxiomSite{"f.iff", "ns"});
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].file == "f.iff");
  CHECK(ds[0].namespace_name == "ns");
  CHECK(ds[0].line == 2);
  CHECK(ds[0].column == 6);
  CHECK(ds[0].severity == Severity::error);
}

TEST_CASE("generated sentences quantify only over sorts") {
  Gen g(5);
  for (int i = 0; i < 2000; ++i) {
    Expr e = g.formula(4);
    CHECK(check_restricted_quantifiers(e).empty());
    // Escaping a variable out of its scope is always caught.
    Expr leaked = Expr::connective(Op::and_, {e, Expr::apply(Expr::name("P"), {Expr::variable("?v0")})});
    CHECK(has_code(check_restricted_quantifiers(leaked), "FREE-VARIABLE"));
  }
}

TEST_CASE("stratification") {
  auto u = parse_unit(
      "(namespace #n.set (level generic) ((#n+1).set:set set) (#0.abc:A set))\n"
      "(namespace abc (level 0) (#n.set:set A))\n"
      "(namespace q (level 2) (#2.set:set X) (#1.set:set Y))",
      "d.iff");
  auto ds = check_stratification(u, build_symbol_table(u));
  CHECK(has_code(ds, "LEVEL-DOWNREF"));
  CHECK(has_code(ds, "OBJ-CLASSIFIER"));
  CHECK(has_code(ds, "SAME-LEVEL-CLASSIFIER"));
  for (const auto& d : ds)
    if (d.code == "SAME-LEVEL-CLASSIFIER") CHECK(d.severity == Severity::warning);
}

TEST_CASE("generic blocks referencing finite levels are incomparable") {
  auto u = parse_unit("(namespace #n.set (level generic) (#3.set:set x))", "g.iff");
  auto ds = check_stratification(u, build_symbol_table(u));
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].code == "LEVEL-INCOMPARABLE");
  CHECK(ds[0].severity == Severity::warning);
}

TEST_CASE("the example corpus passes the full pipeline") {
  std::vector<SourceUnit> units{parse_unit(read_corpus("example_code.iff"), "example_code.iff")};
  auto ds = check_units(units);
  CHECK(count_severity(ds, Severity::error) == 0);
  CHECK(count_severity(ds, Severity::warning) == 0);

  auto strict = check_units(units, CheckOptions{.strict_atomic = true});
  REQUIRE(count_severity(strict, Severity::error) == 1);
  CHECK(strict[0].code == "NOT-ATOMIC");
  CHECK(strict[0].namespace_name == "#n.set");
}

TEST_CASE("atomicity profile of the example corpus") {
  auto u = parse_unit(read_corpus("example_code.iff"), "example_code.iff");
  auto profile = atomicity_profile(u);
  REQUIRE(profile.size() == 6);
  std::size_t negated = 0;
  for (const auto& p : profile) {
    if (p.level.is_metashell()) {
      CHECK_FALSE(p.atomic);
      CHECK(p.count(FormKind::first_order) > 0);
    } else {
      CHECK(p.atomic);
      CHECK(p.count(FormKind::first_order) == 0);
      negated += p.count(FormKind::negated_atomic);
    }
    std::size_t sum = 0;
    for (auto k : kAllFormKinds) sum += p.count(k);
    CHECK(sum == p.total);
  }
  CHECK(negated == 1);
}

TEST_CASE("warrant report") {
  std::vector<SourceUnit> units{parse_unit(read_corpus("example_code.iff"), "example_code.iff")};
  auto ds = check_units(units, CheckOptions{.warrant = true});
  CHECK(has_code(ds, "WARRANT-OK"));
  for (const auto& d : ds)
    if (d.code == "WARRANT-OK") CHECK(d.severity == Severity::info);

  std::vector<SourceUnit> lonely{parse_unit("(namespace #n.set (level generic) ((#n+1).set:set unused))", "u.iff")};
  auto w = check_units(lonely, CheckOptions{.warrant = true});
  CHECK(has_code(w, "UNWARRANTED-TERM"));
}

TEST_CASE("diagnostics render as text and s-expressions") {
  Diagnostic d{"LEVEL-DOWNREF", Severity::error, "a.iff", 3, 7, "ns", "say \"hi\""};
  CHECK(format_text(d) == "error LEVEL-DOWNREF a.iff:3:7 [ns] say \"hi\"");
  CHECK(format_sexp(d) == "(diagnostic error LEVEL-DOWNREF (site \"a.iff\" 3 7 ns) \"say \\\"hi\\\"\")");
}

TEST_CASE("diagnostic order is deterministic") {
  std::vector<Diagnostic> ds{{"B", Severity::error, "b.iff", 1, 1, "", "x"},
                             {"A", Severity::error, "a.iff", 2, 1, "", "y"},
                             {"A", Severity::warning, "a.iff", 1, 5, "", "z"}};
  sort_diagnostics(ds);
  CHECK(ds[0].message == "z");
  CHECK(ds[1].message == "y");
  CHECK(ds[2].message == "x");
}
