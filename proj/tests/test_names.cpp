#include <doctest.h>

#include <vector>

#include "iff/names.hpp"
#include "support.hpp"

using namespace iff;

namespace {

NameError::Code name_error(std::string_view text) {
  try {
    parse_name(text);
  } catch (const NameError& e) {
    return e.code();
  }
  FAIL("expected a name error for " << text);
  return NameError::Code::not_generic;
}

NamespaceBlock block(std::string name, Level level) { return NamespaceBlock{std::move(name), level, {}, {}}; }

}  // namespace

TEST_CASE("ground levels form a chain") {
  std::vector<Level> chain{Level::obj(), Level::finite(1), Level::finite(2), Level::finite(7),
                           Level::meta(), Level::type(),   Level::top()};
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (std::size_t j = 0; j < chain.size(); ++j) {
      CHECK(level_leq(chain[i], chain[j]) == (i <= j));
      CHECK(((chain[i] <=> chain[j]) < 0) == (i < j));
    }
}

TEST_CASE("generic levels order by offset and sit between obj and meta") {
  CHECK(Level::generic(0) < Level::generic(1));
  CHECK(Level::generic(1) < Level::generic(2));
  CHECK(Level::obj() < Level::generic(0));
  CHECK(Level::generic(2) < Level::meta());
  CHECK((Level::generic(0) <=> Level::finite(3)) == std::partial_ordering::unordered);
  CHECK_THROWS_AS(level_leq(Level::generic(0), Level::finite(3)), LevelError);
}

TEST_CASE("instantiation maps generic offsets to finite levels") {
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k <= 2; ++k) CHECK(instantiate(Level::generic(k), n) == Level::finite(n + k));
  CHECK_THROWS_AS(instantiate(Level::meta(), 4), LevelError);
}

TEST_CASE("instantiation preserves the generic order") {
  for (int n = 1; n <= 4; ++n)
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; b <= 2; ++b)
        CHECK(level_leq(Level::generic(a), Level::generic(b)) ==
              level_leq(instantiate(Level::generic(a), n), instantiate(Level::generic(b), n)));
}

TEST_CASE("level prefixes and declarations") {
  CHECK(parse_level_prefix("#n+1") == Level::generic(1));
  CHECK(parse_level_prefix("#n") == Level::generic(0));
  CHECK(parse_level_prefix("#0") == Level::obj());
  CHECK(parse_level_prefix("#4") == Level::finite(4));
  CHECK(parse_level_prefix("type") == Level::type());
  CHECK_FALSE(parse_level_prefix("abc").has_value());
  CHECK(parse_level_decl("0") == Level::obj());
  CHECK(parse_level_decl("generic") == Level::generic(0));
  CHECK(parse_level_decl("iff") == Level::top());
  CHECK_FALSE(parse_level_decl("seven").has_value());
  for (auto l : {Level::obj(), Level::finite(2), Level::generic(0), Level::generic(1), Level::meta(), Level::top()})
    CHECK(parse_level_prefix(l.prefix()) == l);
}

TEST_CASE("qualified names parse and render") {
  auto q = parse_name("type.ftn:belonging");
  REQUIRE(q.qualified());
  CHECK(*q.level == Level::type());
  CHECK(q.path == std::vector<std::string>{"ftn"});
  CHECK(q.base == "belonging");

  auto top = parse_name("iff:set");
  CHECK(top.path.empty());
  CHECK(top.render() == "iff:set");

  auto bare = parse_name("belonging");
  CHECK_FALSE(bare.qualified());
  CHECK(bare.render() == "belonging");

  for (const char* t : {"type.ftn:belonging", "#n+1.set:set", "#2.x.y:z", "iff:set", "#0.abc:A"})
    CHECK(parse_name(t).render() == t);
}

TEST_CASE("malformed names") {
  CHECK(name_error("a:b:c") == NameError::Code::malformed_name);
  CHECK(name_error(":x") == NameError::Code::malformed_name);
  CHECK(name_error("foo.bar:x") == NameError::Code::malformed_name);
  CHECK(name_error("#n.set:") == NameError::Code::malformed_name);
}

TEST_CASE("namespace contexts and resolution") {
  auto abc = context_of(block("abc", Level::obj()));
  CHECK(abc.render() == "#0.abc");
  CHECK(resolve("A", abc).render() == "#0.abc:A");
  CHECK(resolve("iff:set", abc).render() == "iff:set");

  auto ftn = context_of(block("#n.ftn", Level::generic(0)));
  CHECK(ftn.level == Level::generic(0));
  CHECK(resolve("source", ftn).render() == "#n.ftn:source");
  CHECK(instantiate(resolve("source", ftn), 3).render() == "#3.ftn:source");

  CHECK_THROWS_AS(context_of(block("type.ftn", Level::meta())), NameError);
  CHECK_THROWS_AS(context_of(block("a..b", Level::obj())), NameError);
}

TEST_CASE("resolution is idempotent") {
  auto ctx = context_of(block("type.pred", Level::type()));
  for (const char* t : {"membership", "type.ftn:function", "predicate", "iff:set"}) {
    std::string once = resolve(t, ctx).render();
    CHECK(resolve(once, ctx).render() == once);
  }
}

TEST_CASE("namespace subtrees") {
  NamespaceContext type_ftn{Level::type(), {"ftn"}};
  NamespaceContext type_ftn_x{Level::type(), {"ftn", "x"}};
  NamespaceContext meta_ftn{Level::meta(), {"ftn"}};
  CHECK(in_subtree(type_ftn_x, type_ftn));
  CHECK(in_subtree(type_ftn, type_ftn));
  CHECK_FALSE(in_subtree(type_ftn, type_ftn_x));
  CHECK_FALSE(in_subtree(meta_ftn, type_ftn));
}

TEST_CASE("qualify rewrites names but not variables") {
  auto ctx = context_of(block("abc", Level::obj()));
  Expr e = parse_expr("(forall ((A ?x)) (= (f ?x) iff:set))");
  CHECK(print_canonical(qualify(e, ctx)) == "(forall ((#0.abc:A ?x)) (= (#0.abc:f ?x) iff:set))");
}

TEST_CASE("symbol table records definitions, references and kinds") {
  auto u = parse_unit(testing::read_corpus("example_code.iff"), "example_code.iff");
  auto t = build_symbol_table(u);

  const auto* set = t.find("#n.set:set");
  REQUIRE(set);
  CHECK(set->defining_namespace == "#n.set");
  CHECK(set->kind == SymbolKind::set);

  const auto* source = t.find("#n.ftn:source");
  REQUIRE(source);
  CHECK(source->defining_namespace == "#n.ftn");
  CHECK(source->kind == SymbolKind::function);

  const auto* subset = t.find("#n+2.set:subset");
  REQUIRE(subset);
  CHECK(subset->kind == SymbolKind::relation);
  CHECK_FALSE(subset->defining_namespace.has_value());

  const auto* a = t.find("#0.abc:A");
  REQUIRE(a);
  CHECK(a->defining_namespace == "abc");
}

TEST_CASE("two namespaces defining one name is an error") {
  // `abc` and `#0.abc` name the same object-level namespace.
  std::vector<SourceUnit> units{parse_unit("(namespace abc (level 0) (#n.set:set A))", "a.iff"),
                                parse_unit("(namespace #0.abc (level 0) (#n.set:set A))", "b.iff")};
  try {
    build_symbol_table(units);
    FAIL("no error");
  } catch (const NameError& e) {
    CHECK(e.code() == NameError::Code::duplicate_definition);
  }
}
