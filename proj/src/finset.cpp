#include "iff/finset.hpp"

#include <algorithm>
#include <limits>

namespace iff {

namespace {

using Code = SemanticError::Code;

[[noreturn]] void fail(Code c, const std::string& what) { throw SemanticError(c, what); }

// Sweeps rebuild the same products and exponents many times. A few recent
// results are kept per thread; hits also share Value nodes, which makes the
// later equality tests pointer comparisons.
template <class T>
class RecentCache {
 public:
  template <class Build>
  const T& get(const FinSet& a, const FinSet& b, Build build) {
    for (auto& e : entries_)
      if (e.a == a && e.b == b) return e.value;
    if (entries_.size() == kSlots) entries_.erase(entries_.begin());
    entries_.push_back({a, b, build()});
    return entries_.back().value;
  }

 private:
  static constexpr std::size_t kSlots = 8;
  struct Entry {
    FinSet a, b;
    T value;
  };
  std::vector<Entry> entries_;
};

std::string arrow(const FinFunction& f) { return f.source().to_string() + " -> " + f.target().to_string(); }

}  // namespace

std::string_view SemanticError::code_name() const {
  switch (code_) {
    case Code::invalid_function: return "InvalidFunction";
    case Code::invalid_predicate: return "InvalidPredicate";
    case Code::invalid_relation: return "InvalidRelation";
    case Code::invalid_category: return "InvalidCategory";
    case Code::not_composable: return "NotComposable";
    case Code::source_mismatch: return "SourceMismatch";
    case Code::target_mismatch: return "TargetMismatch";
    case Code::target_not_omega: return "TargetNotOmega";
    case Code::genus_mismatch: return "GenusMismatch";
    case Code::not_in_component: return "NotInComponent";
    case Code::not_a_part: return "NotAPart";
    case Code::not_pointwise_composable: return "NotPointwiseComposable";
    case Code::not_endofunction: return "NotEndofunction";
    case Code::out_of_domain: return "OutOfDomain";
    case Code::kind_mismatch: return "KindMismatch";
  }
  return "SemanticError";
}

// ---------------------------------------------------------------------------
// FinSet

FinSet::FinSet(std::vector<Value> elements) : elems_(std::move(elements)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

FinSet FinSet::of(const Value& set_value) {
  if (!set_value.is_set()) fail(Code::kind_mismatch, "not a set value: " + set_value.to_string());
  auto m = set_value.members();
  return FinSet(std::vector<Value>(m.begin(), m.end()));
}

FinSet FinSet::numbered(std::size_t n) { return FinSet(numbered_atoms(n)); }

bool FinSet::contains(const Value& x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

std::optional<std::size_t> FinSet::index_of(const Value& x) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), x);
  if (it == elems_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - elems_.begin());
}

bool FinSet::subset_of(const FinSet& other) const {
  return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

// ---------------------------------------------------------------------------
// FinFunction

FinFunction::FinFunction(FinSet source, FinSet target, std::vector<Value> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.size())
    fail(Code::invalid_function, "image count " + std::to_string(images_.size()) + " does not match source size " +
                                     std::to_string(source_.size()));
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (!target_.contains(images_[i]))
      fail(Code::invalid_function,
           "image " + images_[i].to_string() + " of " + source_[i].to_string() + " lies outside the target");
}

FinFunction FinFunction::from_rule(FinSet source, FinSet target, const std::function<Value(const Value&)>& rule) {
  std::vector<Value> images;
  images.reserve(source.size());
  for (const auto& x : source) images.push_back(rule(x));
  return FinFunction(std::move(source), std::move(target), std::move(images));
}

FinFunction FinFunction::from_graph(FinSet source, FinSet target, const Value& graph) {
  if (!graph.is_fn()) fail(Code::invalid_function, "not a function graph: " + graph.to_string());
  if (graph.graph().size() != source.size())
    fail(Code::invalid_function, "graph " + graph.to_string() + " is not total on " + source.to_string());
  std::vector<Value> images;
  images.reserve(source.size());
  for (const auto& x : source) {
    auto y = graph.lookup(x);
    if (!y) fail(Code::invalid_function, "graph " + graph.to_string() + " misses " + x.to_string());
    images.push_back(*y);
  }
  return FinFunction(std::move(source), std::move(target), std::move(images));
}

const Value& FinFunction::operator()(const Value& x) const {
  auto i = source_.index_of(x);
  if (!i) fail(Code::out_of_domain, x.to_string() + " is not in the source " + source_.to_string());
  return images_[*i];
}

Value FinFunction::graph() const {
  std::vector<Value::Mapping> g;
  g.reserve(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) g.emplace_back(source_[i], images_[i]);
  return Value::fn(std::move(g));
}

// ---------------------------------------------------------------------------
// Predicates, relations, spans

FinPredicate::FinPredicate(FinSet genus, FinSet extent) : genus_(std::move(genus)), extent_(std::move(extent)) {
  if (!extent_.subset_of(genus_))
    fail(Code::invalid_predicate, "extent " + extent_.to_string() + " is not within genus " + genus_.to_string());
}

FinFunction FinPredicate::inclusion() const {
  return FinFunction(extent_, genus_, std::vector<Value>(extent_.begin(), extent_.end()));
}

FinRelation::FinRelation(FinSet comp0, FinSet comp1, FinSet extent)
    : comp0_(std::move(comp0)), comp1_(std::move(comp1)), extent_(std::move(extent)) {
  for (const auto& p : extent_) {
    if (!p.is_pair() || !comp0_.contains(p.first()) || !comp1_.contains(p.second()))
      fail(Code::invalid_relation, "extent entry " + p.to_string() + " is not in the component product");
  }
}

FinSpan::FinSpan(FinFunction l0, FinFunction l1) : leg0(std::move(l0)), leg1(std::move(l1)) {
  if (leg0.source() != leg1.source()) fail(Code::source_mismatch, "span legs have different sources");
}

// ---------------------------------------------------------------------------
// FinCategory

FinCategory::FinCategory(FinSet objects, FinSet morphisms, FinFunction src, FinFunction tgt, FinFunction ident,
                         Table comp)
    : objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      src_(std::move(src)),
      tgt_(std::move(tgt)),
      ident_(std::move(ident)),
      comp_(std::move(comp)) {
  auto bad = [](const std::string& why) { fail(Code::invalid_category, why); };
  if (src_.source() != morphisms_ || src_.target() != objects_) bad("src must map morphisms to objects");
  if (tgt_.source() != morphisms_ || tgt_.target() != objects_) bad("tgt must map morphisms to objects");
  if (ident_.source() != objects_ || ident_.target() != morphisms_) bad("ident must map objects to morphisms");
  for (const auto& x : objects_) {
    const Value& i = ident_(x);
    if (src_(i) != x || tgt_(i) != x) bad("identity of " + x.to_string() + " is not an endomorphism of it");
  }
  for (const auto& [key, h] : comp_) {
    const auto& [f, g] = key;
    if (!morphisms_.contains(f) || !morphisms_.contains(g) || !morphisms_.contains(h))
      bad("composition table mentions an unknown morphism");
    if (tgt_(f) != src_(g)) bad("composite defined for non-composable " + f.to_string() + ", " + g.to_string());
    if (src_(h) != src_(f) || tgt_(h) != tgt_(g)) bad("composite of " + f.to_string() + ", " + g.to_string() + " has the wrong ends");
  }
  for (const auto& f : morphisms_)
    for (const auto& g : morphisms_)
      if (tgt_(f) == src_(g) && !comp_.contains({f, g}))
        bad("composite of " + f.to_string() + ", " + g.to_string() + " is missing");
  for (const auto& f : morphisms_) {
    if (*compose(ident_(src_(f)), f) != f || *compose(f, ident_(tgt_(f))) != f)
      bad("identity law fails at " + f.to_string());
  }
  for (const auto& [k1, fg] : comp_) {
    for (const auto& h : morphisms_) {
      if (tgt_(k1.second) != src_(h)) continue;
      auto gh = compose(k1.second, h);
      if (*compose(fg, h) != *compose(k1.first, *gh))
        bad("associativity fails at " + k1.first.to_string() + ", " + k1.second.to_string() + ", " + h.to_string());
    }
  }
}

FinCategory FinCategory::discrete(const FinSet& objects) {
  std::vector<Value> ids;
  Table comp;
  for (const auto& x : objects) {
    Value i = Value::pair(Value::atom("id"), x);
    ids.push_back(i);
    comp.emplace(std::make_pair(i, i), i);
  }
  FinSet mor(ids);
  auto end = FinFunction::from_rule(mor, objects, [](const Value& m) { return m.second(); });
  auto ident = FinFunction::from_rule(objects, mor, [](const Value& x) { return Value::pair(Value::atom("id"), x); });
  return FinCategory(objects, mor, end, end, ident, std::move(comp));
}

std::optional<Value> FinCategory::compose(const Value& f, const Value& g) const {
  auto it = comp_.find({f, g});
  if (it == comp_.end()) return std::nullopt;
  return it->second;
}

FinFunction FinCategory::composition() const {
  auto pairs = composable_pairs(*this);
  return FinFunction::from_rule(pairs.carrier, morphisms_,
                                [this](const Value& p) { return *compose(p.first(), p.second()); });
}

// ---------------------------------------------------------------------------
// Enumeration

void require_within_cap(std::uint64_t needed, std::uint64_t cap, const std::string& what) {
  if (needed > cap) throw SizeCapExceeded(what, needed, cap);
}

std::uint64_t count_functions(std::size_t a, std::size_t b) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < a; ++i) {
    if (b == 0) return 0;
    if (n > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
    n *= b;
  }
  return n;
}

void for_each_function(const FinSet& a, const FinSet& b, const std::function<bool(const FinFunction&)>& visit) {
  if (!a.empty() && b.empty()) return;
  std::vector<std::size_t> idx(a.size(), 0);
  while (true) {
    std::vector<Value> images;
    images.reserve(a.size());
    for (auto i : idx) images.push_back(b[i]);
    if (!visit(FinFunction(a, b, std::move(images)))) return;
    // Odometer with the last source element varying fastest.
    std::size_t pos = idx.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < b.size()) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
    if (idx.empty()) return;
  }
}

std::vector<FinFunction> all_functions(const FinSet& a, const FinSet& b) {
  std::vector<FinFunction> out;
  for_each_function(a, b, [&](const FinFunction& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Category structure

FinFunction identity(const FinSet& a) { return FinFunction(a, a, std::vector<Value>(a.begin(), a.end())); }

FinFunction compose(const FinFunction& f, const FinFunction& g) {
  if (f.target() != g.source()) fail(Code::not_composable, "cannot compose " + arrow(f) + " with " + arrow(g));
  std::vector<Value> images;
  images.reserve(f.source().size());
  for (const auto& y : f.images()) images.push_back(g(y));
  return FinFunction(f.source(), g.target(), std::move(images));
}

FinSet initial() { return {}; }
FinSet terminal() { return FinSet{Value::atom("•")}; }
FinSet omega() { return FinSet{Value::atom("false"), Value::atom("true")}; }
Value truth(bool b) { return Value::atom(b ? "true" : "false"); }

FinFunction negation() {
  return FinFunction::from_rule(omega(), omega(), [](const Value& v) { return truth(v == truth(false)); });
}

FinFunction from_initial(const FinSet& a) { return FinFunction(initial(), a, {}); }

FinFunction to_terminal(const FinSet& a) {
  return FinFunction(a, terminal(), std::vector<Value>(a.size(), Value::atom("•")));
}

namespace {

Product build_product(const FinSet& a, const FinSet& b) {
  std::vector<Value> pairs;
  pairs.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) pairs.push_back(Value::pair(x, y));
  FinSet carrier(std::move(pairs));
  auto pi0 = FinFunction::from_rule(carrier, a, [](const Value& p) { return p.first(); });
  auto pi1 = FinFunction::from_rule(carrier, b, [](const Value& p) { return p.second(); });
  return {std::move(carrier), std::move(pi0), std::move(pi1)};
}

}  // namespace

Product product(const FinSet& a, const FinSet& b) {
  thread_local RecentCache<Product> cache;
  return cache.get(a, b, [&] { return build_product(a, b); });
}

FinFunction pairing(const FinFunction& f, const FinFunction& g) {
  if (f.source() != g.source()) fail(Code::source_mismatch, "pairing needs a common source");
  auto carrier = product(f.target(), g.target()).carrier;
  std::vector<Value> images;
  images.reserve(f.source().size());
  for (std::size_t i = 0; i < f.source().size(); ++i) images.push_back(Value::pair(f.images()[i], g.images()[i]));
  return FinFunction(f.source(), std::move(carrier), std::move(images));
}

FinFunction product_map(const FinFunction& f, const FinFunction& g) {
  auto src = product(f.source(), g.source()).carrier;
  auto tgt = product(f.target(), g.target()).carrier;
  return FinFunction::from_rule(std::move(src), std::move(tgt),
                                [&](const Value& p) { return Value::pair(f(p.first()), g(p.second())); });
}

FinSet power_set(const FinSet& a) {
  if (a.size() >= 63) fail(Code::invalid_function, "power set too large");
  std::vector<Value> subsets;
  const std::uint64_t n = std::uint64_t{1} << a.size();
  subsets.reserve(n);
  for (std::uint64_t mask = 0; mask < n; ++mask) {
    std::vector<Value> s;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (mask >> i & 1) s.push_back(a[i]);
    subsets.push_back(Value::set(std::move(s)));
  }
  return FinSet(std::move(subsets));
}

FinFunction power_map(const FinFunction& f) {
  return FinFunction::from_rule(power_set(f.source()), power_set(f.target()), [&](const Value& s) {
    std::vector<Value> img;
    for (const auto& x : s.members()) img.push_back(f(x));
    return Value::set(std::move(img));
  });
}

FinSet exponent(const FinSet& a, const FinSet& b) {
  thread_local RecentCache<FinSet> cache;
  return cache.get(a, b, [&] {
    std::vector<Value> graphs;
    for_each_function(a, b, [&](const FinFunction& f) {
      graphs.push_back(f.graph());
      return true;
    });
    return FinSet(std::move(graphs));
  });
}

FinSet hom_set(const FinSet& a, const FinSet& b) { return exponent(a, b); }

FinFunction evaluation(const FinSet& a, const FinSet& b) {
  auto src = product(exponent(a, b), a).carrier;
  return FinFunction::from_rule(std::move(src), b, [](const Value& p) { return *p.first().lookup(p.second()); });
}

FinFunction curry(const FinFunction& f, const FinSet& c, const FinSet& a, const FinSet& b) {
  if (f.source() != product(c, a).carrier) fail(Code::source_mismatch, "curry needs a map out of C x A");
  if (f.target() != b) fail(Code::target_mismatch, "curry needs a map into B");
  return FinFunction::from_rule(c, exponent(a, b), [&](const Value& z) {
    std::vector<Value::Mapping> g;
    for (const auto& x : a) g.emplace_back(x, f(Value::pair(z, x)));
    return Value::fn(std::move(g));
  });
}

FinFunction uncurry(const FinFunction& g, const FinSet& c, const FinSet& a, const FinSet& b) {
  if (g.source() != c) fail(Code::source_mismatch, "uncurry needs a map out of C");
  if (g.target() != exponent(a, b)) fail(Code::target_mismatch, "uncurry needs a map into B^A");
  return FinFunction::from_rule(product(c, a).carrier, b,
                                [&](const Value& p) { return *g(p.first()).lookup(p.second()); });
}

FinFunction exponent_map(const FinFunction& h, const FinSet& b) {
  return FinFunction::from_rule(exponent(h.target(), b), exponent(h.source(), b), [&](const Value& phi) {
    std::vector<Value::Mapping> g;
    for (const auto& x : h.source()) g.emplace_back(x, *phi.lookup(h(x)));
    return Value::fn(std::move(g));
  });
}

// ---------------------------------------------------------------------------
// Subobjects

std::vector<FinPredicate> subobjects(const FinSet& a) {
  std::vector<FinPredicate> out;
  for (const auto& s : power_set(a)) out.emplace_back(a, FinSet::of(s));
  return out;
}

FinFunction characteristic(const FinPredicate& p) {
  return FinFunction::from_rule(p.genus(), omega(), [&](const Value& x) { return truth(p.extent().contains(x)); });
}

FinPredicate fiber(const FinFunction& chi) {
  if (chi.target() != omega()) fail(Code::target_not_omega, "fiber needs a map into omega, got " + arrow(chi));
  std::vector<Value> ext;
  for (std::size_t i = 0; i < chi.source().size(); ++i)
    if (chi.images()[i] == truth(true)) ext.push_back(chi.source()[i]);
  return FinPredicate(chi.source(), FinSet(std::move(ext)));
}

FinPredicate binary_meet(const FinPredicate& p, const FinPredicate& q) {
  if (p.genus() != q.genus()) fail(Code::genus_mismatch, "meet of parts with different genera");
  std::vector<Value> ext;
  std::set_intersection(p.extent().begin(), p.extent().end(), q.extent().begin(), q.extent().end(),
                        std::back_inserter(ext));
  return FinPredicate(p.genus(), FinSet(std::move(ext)));
}

FinPredicate inverse_image(const FinFunction& h, const FinPredicate& p) {
  if (h.target() != p.genus()) fail(Code::genus_mismatch, "inverse image along a map not into the genus");
  std::vector<Value> ext;
  for (std::size_t i = 0; i < h.source().size(); ++i)
    if (p.extent().contains(h.images()[i])) ext.push_back(h.source()[i]);
  return FinPredicate(h.source(), FinSet(std::move(ext)));
}

FinSet relation_fiber01(const FinRelation& r, const Value& x) {
  if (!r.comp0().contains(x)) fail(Code::not_in_component, x.to_string() + " is not in component 0");
  std::vector<Value> ys;
  for (const auto& y : r.comp1())
    if (r.holds(x, y)) ys.push_back(y);
  return FinSet(std::move(ys));
}

ImageFactorization image_factorization(const FinFunction& f) {
  FinSet img(std::vector<Value>(f.images().begin(), f.images().end()));
  FinFunction core(f.source(), img, std::vector<Value>(f.images().begin(), f.images().end()));
  return {FinPredicate(f.target(), std::move(img)), std::move(core)};
}

FinRelation span_to_relation(const FinSpan& s) {
  auto pr = pairing(s.leg0, s.leg1);
  return FinRelation(s.leg0.target(), s.leg1.target(),
                     FinSet(std::vector<Value>(pr.images().begin(), pr.images().end())));
}

FinSpan relation_to_span(const FinRelation& r) {
  auto l0 = FinFunction::from_rule(r.extent(), r.comp0(), [](const Value& p) { return p.first(); });
  auto l1 = FinFunction::from_rule(r.extent(), r.comp1(), [](const Value& p) { return p.second(); });
  return FinSpan(std::move(l0), std::move(l1));
}

FinPredicate relation_as_predicate(const FinRelation& r) {
  return FinPredicate(product(r.comp0(), r.comp1()).carrier, r.extent());
}

// ---------------------------------------------------------------------------
// Elements and parts

bool is_injective(const FinFunction& f) {
  return FinSet(std::vector<Value>(f.images().begin(), f.images().end())).size() == f.images().size();
}

bool is_surjective(const FinFunction& f) {
  return FinSet(std::vector<Value>(f.images().begin(), f.images().end())).size() == f.target().size();
}

bool is_element(const FinFunction& x, const FinSet& set) { return x.target() == set; }

bool is_part(const FinFunction& b) { return is_injective(b); }

std::optional<FinFunction> belongs(const FinFunction& x, const FinFunction& y) {
  if (x.target() != y.target()) fail(Code::target_mismatch, "belonging needs elements of one set");
  std::vector<Value> proof;
  proof.reserve(x.source().size());
  for (const auto& image : x.images()) {
    std::optional<Value> pre;
    for (std::size_t j = 0; j < y.source().size() && !pre; ++j)
      if (y.images()[j] == image) pre = y.source()[j];
    if (!pre) return std::nullopt;
    proof.push_back(*pre);
  }
  return FinFunction(x.source(), y.source(), std::move(proof));
}

bool includes(const FinFunction& a, const FinFunction& b) {
  if (!is_part(a) || !is_part(b)) fail(Code::not_a_part, "inclusion is defined between parts");
  return belongs(a, b).has_value();
}

bool member(const FinFunction& x, const FinFunction& b) {
  if (!is_part(b)) fail(Code::not_a_part, "membership needs a part");
  return belongs(x, b).has_value();
}

// ---------------------------------------------------------------------------
// Internal categories

Pullback composable_pairs(const FinCategory& c) {
  std::vector<Value> pairs;
  for (const auto& f : c.morphisms())
    for (const auto& g : c.morphisms())
      if (c.tgt()(f) == c.src()(g)) pairs.push_back(Value::pair(f, g));
  FinSet carrier(std::move(pairs));
  auto pi0 = FinFunction::from_rule(carrier, c.morphisms(), [](const Value& p) { return p.first(); });
  auto pi1 = FinFunction::from_rule(carrier, c.morphisms(), [](const Value& p) { return p.second(); });
  return {std::move(carrier), std::move(pi0), std::move(pi1)};
}

FinFunction gen_compose(const FinFunction& f, const FinFunction& g, const FinCategory& c) {
  if (f.source() != g.source()) fail(Code::source_mismatch, "generalized composition needs a common parameter set");
  if (f.target() != c.morphisms() || g.target() != c.morphisms())
    fail(Code::target_mismatch, "generalized composition needs morphism-valued families");
  return FinFunction::from_rule(f.source(), c.morphisms(), [&](const Value& x) {
    auto h = c.compose(f(x), g(x));
    if (!h) fail(Code::not_pointwise_composable, f(x).to_string() + " and " + g(x).to_string() + " do not compose at " + x.to_string());
    return *h;
  });
}

}  // namespace iff
