#include "iff/laws.hpp"

#include <sstream>

namespace iff {

namespace {

class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& describe) {
    ++r_.instances;
    if (!ok && r_.passed) {
      r_.passed = false;
      r_.detail = describe();
    }
  }

  LawResult finish(const std::string& summary) {
    if (r_.passed) r_.detail = summary;
    return r_;
  }

 private:
  LawResult r_;
};

std::vector<FinSet> sets_up_to(std::size_t n) {
  std::vector<FinSet> out;
  for (std::size_t i = 0; i <= n; ++i) out.push_back(FinSet::numbered(i));
  return out;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::string show(const FinFunction& f) { return f.graph().to_string(); }

}  // namespace

LawResult check_category_laws(const LawOptions& opt) {
  Tally t("category laws");
  auto sets = sets_up_to(opt.square_size);
  for (const auto& a : sets)
    for (const auto& b : sets) {
      for_each_function(a, b, [&](const FinFunction& f) {
        t.check(compose(identity(a), f) == f && compose(f, identity(b)) == f,
                [&] { return "identity law fails for " + show(f); });
        return true;
      });
      for (const auto& c : sets)
        for (const auto& d : sets) {
          auto n = sat_mul(sat_mul(count_functions(a.size(), b.size()), count_functions(b.size(), c.size())),
                           count_functions(c.size(), d.size()));
          require_within_cap(n, opt.cap, "associativity sweep");
          for_each_function(a, b, [&](const FinFunction& f) {
            for_each_function(b, c, [&](const FinFunction& g) {
              for_each_function(c, d, [&](const FinFunction& h) {
                t.check(compose(compose(f, g), h) == compose(f, compose(g, h)), [&] {
                  return "associativity fails for " + show(f) + ", " + show(g) + ", " + show(h);
                });
                return true;
              });
              return true;
            });
            return true;
          });
        }
    }
  return t.finish("identities neutral and composition associative on sets of size <= " +
                  std::to_string(opt.square_size));
}

LawResult check_product_law(const LawOptions& opt) {
  Tally t("product universal property");
  auto sets = sets_up_to(opt.max_size);
  for (const auto& x : sets)
    for (const auto& a : sets)
      for (const auto& b : sets) {
        auto prod = product(a, b);
        t.check(prod.carrier.size() == a.size() * b.size(), [&] { return "product carrier has the wrong size"; });
        auto n = sat_mul(count_functions(x.size(), a.size()), count_functions(x.size(), b.size()));
        require_within_cap(n, opt.cap, "product sweep");
        bool small = x.size() <= opt.square_size && a.size() <= opt.square_size && b.size() <= opt.square_size;
        if (small) require_within_cap(sat_mul(n, count_functions(x.size(), prod.carrier.size())), opt.cap, "product uniqueness sweep");
        for_each_function(x, a, [&](const FinFunction& f) {
          for_each_function(x, b, [&](const FinFunction& g) {
            auto fg = pairing(f, g);
            t.check(compose(fg, prod.pi0) == f && compose(fg, prod.pi1) == g,
                    [&] { return "pairing of " + show(f) + ", " + show(g) + " does not project back"; });
            if (small) {
              std::size_t mediators = 0;
              for_each_function(x, prod.carrier, [&](const FinFunction& h) {
                if (compose(h, prod.pi0) == f && compose(h, prod.pi1) == g) ++mediators;
                return true;
              });
              t.check(mediators == 1, [&] {
                return std::to_string(mediators) + " mediating maps for " + show(f) + ", " + show(g);
              });
            }
            return true;
          });
          return true;
        });
      }
  return t.finish("pairing factors every cone; mediator unique on sets of size <= " +
                  std::to_string(opt.square_size));
}

LawResult check_classifier_law(const LawOptions& opt) {
  Tally t("subobject classifier");
  std::ostringstream sizes;
  for (const auto& a : sets_up_to(opt.max_size)) {
    require_within_cap(count_functions(a.size(), 2), opt.cap, "classifier sweep");
    auto subs = subobjects(a);
    std::size_t homs = 0;
    for_each_function(a, omega(), [&](const FinFunction& chi) {
      ++homs;
      t.check(characteristic(fiber(chi)) == chi, [&] { return "characteristic(fiber(chi)) != chi for " + show(chi); });
      return true;
    });
    for (const auto& p : subs)
      t.check(fiber(characteristic(p)) == p, [&] { return "fiber(characteristic(p)) != p for " + p.extent().to_string(); });
    t.check(subs.size() == homs, [&] {
      return "|Sub(A)| = " + std::to_string(subs.size()) + " but |Hom(A, omega)| = " + std::to_string(homs);
    });
    sizes << (sizes.tellp() > 0 ? " " : "") << subs.size();
  }
  return t.finish("|Sub(A)| = |Hom(A, omega)| = " + sizes.str() + " for |A| = 0.." + std::to_string(opt.max_size));
}

LawResult check_classifier_naturality(const LawOptions& opt) {
  Tally t("classifier naturality");
  auto sets = sets_up_to(opt.square_size);
  for (const auto& a2 : sets)
    for (const auto& a : sets)
      for_each_function(a2, a, [&](const FinFunction& h) {
        for (const auto& p : subobjects(a))
          t.check(characteristic(inverse_image(h, p)) == compose(h, characteristic(p)), [&] {
            return "square fails for h = " + show(h) + " and part " + p.extent().to_string();
          });
        return true;
      });
  return t.finish("pullback squares commute for all maps between sets of size <= " +
                  std::to_string(opt.square_size));
}

LawResult check_exponential_law(const LawOptions& opt) {
  Tally t("exponential adjunction");
  auto sets = sets_up_to(opt.max_size);
  std::uint64_t largest = 0;
  for (const auto& c : sets)
    for (const auto& a : sets)
      for (const auto& b : sets) {
        auto lhs_count = count_functions(c.size() * a.size(), b.size());
        auto rhs_count = count_functions(c.size(), count_functions(a.size(), b.size()));
        require_within_cap(lhs_count, opt.cap, "Hom(C x A, B) sweep");
        require_within_cap(rhs_count, opt.cap, "Hom(C, B^A) sweep");
        auto ca = product(c, a).carrier;
        auto ba = exponent(a, b);
        auto ev = evaluation(a, b);
        auto id_a = identity(a);
        std::uint64_t lhs = 0, rhs = 0;
        for_each_function(ca, b, [&](const FinFunction& f) {
          ++lhs;
          auto g = curry(f, c, a, b);
          t.check(uncurry(g, c, a, b) == f, [&] { return "uncurry(curry f) != f for " + show(f); });
          t.check(compose(product_map(g, id_a), ev) == f, [&] { return "eval . (curry f x id) != f for " + show(f); });
          return true;
        });
        for_each_function(c, ba, [&](const FinFunction& g) {
          ++rhs;
          t.check(curry(uncurry(g, c, a, b), c, a, b) == g, [&] { return "curry(uncurry g) != g for " + show(g); });
          return true;
        });
        t.check(lhs == rhs, [&] {
          return "|Hom(C x A, B)| = " + std::to_string(lhs) + " but |Hom(C, B^A)| = " + std::to_string(rhs);
        });
        largest = std::max(largest, lhs);
      }
  return t.finish("curry is a bijection Hom(C x A, B) -> Hom(C, B^A) for sizes <= " +
                  std::to_string(opt.max_size) + " (largest hom-set " + std::to_string(largest) + ")");
}

LawResult check_exponential_naturality(const LawOptions& opt) {
  Tally t("exponential naturality");
  auto sets = sets_up_to(opt.square_size);
  for (const auto& c : sets)
    for (const auto& a : sets)
      for (const auto& a2 : sets)
        for (const auto& b : sets) {
          auto n = sat_mul(count_functions(a2.size(), a.size()), count_functions(c.size() * a.size(), b.size()));
          require_within_cap(n, opt.cap, "exponential naturality sweep");
          auto ca = product(c, a).carrier;
          for_each_function(a2, a, [&](const FinFunction& h) {
            auto shift = product_map(identity(c), h);
            auto bh = exponent_map(h, b);
            for_each_function(ca, b, [&](const FinFunction& f) {
              t.check(curry(compose(shift, f), c, a2, b) == compose(curry(f, c, a, b), bh), [&] {
                return "square fails for h = " + show(h) + " and f = " + show(f);
              });
              return true;
            });
            return true;
          });
        }
  return t.finish("curry commutes with precomposition for all maps between sets of size <= " +
                  std::to_string(opt.square_size));
}

LawResult check_power_functor(const LawOptions& opt) {
  Tally t("power functor");
  auto sets = sets_up_to(opt.max_size);
  for (const auto& a : sets)
    t.check(power_map(identity(a)) == identity(power_set(a)), [&] { return "power_map(id) != id on " + a.to_string(); });
  for (const auto& a : sets)
    for (const auto& b : sets)
      for (const auto& c : sets) {
        auto n = sat_mul(count_functions(a.size(), b.size()), count_functions(b.size(), c.size()));
        require_within_cap(n, opt.cap, "power functor sweep");
        for_each_function(a, b, [&](const FinFunction& f) {
          auto pf = power_map(f);
          for_each_function(b, c, [&](const FinFunction& g) {
            t.check(power_map(compose(f, g)) == compose(pf, power_map(g)),
                    [&] { return "power_map does not preserve " + show(f) + " ; " + show(g); });
            return true;
          });
          return true;
        });
      }
  return t.finish("identities and composites preserved on sets of size <= " + std::to_string(opt.max_size));
}

std::vector<LawResult> topos_law_suite(const LawOptions& opt) {
  return {check_category_laws(opt),         check_product_law(opt),
          check_classifier_law(opt),        check_classifier_naturality(opt),
          check_exponential_law(opt),       check_exponential_naturality(opt),
          check_power_functor(opt)};
}

}  // namespace iff
