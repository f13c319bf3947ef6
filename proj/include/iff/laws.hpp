#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iff/finset.hpp"

namespace iff {

struct LawResult {
  std::string name;
  bool passed = true;
  std::uint64_t instances = 0;
  /// First failing instance, or a short summary when everything held.
  std::string detail;
};

struct LawOptions {
  /// Sets of every size 0..max_size take part in the bijection checks.
  std::size_t max_size = 3;
  /// Size bound for naturality squares and other quadratic sweeps.
  std::size_t square_size = 2;
  std::uint64_t cap = kDefaultEnumerationCap;
};

/// Identity and associativity of composition.
LawResult check_category_laws(const LawOptions& opt = {});
/// Product projections, pairing and uniqueness of the mediating map.
LawResult check_product_law(const LawOptions& opt = {});
/// |Sub(A)| = |Hom(A, omega)| with characteristic and fiber mutually inverse.
LawResult check_classifier_law(const LawOptions& opt = {});
/// Pulling a part back along h : A' -> A commutes with characteristic maps.
LawResult check_classifier_naturality(const LawOptions& opt = {});
/// |Hom(C x A, B)| = |Hom(C, B^A)|, curry and uncurry inverse, and
/// eval . (curry f x id) = f.
LawResult check_exponential_law(const LawOptions& opt = {});
/// curry(f . (id x h)) = curry(f) . B^h for h : A' -> A.
LawResult check_exponential_naturality(const LawOptions& opt = {});
/// The power functor preserves identities and composition.
LawResult check_power_functor(const LawOptions& opt = {});

/// Every check above, in a fixed order. Throws SizeCapExceeded before any
/// sweep whose enumeration would pass `opt.cap`.
std::vector<LawResult> topos_law_suite(const LawOptions& opt = {});

}  // namespace iff
