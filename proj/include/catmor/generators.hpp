#pragma once

#include <utility>
#include <vector>

#include "catmor/conjugation.hpp"
#include "catmor/fincat.hpp"

namespace catmor {

/// A based map between the pointed sets {0..m} -> {0..n}, 0 the basepoint.
/// Used by the generators and by test oracles working in the concrete
/// based-set model.
struct BasedMap {
  int dom = 0, cod = 0;
  std::vector<int> img;  // img[t-1] = image of t, values 0..cod

  bool regular() const;
  bool injective_nonzero() const;
  bool ordered_injection() const;
  bool surjective_nonzero() const;
  static BasedMap compose(const BasedMap& f, const BasedMap& g);  // g after f
  bool operator<(const BasedMap& o) const;
  bool operator==(const BasedMap& o) const;
};

/// A finite category of based maps with the morphism list retained, so the
/// abstract composition table can be cross-checked against honest function
/// composition.
struct BasedMapCategory {
  FinCat cat;
  std::vector<BasedMap> maps;  // aligned with morphism ids
};

/// All regular maps among the pointed sets {0..k} for k <= n.
BasedMapCategory regular_maps_category(int n);
/// All based maps (including singular ones), for cross-model checks.
BasedMapCategory based_maps_category(int n);
/// All regular injective maps.
BasedMapCategory injective_regular_category(int n);

/// Regular maps factored through ordered injections and surjections;
/// the pointed-set instance of a conjugate pair. Requires 0 <= n <= 4.
Factorization gen_gamma(int n);

/// Two objects, one non-identity arrow, nothing else: the smallest
/// conjugate pair, whose B splits an idempotent.
Factorization gen_idem();

/// A finite poset category with meets; the second argument lists strict
/// relations as (lower, upper) pairs over elements 0..elems-1. Rejects
/// specs without the needed greatest lower bounds, naming the offending
/// cospan pair.
Factorization gen_poset(int elems,
                        const std::vector<std::pair<int, int>>& strictly_less);

/// Injective regular maps factored through ordered injections and regular
/// permutations. Requires 0 <= n <= 4.
Factorization gen_sigma(int n);

/// The conjugate pair every indexing category induces: ambient = the
/// category itself, A = its isomorphisms.
Factorization gen_induction(FinCat indexing);

FinCat arrow_category();
/// Poset category of all subsets of {1..n} ordered by inclusion; objects
/// are bitmask-indexed.
FinCat subset_lattice_category(int n);
/// All based injections among {0..n} as a standalone category; its
/// isomorphism class structure is nontrivial.
FinCat injections_category(int n);

}  // namespace catmor
