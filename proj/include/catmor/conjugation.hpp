#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catmor/fincat.hpp"

namespace catmor {

/// A candidate factorization U = I∘A: an ambient category with two wide
/// subcategories, the first of which should be an indexing category.
/// The ambient category is held behind a shared pointer so that copies of
/// the factorization keep the subcategory masks valid. Skeleta are
/// computed eagerly when the indexing check passes.
struct Factorization {
  std::shared_ptr<const FinCat> ambient;
  SubcatMask I;
  SubcatMask A;
  std::vector<PosetOnSkeleton> skeleta;  // per object, empty if I not indexing
  bool skeleta_ready = false;

  const FinCat& U() const { return *ambient; }

  static Factorization make(FinCat u, std::vector<int> i_ids,
                            std::vector<int> a_ids);

  bool operator==(const Factorization& o) const {
    return *ambient == *o.ambient && I == o.I && A == o.A;
  }
};

struct ConjugationReport {
  struct Item {
    std::string axiom;  // structure | coverage | unique-lift | pullback
    bool ok = true;
    std::string witness;
  };
  bool ok = true;
  std::vector<Item> items;
  std::string summary() const;
};

/// Exhaustive verification that the factorization admits conjugation:
/// structural invariants (subcategories, indexing, Iso(I) inside Iso(A)),
/// coverage by I∘A, the unique-lift axiom, and mixed pullbacks with legs
/// in A and I unique up to I-isomorphism. The report pinpoints the first
/// failing datum per axiom.
ConjugationReport check_conjugation(const Factorization& f);

/// Mixed pullback of a cospan (alpha in A, i in I with common codomain):
/// a square alpha∘ileg = i∘aleg with ileg in I, aleg in A, universal over
/// all cones of the ambient category.
struct MixedPullback {
  int apex = -1;
  int ileg = -1;  // p -> dom(alpha), in I
  int aleg = -1;  // p -> dom(i), in A
};

/// Deterministic least witness, scanning (ileg, aleg) ascending.
std::optional<MixedPullback> axiom2_pullback(const Factorization& f, int alpha,
                                             int i);
/// Every valid mixed pullback square of the cospan.
std::vector<MixedPullback> all_axiom2_pullbacks(const Factorization& f,
                                                int alpha, int i);

/// Canonical three-fold factorization img∘mid∘cok* of a conjugate-category
/// morphism. cok and img are skeletal representatives in the relevant
/// comma fibers, which pins the triple uniquely.
struct BMorphism {
  int src = -1, dst = -1;
  int cok = -1;  // in I, skeletal in sk(I ↓ src)
  int mid = -1;  // in A
  int img = -1;  // in I, skeletal in sk(I ↓ dst)
  bool operator==(const BMorphism& o) const {
    return src == o.src && dst == o.dst && cok == o.cok && mid == o.mid &&
           img == o.img;
  }
};

/// The category B = I∘A∘I* built from a factorization admitting
/// conjugation, together with the provenance triple of every morphism and
/// the three embeddings. Immutable after construction; copyable.
class ConjugateCategory {
 public:
  const FinCat& category() const { return b_; }
  const Factorization& factorization() const { return fact_; }
  const PosetOnSkeleton& skel(int obj) const { return fact_.skeleta[obj]; }

  const BMorphism& provenance(int b_id) const { return prov_[b_id]; }
  int lookup_triple(const BMorphism& t) const;

  /// Embeddings on morphisms, indexed by ambient morphism id (-1 when the
  /// morphism is outside the respective subcategory).
  int embed_i(int u_id) const { return embed_i_[u_id]; }
  int embed_a(int u_id) const { return embed_a_[u_id]; }
  int embed_iop(int u_id) const { return embed_iop_[u_id]; }

  /// B-id of an arbitrary (not necessarily skeletal) composable triple.
  int canonicalize(int cok_raw, int mid_raw, int img_raw) const;

  bool is_regular(int b_id) const;
  /// For a regular morphism: its A-part src -> dom(img), an ambient id.
  int regular_a_part(int b_id) const;
  /// Regular part of any morphism: img∘mid with identity cokernel.
  int regular_part(int b_id) const;

  /// 1-based position of a regular morphism within the ascending list of
  /// regular morphisms a -> b; 0 for singular input.
  int regular_index(int a, int b, int b_id) const;
  std::vector<int> regular_morphisms(int a, int b) const;

  /// Composition re-derived with randomly chosen (but valid) intermediate
  /// pullbacks and factorizations instead of the deterministic least ones;
  /// must agree with the composition table for every seed.
  int compose_with_choices(int b1, int b2, unsigned long long seed) const;

  friend ConjugateCategory build_conjugate(Factorization f);

 private:
  int compose_triples(int b1_src, const BMorphism& t1, const BMorphism& t2,
                      unsigned long long* choice_seed) const;

  Factorization fact_;
  FinCat b_;
  std::vector<BMorphism> prov_;
  std::vector<int> embed_i_, embed_a_, embed_iop_;
  std::map<std::array<int, 5>, int> lookup_;
  std::map<std::pair<int, int>, PullbackSquare> i_pullback_;
  std::map<std::pair<int, int>, MixedPullback> mixed_pullback_;
  std::vector<int> factor_mid_, factor_img_;  // least I∘A factorization per u
};

/// Requires check_conjugation(f).ok; throws std::invalid_argument else.
ConjugateCategory build_conjugate(Factorization f);

BMorphism threefold_factorize(const ConjugateCategory& c, int b_id);
bool is_regular(const ConjugateCategory& c, int b_id);

/// The regular bimodule as tables: for every object pair the based set
/// U(a,b)+ of regular morphisms (index 0 is the basepoint), with the two
/// actions computed through composition in B. Singular composites land on
/// the basepoint.
struct RegularBimodule {
  int objects = 0;
  std::vector<std::vector<std::vector<int>>> elems;  // [a][b] regular B-ids
  std::vector<int> index_of;  // B-id -> 1-based element index, 0 if singular

  int size(int a, int b) const { return static_cast<int>(elems[a][b].size()); }
  int elem(int a, int b, int k) const { return elems[a][b][k - 1]; }

  /// Postcomposition by beta: b -> c, sending U(a,b)+ to U(a,c)+.
  int left_act(const ConjugateCategory& cc, int beta, int a, int k) const;
  /// Precomposition by alpha: a' -> a in A (ambient id), U(a,b)+ -> U(a',b)+.
  int right_act(const ConjugateCategory& cc, int alpha_u, int b, int k) const;
};

RegularBimodule regular_bimodule(const ConjugateCategory& c);

/// Element of a wedge of based sets: summand -1 marks the basepoint.
struct WedgeElem {
  int summand = -1;
  int elem = 0;
  bool basepoint() const { return summand < 0; }
  bool operator==(const WedgeElem& o) const {
    return summand == o.summand && elem == o.elem;
  }
};

/// U(a,b)+ as the wedge over i in sk(I↓b) of A(a, dom i)+: a regular
/// morphism splits into its A-part, landing in the summand of its image.
struct FreeDecomp {
  int a = -1, b = -1;
  std::vector<std::vector<int>> summand_elems;  // per skeleton element: A ids

  WedgeElem forward(const ConjugateCategory& cc, int regular_b_id) const;
  int backward(const ConjugateCategory& cc, int summand, int a_mor) const;
  int summand_size(int i) const {
    return static_cast<int>(summand_elems[i].size());
  }
  int total() const;
};

FreeDecomp decompose_free(const ConjugateCategory& cc, int a, int b);

/// Wedge map induced by beta: b -> c on the free decomposition at source
/// object a: compose through B, basepoint on singular composites, split
/// otherwise. The result lives in the wedge over sk(I↓c).
WedgeElem beta_star_free(const ConjugateCategory& cc, int beta, int a,
                         const FreeDecomp& at_b, WedgeElem x);

/// B(b,c)+ as the wedge over i in sk(I↓b) of U(dom i, c)+: a morphism
/// splits into its regular part, indexed by its cokernel.
struct GenDecomp {
  int b = -1, c = -1;
  std::vector<std::vector<int>> summand_elems;  // per skeleton element: B ids

  WedgeElem forward(const ConjugateCategory& cc, int b_id) const;
  int backward(const ConjugateCategory& cc, int summand,
               int regular_b_id) const;
  int summand_size(int i) const {
    return static_cast<int>(summand_elems[i].size());
  }
  int total() const;
};

GenDecomp decompose_gen(const ConjugateCategory& cc, int b, int c);

/// Contravariant wedge map induced by beta: a -> b, assembled from the
/// three-fold factorization of beta: lands in the wedge over sk(I↓a).
/// Sends regular elements to regular elements; basepoint to basepoint.
WedgeElem beta_star_gen(const ConjugateCategory& cc, int beta, int c,
                        const GenDecomp& at_b, WedgeElem x);

}  // namespace catmor
