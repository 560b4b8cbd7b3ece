#include "catmor/conjugation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace catmor {

namespace {

std::string mor_str(const FinCat& c, int f) {
  std::ostringstream os;
  os << f << " (" << c.dom(f) << "->" << c.cod(f) << ")";
  return os.str();
}

inline unsigned long long mix64(unsigned long long& s) {
  s += 0x9E3779B97F4A7C15ull;
  unsigned long long z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

Factorization Factorization::make(FinCat u, std::vector<int> i_ids,
                                  std::vector<int> a_ids) {
  Factorization f;
  f.ambient = std::make_shared<const FinCat>(std::move(u));
  f.I = SubcatMask(*f.ambient, std::move(i_ids), "I");
  f.A = SubcatMask(*f.ambient, std::move(a_ids), "A");
  if (f.I.validate().ok() && is_indexing_category(f.I).ok) {
    for (int a = 0; a < f.ambient->object_count(); ++a)
      f.skeleta.push_back(skeleton(f.I, a));
    f.skeleta_ready = true;
  }
  return f;
}

std::string ConjugationReport::summary() const {
  std::ostringstream os;
  for (const auto& it : items) {
    os << (it.ok ? "PASS " : "FAIL ") << it.axiom;
    if (!it.witness.empty()) os << " " << it.witness;
    os << "\n";
  }
  return os.str();
}

std::vector<MixedPullback> all_axiom2_pullbacks(const Factorization& f,
                                                int alpha, int i) {
  const FinCat& u = f.U();
  std::vector<MixedPullback> out;
  if (u.cod(alpha) != u.cod(i)) return out;
  for (int il = 0; il < u.morphism_count(); ++il) {  // ileg: p -> dom(alpha)
    if (!f.I.contains(il) || u.cod(il) != u.dom(alpha)) continue;
    for (int al : u.hom(u.dom(il), u.dom(i))) {  // aleg: p -> dom(i)
      if (!f.A.contains(al)) continue;
      if (u.raw_comp(il, alpha) < 0 ||
          u.raw_comp(il, alpha) != u.raw_comp(al, i))
        continue;
      // Universal property over every cone of the ambient category.
      bool universal = true;
      for (int q = 0; q < u.object_count() && universal; ++q) {
        for (int cu : u.hom(q, u.dom(alpha))) {
          if (!universal) break;
          for (int cv : u.hom(q, u.dom(i))) {
            if (u.raw_comp(cu, alpha) != u.raw_comp(cv, i)) continue;
            int mediators = 0;
            for (int h : u.hom(q, u.dom(il)))
              if (u.raw_comp(h, il) == cu && u.raw_comp(h, al) == cv)
                ++mediators;
            if (mediators != 1) {
              universal = false;
              break;
            }
          }
        }
      }
      if (universal) out.push_back({u.dom(il), il, al});
    }
  }
  return out;
}

std::optional<MixedPullback> axiom2_pullback(const Factorization& f, int alpha,
                                             int i) {
  auto all = all_axiom2_pullbacks(f, alpha, i);
  if (all.empty()) return std::nullopt;
  return all.front();
}

namespace {

// Least (mid, img) with img∘mid = u, mid in A, img in I.
std::optional<std::pair<int, int>> least_factorization(const Factorization& f,
                                                       int u_id) {
  const FinCat& u = f.U();
  for (int mid = 0; mid < u.morphism_count(); ++mid) {
    if (!f.A.contains(mid) || u.dom(mid) != u.dom(u_id)) continue;
    for (int img : u.hom(u.cod(mid), u.cod(u_id))) {
      if (!f.I.contains(img)) continue;
      if (u.raw_comp(mid, img) == u_id) return std::make_pair(mid, img);
    }
  }
  return std::nullopt;
}

}  // namespace

ConjugationReport check_conjugation(const Factorization& f) {
  ConjugationReport rep;
  const FinCat& u = f.U();
  auto add = [&](const std::string& axiom, bool ok, const std::string& w) {
    rep.items.push_back({axiom, ok, w});
    rep.ok = rep.ok && ok;
  };

  // Structure: valid wide subcategories, indexing I, Iso(I) within Iso(A).
  {
    std::string w;
    ValidationReport vi = f.I.validate(), va = f.A.validate();
    if (!vi.ok())
      w = "subcategory I: " + vi.violations.front().detail;
    else if (!va.ok())
      w = "subcategory A: " + va.violations.front().detail;
    else {
      IndexingReport ir = is_indexing_category(f.I);
      if (!ir.ok) w = "I is not an indexing category: " + ir.detail;
    }
    if (w.empty()) {
      for (int m = 0; m < u.morphism_count() && w.empty(); ++m)
        if (f.I.is_iso_in(m) && !f.A.is_iso_in(m))
          w = "isomorphism " + mor_str(u, m) + " of I is not one of A";
    }
    add("structure", w.empty(), w);
  }

  // Coverage: every ambient morphism factors as img∘mid.
  {
    std::string w;
    for (int m = 0; m < u.morphism_count() && w.empty(); ++m)
      if (!least_factorization(f, m))
        w = "morphism " + mor_str(u, m) + " admits no I-after-A factorization";
    add("coverage", w.empty(), w);
  }

  // Unique lift: for every square i∘alpha = j∘beta with alpha, beta in A
  // and i, j in I, a lift exists and every lift is an isomorphism of I.
  {
    std::string w;
    for (int alpha = 0; alpha < u.morphism_count() && w.empty(); ++alpha) {
      if (!f.A.contains(alpha)) continue;
      for (int i = 0; i < u.morphism_count() && w.empty(); ++i) {
        if (!f.I.contains(i) || u.dom(i) != u.cod(alpha)) continue;
        int top = u.raw_comp(alpha, i);  // i∘alpha
        if (top < 0) continue;
        for (int beta = 0; beta < u.morphism_count() && w.empty(); ++beta) {
          if (!f.A.contains(beta) || u.dom(beta) != u.dom(alpha)) continue;
          for (int j = 0; j < u.morphism_count() && w.empty(); ++j) {
            if (!f.I.contains(j) || u.dom(j) != u.cod(beta) ||
                u.cod(j) != u.cod(i))
              continue;
            if (u.raw_comp(beta, j) != top) continue;
            bool found = false;
            for (int phi : u.hom(u.cod(beta), u.cod(alpha))) {
              if (u.raw_comp(beta, phi) != alpha || u.raw_comp(phi, i) != j)
                continue;
              found = true;
              if (!f.I.is_iso_in(phi)) {
                w = "lift " + mor_str(u, phi) + " for square i=" +
                    std::to_string(i) + " alpha=" + std::to_string(alpha) +
                    " j=" + std::to_string(j) + " beta=" +
                    std::to_string(beta) + " is not an I-isomorphism";
                break;
              }
            }
            if (w.empty() && !found)
              w = "square i=" + std::to_string(i) + " alpha=" +
                  std::to_string(alpha) + " j=" + std::to_string(j) +
                  " beta=" + std::to_string(beta) + " has no lift";
          }
        }
      }
    }
    add("unique-lift", w.empty(), w);
  }

  // Mixed pullbacks: existence with legs in the right subcategories, and
  // uniqueness up to an isomorphism of I.
  {
    std::string w;
    for (int alpha = 0; alpha < u.morphism_count() && w.empty(); ++alpha) {
      if (!f.A.contains(alpha)) continue;
      for (int i = 0; i < u.morphism_count() && w.empty(); ++i) {
        if (!f.I.contains(i) || u.cod(i) != u.cod(alpha)) continue;
        auto squares = all_axiom2_pullbacks(f, alpha, i);
        if (squares.empty()) {
          w = "cospan alpha=" + mor_str(u, alpha) + " i=" + mor_str(u, i) +
              " has no mixed pullback";
          break;
        }
        for (size_t s = 0; s < squares.size() && w.empty(); ++s)
          for (size_t t = 0; t < squares.size() && w.empty(); ++t) {
            if (s == t) continue;
            const MixedPullback &P = squares[s], &Q = squares[t];
            int mediator = -1;
            for (int phi : u.hom(P.apex, Q.apex))
              if (u.raw_comp(phi, Q.ileg) == P.ileg &&
                  u.raw_comp(phi, Q.aleg) == P.aleg) {
                mediator = phi;
                break;
              }
            if (mediator < 0 || !f.I.is_iso_in(mediator))
              w = "mixed pullbacks of alpha=" + std::to_string(alpha) + " i=" +
                  std::to_string(i) + " are not related by an I-isomorphism";
          }
      }
    }
    add("pullback", w.empty(), w);
  }
  return rep;
}

int ConjugateCategory::lookup_triple(const BMorphism& t) const {
  auto it = lookup_.find({t.src, t.dst, t.cok, t.mid, t.img});
  return it == lookup_.end() ? -1 : it->second;
}

int ConjugateCategory::canonicalize(int cok_raw, int mid_raw,
                                    int img_raw) const {
  const FinCat& u = fact_.U();
  int src = u.cod(cok_raw), dst = u.cod(img_raw);
  SkeletalForm cs = skeletalize(fact_.skeleta[src], cok_raw);
  int rep_cok = fact_.skeleta[src].elements[cs.rep_index].map;
  int rho_inv = u.inverse(cs.iso);
  if (rho_inv < 0) throw std::logic_error("skeletal witness is not invertible");
  int mid1 = u.compose(rho_inv, mid_raw);
  SkeletalForm is = skeletalize(fact_.skeleta[dst], img_raw);
  int rep_img = fact_.skeleta[dst].elements[is.rep_index].map;
  int mid2 = u.compose(mid1, is.iso);
  int b = lookup_triple({src, dst, rep_cok, mid2, rep_img});
  if (b < 0)
    throw std::logic_error(
        "canonicalization failure: triple escapes the canonical enumeration");
  return b;
}

bool ConjugateCategory::is_regular(int b_id) const {
  return fact_.I.is_iso_in(prov_[b_id].cok);
}

int ConjugateCategory::regular_a_part(int b_id) const {
  const FinCat& u = fact_.U();
  const BMorphism& t = prov_[b_id];
  int inv = u.inverse(t.cok);
  if (inv < 0) throw std::invalid_argument("regular_a_part of a singular map");
  return u.compose(inv, t.mid);
}

int ConjugateCategory::regular_part(int b_id) const {
  const FinCat& u = fact_.U();
  const BMorphism& t = prov_[b_id];
  int x = u.dom(t.mid);
  return canonicalize(u.identity(x), t.mid, t.img);
}

std::vector<int> ConjugateCategory::regular_morphisms(int a, int b) const {
  std::vector<int> out;
  for (int m : b_.hom(a, b))
    if (is_regular(m)) out.push_back(m);
  return out;
}

int ConjugateCategory::regular_index(int a, int b, int b_id) const {
  if (!is_regular(b_id)) return 0;
  int k = 0;
  for (int m : b_.hom(a, b)) {
    if (!is_regular(m)) continue;
    ++k;
    if (m == b_id) return k;
  }
  return 0;
}

int ConjugateCategory::compose_triples(int, const BMorphism& t1,
                                       const BMorphism& t2,
                                       unsigned long long* choice_seed) const {
  const FinCat& u = fact_.U();
  PullbackSquare mid;
  MixedPullback ul;
  int gmid, gimg;
  if (!choice_seed) {
    mid = i_pullback_.at({t1.img, t2.cok});
    ul = mixed_pullback_.at({t1.mid, mid.to_dom_f});
    int comp = u.compose(mid.to_dom_g, t2.mid);
    gmid = factor_mid_[comp];
    gimg = factor_img_[comp];
  } else {
    auto mids = all_pullbacks(fact_.I, t1.img, t2.cok);
    if (mids.empty()) throw std::logic_error("missing pullback in I");
    mid = mids[mix64(*choice_seed) % mids.size()];
    auto uls = all_axiom2_pullbacks(fact_, t1.mid, mid.to_dom_f);
    if (uls.empty()) throw std::logic_error("missing mixed pullback");
    ul = uls[mix64(*choice_seed) % uls.size()];
    int comp = u.compose(mid.to_dom_g, t2.mid);
    std::vector<std::pair<int, int>> facts;
    for (int m = 0; m < u.morphism_count(); ++m) {
      if (!fact_.A.contains(m) || u.dom(m) != u.dom(comp)) continue;
      for (int im : u.hom(u.cod(m), u.cod(comp)))
        if (fact_.I.contains(im) && u.raw_comp(m, im) == comp)
          facts.push_back({m, im});
    }
    if (facts.empty()) throw std::logic_error("missing factorization");
    auto pick = facts[mix64(*choice_seed) % facts.size()];
    gmid = pick.first;
    gimg = pick.second;
  }
  int cok_raw = u.compose(ul.ileg, t1.cok);
  int mid_raw = u.compose(ul.aleg, gmid);
  int img_raw = u.compose(gimg, t2.img);
  return canonicalize(cok_raw, mid_raw, img_raw);
}

int ConjugateCategory::compose_with_choices(int b1, int b2,
                                            unsigned long long seed) const {
  if (b_.cod(b1) != b_.dom(b2))
    throw std::invalid_argument("compose_with_choices: not composable");
  unsigned long long s = seed;
  return compose_triples(b1, prov_[b1], prov_[b2], &s);
}

ConjugateCategory build_conjugate(Factorization f) {
  ConjugationReport chk = check_conjugation(f);
  if (!chk.ok) {
    std::string why;
    for (const auto& it : chk.items)
      if (!it.ok) {
        why = it.axiom + ": " + it.witness;
        break;
      }
    throw std::invalid_argument("factorization does not admit conjugation (" +
                                why + ")");
  }

  ConjugateCategory cc;
  cc.fact_ = std::move(f);
  const FinCat& u = cc.fact_.U();
  const int n = u.object_count();

  // Canonical triples, enumerated in a fixed order.
  for (int src = 0; src < n; ++src)
    for (int dst = 0; dst < n; ++dst)
      for (const CommaObject& ce : cc.fact_.skeleta[src].elements)
        for (const CommaObject& ie : cc.fact_.skeleta[dst].elements)
          for (int mid : u.hom(ce.dom, ie.dom)) {
            if (!cc.fact_.A.contains(mid)) continue;
            BMorphism t{src, dst, ce.map, mid, ie.map};
            cc.lookup_[{t.src, t.dst, t.cok, t.mid, t.img}] =
                static_cast<int>(cc.prov_.size());
            cc.prov_.push_back(t);
          }

  // Least I∘A factorization of every ambient morphism.
  cc.factor_mid_.assign(u.morphism_count(), -1);
  cc.factor_img_.assign(u.morphism_count(), -1);
  for (int m = 0; m < u.morphism_count(); ++m) {
    auto fac = least_factorization(cc.fact_, m);
    if (!fac) throw std::logic_error("coverage hole after axiom check");
    cc.factor_mid_[m] = fac->first;
    cc.factor_img_[m] = fac->second;
  }

  // Memoized pullbacks: every cospan in I, every mixed cospan.
  for (int j = 0; j < u.morphism_count(); ++j) {
    if (!cc.fact_.I.contains(j)) continue;
    for (int k = 0; k < u.morphism_count(); ++k) {
      if (!cc.fact_.I.contains(k) || u.cod(k) != u.cod(j)) continue;
      auto pb = pullback(cc.fact_.I, j, k);
      if (!pb) throw std::logic_error("missing pullback in I after axiom check");
      cc.i_pullback_[{j, k}] = *pb;
    }
  }
  for (int alpha = 0; alpha < u.morphism_count(); ++alpha) {
    if (!cc.fact_.A.contains(alpha)) continue;
    for (int i = 0; i < u.morphism_count(); ++i) {
      if (!cc.fact_.I.contains(i) || u.cod(i) != u.cod(alpha)) continue;
      auto pb = axiom2_pullback(cc.fact_, alpha, i);
      if (!pb) throw std::logic_error("missing mixed pullback after axiom check");
      cc.mixed_pullback_[{alpha, i}] = *pb;
    }
  }

  // Embeddings.
  cc.embed_i_.assign(u.morphism_count(), -1);
  cc.embed_a_.assign(u.morphism_count(), -1);
  cc.embed_iop_.assign(u.morphism_count(), -1);
  for (int m = 0; m < u.morphism_count(); ++m) {
    int idd = u.identity(u.dom(m)), idc = u.identity(u.cod(m));
    if (cc.fact_.I.contains(m)) {
      cc.embed_i_[m] = cc.canonicalize(idd, idd, m);
      cc.embed_iop_[m] = cc.canonicalize(m, idd, idd);
    }
    if (cc.fact_.A.contains(m)) cc.embed_a_[m] = cc.canonicalize(idd, m, idc);
  }

  // The category B itself.
  const int bm = static_cast<int>(cc.prov_.size());
  std::vector<Morphism> mor(bm);
  for (int b = 0; b < bm; ++b) mor[b] = {cc.prov_[b].src, cc.prov_[b].dst};
  std::vector<int> ident(n);
  for (int a = 0; a < n; ++a) {
    int e = u.identity(a);
    ident[a] = cc.canonicalize(e, e, e);
  }
  std::vector<int> comp(static_cast<size_t>(bm) * bm, -1);
  for (int b1 = 0; b1 < bm; ++b1)
    for (int b2 = 0; b2 < bm; ++b2) {
      if (cc.prov_[b1].dst != cc.prov_[b2].src) continue;
      comp[static_cast<size_t>(b1) * bm + b2] =
          cc.compose_triples(b1, cc.prov_[b1], cc.prov_[b2], nullptr);
    }
  cc.b_ = FinCat(u.name() + ".B", n, std::move(mor), std::move(ident),
                 std::move(comp));
  return cc;
}

BMorphism threefold_factorize(const ConjugateCategory& c, int b_id) {
  return c.provenance(b_id);
}

bool is_regular(const ConjugateCategory& c, int b_id) {
  return c.is_regular(b_id);
}

RegularBimodule regular_bimodule(const ConjugateCategory& c) {
  const FinCat& b = c.category();
  RegularBimodule out;
  out.objects = b.object_count();
  out.elems.assign(out.objects, std::vector<std::vector<int>>(out.objects));
  out.index_of.assign(b.morphism_count(), 0);
  for (int m = 0; m < b.morphism_count(); ++m) {
    if (!c.is_regular(m)) continue;
    auto& cell = out.elems[b.dom(m)][b.cod(m)];
    cell.push_back(m);
    out.index_of[m] = static_cast<int>(cell.size());
  }
  return out;
}

int RegularBimodule::left_act(const ConjugateCategory& cc, int beta, int a,
                              int k) const {
  if (k == 0) return 0;
  int sigma = elems[a][cc.category().dom(beta)][k - 1];
  return index_of[cc.category().compose(sigma, beta)];
}

int RegularBimodule::right_act(const ConjugateCategory& cc, int alpha_u, int b,
                               int k) const {
  if (k == 0) return 0;
  int emb = cc.embed_a(alpha_u);
  if (emb < 0) throw std::invalid_argument("right action by a non-A morphism");
  int a = cc.category().cod(emb);
  int sigma = elems[a][b][k - 1];
  return index_of[cc.category().compose(emb, sigma)];
}

int FreeDecomp::total() const {
  int t = 0;
  for (const auto& s : summand_elems) t += static_cast<int>(s.size());
  return t;
}

FreeDecomp decompose_free(const ConjugateCategory& cc, int a, int b) {
  const FinCat& u = cc.factorization().U();
  FreeDecomp d;
  d.a = a;
  d.b = b;
  for (const CommaObject& e : cc.skel(b).elements) {
    std::vector<int> cell;
    for (int m : u.hom(a, e.dom))
      if (cc.factorization().A.contains(m)) cell.push_back(m);
    d.summand_elems.push_back(std::move(cell));
  }
  return d;
}

WedgeElem FreeDecomp::forward(const ConjugateCategory& cc,
                              int regular_b_id) const {
  const BMorphism& t = cc.provenance(regular_b_id);
  int summand = cc.skel(b).index_of_rep(t.img);
  int apart = cc.regular_a_part(regular_b_id);
  const auto& cell = summand_elems[summand];
  for (size_t k = 0; k < cell.size(); ++k)
    if (cell[k] == apart) return {summand, static_cast<int>(k) + 1};
  throw std::logic_error("free decomposition misses an A-part");
}

int FreeDecomp::backward(const ConjugateCategory& cc, int summand,
                         int a_mor) const {
  const FinCat& u = cc.factorization().U();
  return cc.canonicalize(u.identity(a), a_mor,
                         cc.skel(b).elements[summand].map);
}

WedgeElem beta_star_free(const ConjugateCategory& cc, int beta, int a,
                         const FreeDecomp& at_b, WedgeElem x) {
  if (x.basepoint()) return {};
  const FinCat& b = cc.category();
  int alpha = at_b.summand_elems[x.summand][x.elem - 1];
  int i = cc.skel(at_b.b).elements[x.summand].map;
  int m = b.compose(b.compose(cc.embed_a(alpha), cc.embed_i(i)), beta);
  if (!cc.is_regular(m)) return {};
  int c = b.cod(beta);
  const BMorphism& t = cc.provenance(m);
  int summand = cc.skel(c).index_of_rep(t.img);
  int apart = cc.regular_a_part(m);
  const FinCat& u = cc.factorization().U();
  int pos = 0;
  for (int cand : u.hom(a, u.dom(t.img))) {
    if (!cc.factorization().A.contains(cand)) continue;
    ++pos;
    if (cand == apart) return {summand, pos};
  }
  throw std::logic_error("wedge action misses its target summand");
}

int GenDecomp::total() const {
  int t = 0;
  for (const auto& s : summand_elems) t += static_cast<int>(s.size());
  return t;
}

GenDecomp decompose_gen(const ConjugateCategory& cc, int b, int c) {
  GenDecomp d;
  d.b = b;
  d.c = c;
  for (const CommaObject& e : cc.skel(b).elements)
    d.summand_elems.push_back(cc.regular_morphisms(e.dom, c));
  return d;
}

WedgeElem GenDecomp::forward(const ConjugateCategory& cc, int b_id) const {
  const BMorphism& t = cc.provenance(b_id);
  int summand = cc.skel(b).index_of_rep(t.cok);
  int reg = cc.regular_part(b_id);
  const auto& cell = summand_elems[summand];
  for (size_t k = 0; k < cell.size(); ++k)
    if (cell[k] == reg) return {summand, static_cast<int>(k) + 1};
  throw std::logic_error("generator decomposition misses a regular part");
}

int GenDecomp::backward(const ConjugateCategory& cc, int summand,
                        int regular_b_id) const {
  int istar = cc.embed_iop(cc.skel(b).elements[summand].map);
  return cc.category().compose(istar, regular_b_id);
}

WedgeElem beta_star_gen(const ConjugateCategory& cc, int beta, int c,
                        const GenDecomp& at_b, WedgeElem x) {
  if (x.basepoint()) return {};
  const FinCat& bcat = cc.category();
  const FinCat& u = cc.factorization().U();
  int a = bcat.dom(beta);
  const BMorphism& t = cc.provenance(beta);  // (i1, beta1, j1)
  int i = cc.skel(at_b.b).elements[x.summand].map;
  int gamma = at_b.summand_elems[x.summand][x.elem - 1];

  // i*∘j1∘beta1, then its cokernel i2 and regular part beta2.
  int m = bcat.compose(bcat.compose(cc.embed_a(t.mid), cc.embed_i(t.img)),
                       cc.embed_iop(i));
  const BMorphism& tm = cc.provenance(m);
  int beta2 = cc.regular_part(m);
  int j_raw = u.compose(tm.cok, t.cok);  // i1∘i2
  SkeletalForm sf = skeletalize(cc.skel(a), j_raw);
  int rho_inv = u.inverse(sf.iso);
  int e1 = bcat.compose(cc.embed_a(rho_inv), beta2);
  int e2 = bcat.compose(e1, gamma);
  int pos = cc.regular_index(u.dom(cc.skel(a).elements[sf.rep_index].map), c, e2);
  if (pos == 0) throw std::logic_error("contravariant wedge action left the regular set");
  return {sf.rep_index, pos};
}

}  // namespace catmor
