#include "catmor/morita.hpp"

#include <sstream>
#include <stdexcept>

namespace catmor {

ValidationReport BasedSetFunctor::validate() const {
  ValidationReport rep;
  const FinCat& c = *base;
  if (static_cast<int>(size.size()) != c.object_count() ||
      static_cast<int>(act.size()) != c.morphism_count()) {
    rep.malformed.push_back({"shape", "table sizes disagree with the base"});
    return rep;
  }
  auto src_of = [&](int f) { return covariant ? c.dom(f) : c.cod(f); };
  auto dst_of = [&](int f) { return covariant ? c.cod(f) : c.dom(f); };
  for (int f = 0; f < c.morphism_count(); ++f) {
    if (static_cast<int>(act[f].size()) != size[src_of(f)]) {
      rep.malformed.push_back(
          {"shape", "action of morphism " + std::to_string(f)});
      continue;
    }
    for (int v : act[f])
      if (v < 0 || v > size[dst_of(f)])
        rep.malformed.push_back(
            {"shape", "action of morphism " + std::to_string(f) +
                          " leaves the target set"});
  }
  if (!rep.malformed.empty()) return rep;
  for (int a = 0; a < c.object_count(); ++a) {
    const auto& m = act[c.identity(a)];
    for (int e = 1; e <= size[a]; ++e)
      if (m[e - 1] != e)
        rep.violations.push_back(
            {"functoriality", "identity of " + std::to_string(a)});
  }
  auto apply = [&](int f, int e) { return e == 0 ? 0 : act[f][e - 1]; };
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < c.morphism_count(); ++g) {
      if (!c.composable(f, g)) continue;
      int h = c.raw_comp(f, g);
      if (h < 0) continue;
      int n = size[src_of(h)];
      for (int e = 1; e <= n; ++e) {
        int lhs = apply(h, e);
        int rhs = covariant ? apply(g, apply(f, e)) : apply(f, apply(g, e));
        if (lhs != rhs) {
          rep.violations.push_back(
              {"functoriality", "pair (" + std::to_string(f) + "," +
                                    std::to_string(g) + ")"});
          break;
        }
      }
    }
  return rep;
}

QMat EndSpace::project(int obj, int elem) const {
  int off = offset[obj][elem - 1];
  return basis.submatrix(off, off + obj_dims[obj], 0, dim);
}

QMat EndSpace::coords_of(const QMat& vectors) const {
  return vectors.select_rows(coords);
}

bool EndSpace::contains(const QMat& vectors) const {
  return basis * coords_of(vectors) == vectors;
}

EndSpace end_hom(const BasedSetFunctor& p, const Diagram& g) {
  if (p.covariant) throw std::invalid_argument("end_hom wants a contravariant P");
  ValidationReport pv = p.validate();
  if (!pv.ok()) throw std::invalid_argument("end_hom: P is not functorial");
  const FinCat& c = g.cat();
  EndSpace e;
  e.obj_dims = g.dims;
  e.offset.resize(c.object_count());
  for (int a = 0; a < c.object_count(); ++a)
    for (int k = 1; k <= p.size[a]; ++k) {
      e.offset[a].push_back(e.total);
      e.total += g.dims[a];
    }

  // Constraint rows for a generating set of morphisms, streamed sparsely:
  // for f: a -> a' and a non-basepoint element q over a', the component at
  // P(f)(q) over a equals G(f) applied to the component at q over a'.
  SpanEchelon span(e.total);
  for (int f : generating_morphisms(c)) {
    int a = c.dom(f), a2 = c.cod(f);
    for (int q = 1; q <= p.size[a2]; ++q) {
      int t = p.act[f][q - 1];
      for (int i = 0; i < g.dims[a]; ++i) {
        std::map<int, Rat> entries;
        if (t >= 1) entries[e.offset[a][t - 1] + i] += 1;
        for (int j = 0; j < g.dims[a2]; ++j) {
          const Rat& gv = g.act[f].at(i, j);
          if (rat_sgn(gv) != 0) entries[e.offset[a2][q - 1] + j] -= gv;
        }
        SpanEchelon::SparseVec row;
        for (auto& [idx, val] : entries)
          if (rat_sgn(val) != 0) row.emplace_back(idx, std::move(val));
        span.add(std::move(row));
      }
    }
  }
  SubSpace s = span.kernel();
  e.dim = s.dim;
  e.basis = std::move(s.basis);
  e.coords = std::move(s.coords);
  return e;
}

CoendSpace coend_tensor(const Diagram& f, const BasedSetFunctor& q) {
  if (!q.covariant) throw std::invalid_argument("coend_tensor wants a covariant Q");
  ValidationReport qv = q.validate();
  if (!qv.ok()) throw std::invalid_argument("coend_tensor: Q is not functorial");
  const FinCat& c = f.cat();
  CoendSpace ce;
  ce.offset.resize(c.object_count());
  for (int z = 0; z < c.object_count(); ++z)
    for (int k = 1; k <= q.size[z]; ++k) {
      ce.offset[z].push_back(ce.total);
      ce.total += f.dims[z];
    }

  // Relation columns for a generating set: v ⊗ Q(b)(e) - F(b)(v) ⊗ e,
  // streamed sparsely into the span.
  SpanEchelon span(ce.total);
  for (int b : generating_morphisms(c)) {
    int x = c.dom(b), y = c.cod(b);
    for (int eidx = 1; eidx <= q.size[x]; ++eidx) {
      int t = q.act[b][eidx - 1];
      for (int v = 0; v < f.dims[y]; ++v) {
        std::map<int, Rat> entries;
        if (t >= 1) entries[ce.offset[y][t - 1] + v] += 1;
        for (int r = 0; r < f.dims[x]; ++r) {
          const Rat& fv = f.act[b].at(r, v);
          if (rat_sgn(fv) != 0) entries[ce.offset[x][eidx - 1] + r] -= fv;
        }
        SpanEchelon::SparseVec col;
        for (auto& [idx, val] : entries)
          if (rat_sgn(val) != 0) col.emplace_back(idx, std::move(val));
        span.add(std::move(col));
      }
    }
  }
  QuotientSpace qs = span.quotient();
  ce.dim = qs.dim;
  ce.proj = std::move(qs.proj);
  ce.section = std::move(qs.section);
  return ce;
}

AdjunctionContext::AdjunctionContext(ConjugateCategory cc) : cc_(std::move(cc)) {
  cat_a_ = subcategory_as_fincat(cc_.factorization().A,
                                 cc_.factorization().U().name() + ".A",
                                 &a_to_u_, &u_to_a_);
  bim_ = regular_bimodule(cc_);
  gens_a_ = generating_morphisms(cat_a_);
  gens_b_ = generating_morphisms(catB());
}

BasedSetFunctor AdjunctionContext::bimodule_row(int a) const {
  BasedSetFunctor q;
  q.base = &catB();
  q.covariant = true;
  for (int b = 0; b < catB().object_count(); ++b) q.size.push_back(bim_.size(a, b));
  for (int beta = 0; beta < catB().morphism_count(); ++beta) {
    int x = catB().dom(beta);
    std::vector<int> m(bim_.size(a, x));
    for (int k = 1; k <= bim_.size(a, x); ++k)
      m[k - 1] = bim_.left_act(cc_, beta, a, k);
    q.act.push_back(std::move(m));
  }
  return q;
}

BasedSetFunctor AdjunctionContext::bimodule_col(int b) const {
  BasedSetFunctor p;
  p.base = &cat_a_;
  p.covariant = false;
  for (int a = 0; a < cat_a_.object_count(); ++a) p.size.push_back(bim_.size(a, b));
  for (int alpha = 0; alpha < cat_a_.morphism_count(); ++alpha) {
    int a2 = cat_a_.cod(alpha);
    std::vector<int> m(bim_.size(a2, b));
    for (int k = 1; k <= bim_.size(a2, b); ++k)
      m[k - 1] = bim_.right_act(cc_, a_to_u_[alpha], b, k);
    p.act.push_back(std::move(m));
  }
  return p;
}

LResult apply_l_full(const AdjunctionContext& ctx, const Diagram& f) {
  const FinCat& a_cat = ctx.catA();
  const FinCat& b_cat = ctx.catB();
  const RegularBimodule& bim = ctx.bimodule();
  LResult r;
  r.out.base = &a_cat;
  for (int a = 0; a < a_cat.object_count(); ++a) {
    r.co.push_back(coend_tensor(f, ctx.bimodule_row(a)));
    r.out.dims.push_back(r.co.back().dim);
  }
  for (int alpha = 0; alpha < a_cat.morphism_count(); ++alpha) {
    int ap = a_cat.dom(alpha), a = a_cat.cod(alpha);
    int emb = ctx.conj().embed_a(ctx.a_to_u(alpha));
    // Reindex the section of the coend at a along precomposition, then
    // project into the coend at a'.
    QMat w(r.co[ap].total, r.co[a].dim);
    for (int b = 0; b < b_cat.object_count(); ++b)
      for (int k = 1; k <= bim.size(a, b); ++k) {
        int sigma = bim.elem(a, b, k);
        int idx = bim.index_of[b_cat.compose(emb, sigma)];
        if (idx == 0) continue;
        int src_off = r.co[a].offset[b][k - 1];
        int dst_off = r.co[ap].offset[b][idx - 1];
        for (int v = 0; v < f.dims[b]; ++v)
          for (int ccol = 0; ccol < r.co[a].dim; ++ccol)
            w.at(dst_off + v, ccol) += r.co[a].section.at(src_off + v, ccol);
      }
    r.out.act.push_back(r.co[ap].proj * w);
  }
  return r;
}

RResult apply_r_full(const AdjunctionContext& ctx, const Diagram& g) {
  const FinCat& b_cat = ctx.catB();
  const RegularBimodule& bim = ctx.bimodule();
  RResult r;
  r.out.base = &b_cat;
  for (int b = 0; b < b_cat.object_count(); ++b) {
    r.end.push_back(end_hom(ctx.bimodule_col(b), g));
    r.out.dims.push_back(r.end.back().dim);
  }
  for (int beta = 0; beta < b_cat.morphism_count(); ++beta) {
    int b = b_cat.dom(beta), c = b_cat.cod(beta);
    QMat w(r.end[b].total, r.end[c].dim);
    for (int a = 0; a < b_cat.object_count(); ++a)
      for (int k = 1; k <= bim.size(a, b); ++k) {
        int sigma = bim.elem(a, b, k);
        int idx = bim.index_of[b_cat.compose(sigma, beta)];
        if (idx == 0) continue;
        int dst_off = r.end[b].offset[a][k - 1];
        int src_off = r.end[c].offset[a][idx - 1];
        for (int v = 0; v < g.dims[a]; ++v)
          for (int ccol = 0; ccol < r.end[c].dim; ++ccol)
            w.at(dst_off + v, ccol) = r.end[c].basis.at(src_off + v, ccol);
      }
    r.out.act.push_back(r.end[b].coords_of(w));
  }
  return r;
}

Diagram apply_l(const AdjunctionContext& ctx, const Diagram& f) {
  return apply_l_full(ctx, f).out;
}

Diagram apply_r(const AdjunctionContext& ctx, const Diagram& g) {
  return apply_r_full(ctx, g).out;
}

namespace {

// Components of the unit F -> R(L F) in the coend/end bases: the element
// over (a, sigma) of the end is the class of v ⊗ sigma in L F(a).
std::vector<QMat> eta_components(const AdjunctionContext& ctx, const Diagram& f,
                                 const LResult& lf, const RResult& rlf) {
  const FinCat& b_cat = ctx.catB();
  const RegularBimodule& bim = ctx.bimodule();
  std::vector<QMat> comps;
  for (int b = 0; b < b_cat.object_count(); ++b) {
    QMat stacked(rlf.end[b].total, f.dims[b]);
    for (int a = 0; a < b_cat.object_count(); ++a)
      for (int k = 1; k <= bim.size(a, b); ++k) {
        int row0 = rlf.end[b].offset[a][k - 1];
        int col0 = lf.co[a].offset[b][k - 1];
        for (int i = 0; i < lf.co[a].dim; ++i)
          for (int j = 0; j < f.dims[b]; ++j)
            stacked.at(row0 + i, j) = lf.co[a].proj.at(i, col0 + j);
      }
    comps.push_back(rlf.end[b].coords_of(stacked));
  }
  return comps;
}

// Components of the counit L(R G) -> G: the generator x ⊗ sigma of the
// coend evaluates the end element x at (a, sigma).
std::vector<QMat> eps_components(const AdjunctionContext& ctx, const Diagram& g,
                                 const RResult& rg, const LResult& lrg) {
  const FinCat& b_cat = ctx.catB();
  const RegularBimodule& bim = ctx.bimodule();
  std::vector<QMat> comps;
  for (int a = 0; a < b_cat.object_count(); ++a) {
    QMat assembled(g.dims[a], lrg.co[a].total);
    for (int b = 0; b < b_cat.object_count(); ++b)
      for (int k = 1; k <= bim.size(a, b); ++k) {
        int col0 = lrg.co[a].offset[b][k - 1];
        int row0 = rg.end[b].offset[a][k - 1];
        for (int i = 0; i < g.dims[a]; ++i)
          for (int j = 0; j < rg.end[b].dim; ++j)
            assembled.at(i, col0 + j) = rg.end[b].basis.at(row0 + i, j);
      }
    comps.push_back(assembled * lrg.co[a].section);
  }
  return comps;
}

}  // namespace

UnitBundle unit(const AdjunctionContext& ctx, const Diagram& f) {
  UnitBundle ub;
  ub.lf = apply_l_full(ctx, f);
  ub.rlf = apply_r_full(ctx, ub.lf.out);
  ub.eta.src = f;
  ub.eta.dst = ub.rlf.out;
  ub.eta.comp = eta_components(ctx, f, ub.lf, ub.rlf);
  return ub;
}

CounitBundle counit(const AdjunctionContext& ctx, const Diagram& g) {
  CounitBundle cb;
  cb.rg = apply_r_full(ctx, g);
  cb.lrg = apply_l_full(ctx, cb.rg.out);
  cb.eps.src = cb.lrg.out;
  cb.eps.dst = g;
  cb.eps.comp = eps_components(ctx, g, cb.rg, cb.lrg);
  return cb;
}

NatTrans map_l(const AdjunctionContext& ctx, const NatTrans& t,
               const LResult& lsrc, const LResult& ldst) {
  const FinCat& a_cat = ctx.catA();
  const FinCat& b_cat = ctx.catB();
  const RegularBimodule& bim = ctx.bimodule();
  NatTrans out;
  out.src = lsrc.out;
  out.dst = ldst.out;
  for (int a = 0; a < a_cat.object_count(); ++a) {
    QMat w(ldst.co[a].total, lsrc.co[a].dim);
    for (int b = 0; b < b_cat.object_count(); ++b)
      for (int k = 1; k <= bim.size(a, b); ++k) {
        int so = lsrc.co[a].offset[b][k - 1];
        int dof = ldst.co[a].offset[b][k - 1];
        QMat blk = t.comp[b] * lsrc.co[a].section.submatrix(
                                   so, so + t.src.dims[b], 0, lsrc.co[a].dim);
        w.set_block(dof, 0, blk);
      }
    out.comp.push_back(ldst.co[a].proj * w);
  }
  return out;
}

NatTrans map_r(const AdjunctionContext& ctx, const NatTrans& t,
               const RResult& rsrc, const RResult& rdst) {
  const FinCat& b_cat = ctx.catB();
  const RegularBimodule& bim = ctx.bimodule();
  NatTrans out;
  out.src = rsrc.out;
  out.dst = rdst.out;
  for (int b = 0; b < b_cat.object_count(); ++b) {
    QMat w(rdst.end[b].total, rsrc.end[b].dim);
    for (int a = 0; a < b_cat.object_count(); ++a)
      for (int k = 1; k <= bim.size(a, b); ++k) {
        int so = rsrc.end[b].offset[a][k - 1];
        int dof = rdst.end[b].offset[a][k - 1];
        QMat blk = t.comp[a] * rsrc.end[b].basis.submatrix(
                                   so, so + t.src.dims[a], 0, rsrc.end[b].dim);
        w.set_block(dof, 0, blk);
      }
    out.comp.push_back(rdst.end[b].coords_of(w));
  }
  return out;
}

namespace {

bool triangles_from(const AdjunctionContext& ctx, const UnitBundle& ub,
                    const CounitBundle& cb) {
  // epsilon at L F composed with L of eta is the identity of L F.
  LResult lrlf = apply_l_full(ctx, ub.rlf.out);
  NatTrans leta = map_l(ctx, ub.eta, ub.lf, lrlf);
  std::vector<QMat> eps_lf = eps_components(ctx, ub.lf.out, ub.rlf, lrlf);
  for (int a = 0; a < ctx.catA().object_count(); ++a)
    if (!(eps_lf[a] * leta.comp[a]).is_identity()) return false;

  // R of epsilon composed with eta at R G is the identity of R G.
  RResult rlrg = apply_r_full(ctx, cb.lrg.out);
  NatTrans reps = map_r(ctx, cb.eps, rlrg, cb.rg);
  std::vector<QMat> eta_rg = eta_components(ctx, cb.rg.out, cb.lrg, rlrg);
  for (int b = 0; b < ctx.catB().object_count(); ++b)
    if (!(reps.comp[b] * eta_rg[b]).is_identity()) return false;
  return true;
}

}  // namespace

bool triangle_identities_hold(const AdjunctionContext& ctx, const Diagram& f,
                              const Diagram& g) {
  return triangles_from(ctx, unit(ctx, f), counit(ctx, g));
}

RDecomp r_decomposition(const AdjunctionContext& ctx, const RResult& rg,
                        const Diagram& g, int b) {
  const ConjugateCategory& cc = ctx.conj();
  const RegularBimodule& bim = ctx.bimodule();
  RDecomp d;
  int rows = 0;
  for (const CommaObject& e : cc.skel(b).elements) {
    d.block_obj.push_back(e.dom);
    d.block_dim.push_back(g.dims[e.dom]);
    rows += g.dims[e.dom];
  }
  d.iso = QMat(rows, rg.end[b].dim);
  int r0 = 0;
  for (const CommaObject& e : cc.skel(b).elements) {
    int gamma = cc.embed_i(e.map);
    int k = bim.index_of[gamma];
    if (k == 0) throw std::logic_error("embedded indexing map is singular");
    d.iso.set_block(r0, 0, rg.end[b].project(e.dom, k));
    r0 += g.dims[e.dom];
  }
  if (d.iso.rows() != d.iso.cols() || !is_isomorphism(d.iso))
    throw std::logic_error("product decomposition is not an isomorphism");
  d.inv = inverse(d.iso);
  return d;
}

QMat r_dictated_action(const AdjunctionContext& ctx, const Diagram& g,
                       int beta) {
  const ConjugateCategory& cc = ctx.conj();
  const FinCat& b_cat = ctx.catB();
  int b = b_cat.dom(beta), c = b_cat.cod(beta);
  const auto& skb = cc.skel(b).elements;
  const auto& skc = cc.skel(c).elements;
  std::vector<std::vector<QMat>> grid(skb.size());
  for (size_t i = 0; i < skb.size(); ++i)
    for (size_t j = 0; j < skc.size(); ++j)
      grid[i].push_back(QMat(g.dims[skb[i].dom], g.dims[skc[j].dom]));
  for (size_t i = 0; i < skb.size(); ++i) {
    int m = b_cat.compose(cc.embed_i(skb[i].map), beta);
    if (!cc.is_regular(m)) continue;
    int j = cc.skel(c).index_of_rep(cc.provenance(m).img);
    int alpha = cc.regular_a_part(m);
    grid[i][j] = g.act[ctx.u_to_a(alpha)];
  }
  return block_assemble(grid);
}

std::vector<TriangularityCell> unit_triangularity(const AdjunctionContext& ctx,
                                                  int b, int dim) {
  const ConjugateCategory& cc = ctx.conj();
  const FinCat& b_cat = ctx.catB();
  const RegularBimodule& bim = ctx.bimodule();
  Diagram f = free_functor(b_cat, b, dim);
  UnitBundle ub = unit(ctx, f);

  // Identification of L F(x) with dim copies of U(x,b): the class of the
  // identity generator of F(b) tensored with a regular map.
  std::vector<QMat> lam, lam_inv;
  int idb_pos = -1;
  {
    const auto& hombb = b_cat.hom(b, b);
    for (size_t h = 0; h < hombb.size(); ++h)
      if (hombb[h] == b_cat.identity(b)) idb_pos = static_cast<int>(h);
  }
  for (int x = 0; x < b_cat.object_count(); ++x) {
    int nreg = bim.size(x, b);
    QMat l(ub.lf.out.dims[x], dim * nreg);
    for (int k = 1; k <= nreg; ++k)
      for (int c0 = 0; c0 < dim; ++c0) {
        int src_col = ub.lf.co[x].offset[b][k - 1] + idb_pos * dim + c0;
        for (int r = 0; r < l.rows(); ++r)
          l.at(r, (k - 1) * dim + c0) = ub.lf.co[x].proj.at(r, src_col);
      }
    if (l.rows() != l.cols() || !is_isomorphism(l))
      throw std::logic_error("free coend identification is not invertible");
    lam_inv.push_back(inverse(l));
    lam.push_back(std::move(l));
  }

  std::vector<TriangularityCell> cells;
  for (int a = 0; a < b_cat.object_count(); ++a) {
    TriangularityCell cell;
    cell.b = b;
    cell.a = a;
    const PosetOnSkeleton& sk = cc.skel(a);
    std::vector<int> order = linear_extension(sk);
    cell.blocks = static_cast<int>(order.size());

    // Wedge inclusion per skeleton element: tau = gamma∘i* indexes F(a).
    const auto& homab = b_cat.hom(a, b);
    auto pos_in_homab = [&](int m) {
      for (size_t h = 0; h < homab.size(); ++h)
        if (homab[h] == m) return static_cast<int>(h);
      throw std::logic_error("morphism missing from hom set");
    };
    std::vector<QMat> incl;
    std::vector<unsigned char> hit(homab.size(), 0);
    for (const CommaObject& e : sk.elements) {
      int nreg = bim.size(e.dom, b);
      QMat m(f.dims[a], dim * nreg);
      int istar = cc.embed_iop(e.map);
      for (int k = 1; k <= nreg; ++k) {
        int tau = b_cat.compose(istar, bim.elem(e.dom, b, k));
        int p = pos_in_homab(tau);
        if (hit[p]) throw std::logic_error("wedge covering hits a morphism twice");
        hit[p] = 1;
        for (int c0 = 0; c0 < dim; ++c0)
          m.at(p * dim + c0, (k - 1) * dim + c0) = 1;
      }
      incl.push_back(std::move(m));
    }
    for (unsigned char h : hit)
      if (!h) throw std::logic_error("wedge covering misses a morphism");

    bool ok = true;
    std::string detail;
    for (size_t p = 0; p < order.size() && ok; ++p)
      for (size_t q = 0; q < order.size() && ok; ++q) {
        const CommaObject& ej = sk.elements[order[q]];
        int kj = bim.index_of[cc.embed_i(ej.map)];
        QMat proj_j = ub.rlf.end[a].project(ej.dom, kj);
        QMat blk = lam_inv[ej.dom] * (proj_j * (ub.eta.comp[a] * incl[order[p]]));
        if (p == q && !blk.is_identity()) {
          ok = false;
          detail = "diagonal block " + std::to_string(p) + " is not the identity";
        }
        if (q > p && !blk.is_zero()) {
          ok = false;
          detail = "block (" + std::to_string(p) + "," + std::to_string(q) +
                   ") above the diagonal is nonzero";
        }
      }
    cell.ok = ok;
    cell.detail = detail;
    cells.push_back(cell);
  }
  return cells;
}

std::vector<TrialResult> check_equivalence(const AdjunctionContext& ctx,
                                           const EquivalenceOptions& opt) {
  std::vector<TrialResult> results(opt.trials);
  auto run_trial = [&](int t) {
    SplitMix64 rng = SplitMix64::substream(opt.seed, t);
    std::uint64_t seed_f = rng.next(), seed_g = rng.next();
    std::ostringstream line;
    bool pass = true;
    auto record = [&](const char* what, bool ok) {
      line << " " << what << "=" << (ok ? "ok" : "FAIL");
      pass = pass && ok;
    };
    Diagram f = random_diagram(ctx.catB(), seed_f, opt.max_dim);
    Diagram g = random_diagram(ctx.catA(), seed_g, opt.max_dim);

    UnitBundle ub = unit(ctx, f);
    record("unit-natural", ub.eta.natural());
    record("unit-iso", ub.eta.componentwise_iso());
    CounitBundle cb = counit(ctx, g);
    record("counit-natural", cb.eps.natural());
    record("counit-iso", cb.eps.componentwise_iso());
    record("triangles", triangles_from(ctx, ub, cb));

    Diagram g1 = random_diagram(ctx.catA(), rng.next(), opt.max_dim);
    NatTrans tau;
    bool iso_case = t % 2 == 0;
    if (iso_case) {
      tau = random_iso_nat_trans(g1, rng);
    } else {
      Diagram g2 = random_diagram(ctx.catA(), rng.next(), opt.max_dim);
      tau = random_nat_trans(g1, g2, rng);
    }
    RResult rx = apply_r_full(ctx, tau.src);
    RResult ry = apply_r_full(ctx, tau.dst);
    NatTrans rtau = map_r(ctx, tau, rx, ry);
    bool reflect = rtau.natural() &&
                   tau.componentwise_iso() == rtau.componentwise_iso();
    record(iso_case ? "reflect-iso" : "reflect-sampled", reflect);

    TrialResult r;
    r.index = t;
    r.pass = pass;
    std::ostringstream full;
    full << (pass ? "PASS" : "FAIL") << " trial " << t << " seeds " << seed_f
         << "/" << seed_g << line.str();
    r.line = full.str();
    results[t] = std::move(r);
  };
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < opt.trials; ++t) run_trial(t);
#else
  for (int t = 0; t < opt.trials; ++t) run_trial(t);
#endif
  return results;
}

}  // namespace catmor
