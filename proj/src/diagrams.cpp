#include "catmor/diagrams.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "catmor/category_io.hpp"

namespace catmor {

ValidationReport Diagram::validate() const {
  ValidationReport rep;
  const FinCat& c = cat();
  if (static_cast<int>(dims.size()) != c.object_count() ||
      static_cast<int>(act.size()) != c.morphism_count()) {
    rep.malformed.push_back({"shape", "table sizes disagree with the base"});
    return rep;
  }
  for (int f = 0; f < c.morphism_count(); ++f)
    if (act[f].rows() != dims[c.dom(f)] || act[f].cols() != dims[c.cod(f)])
      rep.malformed.push_back(
          {"shape", "matrix of morphism " + std::to_string(f) + " is " +
                        std::to_string(act[f].rows()) + "x" +
                        std::to_string(act[f].cols())});
  if (!rep.malformed.empty()) return rep;
  for (int a = 0; a < c.object_count(); ++a)
    if (!act[c.identity(a)].is_identity())
      rep.violations.push_back(
          {"functoriality", "identity of object " + std::to_string(a) +
                                " does not act as the identity matrix"});
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < c.morphism_count(); ++g) {
      if (!c.composable(f, g)) continue;
      int h = c.raw_comp(f, g);
      if (h < 0) continue;
      if (act[h] != act[f] * act[g])
        rep.violations.push_back(
            {"functoriality", "composable pair (" + std::to_string(f) + "," +
                                  std::to_string(g) + ")"});
    }
  return rep;
}

Diagram zero_diagram(const FinCat& base) {
  Diagram d;
  d.base = &base;
  d.dims.assign(base.object_count(), 0);
  for (int f = 0; f < base.morphism_count(); ++f) d.act.emplace_back(0, 0);
  return d;
}

Diagram free_functor(const FinCat& base, int d, int n) {
  Diagram out;
  out.base = &base;
  out.dims.resize(base.object_count());
  for (int x = 0; x < base.object_count(); ++x)
    out.dims[x] = n * static_cast<int>(base.hom(x, d).size());
  out.act.resize(base.morphism_count());
  for (int f = 0; f < base.morphism_count(); ++f) {
    int a = base.dom(f), b = base.cod(f);
    const auto& hb = base.hom(b, d);
    const auto& ha = base.hom(a, d);
    QMat m(out.dims[a], out.dims[b]);
    for (size_t col = 0; col < hb.size(); ++col) {
      int tf = base.raw_comp(f, hb[col]);  // precomposition with f
      int row = -1;
      for (size_t r = 0; r < ha.size(); ++r)
        if (ha[r] == tf) {
          row = static_cast<int>(r);
          break;
        }
      if (row < 0) throw std::logic_error("free functor: hom set not closed");
      for (int k = 0; k < n; ++k)
        m.at(row * n + k, static_cast<int>(col) * n + k) = 1;
    }
    out.act[f] = std::move(m);
  }
  return out;
}

bool NatTrans::natural() const {
  const FinCat& c = src.cat();
  for (int f = 0; f < c.morphism_count(); ++f)
    if (comp[c.dom(f)] * src.act[f] != dst.act[f] * comp[c.cod(f)])
      return false;
  return true;
}

bool NatTrans::componentwise_iso() const {
  for (const QMat& m : comp)
    if (!is_isomorphism(m)) return false;
  return true;
}

NatTrans identity_nat(const Diagram& d) {
  NatTrans t;
  t.src = d;
  t.dst = d;
  for (int a = 0; a < d.cat().object_count(); ++a)
    t.comp.push_back(QMat::identity(d.dims[a]));
  return t;
}

SubquotientDiagram kernel_objectwise(const NatTrans& t) {
  const FinCat& c = t.src.cat();
  SubquotientDiagram out;
  out.diagram.base = t.src.base;
  std::vector<SubSpace> sub;
  for (int a = 0; a < c.object_count(); ++a) {
    sub.push_back(kernel_with_coords(t.comp[a]));
    out.structure.push_back(sub.back().basis);
    out.diagram.dims.push_back(sub.back().dim);
  }
  for (int f = 0; f < c.morphism_count(); ++f) {
    int a = c.dom(f), b = c.cod(f);
    QMat w = t.src.act[f] * out.structure[b];
    QMat coords = w.select_rows(sub[a].coords);
    if (out.structure[a] * coords != w)
      throw std::logic_error("kernel is not preserved by the action");
    out.diagram.act.push_back(std::move(coords));
  }
  return out;
}

SubquotientDiagram cokernel_objectwise(const NatTrans& t) {
  const FinCat& c = t.dst.cat();
  SubquotientDiagram out;
  out.diagram.base = t.dst.base;
  std::vector<QMat> sections;
  for (int a = 0; a < c.object_count(); ++a) {
    QuotientSpace q = quotient_by_columns(t.comp[a]);
    out.structure.push_back(q.proj);
    sections.push_back(q.section);
    out.diagram.dims.push_back(q.dim);
  }
  for (int f = 0; f < c.morphism_count(); ++f) {
    int a = c.dom(f), b = c.cod(f);
    out.diagram.act.push_back(out.structure[a] * (t.dst.act[f] * sections[b]));
  }
  return out;
}

namespace {

Diagram direct_sum_diagram(const Diagram& a, const Diagram& b) {
  Diagram out;
  out.base = a.base;
  for (int x = 0; x < a.cat().object_count(); ++x)
    out.dims.push_back(a.dims[x] + b.dims[x]);
  for (int f = 0; f < a.cat().morphism_count(); ++f)
    out.act.push_back(direct_sum(a.act[f], b.act[f]));
  return out;
}

struct FreeSum {
  Diagram diagram;
  std::vector<int> gen_obj;  // object of each free summand
  std::vector<int> gen_dim;
  std::vector<int> offset_at(const FinCat& c, int x) const {
    // offset of each summand's block inside diagram at object x
    std::vector<int> off;
    int cur = 0;
    for (size_t k = 0; k < gen_obj.size(); ++k) {
      off.push_back(cur);
      cur += gen_dim[k] * static_cast<int>(c.hom(x, gen_obj[k]).size());
    }
    return off;
  }
};

FreeSum random_free_sum(const FinCat& base, SplitMix64& rng, int max_dim) {
  FreeSum fs;
  fs.diagram = zero_diagram(base);
  int summands = rng.range(1, 2);
  int budget = max_dim;
  for (int k = 0; k < summands; ++k) {
    int n = budget > 0 ? rng.range(0, budget) : 0;
    budget -= n;
    int d = rng.below(base.object_count());
    fs.gen_obj.push_back(d);
    fs.gen_dim.push_back(n);
    fs.diagram = direct_sum_diagram(fs.diagram, free_functor(base, d, n));
  }
  return fs;
}

}  // namespace

Diagram random_diagram(const FinCat& base, std::uint64_t seed, int max_dim) {
  SplitMix64 rng(seed);
  if (base.object_count() == 0) return zero_diagram(base);
  FreeSum f1 = random_free_sum(base, rng, max_dim);
  FreeSum f2 = random_free_sum(base, rng, max_dim);

  // A map out of a sum of frees is a tuple of elements: for each summand
  // (d, n) of the source, a matrix Q^n -> F2(d).
  NatTrans tau;
  tau.src = f1.diagram;
  tau.dst = f2.diagram;
  std::vector<QMat> gen_mats;
  for (size_t k = 0; k < f1.gen_obj.size(); ++k) {
    QMat m(f2.diagram.dims[f1.gen_obj[k]], f1.gen_dim[k]);
    for (int r = 0; r < m.rows(); ++r)
      for (int ccol = 0; ccol < m.cols(); ++ccol)
        m.at(r, ccol) = rng.range(-3, 3);
    gen_mats.push_back(std::move(m));
  }
  for (int x = 0; x < base.object_count(); ++x) {
    QMat comp(f2.diagram.dims[x], f1.diagram.dims[x]);
    std::vector<int> off = f1.offset_at(base, x);
    for (size_t k = 0; k < f1.gen_obj.size(); ++k) {
      const auto& homs = base.hom(x, f1.gen_obj[k]);
      for (size_t h = 0; h < homs.size(); ++h) {
        QMat blk = f2.diagram.act[homs[h]] * gen_mats[k];
        comp.set_block(0, off[k] + static_cast<int>(h) * f1.gen_dim[k], blk);
      }
    }
    tau.comp.push_back(std::move(comp));
  }
  if (!tau.natural()) throw std::logic_error("free-generated map not natural");

  Diagram out = (rng.next() & 1) ? kernel_objectwise(tau).diagram
                                 : cokernel_objectwise(tau).diagram;
  ValidationReport rep = out.validate();
  if (!rep.ok()) throw std::logic_error("random diagram failed validation");
  return out;
}

NatTrans random_nat_trans(const Diagram& src, const Diagram& dst,
                          SplitMix64& rng) {
  const FinCat& c = src.cat();
  std::vector<int> offset(c.object_count());
  int unknowns = 0;
  for (int a = 0; a < c.object_count(); ++a) {
    offset[a] = unknowns;
    unknowns += dst.dims[a] * src.dims[a];
  }
  // Naturality rows for a generating set suffice: constraints compose.
  std::vector<int> gens = generating_morphisms(c);
  int rows = 0;
  for (int f : gens) rows += dst.dims[c.dom(f)] * src.dims[c.cod(f)];
  QMat cons(rows, unknowns);
  int r0 = 0;
  for (int f : gens) {
    int a = c.dom(f), b = c.cod(f);
    // comp[a]*src.act[f] - dst.act[f]*comp[b] = 0, entrywise in (i, j).
    for (int i = 0; i < dst.dims[a]; ++i)
      for (int j = 0; j < src.dims[b]; ++j) {
        int row = r0 + i * src.dims[b] + j;
        for (int k = 0; k < src.dims[a]; ++k)
          cons.at(row, offset[a] + i * src.dims[a] + k) += src.act[f].at(k, j);
        for (int k = 0; k < dst.dims[b]; ++k)
          cons.at(row, offset[b] + k * src.dims[b] + j) -= dst.act[f].at(i, k);
      }
    r0 += dst.dims[a] * src.dims[b];
  }
  LinearAnalysis an = rref_kernel_image(cons, false);
  QMat coeff(an.kernel.cols(), 1);
  for (int k = 0; k < coeff.rows(); ++k) coeff.at(k, 0) = rng.range(-3, 3);
  QMat sol = an.kernel * coeff;

  NatTrans t;
  t.src = src;
  t.dst = dst;
  for (int a = 0; a < c.object_count(); ++a) {
    QMat m(dst.dims[a], src.dims[a]);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        m.at(i, j) = sol.at(offset[a] + i * src.dims[a] + j, 0);
    t.comp.push_back(std::move(m));
  }
  if (!t.natural()) throw std::logic_error("sampled transformation not natural");
  return t;
}

NatTrans random_iso_nat_trans(const Diagram& src, SplitMix64& rng) {
  const FinCat& c = src.cat();
  NatTrans t;
  t.src = src;
  t.dst.base = src.base;
  t.dst.dims = src.dims;
  for (int a = 0; a < c.object_count(); ++a) {
    int n = src.dims[a];
    QMat m;
    do {
      m = QMat(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = rng.range(-2, 2);
    } while (!is_isomorphism(m));
    t.comp.push_back(std::move(m));
  }
  t.dst.act.resize(c.morphism_count());
  for (int f = 0; f < c.morphism_count(); ++f) {
    int a = c.dom(f), b = c.cod(f);
    t.dst.act[f] = t.comp[a] * src.act[f] * inverse(t.comp[b]);
  }
  if (!t.natural()) throw std::logic_error("conjugated diagram not natural");
  return t;
}

DiagramFile parse_diagram(std::istream& in, const FinCat& base) {
  DiagramFile out;
  out.diagram.base = &base;
  out.diagram.dims.assign(base.object_count(), -1);
  out.diagram.act.assign(base.morphism_count(), QMat());
  std::vector<unsigned char> seen(base.morphism_count(), 0);

  std::string raw;
  int lineno = 0;
  bool started = false, ended = false;
  auto next_tokens = [&](std::vector<std::string>& toks) -> bool {
    toks.clear();
    while (std::getline(in, raw)) {
      ++lineno;
      if (auto hash = raw.find('#'); hash != std::string::npos)
        raw = raw.substr(0, hash);
      std::istringstream is(raw);
      std::string t;
      while (is >> t) toks.push_back(t);
      if (!toks.empty()) return true;
    }
    return false;
  };
  std::vector<std::string> toks;
  while (next_tokens(toks)) {
    if (ended) throw ParseError(lineno, "content after 'end'");
    if (!started) {
      if (toks.size() != 4 || toks[0] != "diagram" || toks[2] != "over")
        throw ParseError(lineno, "expected 'diagram <name> over <category>'");
      out.name = toks[1];
      out.over = toks[3];
      started = true;
      continue;
    }
    if (toks[0] == "space") {
      if (toks.size() != 3) throw ParseError(lineno, "expected 'space <obj> <dim>'");
      int obj = std::stoi(toks[1]), dim = std::stoi(toks[2]);
      if (obj < 0 || obj >= base.object_count())
        throw ParseError(lineno, "unknown object " + toks[1]);
      if (dim < 0) throw ParseError(lineno, "negative dimension");
      out.diagram.dims[obj] = dim;
    } else if (toks[0] == "matrix") {
      if (toks.size() != 4)
        throw ParseError(lineno, "expected 'matrix <morphism> <rows> <cols>'");
      int f = std::stoi(toks[1]), r = std::stoi(toks[2]), c = std::stoi(toks[3]);
      if (f < 0 || f >= base.morphism_count())
        throw ParseError(lineno, "unknown morphism " + toks[1]);
      QMat m(r, c);
      for (int i = 0; i < r; ++i) {
        std::vector<std::string> row;
        if (!next_tokens(row)) throw ParseError(lineno, "truncated matrix");
        if (static_cast<int>(row.size()) != c)
          throw ParseError(lineno, "expected " + std::to_string(c) + " entries");
        for (int j = 0; j < c; ++j) {
          try {
            m.at(i, j) = rat_parse(row[j]);
          } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
          }
        }
      }
      out.diagram.act[f] = std::move(m);
      seen[f] = 1;
    } else if (toks[0] == "end") {
      ended = true;
    } else {
      throw ParseError(lineno, "unknown keyword '" + toks[0] + "'");
    }
  }
  if (!started) throw ParseError(lineno, "missing 'diagram' header");
  if (!ended) throw ParseError(lineno, "missing 'end'");
  for (int a = 0; a < base.object_count(); ++a)
    if (out.diagram.dims[a] < 0)
      throw ParseError(lineno, "object " + std::to_string(a) + " has no space line");
  for (int f = 0; f < base.morphism_count(); ++f)
    if (!seen[f])
      throw ParseError(lineno, "morphism " + std::to_string(f) + " has no matrix");
  return out;
}

DiagramFile parse_diagram_file(const std::string& path, const FinCat& base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_diagram(in, base);
}

void write_diagram(std::ostream& os, const std::string& name, const Diagram& d) {
  const FinCat& c = d.cat();
  os << "diagram " << name << " over " << c.name() << "\n";
  for (int a = 0; a < c.object_count(); ++a)
    os << "space " << a << " " << d.dims[a] << "\n";
  for (int f = 0; f < c.morphism_count(); ++f) {
    const QMat& m = d.act[f];
    os << "matrix " << f << " " << m.rows() << " " << m.cols() << "\n";
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = 0; j < m.cols(); ++j)
        os << (j ? " " : "") << rat_str(m.at(i, j));
      os << "\n";
    }
  }
  os << "end\n";
}

std::string diagram_to_string(const std::string& name, const Diagram& d) {
  std::ostringstream os;
  write_diagram(os, name, d);
  return os.str();
}

}  // namespace catmor
