#include "catmor/fincat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace catmor {

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& i : malformed) os << "malformed " << i.code << " " << i.detail << "\n";
  for (const auto& i : violations) os << "axiom " << i.code << " " << i.detail << "\n";
  if (ok()) os << "ok\n";
  return os.str();
}

FinCat::FinCat(std::string name, int objects, std::vector<Morphism> morphisms,
               std::vector<int> identities, std::vector<int> comp_table)
    : name_(std::move(name)),
      objects_(objects),
      mor_(std::move(morphisms)),
      identity_(std::move(identities)),
      comp_(std::move(comp_table)) {
  if (static_cast<int>(identity_.size()) != objects_)
    throw std::invalid_argument("identity table size mismatch");
  if (comp_.size() != mor_.size() * mor_.size())
    throw std::invalid_argument("composition table size mismatch");
  for (const Morphism& m : mor_)
    if (m.dom < 0 || m.dom >= objects_ || m.cod < 0 || m.cod >= objects_)
      throw std::invalid_argument("morphism endpoint out of range");

  hom_.assign(static_cast<size_t>(objects_) * objects_, {});
  for (int f = 0; f < morphism_count(); ++f)
    hom_[static_cast<size_t>(mor_[f].dom) * objects_ + mor_[f].cod].push_back(f);

  inverse_.assign(mor_.size(), -1);
  for (int f = 0; f < morphism_count(); ++f) {
    for (int g : hom(cod(f), dom(f))) {
      if (raw_comp(f, g) == identity_[dom(f)] &&
          raw_comp(g, f) == identity_[cod(f)]) {
        inverse_[f] = g;
        break;
      }
    }
  }
}

bool FinCat::is_identity_morphism(int f) const {
  return dom(f) == cod(f) && identity_[dom(f)] == f;
}

int FinCat::compose(int f, int g) const {
  int h = raw_comp(f, g);
  if (h < 0) throw std::logic_error("composition undefined");
  return h;
}

bool FinCat::operator==(const FinCat& o) const {
  return objects_ == o.objects_ && identity_ == o.identity_ && comp_ == o.comp_ &&
         mor_.size() == o.mor_.size() &&
         std::equal(mor_.begin(), mor_.end(), o.mor_.begin(),
                    [](const Morphism& a, const Morphism& b) {
                      return a.dom == b.dom && a.cod == b.cod;
                    });
}

SubcatMask::SubcatMask(const FinCat& parent, std::vector<int> member_ids,
                       std::string name)
    : parent_(&parent), name_(std::move(name)) {
  member_.assign(parent.morphism_count(), 0);
  for (int id : member_ids) {
    if (id < 0 || id >= parent.morphism_count())
      throw std::invalid_argument("subcategory member id out of range");
    member_[id] = 1;
  }
  for (int f = 0; f < parent.morphism_count(); ++f)
    if (member_[f]) ids_.push_back(f);
}

SubcatMask SubcatMask::full(const FinCat& parent, std::string name) {
  std::vector<int> all(parent.morphism_count());
  for (int f = 0; f < parent.morphism_count(); ++f) all[f] = f;
  return SubcatMask(parent, std::move(all), std::move(name));
}

SubcatMask SubcatMask::identities(const FinCat& parent, std::string name) {
  std::vector<int> ids;
  for (int a = 0; a < parent.object_count(); ++a) ids.push_back(parent.identity(a));
  return SubcatMask(parent, std::move(ids), std::move(name));
}

SubcatMask SubcatMask::isos(const FinCat& parent, std::string name) {
  std::vector<int> ids;
  for (int f = 0; f < parent.morphism_count(); ++f)
    if (parent.is_iso(f)) ids.push_back(f);
  return SubcatMask(parent, std::move(ids), std::move(name));
}

ValidationReport SubcatMask::validate() const {
  ValidationReport rep;
  for (int a = 0; a < parent_->object_count(); ++a)
    if (!contains(parent_->identity(a)))
      rep.violations.push_back(
          {"subcat-identity",
           name_ + " misses identity of object " + std::to_string(a)});
  for (int f : ids_)
    for (int g : ids_) {
      if (!parent_->composable(f, g)) continue;
      int h = parent_->raw_comp(f, g);
      if (h < 0 || !contains(h))
        rep.violations.push_back(
            {"subcat-closure", name_ + " not closed on pair (" +
                                   std::to_string(f) + "," + std::to_string(g) +
                                   ")"});
    }
  return rep;
}

bool SubcatMask::is_iso_in(int f) const {
  if (!contains(f)) return false;
  int g = parent_->inverse(f);
  return g >= 0 && contains(g);
}

bool SubcatMask::operator==(const SubcatMask& o) const {
  return member_ == o.member_;
}

namespace {

std::string mor_str(const FinCat& c, int f) {
  std::ostringstream os;
  os << f << " (" << c.dom(f) << "->" << c.cod(f) << ")";
  return os.str();
}

}  // namespace

ValidationReport validate_axioms(const FinCat& c) {
  ValidationReport rep;
  for (int a = 0; a < c.object_count(); ++a) {
    int e = c.identity(a);
    if (c.dom(e) != a || c.cod(e) != a)
      rep.violations.push_back(
          {"identity", "identity of object " + std::to_string(a) +
                           " has endpoints " + std::to_string(c.dom(e)) + "->" +
                           std::to_string(c.cod(e))});
  }
  for (int f = 0; f < c.morphism_count(); ++f) {
    int el = c.identity(c.dom(f)), er = c.identity(c.cod(f));
    if (c.raw_comp(el, f) != f)
      rep.violations.push_back(
          {"identity", "left unit fails at morphism " + mor_str(c, f)});
    if (c.raw_comp(f, er) != f)
      rep.violations.push_back(
          {"identity", "right unit fails at morphism " + mor_str(c, f)});
  }
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < c.morphism_count(); ++g) {
      int h = c.raw_comp(f, g);
      if (c.composable(f, g)) {
        if (h < 0)
          rep.violations.push_back({"closure", "pair (" + std::to_string(f) +
                                                   "," + std::to_string(g) +
                                                   ") has no composite"});
        else if (c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g))
          rep.violations.push_back(
              {"closure", "composite of (" + std::to_string(f) + "," +
                              std::to_string(g) + ") is " + mor_str(c, h) +
                              ", endpoints disagree"});
      } else if (h >= 0) {
        rep.violations.push_back({"closure", "non-composable pair (" +
                                                 std::to_string(f) + "," +
                                                 std::to_string(g) +
                                                 ") has an entry"});
      }
    }
  for (const auto& t : associativity_violations(c, true))
    rep.violations.push_back(
        {"associativity", "triple (" + std::to_string(t[0]) + "," +
                              std::to_string(t[1]) + "," + std::to_string(t[2]) +
                              ")"});
  return rep;
}

namespace {

inline int safe_comp(const FinCat& c, int f, int g) {
  if (f < 0 || g < 0 || !c.composable(f, g)) return -1;
  return c.raw_comp(f, g);
}

void assoc_scan_row(const FinCat& c, int f,
                    std::vector<std::array<int, 3>>& out) {
  for (int g = 0; g < c.morphism_count(); ++g) {
    if (!c.composable(f, g)) continue;
    int fg = c.raw_comp(f, g);
    for (int h = 0; h < c.morphism_count(); ++h) {
      if (!c.composable(g, h)) continue;
      int lhs = safe_comp(c, fg, h);
      int rhs = safe_comp(c, f, safe_comp(c, g, h));
      if (lhs != rhs) out.push_back({f, g, h});
    }
  }
}

}  // namespace

std::vector<std::array<int, 3>> associativity_violations(const FinCat& c,
                                                         bool parallel) {
  std::vector<std::array<int, 3>> out;
  if (parallel) {
#ifdef _OPENMP
    std::vector<std::vector<std::array<int, 3>>> local(c.morphism_count());
#pragma omp parallel for schedule(dynamic)
    for (int f = 0; f < c.morphism_count(); ++f) assoc_scan_row(c, f, local[f]);
    for (auto& v : local) out.insert(out.end(), v.begin(), v.end());
#else
    for (int f = 0; f < c.morphism_count(); ++f) assoc_scan_row(c, f, out);
#endif
  } else {
    for (int f = 0; f < c.morphism_count(); ++f) assoc_scan_row(c, f, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> generating_morphisms(const FinCat& c) {
  std::vector<unsigned char> reach(c.morphism_count(), 0);
  for (int a = 0; a < c.object_count(); ++a) reach[c.identity(a)] = 1;
  auto close = [&c, &reach] {
    bool grew = true;
    while (grew) {
      grew = false;
      for (int f = 0; f < c.morphism_count(); ++f) {
        if (!reach[f]) continue;
        for (int g = 0; g < c.morphism_count(); ++g) {
          if (!reach[g] || !c.composable(f, g)) continue;
          int h = c.raw_comp(f, g);
          if (h >= 0 && !reach[h]) {
            reach[h] = 1;
            grew = true;
          }
        }
      }
    }
  };
  // Greedy by ascending id: composites of earlier picks never re-enter.
  std::vector<int> gens;
  close();
  for (int f = 0; f < c.morphism_count(); ++f) {
    if (reach[f]) continue;
    gens.push_back(f);
    reach[f] = 1;
    close();
  }
  return gens;
}

namespace {

// Exhaustive universal-property check of a candidate square inside `sub`.
bool universal_in(const SubcatMask& sub, int f, int g, int apex, int to_dom_f,
                  int to_dom_g) {
  const FinCat& c = sub.parent();
  for (int q = 0; q < c.object_count(); ++q) {
    for (int u : c.hom(q, c.dom(f))) {
      if (!sub.contains(u)) continue;
      for (int v : c.hom(q, c.dom(g))) {
        if (!sub.contains(v)) continue;
        if (c.raw_comp(u, f) != c.raw_comp(v, g)) continue;
        int count = 0;
        for (int h : c.hom(q, apex)) {
          if (!sub.contains(h)) continue;
          if (c.raw_comp(h, to_dom_f) == u && c.raw_comp(h, to_dom_g) == v)
            ++count;
        }
        if (count != 1) return false;
      }
    }
  }
  return true;
}

}  // namespace

std::optional<PullbackSquare> pullback(const SubcatMask& sub, int f, int g) {
  const FinCat& c = sub.parent();
  if (!sub.contains(f) || !sub.contains(g))
    throw std::invalid_argument("pullback: morphism outside the subcategory");
  if (c.cod(f) != c.cod(g))
    throw std::invalid_argument("pullback: not a cospan");
  for (int fp = 0; fp < c.morphism_count(); ++fp) {  // leg p -> dom(g)
    if (!sub.contains(fp) || c.cod(fp) != c.dom(g)) continue;
    for (int gp : c.hom(c.dom(fp), c.dom(f))) {  // leg p -> dom(f)
      if (!sub.contains(gp)) continue;
      if (c.raw_comp(gp, f) != c.raw_comp(fp, g)) continue;
      if (universal_in(sub, f, g, c.dom(fp), gp, fp))
        return PullbackSquare{c.dom(fp), gp, fp};
    }
  }
  return std::nullopt;
}

std::vector<PullbackSquare> all_pullbacks(const SubcatMask& sub, int f, int g) {
  const FinCat& c = sub.parent();
  std::vector<PullbackSquare> out;
  for (int fp = 0; fp < c.morphism_count(); ++fp) {
    if (!sub.contains(fp) || c.cod(fp) != c.dom(g)) continue;
    for (int gp : c.hom(c.dom(fp), c.dom(f))) {
      if (!sub.contains(gp)) continue;
      if (c.raw_comp(gp, f) != c.raw_comp(fp, g)) continue;
      if (universal_in(sub, f, g, c.dom(fp), gp, fp))
        out.push_back({c.dom(fp), gp, fp});
    }
  }
  return out;
}

IndexingReport is_indexing_category(const SubcatMask& sub) {
  const FinCat& c = sub.parent();
  for (int f : sub.morphisms())
    if (c.dom(f) == c.cod(f) && !sub.is_iso_in(f))
      return {false, "endomorphism " + std::to_string(f) +
                         " is not an isomorphism"};
  for (int f : sub.morphisms())
    for (int g : sub.morphisms()) {
      if (c.cod(f) != c.cod(g)) continue;
      if (!pullback(sub, f, g))
        return {false, "cospan (" + std::to_string(f) + "," +
                           std::to_string(g) + ") has no pullback"};
    }
  for (int g : sub.morphisms())
    for (int f1 : sub.morphisms()) {
      if (c.cod(f1) != c.dom(g)) continue;
      for (int f2 : sub.morphisms()) {
        if (c.dom(f2) != c.dom(f1) || c.cod(f2) != c.dom(g) || f1 == f2)
          continue;
        if (c.raw_comp(f1, g) == c.raw_comp(f2, g))
          return {false, "morphism " + std::to_string(g) + " is not monic: " +
                             std::to_string(f1) + " vs " + std::to_string(f2)};
      }
    }
  return {};
}

int PosetOnSkeleton::index_of_rep(int map_id) const {
  for (int i = 0; i < size(); ++i)
    if (elements[i].map == map_id) return i;
  return -1;
}

PosetOnSkeleton skeleton(const SubcatMask& sub, int apex) {
  IndexingReport ir = is_indexing_category(sub);
  if (!ir.ok)
    throw std::invalid_argument("skeleton: not an indexing category: " +
                                ir.detail);
  const FinCat& c = sub.parent();
  PosetOnSkeleton out;
  out.apex = apex;
  for (int f = 0; f < c.morphism_count(); ++f)
    if (sub.contains(f) && c.cod(f) == apex) out.comma_maps.push_back(f);

  out.comma_class.assign(out.comma_maps.size(), -1);
  out.comma_iso.assign(out.comma_maps.size(), -1);
  for (size_t k = 0; k < out.comma_maps.size(); ++k) {
    int i = out.comma_maps[k];
    for (int cls = 0; cls < out.size(); ++cls) {
      int rep = out.elements[cls].map;
      // Covering equivalence: an iso r with rep∘r = i.
      for (int r : c.hom(c.dom(i), c.dom(rep))) {
        if (!sub.is_iso_in(r)) continue;
        if (c.raw_comp(r, rep) == i) {
          out.comma_class[k] = cls;
          out.comma_iso[k] = r;
          break;
        }
      }
      if (out.comma_class[k] >= 0) break;
    }
    if (out.comma_class[k] < 0) {
      out.elements.push_back({i, c.dom(i)});
      out.comma_class[k] = out.size() - 1;
      out.comma_iso[k] = c.identity(c.dom(i));
    }
  }

  int n = out.size();
  out.leq.assign(n, std::vector<unsigned char>(n, 0));
  out.witness.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k : c.hom(out.elements[i].dom, out.elements[j].dom)) {
        if (!sub.contains(k)) continue;
        if (c.raw_comp(k, out.elements[j].map) == out.elements[i].map) {
          out.leq[i][j] = 1;
          out.witness[i][j] = k;
          break;
        }
      }
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && out.leq[i][j] && out.leq[j][i])
        throw std::logic_error("skeleton order is not antisymmetric");
  return out;
}

SkeletalForm skeletalize(const PosetOnSkeleton& sk, int map_id) {
  for (size_t k = 0; k < sk.comma_maps.size(); ++k)
    if (sk.comma_maps[k] == map_id)
      return {sk.comma_class[k], sk.comma_iso[k]};
  throw std::invalid_argument("skeletalize: morphism not in the comma fiber");
}

std::vector<int> linear_extension(const PosetOnSkeleton& p) {
  int n = p.size();
  std::vector<int> order;
  std::vector<unsigned char> used(n, 0);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int e = 0; e < n; ++e) {
      if (used[e]) continue;
      bool minimal = true;
      for (int o = 0; o < n && minimal; ++o)
        if (o != e && !used[o] && p.leq[o][e]) minimal = false;
      if (!minimal) continue;
      if (best < 0 || p.elements[e].map < p.elements[best].map) best = e;
    }
    if (best < 0) throw std::logic_error("linear_extension: cycle");
    used[best] = 1;
    order.push_back(best);
  }
  return order;
}

FinCat subcategory_as_fincat(const SubcatMask& sub, std::string name,
                             std::vector<int>* to_parent,
                             std::vector<int>* from_parent) {
  const FinCat& c = sub.parent();
  std::vector<int> fwd(c.morphism_count(), -1);
  std::vector<int> back;
  for (int f : sub.morphisms()) {
    fwd[f] = static_cast<int>(back.size());
    back.push_back(f);
  }
  int m = static_cast<int>(back.size());
  std::vector<Morphism> mor(m);
  for (int k = 0; k < m; ++k) mor[k] = {c.dom(back[k]), c.cod(back[k])};
  std::vector<int> ident(c.object_count());
  for (int a = 0; a < c.object_count(); ++a) ident[a] = fwd[c.identity(a)];
  std::vector<int> comp(static_cast<size_t>(m) * m, -1);
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      if (!c.composable(back[f], back[g])) continue;
      int h = c.raw_comp(back[f], back[g]);
      comp[static_cast<size_t>(f) * m + g] = h < 0 ? -1 : fwd[h];
    }
  if (to_parent) *to_parent = back;
  if (from_parent) *from_parent = fwd;
  return FinCat(std::move(name), c.object_count(), std::move(mor),
                std::move(ident), std::move(comp));
}

}  // namespace catmor
