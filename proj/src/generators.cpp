#include "catmor/generators.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace catmor {

bool BasedMap::regular() const {
  for (int v : img)
    if (v == 0) return false;
  return true;
}

bool BasedMap::injective_nonzero() const {
  std::vector<unsigned char> seen(cod + 1, 0);
  for (int v : img) {
    if (v == 0) continue;
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool BasedMap::ordered_injection() const {
  if (!regular() || !injective_nonzero()) return false;
  for (size_t t = 1; t < img.size(); ++t)
    if (img[t - 1] >= img[t]) return false;
  return true;
}

bool BasedMap::surjective_nonzero() const {
  if (!regular()) return false;
  std::vector<unsigned char> seen(cod + 1, 0);
  for (int v : img) seen[v] = 1;
  for (int v = 1; v <= cod; ++v)
    if (!seen[v]) return false;
  return true;
}

BasedMap BasedMap::compose(const BasedMap& f, const BasedMap& g) {
  if (f.cod != g.dom) throw std::invalid_argument("BasedMap: not composable");
  BasedMap h;
  h.dom = f.dom;
  h.cod = g.cod;
  for (int v : f.img) h.img.push_back(v == 0 ? 0 : g.img[v - 1]);
  return h;
}

bool BasedMap::operator<(const BasedMap& o) const {
  if (dom != o.dom) return dom < o.dom;
  if (cod != o.cod) return cod < o.cod;
  return img < o.img;
}

bool BasedMap::operator==(const BasedMap& o) const {
  return dom == o.dom && cod == o.cod && img == o.img;
}

namespace {

// Identities first (in object order), then all remaining maps sorted by
// (dom, cod, graph): ids are stable and identities carry the least ids.
BasedMapCategory assemble(int n, const std::vector<BasedMap>& pool,
                          const std::string& name) {
  BasedMapCategory out;
  std::vector<BasedMap> rest;
  for (int k = 0; k <= n; ++k) {
    BasedMap id;
    id.dom = id.cod = k;
    for (int t = 1; t <= k; ++t) id.img.push_back(t);
    out.maps.push_back(id);
  }
  for (const BasedMap& m : pool) {
    bool is_id = m.dom == m.cod;
    if (is_id)
      for (size_t t = 1; t <= m.img.size() && is_id; ++t)
        if (m.img[t - 1] != static_cast<int>(t)) is_id = false;
    if (!is_id) rest.push_back(m);
  }
  std::sort(rest.begin(), rest.end());
  out.maps.insert(out.maps.end(), rest.begin(), rest.end());

  std::map<BasedMap, int> index;
  for (size_t i = 0; i < out.maps.size(); ++i)
    index[out.maps[i]] = static_cast<int>(i);

  int m = static_cast<int>(out.maps.size());
  std::vector<Morphism> mor(m);
  for (int i = 0; i < m; ++i) mor[i] = {out.maps[i].dom, out.maps[i].cod};
  std::vector<int> ident(n + 1);
  for (int k = 0; k <= n; ++k) ident[k] = k;
  std::vector<int> comp(static_cast<size_t>(m) * m, -1);
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      if (out.maps[f].cod != out.maps[g].dom) continue;
      auto it = index.find(BasedMap::compose(out.maps[f], out.maps[g]));
      comp[static_cast<size_t>(f) * m + g] = it == index.end() ? -1 : it->second;
    }
  out.cat = FinCat(name, n + 1, std::move(mor), std::move(ident), std::move(comp));
  return out;
}

std::vector<BasedMap> all_maps(int n, bool regular_only, bool injective_only) {
  std::vector<BasedMap> pool;
  for (int d = 0; d <= n; ++d)
    for (int c = 0; c <= n; ++c) {
      int lo = regular_only ? 1 : 0;
      BasedMap m;
      m.dom = d;
      m.cod = c;
      m.img.assign(d, lo);
      if (d == 0) {
        pool.push_back(m);
        continue;
      }
      if (lo > c) continue;  // empty value range, no such maps
      while (true) {
        if (!injective_only || m.injective_nonzero()) pool.push_back(m);
        int t = d - 1;
        while (t >= 0 && m.img[t] == c) {
          m.img[t] = lo;
          --t;
        }
        if (t < 0) break;
        ++m.img[t];
      }
    }
  return pool;
}

}  // namespace

BasedMapCategory regular_maps_category(int n) {
  return assemble(n, all_maps(n, true, false), "regular" + std::to_string(n));
}

BasedMapCategory based_maps_category(int n) {
  return assemble(n, all_maps(n, false, false), "based" + std::to_string(n));
}

BasedMapCategory injective_regular_category(int n) {
  return assemble(n, all_maps(n, true, true), "inject" + std::to_string(n));
}

Factorization gen_gamma(int n) {
  if (n < 0 || n > 4) throw std::invalid_argument("gen_gamma: n out of 0..4");
  BasedMapCategory u = regular_maps_category(n);
  u.cat.rename("gamma" + std::to_string(n));
  std::vector<int> i_ids, a_ids;
  for (size_t m = 0; m < u.maps.size(); ++m) {
    if (u.maps[m].ordered_injection()) i_ids.push_back(static_cast<int>(m));
    if (u.maps[m].surjective_nonzero()) a_ids.push_back(static_cast<int>(m));
  }
  return Factorization::make(std::move(u.cat), std::move(i_ids), std::move(a_ids));
}

Factorization gen_idem() {
  FinCat arrow = arrow_category();
  std::vector<int> all(arrow.morphism_count());
  for (int f = 0; f < arrow.morphism_count(); ++f) all[f] = f;
  std::vector<int> ids = {arrow.identity(0), arrow.identity(1)};
  Factorization f = Factorization::make(std::move(arrow), std::move(all),
                                        std::move(ids));
  return f;
}

namespace {

FinCat poset_category(int elems, std::vector<std::vector<unsigned char>> leq,
                      const std::string& name) {
  std::vector<Morphism> mor;
  std::map<std::pair<int, int>, int> index;
  std::vector<int> ident(elems);
  for (int x = 0; x < elems; ++x) {
    ident[x] = static_cast<int>(mor.size());
    index[{x, x}] = ident[x];
    mor.push_back({x, x});
  }
  for (int x = 0; x < elems; ++x)
    for (int y = 0; y < elems; ++y)
      if (x != y && leq[x][y]) {
        index[{x, y}] = static_cast<int>(mor.size());
        mor.push_back({x, y});
      }
  int m = static_cast<int>(mor.size());
  std::vector<int> comp(static_cast<size_t>(m) * m, -1);
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      if (mor[f].cod != mor[g].dom) continue;
      comp[static_cast<size_t>(f) * m + g] = index.at({mor[f].dom, mor[g].cod});
    }
  return FinCat(name, elems, std::move(mor), std::move(ident), std::move(comp));
}

}  // namespace

Factorization gen_poset(int elems,
                        const std::vector<std::pair<int, int>>& strictly_less) {
  std::vector<std::vector<unsigned char>> leq(
      elems, std::vector<unsigned char>(elems, 0));
  for (int x = 0; x < elems; ++x) leq[x][x] = 1;
  for (auto [lo, hi] : strictly_less) {
    if (lo < 0 || hi < 0 || lo >= elems || hi >= elems || lo == hi)
      throw std::invalid_argument("gen_poset: bad relation pair");
    leq[lo][hi] = 1;
  }
  for (int k = 0; k < elems; ++k)  // transitive closure
    for (int x = 0; x < elems; ++x)
      for (int y = 0; y < elems; ++y)
        if (leq[x][k] && leq[k][y]) leq[x][y] = 1;
  for (int x = 0; x < elems; ++x)
    for (int y = 0; y < elems; ++y)
      if (x != y && leq[x][y] && leq[y][x])
        throw std::invalid_argument("gen_poset: relation is not antisymmetric");

  // Every cospan x,y <= a needs a unique greatest lower bound.
  for (int a = 0; a < elems; ++a)
    for (int x = 0; x < elems; ++x)
      for (int y = 0; y < elems; ++y) {
        if (!leq[x][a] || !leq[y][a]) continue;
        int meet = -1;
        for (int z = 0; z < elems; ++z) {
          if (!leq[z][x] || !leq[z][y]) continue;
          if (meet < 0 || leq[meet][z]) meet = z;
        }
        bool greatest = meet >= 0;
        for (int z = 0; z < elems && greatest; ++z)
          if (leq[z][x] && leq[z][y] && !leq[z][meet]) greatest = false;
        if (!greatest)
          throw std::invalid_argument(
              "gen_poset: pair (" + std::to_string(x) + "," +
              std::to_string(y) + ") has no greatest lower bound");
      }

  FinCat cat = poset_category(elems, leq, "poset" + std::to_string(elems));
  std::vector<int> all(cat.morphism_count());
  for (int f = 0; f < cat.morphism_count(); ++f) all[f] = f;
  std::vector<int> iso_ids;
  for (int f = 0; f < cat.morphism_count(); ++f)
    if (cat.is_iso(f)) iso_ids.push_back(f);
  return Factorization::make(std::move(cat), std::move(all), std::move(iso_ids));
}

Factorization gen_sigma(int n) {
  if (n < 0 || n > 4) throw std::invalid_argument("gen_sigma: n out of 0..4");
  BasedMapCategory u = injective_regular_category(n);
  u.cat.rename("sigma" + std::to_string(n));
  std::vector<int> i_ids, a_ids;
  for (size_t m = 0; m < u.maps.size(); ++m) {
    if (u.maps[m].ordered_injection()) i_ids.push_back(static_cast<int>(m));
    if (u.maps[m].dom == u.maps[m].cod && u.maps[m].regular() &&
        u.maps[m].injective_nonzero())
      a_ids.push_back(static_cast<int>(m));
  }
  return Factorization::make(std::move(u.cat), std::move(i_ids), std::move(a_ids));
}

Factorization gen_induction(FinCat indexing) {
  std::vector<int> all(indexing.morphism_count());
  for (int f = 0; f < indexing.morphism_count(); ++f) all[f] = f;
  std::vector<int> iso_ids;
  for (int f = 0; f < indexing.morphism_count(); ++f)
    if (indexing.is_iso(f)) iso_ids.push_back(f);
  return Factorization::make(std::move(indexing), std::move(all),
                             std::move(iso_ids));
}

FinCat arrow_category() {
  std::vector<Morphism> mor = {{0, 0}, {1, 1}, {0, 1}};
  std::vector<int> ident = {0, 1};
  int m = 3;
  std::vector<int> comp(static_cast<size_t>(m) * m, -1);
  auto set = [&](int f, int g, int h) { comp[f * m + g] = h; };
  set(0, 0, 0);
  set(1, 1, 1);
  set(0, 2, 2);
  set(2, 1, 2);
  return FinCat("idem", 2, std::move(mor), std::move(ident), std::move(comp));
}

FinCat subset_lattice_category(int n) {
  int elems = 1 << n;
  std::vector<std::vector<unsigned char>> leq(
      elems, std::vector<unsigned char>(elems, 0));
  for (int x = 0; x < elems; ++x)
    for (int y = 0; y < elems; ++y)
      if ((x & y) == x) leq[x][y] = 1;
  return poset_category(elems, leq, "subsets" + std::to_string(n));
}

FinCat injections_category(int n) {
  BasedMapCategory c = injective_regular_category(n);
  return c.cat;
}

}  // namespace catmor
