#pragma once

#include <string>
#include <vector>

#include "catmor/category_io.hpp"
#include "catmor/fincat.hpp"
#include "catmor/qlinalg.hpp"

namespace catmor::testutil {

// The five-morphism idempotent category on objects {0,1}:
//   ids 0,1; i = 2: 0->1; istar = 3: 1->0; e = i∘istar = 4: 1->1,
// with istar∘i = id0.
inline FinCat b5() {
  std::vector<Morphism> mor = {{0, 0}, {1, 1}, {0, 1}, {1, 0}, {1, 1}};
  std::vector<int> ident = {0, 1};
  int m = 5;
  std::vector<int> comp(static_cast<size_t>(m) * m, -1);
  auto set = [&](int f, int g, int h) { comp[f * m + g] = h; };
  set(0, 0, 0);
  set(0, 2, 2);
  set(1, 1, 1);
  set(1, 3, 3);
  set(1, 4, 4);
  set(2, 1, 2);
  set(2, 3, 0);   // istar∘i = id0
  set(2, 4, 2);   // e∘i = i
  set(3, 0, 3);
  set(3, 2, 4);   // i∘istar = e
  set(4, 1, 4);
  set(4, 3, 3);   // istar∘e = istar
  set(4, 4, 4);   // e∘e = e
  return FinCat("b5", 2, std::move(mor), std::move(ident), std::move(comp));
}

inline CategorySpec b5_spec() {
  CategorySpec s;
  s.name = "b5";
  s.objects = 2;
  FinCat c = b5();
  for (int f = 0; f < c.morphism_count(); ++f)
    s.morphisms.push_back({f, c.dom(f), c.cod(f), 0});
  s.identities.push_back({0, 0, 0});
  s.identities.push_back({1, 1, 0});
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < c.morphism_count(); ++g)
      if (c.composable(f, g)) s.composes.push_back({f, g, c.raw_comp(f, g), 0});
  return s;
}

// Plain forward elimination, written independently of the library's
// Gauss-Jordan: the rank oracle for every dimension comparison.
inline int oracle_rank(QMat m) {
  int rank = 0;
  int rows = m.rows(), cols = m.cols();
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (rat_sgn(m.at(r, col)) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int c = 0; c < cols; ++c) std::swap(m.at(piv, c), m.at(rank, c));
    for (int r = rank + 1; r < rows; ++r) {
      if (rat_sgn(m.at(r, col)) == 0) continue;
      Rat factor = m.at(r, col) / m.at(rank, col);
      for (int c = col; c < cols; ++c) m.at(r, c) -= factor * m.at(rank, c);
    }
    ++rank;
  }
  return rank;
}

inline QMat mat(int rows, int cols, const std::vector<long>& entries) {
  QMat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.at(r, c) = entries[r * cols + c];
  return m;
}

}  // namespace catmor::testutil
