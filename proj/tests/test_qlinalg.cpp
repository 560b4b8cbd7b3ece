#include <doctest.h>

#include "catmor/prng.hpp"
#include "catmor/qlinalg.hpp"
#include "test_util.hpp"

using namespace catmor;
using testutil::mat;

namespace {

QMat random_matrix(int rows, int cols, SplitMix64& rng) {
  QMat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m.at(r, c) = rat_frac(rng.range(-6, 6), 1 + rng.below(4));
  return m;
}

}  // namespace

TEST_CASE("rational literals") {
  CHECK(rat_parse("3/4") == Rat(3, 4));
  CHECK(rat_parse("-7") == Rat(-7));
  CHECK(rat_parse("-2/6") == Rat(-1, 3));
  CHECK(rat_str(rat_parse("4/6")) == "2/3");
  CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("a"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("1/"), std::invalid_argument);
}

TEST_CASE("elimination on the stock examples") {
  SUBCASE("identity has full rank and empty kernel") {
    LinearAnalysis an = rref_kernel_image(QMat::identity(4));
    CHECK(an.rank == 4);
    CHECK(an.kernel.cols() == 0);
    CHECK(an.image.cols() == 4);
  }
  SUBCASE("rank-one 2x2") {
    LinearAnalysis an = rref_kernel_image(mat(2, 2, {1, 2, 2, 4}));
    CHECK(an.rank == 1);
    REQUIRE(an.kernel.cols() == 1);
    // kernel spanned by (-2, 1)
    CHECK(an.kernel.at(0, 0) == Rat(-2));
    CHECK(an.kernel.at(1, 0) == Rat(1));
  }
  SUBCASE("zero-row matrix: no constraints at all") {
    LinearAnalysis an = rref_kernel_image(QMat(0, 5));
    CHECK(an.rank == 0);
    CHECK(an.kernel.cols() == 5);
    CHECK(an.kernel.is_identity());
  }
}

TEST_CASE("solve oracle") {
  QMat a = mat(3, 2, {1, 0, 0, 1, 1, 1});
  auto x = rref_kernel_image(a).solve(mat(3, 1, {2, 3, 5}));
  REQUIRE(x.has_value());
  CHECK(x->at(0, 0) == Rat(2));
  CHECK(x->at(1, 0) == Rat(3));
  CHECK_FALSE(rref_kernel_image(a).solve(mat(3, 1, {2, 3, 6})).has_value());
}

TEST_CASE("isomorphism predicate") {
  CHECK(is_isomorphism(QMat::identity(3)));
  CHECK_FALSE(is_isomorphism(QMat(2, 3)));
  CHECK_FALSE(is_isomorphism(mat(2, 2, {1, 2, 2, 4})));
  // unit lower-triangular, with the explicit two-by-two block inverse
  QMat f = mat(2, 2, {5, 0, 3, 7});
  CHECK(is_isomorphism(f));
  QMat finv = inverse(f);
  QMat expected(2, 2);
  expected.at(0, 0) = rat_frac(1, 5);
  expected.at(1, 0) = -rat_frac(1, 7) * rat_frac(3) * rat_frac(1, 5);
  expected.at(1, 1) = rat_frac(1, 7);
  CHECK(finv == expected);
}

TEST_CASE("block operations") {
  SUBCASE("tensor with based sets") {
    CHECK(tensor_with_based_set(QMat::identity(2), 0).rows() == 0);
    QMat t = tensor_with_based_set(QMat::identity(2), 2);
    CHECK(t.rows() == 4);
    CHECK(t.is_identity());
  }
  SUBCASE("block-diagonal of isos is iso") {
    QMat d = direct_sum(mat(2, 2, {5, 0, 3, 7}), QMat::identity(3));
    CHECK(is_isomorphism(d));
    CHECK(rank_of(d) == testutil::oracle_rank(d));
  }
  SUBCASE("mismatched grid throws") {
    CHECK_THROWS_AS(
        block_assemble({{QMat(2, 2), QMat(2, 3)}, {QMat(1, 2), QMat(1, 2)}}),
        std::invalid_argument);
  }
}

TEST_CASE("exact arithmetic properties on random matrices") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    QMat a = random_matrix(4, 5, rng);
    QMat b = random_matrix(5, 3, rng);
    QMat c = random_matrix(3, 6, rng);
    CHECK((a * b) * c == a * (b * c));

    LinearAnalysis an = rref_kernel_image(a);
    CHECK(an.rank + an.kernel.cols() == a.cols());
    CHECK(an.rank == testutil::oracle_rank(a));
    CHECK((a * an.kernel).is_zero());
  }
}

TEST_CASE("parallel kernels match the serial references") {
  SplitMix64 rng(23);
  QMat a = random_matrix(40, 33, rng);
  QMat b = random_matrix(33, 21, rng);
  CHECK(mul_serial(a, b) == mul_parallel(a, b));
  LinearAnalysis s = rref_kernel_image_serial(a);
  LinearAnalysis p = rref_kernel_image(a);
  CHECK(s.rref == p.rref);
  CHECK(s.kernel == p.kernel);
  CHECK(s.pivot_cols == p.pivot_cols);
  CHECK(s.transform == p.transform);
}

TEST_CASE("subspace and quotient helpers") {
  SplitMix64 rng(37);
  QMat cons = random_matrix(4, 7, rng);
  SubSpace s = kernel_with_coords(cons);
  CHECK((cons * s.basis).is_zero());
  CHECK(s.basis.select_rows(s.coords).is_identity());

  QMat rel = random_matrix(6, 3, rng);
  QuotientSpace q = quotient_by_columns(rel);
  CHECK(q.dim == 6 - testutil::oracle_rank(rel));
  CHECK((q.proj * rel).is_zero());
  CHECK((q.proj * q.section).is_identity());
}

TEST_CASE("streamed sparse quotient agrees with the dense one") {
  SplitMix64 rng(53);
  for (int round = 0; round < 6; ++round) {
    int n = 5 + rng.below(5), k = rng.below(7);
    QMat rel(n, k);
    for (int c = 0; c < k; ++c) {
      int nnz = rng.range(0, 3);
      for (int t = 0; t < nnz; ++t)
        rel.at(rng.below(n), c) = rat_frac(rng.range(-3, 3));
    }
    QuotientSpace dense = quotient_by_columns(rel);
    SubSpace dense_ker = kernel_with_coords(rel.transpose());
    SpanEchelon span(n);
    SpanEchelon ker_span(n);
    for (int c = 0; c < k; ++c) {
      SpanEchelon::SparseVec col;
      for (int r = 0; r < n; ++r)
        if (rat_sgn(rel.at(r, c)) != 0) col.emplace_back(r, rel.at(r, c));
      span.add(col);
      ker_span.add(std::move(col));
    }
    QuotientSpace sparse = span.quotient();
    CHECK(dense.dim == sparse.dim);
    CHECK(dense.proj == sparse.proj);
    CHECK(dense.section == sparse.section);
    // kernel of the same span, seen as constraint rows
    SubSpace sparse_ker = ker_span.kernel();
    CHECK(dense_ker.dim == sparse_ker.dim);
    CHECK(dense_ker.basis == sparse_ker.basis);
    CHECK(dense_ker.coords == sparse_ker.coords);
  }
}
