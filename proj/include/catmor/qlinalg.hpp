#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace catmor {

/// Exact rational scalar; canonical form (reduced, positive denominator) is
/// maintained by GMP. There are no tolerances anywhere in this library:
/// every comparison is exact.
using Rat = mpq_class;

/// Parses "p" or "p/q" with an optional leading '-'. Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rat rat_parse(const std::string& token);

std::string rat_str(const Rat& value);

inline int rat_sgn(const Rat& v) { return mpq_sgn(v.get_mpq_t()); }

/// Canonicalized fraction; GMP leaves mpq_class(n, d) unreduced otherwise.
inline Rat rat_frac(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Dense matrix over Q. Shapes with zero rows or columns are first-class
/// values: dimension-0 spaces occur constantly as basepoint factors.
class QMat {
 public:
  QMat() = default;
  QMat(int rows, int cols);

  static QMat identity(int n);
  static QMat zero(int rows, int cols) { return QMat(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
  const Rat& at(int r, int c) const {
    return e_[static_cast<size_t>(r) * cols_ + c];
  }

  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const QMat& o) const;
  bool operator!=(const QMat& o) const { return !(*this == o); }

  QMat transpose() const;
  QMat operator-() const;

  /// Copies `block` into this matrix with top-left corner at (r, c).
  void set_block(int r, int c, const QMat& block);
  QMat submatrix(int r0, int r1, int c0, int c1) const;
  QMat select_rows(const std::vector<int>& idx) const;
  QMat select_cols(const std::vector<int>& idx) const;

  std::string str() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rat> e_;
};

QMat operator+(const QMat& a, const QMat& b);
QMat operator-(const QMat& a, const QMat& b);
QMat operator*(const QMat& a, const QMat& b);
QMat operator*(const Rat& s, const QMat& m);

/// Serial reference product, kept for testing the parallel kernel against.
QMat mul_serial(const QMat& a, const QMat& b);
/// OpenMP product over output rows; falls back to serial without OpenMP.
QMat mul_parallel(const QMat& a, const QMat& b);

/// Result of exact Gauss-Jordan elimination. `transform * input = rref`,
/// so when the input is invertible the transform is its inverse.
struct LinearAnalysis {
  int in_rows = 0;
  int in_cols = 0;
  int rank = 0;
  QMat rref;
  QMat transform;  // empty unless requested
  std::vector<int> pivot_cols;
  QMat kernel;  // columns form a nullspace basis; non-pivot rows are I
  QMat image;   // pivot columns of the input, a column-space basis

  bool has_transform() const { return transform.rows() == in_rows; }
  /// Solves input * X = rhs exactly (free variables set to 0);
  /// std::nullopt when inconsistent. Requires the transform.
  std::optional<QMat> solve(const QMat& rhs) const;
};

LinearAnalysis rref_kernel_image(const QMat& m, bool with_transform = true);
/// Serial reference elimination for kernel comparisons in tests.
LinearAnalysis rref_kernel_image_serial(const QMat& m,
                                        bool with_transform = true);

int rank_of(const QMat& m);
bool is_isomorphism(const QMat& m);
/// Inverse of a square full-rank matrix; throws std::invalid_argument else.
QMat inverse(const QMat& m);
std::optional<QMat> solve(const QMat& a, const QMat& rhs);

/// Kernel of a constraint matrix together with the coordinate rows at
/// which the basis restricts to the identity, so that coordinates of a
/// vector known to lie in the subspace are a plain row selection.
struct SubSpace {
  int dim = 0;
  QMat basis;               // cols(constraints) x dim
  std::vector<int> coords;  // basis.select_rows(coords) = identity
};
SubSpace kernel_with_coords(const QMat& constraints);

/// Quotient of Q^n by the column span of `relations` (n x k): a projection
/// with a section, proj·section = I and ker(proj) = the span.
struct QuotientSpace {
  int dim = 0;
  QMat proj;     // dim x n
  QMat section;  // n x dim
};
QuotientSpace quotient_by_columns(const QMat& relations);

/// Row-echelon span of vectors fed in one at a time as sparse input, so
/// huge near-empty constraint or relation matrices never materialize
/// densely. The reduced echelon form of a span is unique, hence the
/// quotient agrees with quotient_by_columns and the kernel with
/// kernel_with_coords, entry for entry.
class SpanEchelon {
 public:
  using SparseVec = std::vector<std::pair<int, Rat>>;  // sorted, nonzero

  explicit SpanEchelon(int n) : n_(n) {}
  void add(SparseVec vec);
  int rank() const { return static_cast<int>(rows_.size()); }
  /// Quotient of Q^n by the span. Consumes the echelon.
  QuotientSpace quotient();
  /// Common kernel of the span seen as constraint rows. Consumes.
  SubSpace kernel();

 private:
  void back_substitute();
  std::vector<int> free_coords() const;

  int n_ = 0;
  std::vector<std::pair<int, SparseVec>> rows_;  // (pivot, unit-leading row)
};

QMat direct_sum(const QMat& a, const QMat& b);
/// Assembles a grid of blocks; row heights and column widths must agree
/// along each band. Throws std::invalid_argument on mismatch.
QMat block_assemble(const std::vector<std::vector<QMat>>& grid);
/// C |-> wedge of copies of C over a based set: one copy per non-basepoint
/// element, the basepoint contributing the zero space.
QMat tensor_with_based_set(const QMat& m, int nonbasepoint_count);

}  // namespace catmor
