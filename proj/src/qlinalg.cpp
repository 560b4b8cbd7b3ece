#include "catmor/qlinalg.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace catmor {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Work threshold below which the parallel kernels run serially.
constexpr long kParallelCutoff = 1 << 15;

}  // namespace

Rat rat_parse(const std::string& token) {
  std::string t = token;
  bool neg = false;
  if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
    neg = t[0] == '-';
    t = t.substr(1);
  }
  std::string num = t, den = "1";
  if (auto slash = t.find('/'); slash != std::string::npos) {
    num = t.substr(0, slash);
    den = t.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw std::invalid_argument("malformed rational literal: " + token);
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + token);
  Rat q(n, d);
  q.canonicalize();
  if (neg) q = -q;
  return q;
}

std::string rat_str(const Rat& value) { return value.get_str(); }

QMat::QMat(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
  e_.assign(static_cast<size_t>(rows) * cols, Rat(0));
}

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool QMat::is_zero() const {
  for (const Rat& v : e_)
    if (rat_sgn(v) != 0) return false;
  return true;
}

bool QMat::is_identity() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (at(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

bool QMat::operator==(const QMat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

QMat QMat::transpose() const {
  QMat t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

QMat QMat::operator-() const {
  QMat t(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) t.e_[i] = -e_[i];
  return t;
}

void QMat::set_block(int r, int c, const QMat& block) {
  if (r + block.rows() > rows_ || c + block.cols() > cols_)
    throw std::invalid_argument("set_block out of range");
  for (int i = 0; i < block.rows(); ++i)
    for (int j = 0; j < block.cols(); ++j) at(r + i, c + j) = block.at(i, j);
}

QMat QMat::submatrix(int r0, int r1, int c0, int c1) const {
  QMat s(r1 - r0, c1 - c0);
  for (int r = r0; r < r1; ++r)
    for (int c = c0; c < c1; ++c) s.at(r - r0, c - c0) = at(r, c);
  return s;
}

QMat QMat::select_rows(const std::vector<int>& idx) const {
  QMat s(static_cast<int>(idx.size()), cols_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (int c = 0; c < cols_; ++c) s.at(static_cast<int>(i), c) = at(idx[i], c);
  return s;
}

QMat QMat::select_cols(const std::vector<int>& idx) const {
  QMat s(rows_, static_cast<int>(idx.size()));
  for (int r = 0; r < rows_; ++r)
    for (size_t j = 0; j < idx.size(); ++j)
      s.at(r, static_cast<int>(j)) = at(r, idx[j]);
  return s;
}

std::string QMat::str() const {
  std::ostringstream os;
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) os << (c ? " " : "") << rat_str(at(r, c));
    os << "\n";
  }
  return os.str();
}

QMat operator+(const QMat& a, const QMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("shape mismatch in +");
  QMat s(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) s.at(r, c) = a.at(r, c) + b.at(r, c);
  return s;
}

QMat operator-(const QMat& a, const QMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("shape mismatch in -");
  QMat s(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) s.at(r, c) = a.at(r, c) - b.at(r, c);
  return s;
}

QMat operator*(const Rat& s, const QMat& m) {
  QMat t(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) t.at(r, c) = s * m.at(r, c);
  return t;
}

namespace {

// Row-major product with a sparsity skip on the left factor: rows of the
// assembled constraint matrices are mostly zero.
void mul_row_range(const QMat& a, const QMat& b, QMat& out, int r0, int r1) {
  for (int r = r0; r < r1; ++r) {
    for (int k = 0; k < a.cols(); ++k) {
      const Rat& av = a.at(r, k);
      if (rat_sgn(av) == 0) continue;
      for (int c = 0; c < b.cols(); ++c) {
        const Rat& bv = b.at(k, c);
        if (rat_sgn(bv) == 0) continue;
        out.at(r, c) += av * bv;
      }
    }
  }
}

}  // namespace

QMat mul_serial(const QMat& a, const QMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in *");
  QMat out(a.rows(), b.cols());
  mul_row_range(a, b, out, 0, a.rows());
  return out;
}

QMat mul_parallel(const QMat& a, const QMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in *");
  QMat out(a.rows(), b.cols());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (int r = 0; r < a.rows(); ++r) mul_row_range(a, b, out, r, r + 1);
#else
  mul_row_range(a, b, out, 0, a.rows());
#endif
  return out;
}

QMat operator*(const QMat& a, const QMat& b) {
  long work = static_cast<long>(a.rows()) * a.cols() * (b.cols() ? b.cols() : 1);
  if (work >= kParallelCutoff) return mul_parallel(a, b);
  return mul_serial(a, b);
}

namespace {

LinearAnalysis rref_impl(const QMat& m, bool with_transform, bool parallel) {
  LinearAnalysis out;
  out.in_rows = m.rows();
  out.in_cols = m.cols();
  QMat r = m;
  QMat t;
  if (with_transform) t = QMat::identity(m.rows());

  int pivot_row = 0;
  for (int col = 0; col < r.cols() && pivot_row < r.rows(); ++col) {
    int pr = -1;
    for (int i = pivot_row; i < r.rows(); ++i)
      if (rat_sgn(r.at(i, col)) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != pivot_row) {
      for (int c = 0; c < r.cols(); ++c) std::swap(r.at(pr, c), r.at(pivot_row, c));
      if (with_transform)
        for (int c = 0; c < t.cols(); ++c)
          std::swap(t.at(pr, c), t.at(pivot_row, c));
    }
    Rat inv = 1 / r.at(pivot_row, col);
    if (inv != 1) {
      for (int c = col; c < r.cols(); ++c) r.at(pivot_row, c) *= inv;
      if (with_transform)
        for (int c = 0; c < t.cols(); ++c) t.at(pivot_row, c) *= inv;
    }
    auto eliminate = [&](int i) {
      if (i == pivot_row) return;
      const Rat f = r.at(i, col);
      if (rat_sgn(f) == 0) return;
      for (int c = col; c < r.cols(); ++c) {
        const Rat& p = r.at(pivot_row, c);
        if (rat_sgn(p) != 0) r.at(i, c) -= f * p;
      }
      if (with_transform)
        for (int c = 0; c < t.cols(); ++c) {
          const Rat& p = t.at(pivot_row, c);
          if (rat_sgn(p) != 0) t.at(i, c) -= f * p;
        }
    };
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
      for (int i = 0; i < r.rows(); ++i) eliminate(i);
#else
      for (int i = 0; i < r.rows(); ++i) eliminate(i);
#endif
    } else {
      for (int i = 0; i < r.rows(); ++i) eliminate(i);
    }
    out.pivot_cols.push_back(col);
    ++pivot_row;
  }

  out.rank = static_cast<int>(out.pivot_cols.size());
  out.rref = std::move(r);
  if (with_transform) out.transform = std::move(t);

  std::vector<int> free_cols;
  std::vector<int> col_kind(m.cols(), -1);
  for (int i = 0; i < out.rank; ++i) col_kind[out.pivot_cols[i]] = i;
  for (int c = 0; c < m.cols(); ++c)
    if (col_kind[c] < 0) free_cols.push_back(c);

  out.kernel = QMat(m.cols(), static_cast<int>(free_cols.size()));
  for (size_t j = 0; j < free_cols.size(); ++j) {
    out.kernel.at(free_cols[j], static_cast<int>(j)) = 1;
    for (int i = 0; i < out.rank; ++i)
      out.kernel.at(out.pivot_cols[i], static_cast<int>(j)) =
          -out.rref.at(i, free_cols[j]);
  }
  out.image = m.select_cols(out.pivot_cols);
  return out;
}

}  // namespace

LinearAnalysis rref_kernel_image(const QMat& m, bool with_transform) {
  bool big = static_cast<long>(m.rows()) * m.cols() >= kParallelCutoff;
  return rref_impl(m, with_transform, big);
}

LinearAnalysis rref_kernel_image_serial(const QMat& m, bool with_transform) {
  return rref_impl(m, with_transform, false);
}

std::optional<QMat> LinearAnalysis::solve(const QMat& rhs) const {
  if (!has_transform()) throw std::logic_error("solve needs the transform");
  if (rhs.rows() != in_rows) throw std::invalid_argument("rhs shape mismatch");
  QMat y = transform * rhs;
  for (int i = rank; i < y.rows(); ++i)
    for (int c = 0; c < y.cols(); ++c)
      if (rat_sgn(y.at(i, c)) != 0) return std::nullopt;
  QMat x(in_cols, rhs.cols());
  for (int i = 0; i < rank; ++i)
    for (int c = 0; c < rhs.cols(); ++c) x.at(pivot_cols[i], c) = y.at(i, c);
  return x;
}

int rank_of(const QMat& m) { return rref_kernel_image(m, false).rank; }

bool is_isomorphism(const QMat& m) {
  return m.rows() == m.cols() && rank_of(m) == m.rows();
}

QMat inverse(const QMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  LinearAnalysis a = rref_kernel_image(m, true);
  if (a.rank != m.rows()) throw std::invalid_argument("inverse: singular");
  return a.transform;
}

std::optional<QMat> solve(const QMat& a, const QMat& rhs) {
  return rref_kernel_image(a, true).solve(rhs);
}

SubSpace kernel_with_coords(const QMat& constraints) {
  LinearAnalysis an = rref_kernel_image(constraints, false);
  SubSpace s;
  s.basis = an.kernel;
  s.dim = s.basis.cols();
  std::vector<unsigned char> is_pivot(constraints.cols(), 0);
  for (int p : an.pivot_cols) is_pivot[p] = 1;
  for (int c = 0; c < constraints.cols(); ++c)
    if (!is_pivot[c]) s.coords.push_back(c);
  return s;
}

QuotientSpace quotient_by_columns(const QMat& relations) {
  const int n = relations.rows();
  LinearAnalysis an = rref_kernel_image(relations.transpose(), false);
  std::vector<unsigned char> is_pivot(n, 0);
  for (int p : an.pivot_cols) is_pivot[p] = 1;
  std::vector<int> free_coords;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) free_coords.push_back(c);
  QuotientSpace q;
  q.dim = static_cast<int>(free_coords.size());
  q.proj = QMat(q.dim, n);
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) {
      int row_i = -1;
      for (int i = 0; i < an.rank; ++i)
        if (an.pivot_cols[i] == c) {
          row_i = i;
          break;
        }
      for (int j = 0; j < q.dim; ++j)
        q.proj.at(j, c) = -an.rref.at(row_i, free_coords[j]);
    } else {
      for (int j = 0; j < q.dim; ++j)
        if (free_coords[j] == c) q.proj.at(j, c) = 1;
    }
  }
  q.section = QMat(n, q.dim);
  for (int j = 0; j < q.dim; ++j) q.section.at(free_coords[j], j) = 1;
  return q;
}

namespace {

// out = a - coeff * b, both sorted sparse vectors.
SpanEchelon::SparseVec sparse_axpy(const SpanEchelon::SparseVec& a,
                                   const Rat& coeff,
                                   const SpanEchelon::SparseVec& b) {
  SpanEchelon::SparseVec out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -coeff * b[j].second);
      if (rat_sgn(out.back().second) == 0) out.pop_back();
      ++j;
    } else {
      Rat v = a[i].second - coeff * b[j].second;
      if (rat_sgn(v) != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

void SpanEchelon::add(SparseVec vec) {
  while (!vec.empty()) {
    int lead = vec.front().first;
    auto it = std::lower_bound(
        rows_.begin(), rows_.end(), lead,
        [](const auto& row, int key) { return row.first < key; });
    if (it == rows_.end() || it->first != lead) {
      Rat inv = 1 / vec.front().second;
      if (inv != 1)
        for (auto& e : vec) e.second *= inv;
      rows_.insert(it, {lead, std::move(vec)});
      return;
    }
    vec = sparse_axpy(vec, vec.front().second, it->second);
  }
}

void SpanEchelon::back_substitute() {
  // Largest pivot first: each row used for reduction is already clean
  // above its own pivot.
  for (int i = static_cast<int>(rows_.size()) - 1; i >= 0; --i) {
    int p = rows_[i].first;
    for (int j = 0; j < i; ++j) {
      auto& row = rows_[j].second;
      auto it = std::lower_bound(
          row.begin(), row.end(), p,
          [](const auto& e, int key) { return e.first < key; });
      if (it == row.end() || it->first != p) continue;
      row = sparse_axpy(row, it->second, rows_[i].second);
    }
  }
}

std::vector<int> SpanEchelon::free_coords() const {
  std::vector<unsigned char> is_pivot(n_, 0);
  for (const auto& [p, row] : rows_) is_pivot[p] = 1;
  std::vector<int> fc;
  for (int c = 0; c < n_; ++c)
    if (!is_pivot[c]) fc.push_back(c);
  return fc;
}

QuotientSpace SpanEchelon::quotient() {
  back_substitute();
  std::vector<int> fc = free_coords();
  std::vector<int> coord_pos(n_, -1);
  for (size_t j = 0; j < fc.size(); ++j) coord_pos[fc[j]] = static_cast<int>(j);
  QuotientSpace q;
  q.dim = static_cast<int>(fc.size());
  q.proj = QMat(q.dim, n_);
  for (int j = 0; j < q.dim; ++j) q.proj.at(j, fc[j]) = 1;
  for (const auto& [p, row] : rows_)
    for (const auto& [idx, v] : row)
      if (idx != p) q.proj.at(coord_pos[idx], p) = -v;
  q.section = QMat(n_, q.dim);
  for (int j = 0; j < q.dim; ++j) q.section.at(fc[j], j) = 1;
  rows_.clear();
  return q;
}

SubSpace SpanEchelon::kernel() {
  back_substitute();
  std::vector<int> fc = free_coords();
  std::vector<int> coord_pos(n_, -1);
  for (size_t j = 0; j < fc.size(); ++j) coord_pos[fc[j]] = static_cast<int>(j);
  SubSpace s;
  s.dim = static_cast<int>(fc.size());
  s.coords = fc;
  s.basis = QMat(n_, s.dim);
  for (int j = 0; j < s.dim; ++j) s.basis.at(fc[j], j) = 1;
  for (const auto& [p, row] : rows_)
    for (const auto& [idx, v] : row)
      if (idx != p) s.basis.at(p, coord_pos[idx]) = -v;
  rows_.clear();
  return s;
}

QMat direct_sum(const QMat& a, const QMat& b) {
  QMat s(a.rows() + b.rows(), a.cols() + b.cols());
  s.set_block(0, 0, a);
  s.set_block(a.rows(), a.cols(), b);
  return s;
}

QMat block_assemble(const std::vector<std::vector<QMat>>& grid) {
  if (grid.empty()) return {};
  size_t ncols = grid[0].size();
  std::vector<int> heights(grid.size(), -1), widths(ncols, -1);
  for (size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].size() != ncols)
      throw std::invalid_argument("ragged block grid");
    for (size_t j = 0; j < ncols; ++j) {
      const QMat& blk = grid[i][j];
      if (heights[i] < 0) heights[i] = blk.rows();
      if (widths[j] < 0) widths[j] = blk.cols();
      if (blk.rows() != heights[i] || blk.cols() != widths[j])
        throw std::invalid_argument("block dimension mismatch");
    }
  }
  int total_r = 0, total_c = 0;
  for (int h : heights) total_r += h;
  for (int w : widths) total_c += w;
  QMat out(total_r, total_c);
  int r0 = 0;
  for (size_t i = 0; i < grid.size(); ++i) {
    int c0 = 0;
    for (size_t j = 0; j < ncols; ++j) {
      out.set_block(r0, c0, grid[i][j]);
      c0 += widths[j];
    }
    r0 += heights[i];
  }
  return out;
}

QMat tensor_with_based_set(const QMat& m, int nonbasepoint_count) {
  if (nonbasepoint_count < 0)
    throw std::invalid_argument("negative based-set size");
  QMat out(m.rows() * nonbasepoint_count, m.cols() * nonbasepoint_count);
  for (int k = 0; k < nonbasepoint_count; ++k)
    out.set_block(k * m.rows(), k * m.cols(), m);
  return out;
}

}  // namespace catmor
