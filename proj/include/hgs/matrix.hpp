// matrix.hpp -- dense matrices over F_p: products, transpose, Gauss-Jordan
// inverse with first-nonzero pivoting, and a reduced-echelon accumulator
// used wherever row-span ranks are needed.
#pragma once

#include <cstddef>

#include "hgs/fp.hpp"

namespace hgs {

class FpMatrix {
 public:
  FpMatrix(std::uint32_t p, int rows, int cols)
      : p_(p),
        rows_(rows),
        cols_(cols),
        a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {
    validate_modulus(p_);
    if (rows < 0 || cols < 0)
      throw std::invalid_argument("FpMatrix: negative shape");
  }

  static FpMatrix identity(std::uint32_t p, int n) {
    FpMatrix m(p, n, n);
    for (int i = 0; i < n; ++i) m.entry(i, i) = 1;
    return m;
  }

  // Builds from signed integers, reducing mod p; all rows must have equal
  // length.
  static FpMatrix from_rows(std::uint32_t p,
                            const std::vector<std::vector<long long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    FpMatrix m(p, r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c)
        throw std::invalid_argument("FpMatrix: ragged rows");
      for (int j = 0; j < c; ++j)
        m.entry(i, j) = fp_reduce(
            p, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
    return m;
  }

  std::uint32_t p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  std::uint32_t at(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * cols_ + c];
  }
  std::uint32_t& entry(int r, int c) {
    return a_[static_cast<std::size_t>(r) * cols_ + c];
  }
  void set(int r, int c, long long v) { entry(r, c) = fp_reduce(p_, v); }

  const std::vector<std::uint32_t>& data() const { return a_; }

  bool operator==(const FpMatrix& o) const {
    return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const FpMatrix& o) const { return !(*this == o); }

  FpMatrix operator*(const FpMatrix& o) const {
    require_same_modulus(o);
    if (cols_ != o.rows_)
      throw std::invalid_argument("FpMatrix: product shape mismatch");
    FpMatrix r(p_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < o.cols_; ++j) {
        std::uint64_t acc = 0;  // n * (p-1)^2 stays far below 2^64
        for (int k = 0; k < cols_; ++k)
          acc += static_cast<std::uint64_t>(at(i, k)) * o.at(k, j);
        r.entry(i, j) = static_cast<std::uint32_t>(acc % p_);
      }
    return r;
  }

  Vec apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols_)
      throw std::invalid_argument("FpMatrix: vector length mismatch");
    Vec y(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      for (int k = 0; k < cols_; ++k)
        acc += static_cast<std::uint64_t>(at(i, k)) * x[static_cast<std::size_t>(k)];
      y[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(acc % p_);
    }
    return y;
  }

  FpMatrix transposed() const {
    FpMatrix t(p_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.entry(j, i) = at(i, j);
    return t;
  }

  // Gauss-Jordan with the first nonzero entry of each column as pivot.
  // Throws std::domain_error("not invertible") on singular input.
  FpMatrix inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("FpMatrix: not square");
    int n = rows_;
    FpMatrix work(*this);
    FpMatrix inv = identity(p_, n);
    for (int col = 0; col < n; ++col) {
      int pivot = -1;
      for (int r = col; r < n; ++r)
        if (work.at(r, col) != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) throw std::domain_error("not invertible");
      if (pivot != col) {
        work.swap_rows(pivot, col);
        inv.swap_rows(pivot, col);
      }
      std::uint32_t d = fp_inv(p_, work.at(col, col));
      work.scale_row(col, d);
      inv.scale_row(col, d);
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        std::uint32_t f = work.at(r, col);
        if (f == 0) continue;
        work.add_scaled_row(r, col, fp_neg(p_, f));
        inv.add_scaled_row(r, col, fp_neg(p_, f));
      }
    }
    return inv;
  }

  bool is_invertible() const {
    if (rows_ != cols_) return false;
    FpMatrix work(*this);
    int n = rows_;
    for (int col = 0; col < n; ++col) {
      int pivot = -1;
      for (int r = col; r < n; ++r)
        if (work.at(r, col) != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) return false;
      if (pivot != col) work.swap_rows(pivot, col);
      std::uint32_t d = fp_inv(p_, work.at(col, col));
      for (int r = col + 1; r < n; ++r) {
        std::uint32_t f = work.at(r, col);
        if (f != 0) work.add_scaled_row(r, col, fp_neg(p_, fp_mul(p_, f, d)));
      }
    }
    return true;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (at(i, j) != at(j, i)) return false;
    return true;
  }

  void swap_rows(int r1, int r2) {
    if (r1 == r2) return;
    for (int j = 0; j < cols_; ++j) std::swap(entry(r1, j), entry(r2, j));
  }
  void scale_row(int r, std::uint32_t f) {
    for (int j = 0; j < cols_; ++j) entry(r, j) = fp_mul(p_, at(r, j), f);
  }
  // row r += f * row src
  void add_scaled_row(int r, int src, std::uint32_t f) {
    for (int j = 0; j < cols_; ++j)
      entry(r, j) = fp_add(p_, at(r, j), fp_mul(p_, f, at(src, j)));
  }

  Vec row(int r) const {
    Vec v(static_cast<std::size_t>(cols_));
    for (int j = 0; j < cols_; ++j) v[static_cast<std::size_t>(j)] = at(r, j);
    return v;
  }
  Vec col(int c) const {
    Vec v(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) v[static_cast<std::size_t>(i)] = at(i, c);
    return v;
  }

 private:
  void require_same_modulus(const FpMatrix& o) const {
    if (p_ != o.p_)
      throw std::invalid_argument("FpMatrix: modulus mismatch");
  }

  std::uint32_t p_;
  int rows_, cols_;
  std::vector<std::uint32_t> a_;
};

// Reduced-echelon accumulator for row vectors of fixed length n over F_p.
// insert() returns whether the dimension grew; basis rows keep strictly
// increasing pivot columns with pivot entries 1 and zeros above.
class RowSpan {
 public:
  RowSpan(std::uint32_t p, int n) : p_(p), n_(n) { validate_modulus(p_); }

  int dim() const { return static_cast<int>(rows_.size()); }
  int ambient_dim() const { return n_; }
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  // Residual of v after eliminating along the basis.
  Vec reduce(Vec v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::uint32_t f = v[static_cast<std::size_t>(pivots_[i])];
      if (f == 0) continue;
      std::uint32_t nf = fp_neg(p_, f);
      for (int j = 0; j < n_; ++j)
        v[static_cast<std::size_t>(j)] =
            fp_add(p_, v[static_cast<std::size_t>(j)],
                   fp_mul(p_, nf, rows_[i][static_cast<std::size_t>(j)]));
    }
    return v;
  }

  bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

  bool insert(const Vec& v) {
    Vec r = reduce(v);
    int piv = -1;
    for (int j = 0; j < n_; ++j)
      if (r[static_cast<std::size_t>(j)] != 0) {
        piv = j;
        break;
      }
    if (piv < 0) return false;
    std::uint32_t d = fp_inv(p_, r[static_cast<std::size_t>(piv)]);
    for (int j = 0; j < n_; ++j)
      r[static_cast<std::size_t>(j)] = fp_mul(p_, r[static_cast<std::size_t>(j)], d);
    // keep pivot columns increasing
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), r);
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), piv);
    // clear the new pivot column in the older rows (reduced form)
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == pos) continue;
      std::uint32_t f = rows_[i][static_cast<std::size_t>(piv)];
      if (f == 0) continue;
      std::uint32_t nf = fp_neg(p_, f);
      for (int j = 0; j < n_; ++j)
        rows_[i][static_cast<std::size_t>(j)] =
            fp_add(p_, rows_[i][static_cast<std::size_t>(j)],
                   fp_mul(p_, nf, rows_[pos][static_cast<std::size_t>(j)]));
    }
    return true;
  }

 private:
  std::uint32_t p_;
  int n_;
  std::vector<Vec> rows_;
  std::vector<int> pivots_;
};

}  // namespace hgs
