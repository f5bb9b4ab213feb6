#pragma once

// Dense matrices over a Field, Gaussian elimination, canonical subspaces.
// Vectors are rows and matrices act on the right: v -> vA.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "galg/errors.hpp"
#include "galg/field.hpp"
#include "galg/rng.hpp"

namespace galg {

using Vec = std::vector<Elem>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
      : f_(std::move(f)), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw DimensionMismatch("entry count does not match shape");
  }

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix scalar(const Field& f, std::size_t n, Elem s) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
  }

  /// Integer entries mapped through Z -> GF(p).
  static Matrix from_ints(const Field& f,
                          std::initializer_list<std::initializer_list<long long>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    Matrix m(f, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw DimensionMismatch("ragged matrix literal");
      std::size_t j = 0;
      for (long long v : row) m(i, j++) = f.from_int(v);
      ++i;
    }
    return m;
  }

  static Matrix row_vector(const Field& f, const Vec& v) {
    return Matrix(f, 1, v.size(), v);
  }

  static Matrix random(const Field& f, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(f, rows, cols);
    for (auto& x : m.a_) x = static_cast<Elem>(rng.below(f.order()));
    return m;
  }

  static Matrix random_invertible(const Field& f, std::size_t n, Rng& rng);

  const Field& field() const noexcept { return f_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Elem operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Elem* row_ptr(std::size_t i) const { return a_.data() + i * cols_; }
  Elem* row_ptr(std::size_t i) { return a_.data() + i * cols_; }
  const std::vector<Elem>& data() const noexcept { return a_; }
  std::vector<Elem>& data() noexcept { return a_; }

  Vec row(std::size_t i) const { return Vec(row_ptr(i), row_ptr(i) + cols_); }
  void set_row(std::size_t i, const Vec& v) {
    if (v.size() != cols_) throw DimensionMismatch("row length");
    std::copy(v.begin(), v.end(), row_ptr(i));
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_ && f_ == o.f_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (Elem x : a_)
      if (x) return false;
    return true;
  }
  bool is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_.add(a_[i], o.a_[i]);
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_.sub(a_[i], o.a_[i]);
    return r;
  }
  Matrix operator-() const {
    Matrix r(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_.neg(a_[i]);
    return r;
  }
  Matrix scaled(Elem s) const {
    Matrix r(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_.mul(s, a_[i]);
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product shapes");
    if (f_ != o.f_) throw FieldMismatch("matrix product over different fields");
    Matrix r(f_, rows_, o.cols_);
    if (f_.is_prime_field() && f_.characteristic() < 65536) {
      const std::uint64_t p = f_.characteristic();
      std::vector<std::uint64_t> acc(o.cols_);
      for (std::size_t i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        const Elem* ar = row_ptr(i);
        std::size_t pending = 0;
        for (std::size_t k = 0; k < cols_; ++k) {
          const std::uint64_t x = ar[k];
          if (!x) continue;
          const Elem* br = o.row_ptr(k);
          for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += x * br[j];
          if (++pending == (1u << 30)) {
            for (auto& v : acc) v %= p;
            pending = 0;
          }
        }
        Elem* rr = r.row_ptr(i);
        for (std::size_t j = 0; j < o.cols_; ++j) rr[j] = static_cast<Elem>(acc[j] % p);
      }
      return r;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      Elem* rr = r.row_ptr(i);
      for (std::size_t k = 0; k < cols_; ++k) {
        const Elem x = (*this)(i, k);
        if (!x) continue;
        const Elem* br = o.row_ptr(k);
        for (std::size_t j = 0; j < o.cols_; ++j) rr[j] = f_.add(rr[j], f_.mul(x, br[j]));
      }
    }
    return r;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
    Matrix b(f_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionMismatch("block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(f_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i) m.set_row(i, row(idx[i]));
    return m;
  }

  static Matrix vstack(const std::vector<Matrix>& parts, const Field& f, std::size_t cols) {
    std::size_t r = 0;
    for (const auto& p : parts) {
      if (p.cols_ != cols) throw DimensionMismatch("vstack column mismatch");
      r += p.rows_;
    }
    Matrix m(f, r, cols);
    std::size_t at = 0;
    for (const auto& p : parts) {
      std::copy(p.a_.begin(), p.a_.end(), m.a_.begin() + at * cols);
      at += p.rows_;
    }
    return m;
  }

  static Matrix hstack(const std::vector<Matrix>& parts, const Field& f, std::size_t rows) {
    std::size_t c = 0;
    for (const auto& p : parts) {
      if (p.rows_ != rows) throw DimensionMismatch("hstack row mismatch");
      c += p.cols_;
    }
    Matrix m(f, rows, c);
    std::size_t at = 0;
    for (const auto& p : parts) {
      m.set_block(0, at, p);
      at += p.cols_;
    }
    return m;
  }

  static Matrix block_diag(const std::vector<Matrix>& parts, const Field& f) {
    std::size_t r = 0, c = 0;
    for (const auto& p : parts) {
      r += p.rows_;
      c += p.cols_;
    }
    Matrix m(f, r, c);
    std::size_t ar = 0, ac = 0;
    for (const auto& p : parts) {
      m.set_block(ar, ac, p);
      ar += p.rows_;
      ac += p.cols_;
    }
    return m;
  }

  static Matrix kron(const Matrix& x, const Matrix& y) {
    const Field& f = x.f_;
    Matrix m(f, x.rows_ * y.rows_, x.cols_ * y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t j = 0; j < x.cols_; ++j) {
        const Elem s = x(i, j);
        if (!s) continue;
        for (std::size_t k = 0; k < y.rows_; ++k)
          for (std::size_t l = 0; l < y.cols_; ++l)
            m(i * y.rows_ + k, j * y.cols_ + l) = f.mul(s, y(k, l));
      }
    return m;
  }

  /// Row-major flattening as a single row vector.
  Vec flatten() const { return a_; }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("shape mismatch");
    if (f_ != o.f_) throw FieldMismatch("different fields");
  }

  Field f_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? " [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << "]";
  }
  return os << "]";
}

inline Vec vec_mul(const Vec& v, const Matrix& a) {
  if (v.size() != a.rows()) throw DimensionMismatch("vector-matrix product");
  const Field& f = a.field();
  Vec out(a.cols(), 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k]) continue;
    const Elem* r = a.row_ptr(k);
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] = f.add(out[j], f.mul(v[k], r[j]));
  }
  return out;
}

inline bool is_zero_vec(const Vec& v) {
  for (Elem x : v)
    if (x) return false;
  return true;
}

namespace detail {

// dst[j] -= s * src[j] for j in [from, n).
inline void row_axpy(const Field& f, Elem* dst, const Elem* src, Elem s, std::size_t from,
                     std::size_t n) {
  if (!s) return;
  if (f.is_prime_field()) {
    const std::uint64_t p = f.characteristic();
    const std::uint64_t ns = p - s;
    for (std::size_t j = from; j < n; ++j)
      if (src[j]) dst[j] = static_cast<Elem>((dst[j] + ns * src[j]) % p);
    return;
  }
  const Elem ns = f.neg(s);
  for (std::size_t j = from; j < n; ++j)
    if (src[j]) dst[j] = f.add(dst[j], f.mul(ns, src[j]));
}

inline void row_scale(const Field& f, Elem* r, Elem s, std::size_t from, std::size_t n) {
  if (s == 1) return;
  for (std::size_t j = from; j < n; ++j) r[j] = f.mul(s, r[j]);
}

}  // namespace detail

/// Reduced row echelon form computed in place over the first `pivot_cols`
/// columns (all columns by default). Returns the pivot columns; the rank
/// equals their count and the nonzero rows come first.
inline std::vector<std::size_t> rref_in_place(Matrix& m, std::size_t pivot_cols = SIZE_MAX,
                                              bool reduced = true) {
  const Field& f = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  if (pivot_cols > cols) pivot_cols = cols;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) std::swap_ranges(m.row_ptr(piv), m.row_ptr(piv) + cols, m.row_ptr(r));
    detail::row_scale(f, m.row_ptr(r), f.inv(m(r, c)), c, cols);
    for (std::size_t i = reduced ? 0 : r + 1; i < rows; ++i) {
      if (i == r) continue;
      const Elem s = m(i, c);
      if (s) detail::row_axpy(f, m.row_ptr(i), m.row_ptr(r), s, c, cols);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(const Matrix& a) {
  Matrix m = a;
  return rref_in_place(m, SIZE_MAX, false).size();
}

inline Elem determinant(const Matrix& a) {
  if (!a.is_square()) throw NotSquare("determinant of non-square matrix");
  const Field& f = a.field();
  Matrix m = a;
  const std::size_t n = m.rows();
  Elem det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap_ranges(m.row_ptr(piv), m.row_ptr(piv) + n, m.row_ptr(c));
      det = f.neg(det);
    }
    const Elem d = m(c, c);
    det = f.mul(det, d);
    const Elem di = f.inv(d);
    for (std::size_t i = c + 1; i < n; ++i) {
      const Elem s = m(i, c);
      if (s) detail::row_axpy(f, m.row_ptr(i), m.row_ptr(c), f.mul(s, di), c, n);
    }
  }
  return det;
}

inline std::optional<Matrix> try_inverse(const Matrix& a) {
  if (!a.is_square()) throw NotSquare("inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix aug = Matrix::hstack({a, Matrix::identity(a.field(), n)}, a.field(), n);
  auto piv = rref_in_place(aug, n);
  if (piv.size() != n) return std::nullopt;
  return aug.block(0, n, n, n);
}

inline Matrix inverse(const Matrix& a) {
  auto r = try_inverse(a);
  if (!r) throw NotInvertible("matrix is singular");
  return *r;
}

inline bool is_invertible(const Matrix& a) { return a.is_square() && rank(a) == a.rows(); }

inline Matrix mat_pow(Matrix a, std::uint64_t e) {
  if (!a.is_square()) throw NotSquare("power of non-square matrix");
  Matrix r = Matrix::identity(a.field(), a.rows());
  while (e) {
    if (e & 1) r = r * a;
    e >>= 1;
    if (e) a = a * a;
  }
  return r;
}

inline Matrix Matrix::random_invertible(const Field& f, std::size_t n, Rng& rng) {
  for (;;) {
    Matrix m = random(f, n, n, rng);
    if (is_invertible(m)) return m;
  }
}

/// A subspace of K^n stored by its canonical reduced echelon basis.
class Subspace {
 public:
  Subspace() = default;
  Subspace(const Field& f, std::size_t n) : basis_(f, 0, n) {}

  /// Row space of `rows`.
  static Subspace span(const Matrix& rows) {
    Matrix m = rows;
    auto piv = rref_in_place(m);
    Subspace s;
    s.basis_ = m.block(0, 0, piv.size(), m.cols());
    s.pivots_ = std::move(piv);
    return s;
  }
  static Subspace span(const Field& f, std::size_t n, const std::vector<Vec>& vs) {
    Matrix m(f, vs.size(), n);
    for (std::size_t i = 0; i < vs.size(); ++i) m.set_row(i, vs[i]);
    return span(m);
  }
  static Subspace zero(const Field& f, std::size_t n) { return Subspace(f, n); }
  static Subspace full(const Field& f, std::size_t n) { return span(Matrix::identity(f, n)); }

  const Field& field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  bool is_zero() const noexcept { return dim() == 0; }
  bool is_full() const noexcept { return dim() == ambient_dim(); }

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  /// Coordinates of v in the echelon basis, or nullopt when v is outside.
  std::optional<Vec> coordinates(const Vec& v) const {
    if (v.size() != ambient_dim()) throw DimensionMismatch("vector length");
    const Field& f = field();
    Vec r = v;
    Vec c(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      c[i] = r[pivots_[i]];
      if (c[i]) detail::row_axpy(f, r.data(), basis_.row_ptr(i), c[i], 0, r.size());
    }
    if (!is_zero_vec(r)) return std::nullopt;
    return c;
  }

  /// Coordinates of every row of m; throws if some row lies outside.
  Matrix coordinates(const Matrix& m) const {
    Matrix out(field(), m.rows(), dim());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      auto c = coordinates(m.row(i));
      if (!c) throw InvalidInput("vector outside subspace");
      out.set_row(i, *c);
    }
    return out;
  }

  bool contains(const Vec& v) const { return coordinates(v).has_value(); }
  bool contains(const Subspace& s) const {
    for (std::size_t i = 0; i < s.dim(); ++i)
      if (!contains(s.basis_.row(i))) return false;
    return true;
  }

  Subspace operator+(const Subspace& o) const {
    return span(Matrix::vstack({basis_, o.basis_}, field(), ambient_dim()));
  }

  Subspace intersect(const Subspace& o) const;

  /// Canonical complement spanned by standard basis vectors off the pivots.
  Matrix complement_basis() const {
    std::vector<bool> piv(ambient_dim(), false);
    for (auto p : pivots_) piv[p] = true;
    Matrix m(field(), ambient_dim() - dim(), ambient_dim());
    std::size_t r = 0;
    for (std::size_t j = 0; j < ambient_dim(); ++j)
      if (!piv[j]) m(r++, j) = 1;
    return m;
  }

 private:
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Solves x A = b for many right-hand sides after a single elimination.
class LeftSolver {
 public:
  explicit LeftSolver(const Matrix& a) : a_rows_(a.rows()), a_cols_(a.cols()) {
    const Field& f = a.field();
    Matrix aug = Matrix::hstack({a, Matrix::identity(f, a.rows())}, f, a.rows());
    pivots_ = rref_in_place(aug, a.cols());
    reduced_ = aug.block(0, 0, pivots_.size(), a.cols());
    transform_ = aug.block(0, a.cols(), aug.rows(), a.rows());
  }

  std::size_t rank() const noexcept { return pivots_.size(); }

  /// {x : x A = 0} in canonical form.
  Subspace kernel() const {
    const std::size_t r = rank();
    return Subspace::span(transform_.block(r, 0, a_rows_ - r, a_rows_));
  }

  std::optional<Vec> solve(const Vec& b) const {
    if (b.size() != a_cols_) throw DimensionMismatch("right-hand side length");
    const Field& f = reduced_.field();
    Vec r = b;
    Vec x(a_rows_, 0);
    for (std::size_t i = 0; i < rank(); ++i) {
      const Elem c = r[pivots_[i]];
      if (!c) continue;
      detail::row_axpy(f, r.data(), reduced_.row_ptr(i), c, 0, r.size());
      const Elem* t = transform_.row_ptr(i);
      for (std::size_t j = 0; j < a_rows_; ++j) x[j] = f.add(x[j], f.mul(c, t[j]));
    }
    if (!is_zero_vec(r)) return std::nullopt;
    return x;
  }

  std::optional<Matrix> solve(const Matrix& b) const {
    Matrix x(reduced_.field(), b.rows(), a_rows_);
    for (std::size_t i = 0; i < b.rows(); ++i) {
      auto s = solve(b.row(i));
      if (!s) return std::nullopt;
      x.set_row(i, *s);
    }
    return x;
  }

 private:
  std::size_t a_rows_, a_cols_;
  std::vector<std::size_t> pivots_;
  Matrix reduced_;
  Matrix transform_;
};

/// {x : A xᵀ = 0}, read off the reduced echelon form of A.
inline Subspace right_kernel(const Matrix& a) {
  const Field& f = a.field();
  const std::size_t n = a.cols();
  Matrix m = a;
  auto piv = rref_in_place(m);
  std::vector<bool> is_piv(n, false);
  for (auto p : piv) is_piv[p] = true;
  Matrix basis(f, n - piv.size(), n);
  std::size_t r = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_piv[j]) continue;
    basis(r, j) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) basis(r, piv[i]) = f.neg(m(i, j));
    ++r;
  }
  return Subspace::span(basis);
}

/// {x : x A = 0}.
inline Subspace left_kernel(const Matrix& a) { return right_kernel(a.transpose()); }

/// Row space, i.e. the image of v -> vA.
inline Subspace image(const Matrix& a) { return Subspace::span(a); }

inline Subspace Subspace::intersect(const Subspace& o) const {
  // x B1 = y B2  <=>  (x, -y) [B1; B2] = 0
  const Field& f = field();
  if (dim() == 0 || o.dim() == 0) return Subspace(f, ambient_dim());
  Matrix stacked = Matrix::vstack({basis_, o.basis_}, f, ambient_dim());
  Subspace k = left_kernel(stacked);
  Matrix xs = k.basis().block(0, 0, k.dim(), dim());
  return span(xs * basis_);
}

/// Image of a subspace under v -> vA.
inline Subspace map_subspace(const Subspace& s, const Matrix& a) {
  return Subspace::span(s.basis() * a);
}

/// Matrix of z restricted to an invariant subspace W, in W's echelon basis.
inline Matrix restrict_operator(const Matrix& z, const Subspace& w) {
  return w.coordinates(w.basis() * z);
}

struct FittingSplit {
  std::size_t n = 0;
  Subspace kernel;  // ker z^n
  Subspace image;   // im z^n
};

inline FittingSplit fitting_split(const Matrix& z) {
  if (!z.is_square()) throw NotSquare("fitting_split needs a square matrix");
  const std::size_t d = z.rows();
  Matrix pw = Matrix::identity(z.field(), d);
  std::size_t n = 0;
  std::size_t prev = d;
  for (;;) {
    Matrix next = pw * z;
    const std::size_t r = rank(next);
    if (r == prev) break;
    prev = r;
    pw = std::move(next);
    ++n;
  }
  return {n, left_kernel(pw), image(pw)};
}

}  // namespace galg
