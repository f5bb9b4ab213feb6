#pragma once

// Bilinear maps U2 x U1 -> U0 stored as c Gram slices of size a x b, and the
// homotopisms between them. Coordinate k of u2 o u1 is u2 * slice[k] * u1^T.

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "galg/errors.hpp"
#include "galg/linalg.hpp"

namespace galg {

class Bimap {
 public:
  Bimap() = default;
  Bimap(Field f, std::size_t a, std::size_t b, std::vector<Matrix> slices)
      : f_(std::move(f)), a_(a), b_(b), slices_(std::move(slices)) {
    for (const auto& s : slices_) {
      if (s.rows() != a_ || s.cols() != b_) throw DimensionMismatch("slice shape does not match dims");
      if (s.field() != f_) throw FieldMismatch("slice over a different field");
    }
  }

  static Bimap zero(const Field& f, std::size_t a, std::size_t b, std::size_t c) {
    return Bimap(f, a, b, std::vector<Matrix>(c, Matrix(f, a, b)));
  }

  const Field& field() const noexcept { return f_; }
  std::size_t a() const noexcept { return a_; }
  std::size_t b() const noexcept { return b_; }
  std::size_t c() const noexcept { return slices_.size(); }
  const std::vector<Matrix>& slices() const noexcept { return slices_; }
  const Matrix& slice(std::size_t k) const { return slices_.at(k); }

  bool operator==(const Bimap& o) const {
    return f_ == o.f_ && a_ == o.a_ && b_ == o.b_ && slices_ == o.slices_;
  }
  bool operator!=(const Bimap& o) const { return !(*this == o); }

  Vec evaluate(const Vec& u2, const Vec& u1) const {
    if (u2.size() != a_ || u1.size() != b_) throw DimensionMismatch("evaluate argument length");
    Vec out(c(), 0);
    for (std::size_t k = 0; k < c(); ++k) {
      Vec t = vec_mul(u2, slices_[k]);
      Elem s = 0;
      for (std::size_t j = 0; j < b_; ++j) s = f_.add(s, f_.mul(t[j], u1[j]));
      out[k] = s;
    }
    return out;
  }

  /// Sum of x[k] * slice[k]: the Gram matrix of the form x o (-).
  Matrix combine(const Vec& x) const {
    if (x.size() != c()) throw DimensionMismatch("combination length");
    Matrix m(f_, a_, b_);
    for (std::size_t k = 0; k < c(); ++k) {
      if (!x[k]) continue;
      const Matrix& s = slices_[k];
      for (std::size_t i = 0; i < m.data().size(); ++i)
        m.data()[i] = f_.add(m.data()[i], f_.mul(x[k], s.data()[i]));
    }
    return m;
  }

  /// Codomain change: slices T_l = sum_k h[k,l] S_k, for h of size c x c'.
  Bimap pullback(const Matrix& h) const {
    if (h.rows() != c()) throw DimensionMismatch("codomain map rows");
    std::vector<Matrix> out;
    out.reserve(h.cols());
    for (std::size_t l = 0; l < h.cols(); ++l) {
      Vec col(c());
      for (std::size_t k = 0; k < c(); ++k) col[k] = h(k, l);
      out.push_back(combine(col));
    }
    return Bimap(f_, a_, b_, std::move(out));
  }

  /// Restriction to subspaces of U2 and U1 given by basis rows.
  Bimap restrict(const Matrix& b2, const Matrix& b1) const {
    if (b2.cols() != a_ || b1.cols() != b_) throw DimensionMismatch("restriction bases");
    std::vector<Matrix> out;
    const Matrix b1t = b1.transpose();
    for (const auto& s : slices_) out.push_back(b2 * s * b1t);
    return Bimap(f_, b2.rows(), b1.rows(), std::move(out));
  }

  bool is_symmetric() const {
    if (a_ != b_) return false;
    for (const auto& s : slices_)
      if (s != s.transpose()) return false;
    return true;
  }

  bool is_alternating() const {
    if (a_ != b_) return false;
    for (const auto& s : slices_) {
      if (s != -s.transpose()) return false;
      for (std::size_t i = 0; i < a_; ++i)
        if (s(i, i)) return false;
    }
    return true;
  }

 private:
  Field f_;
  std::size_t a_ = 0, b_ = 0;
  std::vector<Matrix> slices_;
};

/// (f2, f1, f0) with (u2 o u1) f0 = u2 f2 o u1 f1.
struct Homotopism {
  Matrix f2, f1, f0;

  static Homotopism identity(const Bimap& u) {
    const Field& f = u.field();
    return {Matrix::identity(f, u.a()), Matrix::identity(f, u.b()), Matrix::identity(f, u.c())};
  }

  bool is_invertible() const {
    return galg::is_invertible(f2) && galg::is_invertible(f1) && galg::is_invertible(f0);
  }

  Homotopism inverse() const { return {galg::inverse(f2), galg::inverse(f1), galg::inverse(f0)}; }

  /// This map followed by g.
  Homotopism then(const Homotopism& g) const { return {f2 * g.f2, f1 * g.f1, f0 * g.f0}; }

  bool operator==(const Homotopism& o) const { return f2 == o.f2 && f1 == o.f1 && f0 == o.f0; }
  bool operator!=(const Homotopism& o) const { return !(*this == o); }
  bool operator<(const Homotopism& o) const {
    if (f2.data() != o.f2.data()) return f2.data() < o.f2.data();
    if (f1.data() != o.f1.data()) return f1.data() < o.f1.data();
    return f0.data() < o.f0.data();
  }
};

inline bool is_homotopism(const Bimap& u, const Bimap& v, const Homotopism& h) {
  if (h.f2.rows() != u.a() || h.f2.cols() != v.a() || h.f1.rows() != u.b() ||
      h.f1.cols() != v.b() || h.f0.rows() != u.c() || h.f0.cols() != v.c())
    throw DimensionMismatch("homotopism shapes do not match the bimaps");
  const Matrix f1t = h.f1.transpose();
  const Bimap lhs = u.pullback(h.f0);
  for (std::size_t l = 0; l < v.c(); ++l)
    if (lhs.slice(l) != h.f2 * v.slice(l) * f1t) return false;
  return true;
}

inline bool is_isotopism(const Bimap& u, const Bimap& v, const Homotopism& h) {
  return h.f2.is_square() && h.f1.is_square() && h.f0.is_square() && h.is_invertible() &&
         is_homotopism(u, v, h);
}

/// The bimap V for which the invertible triple h is an isotopism U -> V.
inline Bimap transport(const Bimap& u, const Homotopism& h) {
  const Matrix g2 = inverse(h.f2), g1t = inverse(h.f1).transpose();
  const Bimap w = u.pullback(h.f0);
  std::vector<Matrix> out;
  for (const auto& s : w.slices()) out.push_back(g2 * s * g1t);
  return Bimap(u.field(), u.a(), u.b(), std::move(out));
}

/// A permutation of the axes {2, 1, 0}: axis m of the tensor moves to slot
/// perm[m]. Axis 2 indexes U2, axis 1 indexes U1, axis 0 indexes U0.
using AxisPerm = std::array<int, 3>;

inline AxisPerm compose(const AxisPerm& tau, const AxisPerm& sigma) {
  return {tau[sigma[0]], tau[sigma[1]], tau[sigma[2]]};
}

/// Relabels the axes of the structure-constant tensor.
inline Bimap shuffle_axes(const Bimap& u, const AxisPerm& perm) {
  {
    AxisPerm seen{0, 0, 0};
    for (int m = 0; m < 3; ++m) {
      if (perm[m] < 0 || perm[m] > 2 || seen[perm[m]]++) throw BadParameters("not a permutation of {2,1,0}");
    }
  }
  const Field& f = u.field();
  const std::array<std::size_t, 3> dims{u.c(), u.b(), u.a()};
  std::array<std::size_t, 3> nd{};
  for (int m = 0; m < 3; ++m) nd[perm[m]] = dims[m];
  std::vector<Matrix> out(nd[0], Matrix(f, nd[2], nd[1]));
  std::array<std::size_t, 3> x{}, y{};
  for (x[2] = 0; x[2] < dims[2]; ++x[2])
    for (x[1] = 0; x[1] < dims[1]; ++x[1])
      for (x[0] = 0; x[0] < dims[0]; ++x[0]) {
        const Elem v = u.slice(x[0])(x[2], x[1]);
        if (!v) continue;
        for (int m = 0; m < 3; ++m) y[perm[m]] = x[m];
        out[y[0]](y[2], y[1]) = v;
      }
  return Bimap(f, nd[2], nd[1], std::move(out));
}

/// The three coordinate shuffles; `swap21` transposes, the other two dualize
/// and exchange U0 with U1 or U2.
enum class Shuffle { identity, swap21, swap10, swap20 };

inline AxisPerm axis_perm(Shuffle s) {
  switch (s) {
    case Shuffle::swap21: return {0, 2, 1};
    case Shuffle::swap10: return {1, 0, 2};
    case Shuffle::swap20: return {2, 1, 0};
    default: return {0, 1, 2};
  }
}

inline Bimap shuffle(const Bimap& u, Shuffle s) { return shuffle_axes(u, axis_perm(s)); }

/// Image of an isotopism U -> V under a shuffle, as an isotopism U^s -> V^s.
inline Homotopism shuffle_isotopism(const Homotopism& h, Shuffle s) {
  switch (s) {
    case Shuffle::identity:
      return h;
    case Shuffle::swap21:
      return {h.f1, h.f2, h.f0};
    case Shuffle::swap10:
      return {h.f2, inverse(h.f0).transpose(), inverse(h.f1).transpose()};
    case Shuffle::swap20:
      return {inverse(h.f0).transpose(), h.f1, inverse(h.f2).transpose()};
  }
  return h;
}

/// Direct sum of codomains of bimaps sharing U2 x U1.
inline Bimap intersect(const std::vector<Bimap>& us) {
  if (us.empty()) throw DimensionMismatch("intersect needs at least one bimap");
  std::vector<Matrix> slices;
  for (const auto& u : us) {
    if (u.a() != us[0].a() || u.b() != us[0].b()) throw DimensionMismatch("intersect needs common U2 x U1");
    if (u.field() != us[0].field()) throw FieldMismatch("intersect over different fields");
    for (const auto& s : u.slices()) slices.push_back(s);
  }
  return Bimap(us[0].field(), us[0].a(), us[0].b(), std::move(slices));
}

namespace detail {
inline void check_direct_sum(const std::vector<Subspace>& parts, std::size_t n, const Field& f) {
  std::size_t total = 0;
  Subspace sum(f, n);
  for (const auto& p : parts) {
    if (p.ambient_dim() != n) throw DimensionMismatch("partition ambient dimension");
    total += p.dim();
    sum = sum + p;
  }
  if (total != n || !sum.is_full()) throw NotDirectSum("parts do not form a direct sum");
}
}  // namespace detail

/// True iff U2_j o U1_k = 0 whenever j != k.
inline bool orthogonal_check(const Bimap& u, const std::vector<Subspace>& parts2,
                             const std::vector<Subspace>& parts1) {
  detail::check_direct_sum(parts2, u.a(), u.field());
  detail::check_direct_sum(parts1, u.b(), u.field());
  for (std::size_t j = 0; j < parts2.size(); ++j)
    for (std::size_t k = 0; k < parts1.size(); ++k) {
      if (j == k || parts2[j].is_zero() || parts1[k].is_zero()) continue;
      const Matrix b1t = parts1[k].basis().transpose();
      for (const auto& s : u.slices())
        if (!(parts2[j].basis() * s * b1t).is_zero()) return false;
    }
  return true;
}

}  // namespace galg
