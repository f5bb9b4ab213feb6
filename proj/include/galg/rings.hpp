#pragma once

// Operator rings of a bimap and adjoint-morphism spaces between bimaps.
//
//   M(U)      pairs (F, G) with F S_k = S_k G^T for every slice
//   Adj(U,V)  pairs (F, G) with F S^V_k = S^U_k G^T  (F: a x a', G: b' x b)
//   L(U)      pairs (F, H) with F S_l = sum_k H[k,l] S_k
//   R(U)      pairs (G, H) with S_l G^T = sum_k H[k,l] S_k
//   C(U)      triples (F, G, H) satisfying both of the above
//
// Each space is the kernel of one explicit coefficient matrix.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galg/bimap.hpp"
#include "galg/errors.hpp"
#include "galg/linalg.hpp"
#include "galg/units.hpp"

namespace galg {

enum class RingKind { L, M, R, C, Adj };

inline const char* to_string(RingKind k) {
  switch (k) {
    case RingKind::L: return "L";
    case RingKind::M: return "M";
    case RingKind::R: return "R";
    case RingKind::C: return "C";
    case RingKind::Adj: return "Adj";
  }
  return "?";
}

/// A subspace of tuples of matrices with fixed shapes, given by a basis.
struct OperatorSpace {
  RingKind kind = RingKind::M;
  Field field;
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  std::vector<std::vector<Matrix>> basis;

  std::size_t dim() const noexcept { return basis.size(); }

  std::vector<Matrix> element(const Vec& coeffs) const {
    std::vector<Matrix> out;
    for (auto [r, c] : shapes) out.emplace_back(field, r, c);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (!coeffs[i]) continue;
      for (std::size_t j = 0; j < shapes.size(); ++j) out[j] = out[j] + basis[i][j].scaled(coeffs[i]);
    }
    return out;
  }

  std::vector<Matrix> random_element(Rng& rng) const {
    Vec c(dim());
    for (auto& x : c) x = static_cast<Elem>(rng.below(field.order()));
    return element(c);
  }

  /// Flattened coordinates of a tuple in the ambient space of all tuples.
  Vec flatten(const std::vector<Matrix>& t) const {
    Vec v;
    for (const auto& m : t) v.insert(v.end(), m.data().begin(), m.data().end());
    return v;
  }

  Subspace as_subspace() const {
    std::size_t n = 0;
    for (auto [r, c] : shapes) n += r * c;
    Matrix m(field, basis.size(), n);
    for (std::size_t i = 0; i < basis.size(); ++i) m.set_row(i, flatten(basis[i]));
    return Subspace::span(m);
  }
};

namespace detail {

using Residual = std::function<std::vector<Matrix>(const std::vector<Matrix>&)>;

// Kernel of a linear map from tuples of matrices to tuples of matrices; the
// coefficient matrix is assembled column by column from unit tuples.
inline OperatorSpace solve_operator_space(RingKind kind, const Field& f,
                                          std::vector<std::pair<std::size_t, std::size_t>> shapes,
                                          const Residual& residual) {
  std::size_t unknowns = 0;
  for (auto [r, c] : shapes) unknowns += r * c;
  std::vector<Matrix> zero;
  for (auto [r, c] : shapes) zero.emplace_back(f, r, c);
  std::size_t outputs = 0;
  for (const auto& m : residual(zero)) outputs += m.rows() * m.cols();
  Matrix e(f, outputs, unknowns);
  std::size_t col = 0;
  for (std::size_t j = 0; j < shapes.size(); ++j) {
    for (std::size_t x = 0; x < shapes[j].first * shapes[j].second; ++x, ++col) {
      auto t = zero;
      t[j].data()[x] = 1;
      std::size_t row = 0;
      for (const auto& m : residual(t))
        for (Elem v : m.data()) e(row++, col) = v;
    }
  }
  Subspace k = right_kernel(e);
  OperatorSpace out;
  out.kind = kind;
  out.field = f;
  out.shapes = std::move(shapes);
  for (std::size_t i = 0; i < k.dim(); ++i) {
    std::vector<Matrix> tuple;
    std::size_t at = 0;
    for (auto [r, c] : out.shapes) {
      Matrix m(f, r, c);
      for (std::size_t x = 0; x < r * c; ++x) m.data()[x] = k.basis()(i, at + x);
      at += r * c;
      tuple.push_back(std::move(m));
    }
    out.basis.push_back(std::move(tuple));
  }
  return out;
}

inline Matrix combine_slices(const Bimap& u, const Matrix& h, std::size_t l) {
  Vec col(u.c());
  for (std::size_t k = 0; k < u.c(); ++k) col[k] = h(k, l);
  return u.combine(col);
}

}  // namespace detail

/// Adj(U, V): pairs (F, G), F: a x a', G: b' x b, with F S^V_k = S^U_k G^T.
inline OperatorSpace adjoint_morphisms(const Bimap& u, const Bimap& v) {
  if (u.c() != v.c()) throw DimensionMismatch("adjoint morphisms need a common codomain");
  if (u.field() != v.field()) throw FieldMismatch("bimaps over different fields");
  return detail::solve_operator_space(
      RingKind::Adj, u.field(), {{u.a(), v.a()}, {v.b(), u.b()}}, [&](const std::vector<Matrix>& t) {
        std::vector<Matrix> out;
        const Matrix gt = t[1].transpose();
        for (std::size_t k = 0; k < u.c(); ++k) out.push_back(t[0] * v.slice(k) - u.slice(k) * gt);
        return out;
      });
}

/// M(U), the adjoint ring.
inline OperatorSpace adjoint_ring(const Bimap& u) {
  OperatorSpace s = adjoint_morphisms(u, u);
  s.kind = RingKind::M;
  return s;
}

inline OperatorSpace left_ring(const Bimap& u) {
  return detail::solve_operator_space(RingKind::L, u.field(), {{u.a(), u.a()}, {u.c(), u.c()}},
                                      [&](const std::vector<Matrix>& t) {
                                        std::vector<Matrix> out;
                                        for (std::size_t l = 0; l < u.c(); ++l)
                                          out.push_back(t[0] * u.slice(l) - detail::combine_slices(u, t[1], l));
                                        return out;
                                      });
}

inline OperatorSpace right_ring(const Bimap& u) {
  return detail::solve_operator_space(RingKind::R, u.field(), {{u.b(), u.b()}, {u.c(), u.c()}},
                                      [&](const std::vector<Matrix>& t) {
                                        std::vector<Matrix> out;
                                        const Matrix gt = t[0].transpose();
                                        for (std::size_t l = 0; l < u.c(); ++l)
                                          out.push_back(u.slice(l) * gt - detail::combine_slices(u, t[1], l));
                                        return out;
                                      });
}

/// C(U): triples (F, G, H) with F S_l = S_l G^T = sum_k H[k,l] S_k.
inline OperatorSpace centroid(const Bimap& u) {
  return detail::solve_operator_space(
      RingKind::C, u.field(), {{u.a(), u.a()}, {u.b(), u.b()}, {u.c(), u.c()}},
      [&](const std::vector<Matrix>& t) {
        std::vector<Matrix> out;
        const Matrix gt = t[1].transpose();
        for (std::size_t l = 0; l < u.c(); ++l) {
          const Matrix h = detail::combine_slices(u, t[2], l);
          out.push_back(t[0] * u.slice(l) - h);
          out.push_back(u.slice(l) * gt - h);
        }
        return out;
      });
}

/// Checks the defining identity of `kind` for one tuple.
inline bool satisfies_identity(const Bimap& u, const Bimap& v, RingKind kind, const std::vector<Matrix>& t) {
  switch (kind) {
    case RingKind::M:
    case RingKind::Adj:
      for (std::size_t k = 0; k < u.c(); ++k)
        if (t[0] * v.slice(k) != u.slice(k) * t[1].transpose()) return false;
      return true;
    case RingKind::L:
      for (std::size_t l = 0; l < u.c(); ++l)
        if (t[0] * u.slice(l) != detail::combine_slices(u, t[1], l)) return false;
      return true;
    case RingKind::R:
      for (std::size_t l = 0; l < u.c(); ++l)
        if (u.slice(l) * t[0].transpose() != detail::combine_slices(u, t[1], l)) return false;
      return true;
    case RingKind::C:
      for (std::size_t l = 0; l < u.c(); ++l) {
        const Matrix h = detail::combine_slices(u, t[2], l);
        if (t[0] * u.slice(l) != h || u.slice(l) * t[1].transpose() != h) return false;
      }
      return true;
  }
  return false;
}

/// Faithful matrix representation of a ring as a multiplicatively closed
/// space of block diagonal matrices: M as diag(F, G^T), L as diag(F, H),
/// R as diag(G, H), C as diag(F, G, H).
inline Matrix ring_embedding(RingKind kind, const std::vector<Matrix>& t) {
  const Field& f = t[0].field();
  switch (kind) {
    case RingKind::M:
    case RingKind::Adj:
      return Matrix::block_diag({t[0], t[1].transpose()}, f);
    default:
      return Matrix::block_diag(t, f);
  }
}

inline MatrixAlgebra ring_algebra(const OperatorSpace& s) {
  std::size_t n = 0;
  for (std::size_t j = 0; j < s.shapes.size(); ++j) n += s.shapes[j].first;
  std::vector<Matrix> span;
  for (const auto& t : s.basis) span.push_back(ring_embedding(s.kind, t));
  return MatrixAlgebra::from_span(s.field, n, span);
}

struct RingDims {
  std::size_t L = 0, M = 0, R = 0, T = 0, C = 0;
};

inline RingDims tri_ring_dims(const Bimap& u) {
  RingDims d;
  d.L = left_ring(u).dim();
  d.M = adjoint_ring(u).dim();
  d.R = right_ring(u).dim();
  d.T = d.L + d.M + d.R;
  d.C = centroid(u).dim();
  return d;
}

/// (F, G) -> (G, F) on M(U) for a symmetric or alternating bimap.
inline std::function<std::vector<Matrix>(const std::vector<Matrix>&)> involution_on_adjoints(const Bimap& u) {
  if (!(u.is_symmetric() || u.is_alternating())) {
    // Skew-symmetric slices in characteristic 2 are symmetric, so this also
    // covers them.
    bool skew = u.a() == u.b();
    for (const auto& s : u.slices())
      if (skew && s != -s.transpose()) skew = false;
    if (!skew) throw NotHermitianSlices("slices are neither symmetric nor skew-symmetric");
  }
  return [](const std::vector<Matrix>& t) { return std::vector<Matrix>{t[1], t[0]}; };
}

struct SelectionBounds {
  double upper_log = 0;      // log_q |M^x| + c^2, or dim M + c^2 when not exact
  bool upper_exact = false;  // whether |M^x| was counted exactly
  std::optional<std::uint64_t> lower_num, lower_den;  // |T^x| / |C^x| in lowest terms
  std::optional<std::uint64_t> m_units;
};

struct SelectionOptions {
  std::uint64_t enumeration_limit = 1ULL << 20;
  bool lower = true;
};

inline SelectionBounds selection_bounds(const Bimap& u, const SelectionOptions& opt = {}) {
  SelectionBounds out;
  const double logq = std::log(static_cast<double>(u.field().order()));
  UnitGroupOptions uo;
  uo.enumeration_limit = opt.enumeration_limit;
  auto count_units = [&](const OperatorSpace& s) -> std::optional<std::uint64_t> {
    MatrixAlgebra a = ring_algebra(s);
    if (!detail::checked_pow(u.field().order(), a.dim(), opt.enumeration_limit)) return std::nullopt;
    std::uint64_t count = 0;
    for_each_element(a, [&](std::uint64_t, const Matrix& m) {
      if (is_invertible(m)) ++count;
      return true;
    });
    return count;
  };
  const OperatorSpace m = adjoint_ring(u);
  out.m_units = count_units(m);
  const double c2 = static_cast<double>(u.c() * u.c());
  if (out.m_units) {
    out.upper_exact = true;
    out.upper_log = std::log(static_cast<double>(*out.m_units)) / logq + c2;
  } else {
    out.upper_log = static_cast<double>(m.dim()) + c2;
  }
  if (opt.lower && out.m_units) {
    auto l = count_units(left_ring(u));
    auto r = count_units(right_ring(u));
    auto c = count_units(centroid(u));
    if (l && r && c) {
      unsigned __int128 num = static_cast<unsigned __int128>(*l) * *out.m_units * *r;
      unsigned __int128 den = *c;
      unsigned __int128 x = num, y = den;
      while (y) {
        auto t = x % y;
        x = y;
        y = t;
      }
      num /= x;
      den /= x;
      if (num <= ~0ULL) {
        out.lower_num = static_cast<std::uint64_t>(num);
        out.lower_den = static_cast<std::uint64_t>(den);
      }
    }
  }
  return out;
}

}  // namespace galg
