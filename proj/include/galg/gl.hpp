#pragma once

// General linear groups over finite fields: orders and ordered enumeration.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "galg/errors.hpp"
#include "galg/linalg.hpp"

namespace galg {

/// |GL(n, q)| = prod_{i<n} (q^n - q^i), or nullopt on 64-bit overflow.
inline std::optional<std::uint64_t> gl_order(std::size_t n, std::uint64_t q) {
  unsigned __int128 order = 1, qn = 1;
  for (std::size_t i = 0; i < n; ++i) {
    qn *= q;
    if (qn > ~0ULL) return std::nullopt;
  }
  unsigned __int128 qi = 1;
  for (std::size_t i = 0; i < n; ++i) {
    order *= (qn - qi);
    if (order > ~0ULL) return std::nullopt;
    qi *= q;
  }
  return static_cast<std::uint64_t>(order);
}

/// Vector with index `idx` in lexicographic order (first entry most significant).
inline Vec vector_from_index(std::uint64_t idx, std::size_t n, std::uint64_t q) {
  Vec v(n);
  for (std::size_t j = n; j-- > 0;) {
    v[j] = static_cast<Elem>(idx % q);
    idx /= q;
  }
  return v;
}

/// Calls fn on every element of GL(n, q) in lexicographic order of the
/// row-major entries; stops early when fn returns false. Throws GTooLarge when
/// the group order exceeds `budget`.
inline void for_each_gl(const Field& f, std::size_t n, std::uint64_t budget,
                        const std::function<bool(const Matrix&)>& fn) {
  auto order = gl_order(n, f.order());
  if (!order || *order > budget) throw GTooLarge("GL(" + std::to_string(n) + "," + std::to_string(f.order()) + ") exceeds the search budget");
  if (n == 0) {
    fn(Matrix(f, 0, 0));
    return;
  }
  const std::uint64_t q = f.order();
  std::uint64_t qn = 1;
  for (std::size_t i = 0; i < n; ++i) qn *= q;
  std::vector<Vec> vectors(qn);
  for (std::uint64_t i = 0; i < qn; ++i) vectors[i] = vector_from_index(i, n, q);
  Matrix m(f, n, n);
  std::vector<Subspace> spans(n + 1);
  spans[0] = Subspace::zero(f, n);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t row) {
    if (row == n) {
      if (!fn(m)) stop = true;
      return;
    }
    for (std::uint64_t i = 1; i < qn && !stop; ++i) {
      if (spans[row].contains(vectors[i])) continue;
      m.set_row(row, vectors[i]);
      spans[row + 1] = spans[row] + Subspace::span(Matrix::row_vector(f, vectors[i]));
      rec(row + 1);
    }
  };
  rec(0);
}

}  // namespace galg
