#pragma once

// Matrix algebras given by a basis, their closure under products, detection of
// non-nilpotent words, and unit groups.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "galg/errors.hpp"
#include "galg/linalg.hpp"
#include "galg/rng.hpp"

namespace galg {

namespace detail {

struct VecHash {
  std::size_t operator()(const std::vector<Elem>& v) const noexcept {
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    for (Elem x : v) h = (h ^ x) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

inline std::optional<std::uint64_t> checked_pow(std::uint64_t q, std::size_t e,
                                                std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > limit / q) return std::nullopt;
    r *= q;
  }
  return r;
}

}  // namespace detail

inline bool is_nilpotent(const Matrix& z) {
  if (!z.is_square()) throw NotSquare("nilpotency of non-square matrix");
  Matrix p = z;
  std::size_t e = 1;
  while (e < z.rows()) {
    p = p * p;
    e *= 2;
    if (p.is_zero()) return true;
  }
  return p.is_zero();
}

/// A subspace of n x n matrices closed under multiplication.
class MatrixAlgebra {
 public:
  MatrixAlgebra() = default;

  /// Wraps a spanning set that is already known to be closed.
  static MatrixAlgebra from_span(const Field& f, std::size_t n, const std::vector<Matrix>& span) {
    MatrixAlgebra a;
    a.f_ = f;
    a.n_ = n;
    Matrix flat(f, span.size(), n * n);
    for (std::size_t i = 0; i < span.size(); ++i) {
      if (span[i].rows() != n || span[i].cols() != n) throw DimensionMismatch("algebra element shape");
      flat.set_row(i, span[i].data());
    }
    a.flat_ = Subspace::span(flat);
    for (std::size_t i = 0; i < a.flat_.dim(); ++i)
      a.basis_.emplace_back(f, n, n, a.flat_.basis().row(i));
    a.unital_ = a.contains(Matrix::identity(f, n));
    return a;
  }

  const Field& field() const noexcept { return f_; }
  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Matrix>& basis() const noexcept { return basis_; }
  bool unital() const noexcept { return unital_; }

  bool contains(const Matrix& m) const { return flat_.contains(m.data()); }
  std::optional<Vec> coordinates(const Matrix& m) const { return flat_.coordinates(m.data()); }

  Matrix element(const Vec& coeffs) const {
    Matrix m(f_, n_, n_);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (!coeffs[i]) continue;
      m = m + basis_[i].scaled(coeffs[i]);
    }
    return m;
  }

  Matrix random_element(Rng& rng) const {
    Vec c(dim());
    for (auto& x : c) x = static_cast<Elem>(rng.below(f_.order()));
    return element(c);
  }

  /// True when every product of basis elements lies in the span.
  bool is_closed() const {
    for (const auto& x : basis_)
      for (const auto& y : basis_)
        if (!contains(x * y)) return false;
    return true;
  }

 private:
  Field f_;
  std::size_t n_ = 0;
  Subspace flat_;
  std::vector<Matrix> basis_;
  bool unital_ = false;
};

/// Smallest multiplicatively closed subspace containing X (not necessarily unital).
inline MatrixAlgebra algebra_closure(const Field& f, std::size_t n, const std::vector<Matrix>& xs) {
  Subspace span(f, n * n);
  std::vector<Matrix> found, frontier;
  auto add = [&](const Matrix& m) {
    if (span.contains(m.data())) return;
    span = span + Subspace::span(Matrix::row_vector(f, m.data()));
    found.push_back(m);
    frontier.push_back(m);
  };
  for (const auto& x : xs) add(x);
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    next.swap(frontier);
    for (const auto& w : next)
      for (const auto& x : xs) add(w * x);
  }
  return MatrixAlgebra::from_span(f, n, found);
}

/// An algebra is nil iff its n-th power is zero.
inline bool is_nil_algebra(const MatrixAlgebra& a) {
  const Field& f = a.field();
  const std::size_t n = a.ambient_dim();
  std::vector<Matrix> power = a.basis();
  for (std::size_t k = 1; k < n && !power.empty(); ++k) {
    std::vector<Matrix> prods;
    for (const auto& p : power)
      for (const auto& b : a.basis()) prods.push_back(p * b);
    MatrixAlgebra next = MatrixAlgebra::from_span(f, n, prods);
    power = next.basis();
  }
  return power.empty();
}

struct NilpotencyWitness {
  bool nilpotent = true;
  std::vector<std::size_t> word;  // indices into X, multiplied left to right
  Matrix value;
};

/// Either reports that K<X> is nil, or finds a word over X whose product is
/// not nilpotent. Words are searched breadth-first by length.
inline NilpotencyWitness nilpotency_witness(const Field& f, std::size_t n, const std::vector<Matrix>& xs,
                                            std::size_t budget = 200000) {
  NilpotencyWitness out;
  if (xs.empty()) return out;
  if (is_nil_algebra(algebra_closure(f, n, xs))) return out;
  struct Node {
    std::vector<std::size_t> word;
    Matrix value;
  };
  std::unordered_set<std::vector<Elem>, detail::VecHash> seen;
  std::vector<Node> level;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!seen.insert(xs[i].data()).second) continue;
    level.push_back({{i}, xs[i]});
  }
  std::size_t visited = 0;
  while (!level.empty()) {
    for (const auto& node : level) {
      if (!is_nilpotent(node.value)) {
        out.nilpotent = false;
        out.word = node.word;
        out.value = node.value;
        return out;
      }
    }
    std::vector<Node> next;
    for (const auto& node : level) {
      for (std::size_t i = 0; i < xs.size(); ++i) {
        Matrix v = node.value * xs[i];
        if (v.is_zero() || !seen.insert(v.data()).second) continue;
        if (++visited > budget) throw BudgetExceeded("word search budget exhausted");
        auto w = node.word;
        w.push_back(i);
        next.push_back({std::move(w), std::move(v)});
      }
    }
    level.swap(next);
  }
  throw error("non-nil algebra without a non-nilpotent word");
}

/// Order of the group generated by `gens` (invertible matrices), by orbit
/// enumeration of the identity. nullopt when more than `budget` elements.
inline std::optional<std::uint64_t> generated_group_order(const std::vector<Matrix>& gens, std::size_t n,
                                                          const Field& f, std::uint64_t budget) {
  std::unordered_set<std::vector<Elem>, detail::VecHash> seen;
  std::vector<Matrix> frontier{Matrix::identity(f, n)};
  seen.insert(frontier[0].data());
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const auto& g : frontier)
      for (const auto& s : gens) {
        Matrix h = g * s;
        if (seen.insert(h.data()).second) {
          if (seen.size() > budget) return std::nullopt;
          next.push_back(std::move(h));
        }
      }
    frontier.swap(next);
  }
  return seen.size();
}

struct UnitGroup {
  std::vector<Matrix> generators;
  std::optional<std::uint64_t> order;  // exact when `exhaustive`
  bool exhaustive = false;
  std::string method;  // "exhaustive" or "monte-carlo"
};

struct UnitGroupOptions {
  std::uint64_t enumeration_limit = 1ULL << 20;
  std::uint64_t closure_budget = 1ULL << 21;
  std::uint64_t seed = 0;
  std::size_t stable_samples = 32;
};

/// Visits every element of the algebra (q^dim of them) in index order.
inline void for_each_element(const MatrixAlgebra& a, const std::function<bool(std::uint64_t, const Matrix&)>& fn) {
  const Field& f = a.field();
  const std::uint64_t q = f.order();
  const std::size_t d = a.dim();
  const std::size_t nn = a.ambient_dim() * a.ambient_dim();
  Vec coeffs(d, 0);
  auto total = detail::checked_pow(q, d, ~0ULL);
  if (!total) throw BudgetExceeded("algebra too large to enumerate");
  Matrix m(f, a.ambient_dim(), a.ambient_dim());
  for (std::uint64_t idx = 0; idx < *total; ++idx) {
    if (idx) {
      // odometer step: bump the lowest coordinate, carrying on wrap-around
      for (std::size_t i = 0;; ++i) {
        const Elem old = coeffs[i];
        const Elem nw = static_cast<Elem>((old + 1) % q);
        coeffs[i] = nw;
        const Elem delta = f.sub(nw, old);
        const Matrix& b = a.basis()[i];
        for (std::size_t t = 0; t < nn; ++t)
          if (b.data()[t]) m.data()[t] = f.add(m.data()[t], f.mul(delta, b.data()[t]));
        if (nw) break;
      }
    }
    if (!fn(idx, m)) return;
  }
}

/// Unit group of a unital algebra. Exhaustive when q^dim is within the
/// enumeration limit, otherwise seeded random sampling until the generated
/// group stops growing.
inline UnitGroup unit_group(const MatrixAlgebra& a, const UnitGroupOptions& opt = {}) {
  if (!a.unital()) throw NotUnital("unit group of a non-unital algebra");
  const Field& f = a.field();
  const std::size_t n = a.ambient_dim();
  UnitGroup out;
  auto total = detail::checked_pow(f.order(), a.dim(), opt.enumeration_limit);
  if (total) {
    std::uint64_t count = 0;
    for_each_element(a, [&](std::uint64_t, const Matrix& m) {
      if (is_invertible(m)) ++count;
      return true;
    });
    out.order = count;
    out.exhaustive = true;
    out.method = "exhaustive";
    // Greedy generating set drawn from seeded random units; verified by
    // closure only for moderate orders.
    Rng rng(opt.seed);
    std::uint64_t have = 1;
    const bool verify = count <= (1u << 16);
    for (int tries = 0; tries < 256 && have < count; ++tries) {
      Matrix u = a.random_element(rng);
      if (!is_invertible(u)) continue;
      auto trial = out.generators;
      trial.push_back(u);
      if (!verify) {
        out.generators = std::move(trial);
        if (out.generators.size() >= 16) break;
        continue;
      }
      auto ord = generated_group_order(trial, n, f, opt.closure_budget);
      if (ord && *ord > have) {
        have = *ord;
        out.generators = std::move(trial);
      }
    }
    if (out.generators.empty()) out.generators.push_back(Matrix::identity(f, n));
    return out;
  }
  out.method = "monte-carlo";
  Rng rng(opt.seed);
  std::uint64_t have = 1;
  std::size_t stable = 0;
  for (int tries = 0; stable < opt.stable_samples && tries < 4096; ++tries) {
    Matrix u = a.random_element(rng);
    if (!is_invertible(u)) continue;
    auto trial = out.generators;
    trial.push_back(u);
    auto ord = generated_group_order(trial, n, f, opt.closure_budget);
    if (!ord) {
      out.generators = std::move(trial);
      out.order.reset();
      return out;
    }
    if (*ord > have) {
      have = *ord;
      out.generators = std::move(trial);
      stable = 0;
    } else {
      ++stable;
    }
  }
  if (out.generators.empty()) out.generators.push_back(Matrix::identity(f, n));
  out.order = have;
  return out;
}

}  // namespace galg
