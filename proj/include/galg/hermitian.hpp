#pragma once

// Isometry groups, h-isometries and pseudo-isometry cosets of symmetric and
// alternating bimaps, via unitary elements of the adjoint ring.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galg/bimap.hpp"
#include "galg/errors.hpp"
#include "galg/gl.hpp"
#include "galg/isotopism.hpp"
#include "galg/labels.hpp"
#include "galg/linalg.hpp"
#include "galg/rings.hpp"
#include "galg/rng.hpp"
#include "galg/units.hpp"

namespace galg {

inline void require_hermitian(const Bimap& u) { (void)involution_on_adjoints(u); }

struct IsometryGroup {
  std::vector<Matrix> generators;
  std::optional<std::uint64_t> order;
  bool exact = false;
  std::string method;  // "exhaustive", "cayley-closure" or "gl-enumeration"
};

struct IsometryOptions {
  std::uint64_t enumeration_limit = 1ULL << 20;
  std::uint64_t closure_budget = 1ULL << 21;
  std::uint64_t gl_budget = 100000000;
  bool allow_gl_fallback = true;
  std::uint64_t seed = 0;
  std::size_t stable_samples = 32;
};

namespace detail {

inline MatrixAlgebra adjoint_algebra(const Bimap& u) { return ring_algebra(adjoint_ring(u)); }

// (F, G) from the embedding diag(F, G^T).
inline std::pair<Matrix, Matrix> split_adjoint(const Matrix& m, std::size_t a, std::size_t b) {
  return {m.block(0, 0, a, a), m.block(a, a, b, b).transpose()};
}

inline bool preserves_forms(const Bimap& u, const Bimap& v, const Matrix& f) {
  const Matrix ft = f.transpose();
  for (std::size_t k = 0; k < u.c(); ++k)
    if (u.slice(k) != f * v.slice(k) * ft) return false;
  return true;
}

}  // namespace detail

/// Isom(U) = {f : f S_k f^T = S_k for every slice}.
inline IsometryGroup isometry_group(const Bimap& u, const IsometryOptions& opt = {}) {
  require_hermitian(u);
  const Field& f = u.field();
  const std::size_t n = u.a();
  const MatrixAlgebra m = detail::adjoint_algebra(u);
  IsometryGroup out;
  if (detail::checked_pow(f.order(), m.dim(), opt.enumeration_limit)) {
    std::vector<Matrix> unitary;
    for_each_element(m, [&](std::uint64_t, const Matrix& x) {
      auto [F, G] = detail::split_adjoint(x, n, n);
      if ((F * G).is_identity()) unitary.push_back(F);
      return true;
    });
    out.order = unitary.size();
    out.exact = true;
    out.method = "exhaustive";
    GroupClosure closure(f, n);
    Rng rng(opt.seed);
    // seeded order so the generating set does not favour the enumeration order
    for (std::size_t i = unitary.size(); i > 1; --i) std::swap(unitary[i - 1], unitary[rng.below(i)]);
    for (const auto& g : unitary) {
      if (closure.size() == unitary.size()) break;
      if (closure.add(g)) out.generators.push_back(g);
    }
    if (out.generators.empty()) out.generators.push_back(Matrix::identity(f, n));
    return out;
  }
  if (f.characteristic() != 2) {
    // skew elements (P, -P) of M and their Cayley transforms
    const OperatorSpace adj = adjoint_ring(u);
    Matrix sys(f, adj.dim(), n * n);
    for (std::size_t i = 0; i < adj.dim(); ++i) sys.set_row(i, (adj.basis[i][0] + adj.basis[i][1]).data());
    const Subspace skew = left_kernel(sys);
    Rng rng(opt.seed);
    GroupClosure closure(f, n);
    const Matrix id = Matrix::identity(f, n);
    std::size_t stable = 0;
    for (int tries = 0; stable < opt.stable_samples && tries < 4096; ++tries) {
      Matrix p(f, n, n);
      for (std::size_t i = 0; i < skew.dim(); ++i) {
        const Elem c = static_cast<Elem>(rng.below(f.order()));
        if (c) p = p + adj.element(skew.basis().row(i))[0].scaled(c);
      }
      auto inv = try_inverse(id + p);
      if (!inv) continue;
      const Matrix g = (id - p) * *inv;
      if (closure.contains(g)) {
        ++stable;
        continue;
      }
      closure.add(g);
      out.generators.push_back(g);
      if (closure.size() > opt.closure_budget) throw BudgetExceeded("isometry closure budget exhausted");
      stable = 0;
    }
    if (out.generators.empty()) out.generators.push_back(id);
    out.order = closure.size();
    out.exact = false;
    out.method = "cayley-closure";
    return out;
  }
  if (!opt.allow_gl_fallback) throw BudgetExceeded("adjoint ring too large to enumerate");
  out.method = "gl-enumeration";
  GroupClosure closure(f, n);
  std::uint64_t count = 0;
  for_each_gl(f, n, opt.gl_budget, [&](const Matrix& g) {
    if (!detail::preserves_forms(u, u, g)) return true;
    ++count;
    if (closure.add(g)) out.generators.push_back(g);
    return true;
  });
  out.order = count;
  out.exact = true;
  return out;
}

/// Shared data for repeated h-isometry tests on a fixed pair.
class IsometrySolver {
 public:
  IsometrySolver(const Bimap& u, const Bimap& v, const IsometryOptions& opt = {}) : u_(u), v_(v), opt_(opt) {
    require_hermitian(u);
    require_hermitian(v);
    if (u.a() != v.a() || u.c() != v.c()) throw DimensionMismatch("pseudo-isometry needs equal dimensions");
    if (u.field() != v.field()) throw FieldMismatch("bimaps over different fields");
    m_ = detail::adjoint_algebra(u);
    enumerable_ = detail::checked_pow(u.field().order(), m_.dim(), opt.enumeration_limit).has_value();
    if (enumerable_) {
      const std::size_t n = u.a();
      for_each_element(m_, [&](std::uint64_t, const Matrix& x) {
        if (is_invertible(x)) units_.push_back(detail::split_adjoint(x, n, n));
        return true;
      });
    }
  }

  bool algebraic() const noexcept { return enumerable_; }

  /// f with (f, f, h) a homotopism U -> V, or nullopt.
  std::optional<Matrix> solve(const Matrix& h) const {
    if (h.rows() != u_.c() || !is_invertible(h)) throw NotInvertible("h must be invertible on U0");
    if (enumerable_) {
      IsotopismOptions io;
      io.seed = opt_.seed;
      auto iso = principal_isotopism(u_, v_, h, io);
      if (!iso) return std::nullopt;
      // f = P F2 for a unit (P, G) of M(U) = M(U^h) with G P = F1 F2^-1
      const Matrix c = iso->f1 * inverse(iso->f2);
      for (const auto& [p, g] : units_)
        if (g * p == c) return p * iso->f2;
      return std::nullopt;
    }
    if (!opt_.allow_gl_fallback) throw BudgetExceeded("adjoint ring too large to enumerate");
    const Bimap t = u_.pullback(h);
    std::optional<Matrix> found;
    for_each_gl(u_.field(), u_.a(), opt_.gl_budget, [&](const Matrix& g) {
      if (detail::preserves_forms(t, v_, g)) {
        found = g;
        return false;
      }
      return true;
    });
    return found;
  }

 private:
  Bimap u_, v_;
  IsometryOptions opt_;
  MatrixAlgebra m_;
  bool enumerable_ = false;
  std::vector<std::pair<Matrix, Matrix>> units_;
};

/// f with (f, f, h): U -> V a homotopism, or nullopt.
inline std::optional<Matrix> isometry_coset(const Bimap& u, const Bimap& v, const Matrix& h,
                                            const IsometryOptions& opt = {}) {
  return IsometrySolver(u, v, opt).solve(h);
}

struct PseudoIsometry {
  Matrix f, f0;
};

struct PseudoIsometryCoset {
  std::optional<PseudoIsometry> representative;
  std::vector<PseudoIsometry> stabilizer_generators;
  std::optional<std::uint64_t> order;  // |PsIsom(U)|
  bool order_exact = false;
  std::uint64_t isometry_order = 0;
  std::uint64_t codomain_order = 0;  // image of PsIsom(U) in GL(U0)
  std::string strategy;
  std::string isometry_method;
  std::uint64_t candidates = 0;
  bool empty() const { return !representative.has_value(); }
};

inline bool is_pseudo_isometry(const Bimap& u, const Bimap& v, const PseudoIsometry& p) {
  return is_isotopism(u, v, Homotopism{p.f, p.f, p.f0});
}

/// Pseudo-isometries U -> V by lifting candidate codomain maps.
inline PseudoIsometryCoset pseudo_isometry_coset(const Bimap& u, const Bimap& v, const CosetOptions& copt = {},
                                                 const IsometryOptions& iopt = {}) {
  PseudoIsometryCoset out;
  if (u.a() != v.a() || u.b() != v.b() || u.c() != v.c()) {
    out.strategy = to_string(copt.strategy);
    return out;
  }
  const IsometrySolver solver(u, v, iopt);
  const IsometryGroup isom = isometry_group(u, iopt);
  out.isometry_method = isom.method;
  const Field& f = u.field();
  std::optional<Matrix> rep_f_inv, rep_f0_inv;
  GroupClosure lifted(f, u.c());
  detail::for_each_candidate(u, v, copt, out.strategy, [&](const Matrix& g) {
    ++out.candidates;
    auto x = solver.solve(g);
    if (!x) return;
    ++out.codomain_order;
    if (!out.representative) {
      out.representative = PseudoIsometry{*x, g};
      rep_f_inv = inverse(*x);
      rep_f0_inv = inverse(g);
      return;
    }
    const Matrix g0 = g * *rep_f0_inv;
    if (lifted.add(g0)) out.stabilizer_generators.push_back({*x * *rep_f_inv, g0});
  });
  if (!out.representative) return out;
  std::vector<PseudoIsometry> gens;
  for (const auto& g : isom.generators) gens.push_back({g, Matrix::identity(f, u.c())});
  gens.insert(gens.end(), out.stabilizer_generators.begin(), out.stabilizer_generators.end());
  out.stabilizer_generators = std::move(gens);
  if (isom.order) {
    out.isometry_order = *isom.order;
    if (out.strategy != "trivial-plus") {
      out.order = *isom.order * out.codomain_order;
      out.order_exact = isom.exact;
    }
  }
  return out;
}

}  // namespace galg
