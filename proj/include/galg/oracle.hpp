#pragma once

// Exhaustive reference implementations. Deliberately naive: enumerate, then
// filter by the defining identity.

#include <cstdint>
#include <functional>
#include <vector>

#include "galg/bimap.hpp"
#include "galg/errors.hpp"
#include "galg/gl.hpp"
#include "galg/graded.hpp"
#include "galg/hermitian.hpp"
#include "galg/linalg.hpp"
#include "galg/units.hpp"

namespace galg::oracle {

inline std::vector<Matrix> all_gl(const Field& f, std::size_t n, std::uint64_t budget) {
  std::vector<Matrix> out;
  for_each_gl(f, n, budget, [&](const Matrix& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

inline void check_budget(std::initializer_list<std::optional<std::uint64_t>> orders, std::uint64_t budget) {
  unsigned __int128 total = 1;
  for (const auto& o : orders) {
    if (!o) throw BudgetExceeded("oracle search space overflows");
    total *= *o;
    if (total > budget) throw BudgetExceeded("oracle search space exceeds the budget");
  }
}

/// Every isotopism U -> V, by enumerating GL(a) x GL(b) x GL(c).
inline std::vector<Homotopism> brute_isotopisms(const Bimap& u, const Bimap& v, std::uint64_t budget = 100000000) {
  std::vector<Homotopism> out;
  if (u.a() != v.a() || u.b() != v.b() || u.c() != v.c()) return out;
  const Field& f = u.field();
  const std::uint64_t q = f.order();
  check_budget({gl_order(u.a(), q), gl_order(u.b(), q), gl_order(u.c(), q)}, budget);
  const auto g2 = all_gl(f, u.a(), budget), g1 = all_gl(f, u.b(), budget), g0 = all_gl(f, u.c(), budget);
  for (const auto& f0 : g0)
    for (const auto& f2 : g2)
      for (const auto& f1 : g1) {
        Homotopism h{f2, f1, f0};
        if (is_homotopism(u, v, h)) out.push_back(std::move(h));
      }
  return out;
}

/// Autotopisms with the identity in slot i.
inline std::vector<Homotopism> brute_principal_autotopisms(const Bimap& u, int i, std::uint64_t budget = 100000000) {
  std::vector<Homotopism> out;
  for (auto& h : brute_isotopisms(u, u, budget)) {
    const Matrix& m = i == 2 ? h.f2 : i == 1 ? h.f1 : h.f0;
    if (m.is_identity()) out.push_back(std::move(h));
  }
  return out;
}

/// Number of invertible elements, recomputing each element from its coefficients.
inline std::uint64_t brute_unit_count(const MatrixAlgebra& a, std::uint64_t budget = 1ULL << 22) {
  const Field& f = a.field();
  auto total = detail::checked_pow(f.order(), a.dim(), budget);
  if (!total) throw BudgetExceeded("algebra too large for the oracle");
  std::uint64_t count = 0;
  for (std::uint64_t idx = 0; idx < *total; ++idx) {
    if (is_invertible(a.element(vector_from_index(idx, a.dim(), f.order())))) ++count;
  }
  return count;
}

/// Every f with f S^U_k f^T = S^V_k.
inline std::vector<Matrix> brute_isometries(const Bimap& u, const Bimap& v, std::uint64_t budget = 100000000) {
  std::vector<Matrix> out;
  if (u.a() != u.b() || u.a() != v.a() || u.c() != v.c()) return out;
  check_budget({gl_order(u.a(), u.field().order())}, budget);
  for_each_gl(u.field(), u.a(), budget, [&](const Matrix& g) {
    const Matrix gt = g.transpose();
    bool ok = true;
    for (std::size_t k = 0; k < u.c() && ok; ++k) ok = u.slice(k) == g * v.slice(k) * gt;
    if (ok) out.push_back(g);
    return true;
  });
  return out;
}

/// Every pair (f, f0) with (f, f, f0) an isotopism U -> V.
inline std::vector<PseudoIsometry> brute_pseudo_isometries(const Bimap& u, const Bimap& v,
                                                           std::uint64_t budget = 100000000) {
  std::vector<PseudoIsometry> out;
  if (u.a() != u.b() || u.a() != v.a() || v.a() != v.b() || u.c() != v.c()) return out;
  const Field& f = u.field();
  check_budget({gl_order(u.a(), f.order()), gl_order(u.c(), f.order())}, budget);
  const auto g = all_gl(f, u.a(), budget), g0 = all_gl(f, u.c(), budget);
  for (const auto& f0 : g0)
    for (const auto& x : g)
      if (is_homotopism(u, v, {x, x, f0})) out.push_back({x, f0});
  return out;
}

/// Every graded isomorphism A -> B: all invertible block maps on the generating
/// degrees, extended and then checked.
inline std::vector<GradedMap> brute_graded_isomorphisms(const GradedAlgebra& a, const GradedAlgebra& b,
                                                        std::uint64_t budget = 10000000) {
  std::vector<GradedMap> out;
  if (a.field() != b.field() || a.monoid() != b.monoid() || a.components() != b.components() ||
      a.gen_degrees() != b.gen_degrees())
    return out;
  const Field& f = a.field();
  std::vector<std::vector<Matrix>> choices;
  unsigned __int128 total = 1;
  for (const auto& t : a.gen_degrees()) {
    auto o = gl_order(a.dim(t), f.order());
    if (!o || (total *= *o) > budget) throw BudgetExceeded("graded oracle budget exceeded");
    choices.push_back(all_gl(f, a.dim(t), budget));
  }
  std::vector<std::size_t> pick(choices.size(), 0);
  for (;;) {
    GradedMap ft;
    for (std::size_t i = 0; i < choices.size(); ++i) ft[a.gen_degrees()[i]] = choices[i][pick[i]];
    try {
      GradedMap g = extend_homotopism(a, b, ft);
      if (is_graded_isomorphism(a, b, g)) out.push_back(std::move(g));
    } catch (const NoExtension&) {
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

}  // namespace galg::oracle
