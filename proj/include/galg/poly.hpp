#pragma once

// Univariate polynomials over a Field (coefficients low -> high, trimmed),
// determinants of linear pencils, and factor-degree patterns.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "galg/errors.hpp"
#include "galg/linalg.hpp"

namespace galg {

using Poly = std::vector<Elem>;

namespace poly {

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly add(const Field& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
  trim(r);
  return r;
}

inline Poly sub(const Field& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
  trim(r);
  return r;
}

inline Poly mul(const Field& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<Poly, Poly> divmod(const Field& f, Poly a, const Poly& b) {
  if (b.empty()) throw DivisionByZero("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  Poly q(a.size() - b.size() + 1, 0);
  const Elem lead_inv = f.inv(b.back());
  for (std::size_t s = a.size() - b.size() + 1; s-- > 0;) {
    const Elem c = f.mul(a[s + b.size() - 1], lead_inv);
    q[s] = c;
    if (!c) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[s + j] = f.sub(a[s + j], f.mul(c, b[j]));
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline Poly mod(const Field& f, const Poly& a, const Poly& b) { return divmod(f, a, b).second; }

inline Poly monic(const Field& f, Poly a) {
  trim(a);
  if (a.empty()) return a;
  const Elem inv = f.inv(a.back());
  for (auto& x : a) x = f.mul(x, inv);
  return a;
}

inline Poly gcd(const Field& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

inline Poly derivative(const Field& f, const Poly& a) {
  if (a.size() <= 1) return {};
  Poly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = f.mul(f.from_int(static_cast<std::int64_t>(i % f.characteristic())), a[i]);
  trim(d);
  return d;
}

inline Poly powmod(const Field& f, Poly base, std::uint64_t e, const Poly& m) {
  Poly r{1};
  base = mod(f, base, m);
  while (e) {
    if (e & 1) r = mod(f, mul(f, r, base), m);
    e >>= 1;
    if (e) base = mod(f, mul(f, base, base), m);
  }
  return r;
}

// a(x) = b(x^p) -> b(x)^(1/p), coefficientwise p-th roots.
inline Poly pth_root(const Field& f, const Poly& a) {
  const std::uint32_t p = f.characteristic();
  Poly r;
  for (std::size_t i = 0; i < a.size(); i += p) {
    // x -> x^(q/p) inverts Frobenius on GF(q)
    r.push_back(f.pow(a[i], f.order() / p));
  }
  trim(r);
  return r;
}

/// Square-free decomposition: pairs (g_i, i) with a = lead * prod g_i^i.
inline std::vector<std::pair<Poly, int>> squarefree(const Field& f, const Poly& a0) {
  std::vector<std::pair<Poly, int>> out;
  Poly a = monic(f, a0);
  if (degree(a) <= 0) return out;
  const int p = static_cast<int>(f.characteristic());
  // Yun-style loop with characteristic-p correction
  std::function<void(const Poly&, int)> rec = [&](const Poly& g, int mult) {
    if (degree(g) <= 0) return;
    Poly d = derivative(f, g);
    if (d.empty()) {
      rec(pth_root(f, g), mult * p);
      return;
    }
    Poly c = gcd(f, g, d);
    Poly w = divmod(f, g, c).first;
    int i = 1;
    while (degree(w) > 0) {
      Poly y = gcd(f, w, c);
      Poly z = divmod(f, w, y).first;
      if (degree(z) > 0) out.push_back({monic(f, z), i * mult});
      ++i;
      w = y;
      c = divmod(f, c, y).first;
    }
    if (degree(c) > 0) rec(pth_root(f, c), mult * p);
  };
  rec(a, 1);
  return out;
}

/// Degrees of the irreducible factors of a square-free monic polynomial.
inline std::vector<int> distinct_degree(const Field& f, Poly a) {
  std::vector<int> out;
  a = monic(f, a);
  const Poly x{0, 1};
  Poly h = x;
  for (int i = 1; degree(a) >= 2 * i; ++i) {
    h = powmod(f, h, f.order(), a);
    Poly g = gcd(f, a, sub(f, h, x));
    if (degree(g) > 0) {
      for (int k = 0; k < degree(g) / i; ++k) out.push_back(i);
      a = divmod(f, a, g).first;
      h = mod(f, h, a);
    }
  }
  if (degree(a) > 0) out.push_back(degree(a));
  return out;
}

/// Sorted multiset of irreducible-factor degrees, with multiplicity.
inline std::vector<int> factor_degrees(const Field& f, const Poly& a) {
  std::vector<int> out;
  for (const auto& [g, m] : squarefree(f, a))
    for (int d : distinct_degree(f, g))
      for (int k = 0; k < m; ++k) out.push_back(d);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace poly

/// det(A + t B) as a polynomial in t, by fraction-free elimination over K[t].
inline Poly pencil_determinant(const Matrix& a, const Matrix& b) {
  if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols()) throw NotSquare("pencil must be square");
  const Field& f = a.field();
  const std::size_t n = a.rows();
  if (n == 0) return {1};
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = {a(i, j), b(i, j)};
      poly::trim(m[i][j]);
    }
  bool negate = false;
  Poly prev{1};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].empty()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].empty()) ++r;
      if (r == n) return {};
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = poly::sub(f, poly::mul(f, m[k][k], m[i][j]), poly::mul(f, m[i][k], m[k][j]));
        m[i][j] = poly::divmod(f, num, prev).first;
      }
      m[i][k].clear();
    }
    prev = m[k][k];
  }
  Poly det = m[n - 1][n - 1];
  if (negate) {
    for (auto& c : det) c = f.neg(c);
  }
  return det;
}

/// Irreducible-factor degree pattern of the binary form det(x A + y B), or
/// nullopt when the form vanishes identically.
inline std::optional<std::vector<int>> pencil_pattern(const Matrix& a, const Matrix& b) {
  const Field& f = a.field();
  Poly d = pencil_determinant(a, b);  // F(1, t)
  if (d.empty()) return std::nullopt;
  const int n = static_cast<int>(a.rows());
  std::vector<int> pattern = poly::factor_degrees(f, d);
  // Missing top degree means x divides F(x, y): each power adds a linear factor.
  for (int k = poly::degree(d); k < n; ++k) pattern.push_back(1);
  std::sort(pattern.begin(), pattern.end());
  return pattern;
}

/// Coefficients (of x^n, x^(n-1) y, ..., y^n) of det(x A + y B) in the
/// least form of its orbit under GL(2, q) and nonzero scalars, or nullopt
/// when the form vanishes identically.
inline std::optional<std::vector<Elem>> pencil_form(const Matrix& a, const Matrix& b) {
  const Field& f = a.field();
  Poly d = pencil_determinant(a, b);
  if (d.empty()) return std::nullopt;
  const std::size_t n = a.rows();
  std::vector<Elem> form(n + 1, 0);
  for (std::size_t k = 0; k < d.size(); ++k) form[k] = d[k];
  // binomial-free expansion of sum_k form[k] (a x + c y)^(n-k) (b x + d y)^k
  auto substitute = [&](Elem ga, Elem gb, Elem gc, Elem gd) {
    std::vector<Elem> out(n + 1, 0);
    const Poly l1{ga, gc}, l2{gb, gd};  // in y / x
    std::vector<Poly> p1(n + 1), p2(n + 1);
    p1[0] = p2[0] = Poly{1};
    for (std::size_t k = 1; k <= n; ++k) {
      p1[k] = poly::mul(f, p1[k - 1], l1);
      p2[k] = poly::mul(f, p2[k - 1], l2);
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (!form[k]) continue;
      const Poly t = poly::mul(f, p1[n - k], p2[k]);
      for (std::size_t j = 0; j < t.size(); ++j) out[j] = f.add(out[j], f.mul(form[k], t[j]));
    }
    std::size_t lead = 0;
    while (out[lead] == 0) ++lead;
    const Elem inv = f.inv(out[lead]);
    for (auto& x : out) x = f.mul(x, inv);
    return out;
  };
  const auto q = static_cast<Elem>(f.order());
  std::optional<std::vector<Elem>> best;
  for (Elem ga = 0; ga < q; ++ga)
    for (Elem gb = 0; gb < q; ++gb)
      for (Elem gc = 0; gc < q; ++gc)
        for (Elem gd = 0; gd < q; ++gd) {
          if (f.sub(f.mul(ga, gd), f.mul(gb, gc)) == 0) continue;
          auto t = substitute(ga, gb, gc, gd);
          if (!best || t < *best) best = std::move(t);
        }
  return best;
}

}  // namespace galg
