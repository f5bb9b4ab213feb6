#pragma once

// Exact arithmetic in GF(p) and GF(p^k).
//
// Elements are encoded as integers in [0, q): the base-p digits of the code are
// the coordinates in the power basis 1, t, ..., t^(k-1) of GF(p)[t]/(m(t)).
// For k = 1 the code is the residue itself.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "galg/errors.hpp"

namespace galg {

using Elem = std::uint32_t;

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Polynomials over GF(p) with coefficients low -> high, used only while
// setting up extension fields.
using SmallPoly = std::vector<std::uint32_t>;

inline void trim(SmallPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline SmallPoly poly_mod(SmallPoly a, const SmallPoly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  // m is monic
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>(
          (a[shift + i] + (p - lead) * m[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

inline bool divides_monic(const SmallPoly& d, const SmallPoly& f,
                          std::uint32_t p) {
  return poly_mod(f, d, p).empty();
}

// Trial factorization: f (monic, degree k) is irreducible iff no monic
// polynomial of degree 1..k/2 divides it.
inline bool is_irreducible(const SmallPoly& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  for (std::size_t deg = 1; deg <= k / 2; ++deg) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      SmallPoly d(deg + 1, 0);
      d[deg] = 1;
      std::uint64_t c = code;
      for (std::size_t i = 0; i < deg; ++i) {
        d[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      if (divides_monic(d, f, p)) return false;
    }
  }
  return true;
}

// Conway polynomials for p in {2,3,5}, k <= 6 (coefficients low -> high).
inline std::optional<SmallPoly> conway_polynomial(std::uint32_t p,
                                                  std::uint32_t k) {
  static const std::map<std::pair<std::uint32_t, std::uint32_t>, SmallPoly>
      table = {
          {{2, 1}, {1, 1}},          {{2, 2}, {1, 1, 1}},
          {{2, 3}, {1, 1, 0, 1}},    {{2, 4}, {1, 1, 0, 0, 1}},
          {{2, 5}, {1, 0, 1, 0, 0, 1}}, {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
          {{3, 1}, {1, 1}},          {{3, 2}, {2, 2, 1}},
          {{3, 3}, {1, 2, 0, 1}},    {{3, 4}, {2, 0, 0, 2, 1}},
          {{3, 5}, {1, 2, 0, 0, 0, 1}}, {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
          {{5, 1}, {3, 1}},          {{5, 2}, {2, 4, 1}},
          {{5, 3}, {3, 3, 0, 1}},    {{5, 4}, {2, 4, 4, 0, 1}},
          {{5, 5}, {3, 4, 0, 0, 0, 1}}, {{5, 6}, {2, 0, 1, 4, 1, 0, 1}},
      };
  auto it = table.find({p, k});
  if (it == table.end()) return std::nullopt;
  return it->second;
}

inline SmallPoly first_irreducible(std::uint32_t p, std::uint32_t k) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    SmallPoly f(k + 1, 0);
    f[k] = 1;
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < k; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (is_irreducible(f, p)) return f;
  }
  throw BadParameters("no irreducible polynomial found");
}

struct FieldData {
  std::uint32_t p = 2;
  std::uint32_t k = 1;
  std::uint64_t q = 2;
  SmallPoly min_poly;  // monic, degree k; {0, 1} for prime fields
  // Extension fields only: discrete log tables relative to a primitive
  // element. exp_table has length q - 1; log_table[0] is unused.
  std::vector<Elem> exp_table;
  std::vector<std::uint32_t> log_table;
};

}  // namespace detail

/// A finite field GF(p^k). Cheap to copy; all state is shared and immutable.
class Field {
 public:
  Field() : Field(prime(2)) {}

  static Field prime(std::uint32_t p) {
    if (!detail::is_prime(p)) throw BadParameters("characteristic must be prime");
    auto d = std::make_shared<detail::FieldData>();
    d->p = p;
    d->k = 1;
    d->q = p;
    d->min_poly = {0, 1};
    return Field(std::move(d));
  }

  /// GF(p^k); uses the Conway polynomial when tabulated, otherwise the
  /// lexicographically first irreducible, unless `min_poly` is supplied.
  static Field extension(std::uint32_t p, std::uint32_t k,
                         std::optional<std::vector<std::uint32_t>> min_poly = {}) {
    if (!detail::is_prime(p)) throw BadParameters("characteristic must be prime");
    if (k == 0) throw BadParameters("degree must be positive");
    if (k == 1 && !min_poly) return prime(p);
    detail::SmallPoly m;
    if (min_poly) {
      m = *min_poly;
      for (auto& c : m) {
        if (c >= p) throw BadParameters("min_poly coefficient out of range");
      }
      if (m.size() != k + 1 || m.back() != 1)
        throw BadParameters("min_poly must be monic of degree k");
      if (!detail::is_irreducible(m, p))
        throw BadParameters("min_poly is reducible");
    } else if (auto c = detail::conway_polynomial(p, k)) {
      m = *c;
    } else {
      m = detail::first_irreducible(p, k);
    }
    if (k == 1) return prime(p);
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) q *= p;
    if (q > (1u << 22)) throw BadParameters("extension field too large");
    auto d = std::make_shared<detail::FieldData>();
    d->p = p;
    d->k = k;
    d->q = q;
    d->min_poly = m;
    Field f(std::move(d));
    f.build_tables();
    return f;
  }

  std::uint32_t characteristic() const noexcept { return d_->p; }
  std::uint32_t degree() const noexcept { return d_->k; }
  std::uint64_t order() const noexcept { return d_->q; }
  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(d_->q); }
  bool is_prime_field() const noexcept { return d_->k == 1; }
  const std::vector<std::uint32_t>& min_poly() const noexcept { return d_->min_poly; }

  bool operator==(const Field& o) const noexcept {
    return d_ == o.d_ || (d_->p == o.d_->p && d_->k == o.d_->k &&
                          (d_->k == 1 || d_->min_poly == o.d_->min_poly));
  }
  bool operator!=(const Field& o) const noexcept { return !(*this == o); }

  static constexpr Elem zero() noexcept { return 0; }
  static constexpr Elem one() noexcept { return 1; }

  Elem add(Elem a, Elem b) const noexcept {
    const std::uint32_t p = d_->p;
    if (d_->k == 1) {
      const std::uint32_t s = a + b;
      return s >= p ? s - p : s;
    }
    if (p == 2) return a ^ b;
    Elem out = 0, scale = 1;
    for (std::uint32_t i = 0; i < d_->k; ++i) {
      out += ((a % p + b % p) % p) * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return out;
  }

  Elem neg(Elem a) const noexcept {
    const std::uint32_t p = d_->p;
    if (d_->k == 1) return a == 0 ? 0 : p - a;
    if (p == 2) return a;
    Elem out = 0, scale = 1;
    for (std::uint32_t i = 0; i < d_->k; ++i) {
      const std::uint32_t c = a % p;
      out += (c == 0 ? 0 : p - c) * scale;
      a /= p;
      scale *= p;
    }
    return out;
  }

  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const noexcept {
    if (d_->k == 1) {
      return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % d_->p);
    }
    if (a == 0 || b == 0) return 0;
    const std::uint64_t n = d_->q - 1;
    std::uint64_t e = static_cast<std::uint64_t>(d_->log_table[a]) + d_->log_table[b];
    if (e >= n) e -= n;
    return d_->exp_table[e];
  }

  Elem inv(Elem a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    if (d_->k == 1) return pow(a, d_->p - 2);
    const std::uint64_t n = d_->q - 1;
    const std::uint64_t l = d_->log_table[a];
    return d_->exp_table[l == 0 ? 0 : n - l];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t e) const noexcept {
    Elem result = 1, base = a;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  /// Image of an integer under Z -> GF(p) -> GF(q).
  Elem from_int(std::int64_t v) const noexcept {
    const std::int64_t p = d_->p;
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return static_cast<Elem>(r);
  }

  /// Power-basis coordinates of an element.
  std::vector<std::uint32_t> coeffs(Elem a) const {
    std::vector<std::uint32_t> out(d_->k);
    for (std::uint32_t i = 0; i < d_->k; ++i) {
      out[i] = a % d_->p;
      a /= d_->p;
    }
    return out;
  }

  Elem from_coeffs(std::span<const std::uint32_t> c) const {
    if (c.size() != d_->k) throw InvalidInput("coefficient vector has wrong length");
    Elem out = 0, scale = 1;
    for (std::uint32_t i = 0; i < d_->k; ++i) {
      if (c[i] >= d_->p) throw InvalidInput("coefficient out of range");
      out += c[i] * scale;
      scale *= d_->p;
    }
    return out;
  }

  /// The generator t of the power basis (t itself for k > 1, 1 otherwise).
  Elem generator() const noexcept { return d_->k == 1 ? 1 : d_->p; }

  Elem frobenius(Elem a) const noexcept { return pow(a, d_->p); }

  /// Field trace/norm down to GF(p).
  Elem norm_to_prime(Elem a) const noexcept {
    const std::uint64_t e = (d_->q - 1) / (d_->p - 1);
    return pow(a, e);
  }

  /// Square root of a in GF(q) when one exists.
  std::optional<Elem> sqrt(Elem a) const {
    for (Elem x = 0; x < d_->q; ++x)
      if (mul(x, x) == a) return x;
    return std::nullopt;
  }

  std::string describe() const {
    std::string s = "GF(" + std::to_string(d_->p);
    if (d_->k > 1) s += "^" + std::to_string(d_->k);
    return s + ")";
  }

 private:
  explicit Field(std::shared_ptr<detail::FieldData> d) : d_(std::move(d)) {}

  // Polynomial product modulo the minimal polynomial, on codes.
  Elem slow_mul(Elem a, Elem b) const {
    const std::uint32_t p = d_->p, k = d_->k;
    detail::SmallPoly pa = coeffs(a), pb = coeffs(b);
    detail::SmallPoly prod(2 * k - 1, 0);
    for (std::uint32_t i = 0; i < k; ++i)
      for (std::uint32_t j = 0; j < k; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + pa[i] * pb[j]) % p);
    auto r = detail::poly_mod(prod, d_->min_poly, p);
    r.resize(k, 0);
    return from_coeffs(r);
  }

  void build_tables() {
    auto d = std::const_pointer_cast<detail::FieldData>(d_);
    const std::uint64_t n = d->q - 1;
    const auto factors = detail::prime_factors(n);
    auto slow_pow = [&](Elem a, std::uint64_t e) {
      Elem r = 1, b = a;
      while (e) {
        if (e & 1) r = slow_mul(r, b);
        b = slow_mul(b, b);
        e >>= 1;
      }
      return r;
    };
    Elem g = 0;
    for (Elem cand = 2; cand < d->q; ++cand) {
      bool primitive = slow_pow(cand, n) == 1;
      for (auto f : factors) {
        if (!primitive) break;
        if (slow_pow(cand, n / f) == 1) primitive = false;
      }
      if (primitive) {
        g = cand;
        break;
      }
    }
    if (g == 0) throw BadParameters("no primitive element found");
    d->exp_table.resize(n);
    d->log_table.assign(d->q, 0);
    Elem x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      d->exp_table[i] = x;
      d->log_table[x] = static_cast<std::uint32_t>(i);
      x = slow_mul(x, g);
    }
  }

  std::shared_ptr<const detail::FieldData> d_;
};

}  // namespace galg
