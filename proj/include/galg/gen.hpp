#pragma once

// Seeded generators for the example families: Heisenberg forms, twisted
// Heisenberg bimaps and their random projections, random alternating
// systems, and dense graded Lie algebras of block upper triangular matrices.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "galg/bimap.hpp"
#include "galg/errors.hpp"
#include "galg/field.hpp"
#include "galg/graded.hpp"
#include "galg/linalg.hpp"
#include "galg/rng.hpp"

namespace galg {

/// Alternating (2n, 2n, 1) bimap with Gram matrix [[0, I], [-I, 0]].
inline Bimap heisenberg(std::size_t n, const Field& f) {
  if (n == 0) throw BadParameters("heisenberg needs n >= 1");
  Matrix s(f, 2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    s(i, n + i) = 1;
    s(n + i, i) = f.neg(1);
  }
  return Bimap(f, 2 * n, 2 * n, {s});
}

namespace detail {
inline Matrix wedge(const Field& f, std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(f, n, n);
  m(i, j) = 1;
  m(j, i) = f.neg(1);
  return m;
}
}  // namespace detail

/// The 4 x 4 x 3 alternating system x1 (e1^e2 + e3^e4) + x2 e2^e3 + x3 e2^e4.
inline Bimap example_d(const Field& f) {
  using detail::wedge;
  return Bimap(f, 4, 4, {wedge(f, 4, 0, 1) + wedge(f, 4, 2, 3), wedge(f, 4, 1, 2), wedge(f, 4, 1, 3)});
}

/// As example_d with the last form replaced by e1^e4.
inline Bimap example_e(const Field& f) {
  using detail::wedge;
  return Bimap(f, 4, 4, {wedge(f, 4, 0, 1) + wedge(f, 4, 2, 3), wedge(f, 4, 1, 2), wedge(f, 4, 0, 3)});
}

struct TwistedHeisenberg {
  Bimap bimap;
  Elem i = 0;  // twisting constant in GF(p^k), as a field code
  int sigma_exp = 1;
};

/// x . y = xy + i x^s y^(s^2) on GF(p^k) with s = Frobenius^sigma_exp, and the
/// GF(p)-bilinear map (a, b), (a', b') -> a . b' - a' . b.
inline TwistedHeisenberg twisted_heisenberg(std::uint32_t p, std::uint32_t k, int sigma_exp = 1) {
  if (k < 3 || k % 2 == 0) throw BadParameters("twisted_heisenberg needs odd k > 1");
  if (sigma_exp < 1 || sigma_exp >= static_cast<int>(k)) throw BadParameters("sigma_exp must lie in [1, k)");
  const Field big = Field::extension(p, k);
  const Field small = Field::prime(p);
  const std::uint64_t q = big.order();
  std::uint64_t pe = 1;
  for (int t = 0; t < sigma_exp; ++t) pe *= p;
  auto gcd = [](std::uint64_t a, std::uint64_t b) {
    while (b) {
      auto t = a % b;
      a = b;
      b = t;
    }
    return a;
  };
  // x y = -i x^s y^(s^2) has a nonzero solution iff -i lies in the subgroup
  // generated by g^(p^e - 1) and g^(p^2e - 1), of index d in GF(q)^x
  const std::uint64_t d = gcd(gcd(pe - 1, pe * pe - 1), q - 1);
  Elem i = 0;
  for (Elem c = 1; c < q; ++c) {
    if (big.pow(big.neg(c), (q - 1) / d) != 1) {
      i = c;
      break;
    }
  }
  if (i == 0) throw BadParameters("no twisting constant gives a division product");
  auto sigma = [&](Elem x) { return big.pow(x, pe); };
  auto dot = [&](Elem x, Elem y) { return big.add(big.mul(x, y), big.mul(i, big.mul(sigma(x), sigma(sigma(y))))); };
  std::vector<Elem> basis(k);
  {
    Elem pw = 1;
    for (std::uint32_t t = 0; t < k; ++t) {
      basis[t] = pw;
      pw = static_cast<Elem>(pw * p);
    }
  }
  const std::size_t n = 2 * k;
  std::vector<Matrix> slices(k, Matrix(small, n, n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      // u = e_r, v = e_c; u = (a, b), v = (a', b')
      const Elem a = r < k ? basis[r] : 0, b = r < k ? 0 : basis[r - k];
      const Elem a2 = c < k ? basis[c] : 0, b2 = c < k ? 0 : basis[c - k];
      const Elem val = big.sub(dot(a, b2), dot(a2, b));
      const auto co = big.coeffs(val);
      for (std::uint32_t t = 0; t < k; ++t) slices[t](r, c) = co[t];
    }
  return {Bimap(small, n, n, std::move(slices)), i, sigma_exp};
}

/// Composes U with a random surjection U0 -> K^e.
inline Bimap project_random(const Bimap& u, std::size_t e, std::uint64_t seed) {
  if (e < 1 || e > u.c()) throw BadParameters("projection dimension must lie in [1, c]");
  Rng rng(seed);
  for (;;) {
    Matrix phi = Matrix::random(u.field(), u.c(), e, rng);
    if (rank(phi) == e) return u.pullback(phi);
  }
}

/// e uniformly random alternating d x d slices over GF(p).
inline Bimap random_alternating(std::size_t d, std::uint32_t p, std::size_t e, std::uint64_t seed) {
  const Field f = Field::prime(p);
  Rng rng(seed);
  std::vector<Matrix> slices;
  for (std::size_t k = 0; k < e; ++k) {
    Matrix s(f, d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        const Elem x = static_cast<Elem>(rng.below(p));
        s(i, j) = x;
        s(j, i) = f.neg(x);
      }
    slices.push_back(std::move(s));
  }
  return Bimap(f, d, d, std::move(slices));
}

struct DenseLie {
  GradedAlgebra algebra;
  bool dense = true;  // [L, L] equals that of the full block triangular algebra
};

namespace detail {

// Basis of the s-th block superdiagonal: triples (i, a, b) for E_{(i,a),(i+s,b)}.
inline std::vector<std::array<std::size_t, 3>> superdiagonal_basis(const std::vector<std::size_t>& dims,
                                                                   std::size_t s) {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t i = 0; i + s < dims.size(); ++i)
    for (std::size_t a = 0; a < dims[i]; ++a)
      for (std::size_t b = 0; b < dims[i + s]; ++b) out.push_back({i, a, b});
  return out;
}

}  // namespace detail

/// N-graded Lie algebra of block strictly upper triangular matrices with
/// diagonal blocks of sizes dims; degree s is the s-th block superdiagonal.
/// With a thinning seed, degree 1 is replaced by a random hyperplane and the
/// algebra by the subalgebra it generates.
inline DenseLie dense_lie(const std::vector<std::size_t>& dims, const Field& f,
                          std::optional<std::uint64_t> thin_seed = std::nullopt) {
  if (dims.size() < 2) throw BadPartition("dense_lie needs at least two blocks");
  for (auto d : dims)
    if (d == 0) throw BadPartition("block sizes must be positive");
  const std::size_t l = dims.size();
  std::vector<std::vector<std::array<std::size_t, 3>>> basis(l);
  std::vector<std::map<std::array<std::size_t, 3>, std::size_t>> index(l);
  for (std::size_t s = 1; s < l; ++s) {
    basis[s] = detail::superdiagonal_basis(dims, s);
    for (std::size_t x = 0; x < basis[s].size(); ++x) index[s][basis[s][x]] = x;
  }
  // full bracket tensors L_s x L_t -> L_{s+t}
  std::map<std::pair<std::size_t, std::size_t>, Bimap> full;
  for (std::size_t s = 1; s < l; ++s)
    for (std::size_t t = 1; s + t < l; ++t) {
      const std::size_t u = s + t;
      std::vector<Matrix> slices(basis[u].size(), Matrix(f, basis[s].size(), basis[t].size()));
      for (std::size_t x = 0; x < basis[s].size(); ++x)
        for (std::size_t y = 0; y < basis[t].size(); ++y) {
          const auto [i, a, b] = basis[s][x];
          const auto [j, c, d] = basis[t][y];
          if (j == i + s && c == b) {
            const std::size_t z = index[u].at({i, a, d});
            slices[z](x, y) = f.add(slices[z](x, y), 1);
          }
          if (i == j + t && a == d) {
            const std::size_t z = index[u].at({j, c, b});
            slices[z](x, y) = f.sub(slices[z](x, y), 1);
          }
        }
      full.emplace(std::make_pair(s, t), Bimap(f, basis[s].size(), basis[t].size(), std::move(slices)));
    }
  // subspaces W_s of L_s spanned by the generated subalgebra
  std::vector<Subspace> w(l);
  for (std::size_t s = 1; s < l; ++s) w[s] = Subspace::full(f, basis[s].size());
  bool dense = true;
  if (thin_seed && basis[1].size() > 1) {
    Rng rng(*thin_seed);
    Matrix h;
    do {
      h = Matrix::random(f, basis[1].size() - 1, basis[1].size(), rng);
    } while (rank(h) != basis[1].size() - 1);
    w[1] = Subspace::span(h);
    for (std::size_t s = 2; s < l; ++s) {
      std::vector<Vec> gens;
      const Bimap& br = full.at({1, s - 1});
      for (std::size_t x = 0; x < w[1].dim(); ++x)
        for (std::size_t y = 0; y < w[s - 1].dim(); ++y)
          gens.push_back(br.evaluate(w[1].basis().row(x), w[s - 1].basis().row(y)));
      w[s] = Subspace::span(f, basis[s].size(), gens);
      if (w[s].dim() != basis[s].size()) dense = false;
    }
  }
  Monoid m{{static_cast<int>(l)}};
  std::map<Degree, std::size_t> comps;
  for (std::size_t s = 1; s < l; ++s) comps[{static_cast<int>(s)}] = w[s].dim();
  GradedAlgebra::Products prods;
  for (const auto& [key, br] : full) {
    const auto [s, t] = key;
    const std::size_t u = s + t;
    std::vector<Matrix> slices(w[u].dim(), Matrix(f, w[s].dim(), w[t].dim()));
    for (std::size_t x = 0; x < w[s].dim(); ++x)
      for (std::size_t y = 0; y < w[t].dim(); ++y) {
        const Vec v = br.evaluate(w[s].basis().row(x), w[t].basis().row(y));
        auto co = w[u].coordinates(v);
        if (!co) throw error("generated subalgebra is not closed");
        for (std::size_t z = 0; z < co->size(); ++z) slices[z](x, y) = (*co)[z];
      }
    prods.emplace(std::make_pair(Degree{static_cast<int>(s)}, Degree{static_cast<int>(t)}),
                  Bimap(f, w[s].dim(), w[t].dim(), std::move(slices)));
  }
  return {load_graded(f, m, comps, {{1}}, prods), dense};
}

}  // namespace galg
