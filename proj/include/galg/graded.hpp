#pragma once

// Graded algebras over truncated commutative monoids prod N_l, regrading,
// extension of homotopisms from generating degrees, graded isomorphism cosets
// and layer selection.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "galg/bimap.hpp"
#include "galg/errors.hpp"
#include "galg/isotopism.hpp"
#include "galg/linalg.hpp"
#include "galg/rings.hpp"

namespace galg {

using Degree = std::vector<int>;

inline std::string degree_string(const Degree& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

/// prod N_{l_i} with saturating addition; l_i = 0 stands for untruncated N.
struct Monoid {
  std::vector<int> trunc;

  std::size_t rank() const noexcept { return trunc.size(); }

  Degree add(const Degree& x, const Degree& y) const {
    Degree r(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      r[i] = x[i] + y[i];
      if (trunc[i] > 0 && r[i] > trunc[i]) r[i] = trunc[i];
    }
    return r;
  }

  bool is_zero(const Degree& x) const {
    return std::all_of(x.begin(), x.end(), [](int v) { return v == 0; });
  }

  bool contains(const Degree& x) const {
    if (x.size() != rank()) return false;
    for (std::size_t i = 0; i < rank(); ++i)
      if (x[i] < 0 || (trunc[i] > 0 && x[i] > trunc[i])) return false;
    return true;
  }

  bool operator==(const Monoid& o) const { return trunc == o.trunc; }
  bool operator!=(const Monoid& o) const { return trunc != o.trunc; }
};

/// Sweep order: total degree, then lexicographic. Minimal elements of the
/// divisibility order come first.
inline bool sweep_less(const Degree& x, const Degree& y) {
  int sx = 0, sy = 0;
  for (int v : x) sx += v;
  for (int v : y) sy += v;
  if (sx != sy) return sx < sy;
  return x < y;
}

class GradedAlgebra {
 public:
  using Products = std::map<std::pair<Degree, Degree>, Bimap>;

  GradedAlgebra(Field f, Monoid m, std::map<Degree, std::size_t> components, std::vector<Degree> gen_degrees,
                Products products)
      : f_(std::move(f)), m_(std::move(m)), gens_(std::move(gen_degrees)) {
    for (auto& [s, d] : components) {
      if (!m_.contains(s)) throw InconsistentDims("component degree " + degree_string(s) + " outside the monoid");
      if (d > 0) comps_[s] = d;
    }
    std::sort(gens_.begin(), gens_.end(), sweep_less);
    for (auto& [key, t] : products) {
      const auto& [s, u] = key;
      if (!m_.contains(s) || !m_.contains(u)) throw InconsistentDims("product degree outside the monoid");
      const Degree target = m_.add(s, u);
      if (t.field() != f_) throw FieldMismatch("product tensor over another field");
      if (t.a() != dim(s) || t.b() != dim(u) || t.c() != dim(target))
        throw InconsistentDims("product tensor " + degree_string(s) + "|" + degree_string(u) + " has wrong shape");
      bool zero = true;
      for (const auto& sl : t.slices()) zero = zero && sl.is_zero();
      if (!zero) prods_.emplace(key, t);
    }
  }

  const Field& field() const noexcept { return f_; }
  const Monoid& monoid() const noexcept { return m_; }
  const std::map<Degree, std::size_t>& components() const noexcept { return comps_; }
  const std::vector<Degree>& gen_degrees() const noexcept { return gens_; }
  const Products& products() const noexcept { return prods_; }

  std::size_t dim(const Degree& s) const {
    auto it = comps_.find(s);
    return it == comps_.end() ? 0 : it->second;
  }

  /// Product tensor A_s x A_t -> A_{s+t}, zero when not stored.
  Bimap product(const Degree& s, const Degree& t) const {
    auto it = prods_.find({s, t});
    if (it != prods_.end()) return it->second;
    return Bimap::zero(f_, dim(s), dim(t), dim(m_.add(s, t)));
  }

  /// Degrees with nonzero component, in sweep order.
  std::vector<Degree> support() const {
    std::vector<Degree> out;
    for (const auto& [s, d] : comps_) out.push_back(s);
    std::sort(out.begin(), out.end(), sweep_less);
    return out;
  }

  bool is_generator_degree(const Degree& s) const {
    return std::find(gens_.begin(), gens_.end(), s) != gens_.end();
  }

  /// Pairs (s1, s2) of support degrees, neither 0 nor s, with s1 + s2 = s, in
  /// lexicographic order.
  std::vector<std::pair<Degree, Degree>> factorizations(const Degree& s) const {
    std::vector<std::pair<Degree, Degree>> out;
    for (const auto& [x, dx] : comps_)
      for (const auto& [y, dy] : comps_) {
        if (m_.is_zero(x) || m_.is_zero(y) || x == s || y == s) continue;
        if (m_.add(x, y) == s) out.emplace_back(x, y);
      }
    return out;
  }

  /// Checks that every component outside T is spanned by products.
  void validate_generation() const {
    for (const auto& s : support()) {
      if (is_generator_degree(s) || m_.is_zero(s)) continue;
      std::vector<Vec> image;
      for (const auto& [x, y] : factorizations(s)) {
        const Bimap p = product(x, y);
        for (std::size_t i = 0; i < p.a(); ++i)
          for (std::size_t j = 0; j < p.b(); ++j) {
            Vec v(p.c());
            for (std::size_t k = 0; k < p.c(); ++k) v[k] = p.slice(k)(i, j);
            image.push_back(std::move(v));
          }
      }
      if (Subspace::span(f_, dim(s), image).dim() != dim(s))
        throw NotGenerated("component " + degree_string(s) + " is not generated by lower degrees");
    }
  }

  bool operator==(const GradedAlgebra& o) const {
    if (f_ != o.f_ || m_ != o.m_ || comps_ != o.comps_ || gens_ != o.gens_) return false;
    if (prods_.size() != o.prods_.size()) return false;
    for (const auto& [k, t] : prods_) {
      auto it = o.prods_.find(k);
      if (it == o.prods_.end() || !(it->second == t)) return false;
    }
    return true;
  }

 private:
  Field f_;
  Monoid m_;
  std::map<Degree, std::size_t> comps_;
  std::vector<Degree> gens_;
  Products prods_;
};

/// Builds and validates a graded algebra.
inline GradedAlgebra load_graded(const Field& f, const Monoid& m, const std::map<Degree, std::size_t>& components,
                                 const std::vector<Degree>& gen_degrees, const GradedAlgebra::Products& products) {
  GradedAlgebra a(f, m, components, gen_degrees, products);
  a.validate_generation();
  return a;
}

/// Re-indexes by prod N_l with l_i the first point past which every
/// component along axis i vanishes (components count as equal only when zero).
inline GradedAlgebra regrade(const GradedAlgebra& a) {
  const Monoid& m = a.monoid();
  Monoid out;
  out.trunc.assign(m.rank(), 1);
  for (std::size_t i = 0; i < m.rank(); ++i) {
    int top = 0;
    for (const auto& [s, d] : a.components()) top = std::max(top, s[i]);
    int l = top + 1;
    if (m.trunc[i] > 0) l = std::min(l, m.trunc[i]);
    out.trunc[i] = std::max(l, 1);
  }
  auto clamp = [&](Degree s) {
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::min(s[i], out.trunc[i]);
    return s;
  };
  std::map<Degree, std::size_t> comps;
  for (const auto& [s, d] : a.components()) {
    if (clamp(s) != s) throw NotStabilizing("component beyond the stabilization point");
    comps[s] = d;
  }
  GradedAlgebra::Products prods;
  for (const auto& [k, t] : a.products()) {
    if (out.add(k.first, k.second) != clamp(m.add(k.first, k.second))) throw NotStabilizing("product re-indexing");
    prods.emplace(k, t);
  }
  return GradedAlgebra(a.field(), out, comps, a.gen_degrees(), prods);
}

/// Per-degree maps f_s: A_s -> B_s.
using GradedMap = std::map<Degree, Matrix>;

namespace detail {

// pi_s: A_{(x)s} -> A_s, rows indexed by the blocks of `pairs` in order.
inline Matrix tensor_projection(const GradedAlgebra& a, const Degree& s,
                                const std::vector<std::pair<Degree, Degree>>& pairs) {
  std::vector<Matrix> blocks;
  for (const auto& [x, y] : pairs) {
    const Bimap p = a.product(x, y);
    Matrix blk(a.field(), p.a() * p.b(), a.dim(s));
    for (std::size_t i = 0; i < p.a(); ++i)
      for (std::size_t j = 0; j < p.b(); ++j)
        for (std::size_t k = 0; k < p.c(); ++k) blk(i * p.b() + j, k) = p.slice(k)(i, j);
    blocks.push_back(std::move(blk));
  }
  return Matrix::vstack(blocks, a.field(), a.dim(s));
}

inline std::vector<std::pair<Degree, Degree>> common_factorizations(const GradedAlgebra& a, const GradedAlgebra& b,
                                                                    const Degree& s) {
  std::set<std::pair<Degree, Degree>> all;
  for (const auto& p : a.factorizations(s)) all.insert(p);
  for (const auto& p : b.factorizations(s)) all.insert(p);
  return {all.begin(), all.end()};
}

}  // namespace detail

struct ExtendOptions {
  bool reverse_ties = false;  // alternative minimal-choice order among equal total degree
};

/// Extends maps given on the generating degrees to a graded homotopism A -> B,
/// or throws NoExtension carrying the failing degree.
inline GradedMap extend_homotopism(const GradedAlgebra& a, const GradedAlgebra& b, const GradedMap& ft,
                                   const ExtendOptions& opt = {}) {
  if (a.field() != b.field()) throw FieldMismatch("graded algebras over different fields");
  if (a.monoid() != b.monoid()) throw DimensionMismatch("graded algebras over different monoids");
  const Field& f = a.field();
  GradedMap out;
  for (const auto& t : a.gen_degrees()) {
    auto it = ft.find(t);
    const std::size_t da = a.dim(t), db = b.dim(t);
    if (it == ft.end()) {
      if (da == 0 && db == 0) continue;
      throw BadParameters("no map given in generating degree " + degree_string(t));
    }
    if (it->second.rows() != da || it->second.cols() != db)
      throw DimensionMismatch("map in degree " + degree_string(t) + " has the wrong shape");
    out[t] = it->second;
  }
  std::set<Degree> degrees;
  for (const auto& s : a.support()) degrees.insert(s);
  for (const auto& s : b.support()) degrees.insert(s);
  std::vector<Degree> order(degrees.begin(), degrees.end());
  std::sort(order.begin(), order.end(), [&](const Degree& x, const Degree& y) {
    int sx = 0, sy = 0;
    for (int v : x) sx += v;
    for (int v : y) sy += v;
    if (sx != sy) return sx < sy;
    return opt.reverse_ties ? y < x : x < y;
  });
  for (const auto& s : order) {
    if (out.count(s) || a.monoid().is_zero(s)) continue;
    const auto pairs = detail::common_factorizations(a, b, s);
    const Matrix pa = detail::tensor_projection(a, s, pairs);
    const Matrix pb = detail::tensor_projection(b, s, pairs);
    std::vector<Matrix> kblocks;
    for (const auto& [x, y] : pairs) {
      auto fx = out.find(x), fy = out.find(y);
      Matrix mx = fx != out.end() ? fx->second : Matrix(f, a.dim(x), b.dim(x));
      Matrix my = fy != out.end() ? fy->second : Matrix(f, a.dim(y), b.dim(y));
      kblocks.push_back(Matrix::kron(mx, my));
    }
    const Matrix ftensor = Matrix::block_diag(kblocks, f);
    const Matrix image = ftensor * pb;
    const Subspace ker = left_kernel(pa);
    if (!(ker.basis() * image).is_zero()) throw NoExtension(degree_string(s), "no extension exists at " + degree_string(s));
    LeftSolver solver(pa);
    if (solver.rank() != a.dim(s)) throw NotGenerated("component " + degree_string(s) + " is not generated");
    auto x = solver.solve(Matrix::identity(f, a.dim(s)));
    out[s] = *x * image;
  }
  for (const auto& [k, t] : a.products()) {
    const Degree target = a.monoid().add(k.first, k.second);
    const Homotopism h{out.at(k.first), out.at(k.second), out.at(target)};
    if (!is_homotopism(t, b.product(k.first, k.second), h))
      throw NoExtension(degree_string(target), "extension fails the product identity at " + degree_string(target));
  }
  for (const auto& [k, t] : b.products()) {
    if (a.products().count(k)) continue;
    const Degree target = a.monoid().add(k.first, k.second);
    const Homotopism h{out.at(k.first), out.at(k.second), out.at(target)};
    if (!is_homotopism(a.product(k.first, k.second), t, h))
      throw NoExtension(degree_string(target), "extension fails the product identity at " + degree_string(target));
  }
  return out;
}

inline bool is_graded_isomorphism(const GradedAlgebra& a, const GradedAlgebra& b, const GradedMap& g) {
  for (const auto& s : a.support()) {
    auto it = g.find(s);
    if (it == g.end() || !is_invertible(it->second)) return false;
  }
  for (const auto& s : b.support())
    if (!g.count(s)) return false;
  std::set<std::pair<Degree, Degree>> keys;
  for (const auto& [k, t] : a.products()) keys.insert(k);
  for (const auto& [k, t] : b.products()) keys.insert(k);
  for (const auto& k : keys) {
    const Degree target = a.monoid().add(k.first, k.second);
    if (!g.count(k.first) || !g.count(k.second) || !g.count(target)) return false;
    if (!is_homotopism(a.product(k.first, k.second), b.product(k.first, k.second),
                       {g.at(k.first), g.at(k.second), g.at(target)}))
      return false;
  }
  return true;
}

/// Layer bimap A_T x A_S -> A_{S+T}, with blocks in sorted degree order.
inline Bimap layer_bimap(const GradedAlgebra& a, const std::vector<Degree>& s_layer) {
  const Field& f = a.field();
  std::vector<Degree> ts = a.gen_degrees(), ss = s_layer;
  std::sort(ss.begin(), ss.end(), sweep_less);
  std::set<Degree, decltype(&sweep_less)> targets(&sweep_less);
  for (const auto& t : ts)
    for (const auto& s : ss) targets.insert(a.monoid().add(t, s));
  auto offsets = [&](const auto& list) {
    std::map<Degree, std::size_t> off;
    std::size_t at = 0;
    for (const auto& d : list) {
      off[d] = at;
      at += a.dim(d);
    }
    return std::make_pair(off, at);
  };
  auto [t_off, na] = offsets(ts);
  auto [s_off, nb] = offsets(ss);
  auto [u_off, nc] = offsets(targets);
  std::vector<Matrix> slices(nc, Matrix(f, na, nb));
  for (const auto& t : ts)
    for (const auto& s : ss) {
      const Bimap p = a.product(t, s);
      const std::size_t base = u_off[a.monoid().add(t, s)];
      for (std::size_t k = 0; k < p.c(); ++k) slices[base + k].set_block(t_off[t], s_off[s], p.slice(k));
    }
  return Bimap(f, na, nb, std::move(slices));
}

struct LayerChoice {
  std::vector<Degree> layer;
  double score = 0;
  bool exact = false;
  std::vector<std::pair<Degree, double>> scores;  // every candidate in order
};

/// Scores each singleton layer S = {s} by log_q |M(U)^x| + (dim A_{S+T})^2
/// and returns the smallest, ties going to the smallest degree.
inline LayerChoice select_layer(const GradedAlgebra& a, const SelectionOptions& opt = {}) {
  LayerChoice out;
  SelectionOptions so = opt;
  so.lower = false;
  bool first = true;
  for (const auto& s : a.support()) {
    if (a.monoid().is_zero(s)) continue;
    std::size_t target_dim = 0;
    std::set<Degree> targets;
    for (const auto& t : a.gen_degrees()) targets.insert(a.monoid().add(t, s));
    for (const auto& d : targets)
      if (d != s) target_dim += a.dim(d);
    if (target_dim == 0) continue;
    const Bimap u = layer_bimap(a, {s});
    const SelectionBounds b = selection_bounds(u, so);
    out.scores.emplace_back(s, b.upper_log);
    if (first || b.upper_log < out.score - 1e-9) {
      out.layer = {s};
      out.score = b.upper_log;
      out.exact = b.upper_exact;
      first = false;
    }
  }
  if (first) {
    // no layer multiplies into a nonzero component; fall back to T itself
    out.layer = {a.gen_degrees().empty() ? Degree(a.monoid().rank(), 1) : a.gen_degrees().front()};
  }
  return out;
}

struct GradedCoset {
  std::optional<GradedMap> representative;
  std::vector<GradedMap> generators;
  std::optional<std::uint64_t> order;  // |graded Aut(A)|
  std::vector<Degree> layer;
  std::uint64_t candidates = 0;
  bool empty() const { return !representative.has_value(); }
};

struct GradedOptions {
  std::optional<std::vector<Degree>> layer;
  CosetOptions coset;
  std::uint64_t closure_budget = 10000000;
};

namespace detail {

inline bool same_shape(const GradedAlgebra& a, const GradedAlgebra& b) {
  return a.field() == b.field() && a.monoid() == b.monoid() && a.components() == b.components() &&
         a.gen_degrees() == b.gen_degrees();
}

// Splits a map on A_T into per-degree maps; nullopt when it mixes degrees.
inline std::optional<GradedMap> split_generating_map(const GradedAlgebra& a, const Matrix& f2) {
  GradedMap out;
  std::size_t at = 0;
  const auto& ts = a.gen_degrees();
  std::vector<std::size_t> offs;
  for (const auto& t : ts) {
    offs.push_back(at);
    at += a.dim(t);
  }
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = 0; j < ts.size(); ++j) {
      Matrix blk = f2.block(offs[i], offs[j], a.dim(ts[i]), a.dim(ts[j]));
      if (i == j)
        out[ts[i]] = blk;
      else if (!blk.is_zero())
        return std::nullopt;
    }
  return out;
}

inline Matrix generating_block(const GradedAlgebra& a, const GradedMap& g) {
  std::vector<Matrix> blocks;
  for (const auto& t : a.gen_degrees()) blocks.push_back(g.at(t));
  return Matrix::block_diag(blocks, a.field());
}

}  // namespace detail

/// Graded isomorphisms A -> B: isotopisms of the layer bimaps filtered by
/// extension from the generating degrees.
inline GradedCoset graded_isomorphism_coset(const GradedAlgebra& a, const GradedAlgebra& b,
                                            const GradedOptions& opt = {}) {
  GradedCoset out;
  if (!detail::same_shape(a, b)) return out;
  out.layer = opt.layer ? *opt.layer : select_layer(a).layer;
  const Bimap ua = layer_bimap(a, out.layer), ub = layer_bimap(b, out.layer);
  const IsotopismCoset iso = isotopism_coset(ua, ub, opt.coset);
  if (iso.empty()) return out;
  const Field& f = a.field();
  // f2-parts of Aut(U_A), then the coset of f2-parts of isotopisms U_A -> U_B
  GroupClosure aut2(f, ua.a());
  for (const auto& h : iso.stabilizer_generators) {
    aut2.add(h.f2);
    if (aut2.size() > opt.closure_budget) throw BudgetExceeded("graded candidate budget exhausted");
  }
  std::optional<GradedMap> rep_inv;
  GroupClosure found(f, ua.a());
  for (const auto& g : aut2.elements()) {
    ++out.candidates;
    const Matrix f2 = g * iso.representative->f2;
    auto ft = detail::split_generating_map(a, f2);
    if (!ft) continue;
    GradedMap ext;
    try {
      ext = extend_homotopism(a, b, *ft);
    } catch (const NoExtension&) {
      continue;
    }
    if (!is_graded_isomorphism(a, b, ext)) continue;
    out.order = out.order.value_or(0) + 1;
    if (!out.representative) {
      out.representative = ext;
      rep_inv.emplace();
      for (const auto& [s, m] : ext) (*rep_inv)[s] = inverse(m);
      continue;
    }
    GradedMap auto_map;
    for (const auto& [s, m] : ext) auto_map[s] = m * rep_inv->at(s);
    if (found.add(detail::generating_block(a, auto_map)))
      out.generators.push_back(std::move(auto_map));
  }
  return out;
}

}  // namespace galg
