#pragma once

// Principal autotopism groups, partial and full principal isotopisms, and
// isotopism cosets by lifting candidate codomain maps.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "galg/bimap.hpp"
#include "galg/errors.hpp"
#include "galg/gl.hpp"
#include "galg/labels.hpp"
#include "galg/linalg.hpp"
#include "galg/rings.hpp"
#include "galg/rng.hpp"
#include "galg/units.hpp"

namespace galg {

/// Shuffle moving axis i to slot 0.
inline Shuffle shuffle_to_zero(int i) {
  switch (i) {
    case 0: return Shuffle::identity;
    case 1: return Shuffle::swap10;
    case 2: return Shuffle::swap20;
  }
  throw BadParameters("axis index must be 2, 1 or 0");
}

struct PrincipalAutotopismGroup {
  int fixed_index = 0;
  std::vector<Homotopism> generators;
  std::optional<std::uint64_t> order;
  bool exact = false;
};

/// Aut(U)^(i): autotopisms with the identity in slot i, from the units of the
/// adjoint ring of the shuffled bimap.
inline PrincipalAutotopismGroup principal_autotopism_group(const Bimap& u, int i,
                                                           const UnitGroupOptions& opt = {}) {
  const Shuffle s = shuffle_to_zero(i);
  const Bimap w = shuffle(u, s);
  const Field& f = u.field();
  MatrixAlgebra alg = ring_algebra(adjoint_ring(w));
  UnitGroup units = unit_group(alg, opt);
  PrincipalAutotopismGroup out;
  out.fixed_index = i;
  out.order = units.order;
  out.exact = units.exhaustive;
  for (const auto& m : units.generators) {
    const Matrix F = m.block(0, 0, w.a(), w.a());
    const Matrix G = m.block(w.a(), w.a(), w.b(), w.b()).transpose();
    Homotopism h{F, inverse(G), Matrix::identity(f, w.c())};
    out.generators.push_back(shuffle_isotopism(h, s));
  }
  return out;
}

/// Maximal partial principal isotopism U -> V over f0: maps f2 and f1 defined
/// on orthogonal factors U2+, U1+, given as paired rows (domain, image).
struct PartialIsotopism {
  Matrix f0;
  Matrix dom2, img2;  // row i of dom2 maps to row i of img2
  Matrix dom1, img1;
  Subspace u2_minus, u1_minus, v2_minus, v1_minus;

  Subspace u2_plus() const { return Subspace::span(dom2); }
  Subspace u1_plus() const { return Subspace::span(dom1); }
  bool complete() const {
    return u2_minus.is_zero() && u1_minus.is_zero() && v2_minus.is_zero() && v1_minus.is_zero();
  }
};

namespace detail {

// An adjoint pair (F, G); composition follows maps left to right.
struct AdjPair {
  Matrix F, G;
};

inline AdjPair compose(const AdjPair& x, const AdjPair& y) { return {x.F * y.F, y.G * x.G}; }

inline bool pair_nilpotent(const AdjPair& z) { return is_nilpotent(z.F) && is_nilpotent(z.G); }

inline std::vector<AdjPair> pairs_of(const OperatorSpace& s) {
  std::vector<AdjPair> out;
  for (const auto& t : s.basis) out.push_back({t[0], t[1]});
  return out;
}

inline AdjPair random_pair(const OperatorSpace& s, Rng& rng) {
  auto t = s.random_element(rng);
  return {t[0], t[1]};
}

// Finds x in X and r in Adj(V, T) with x r not nilpotent, if any.
inline std::optional<std::pair<AdjPair, AdjPair>> non_nilpotent_product(const OperatorSpace& xs,
                                                                        const OperatorSpace& ys, Rng& rng,
                                                                        std::size_t budget) {
  if (xs.dim() == 0 || ys.dim() == 0) return std::nullopt;
  const auto X = pairs_of(xs), Y = pairs_of(ys);
  for (const auto& x : X)
    for (const auto& y : Y)
      if (!pair_nilpotent(compose(x, y))) return std::make_pair(x, y);
  for (int t = 0; t < 16; ++t) {
    AdjPair x = random_pair(xs, rng), y = random_pair(ys, rng);
    if (!pair_nilpotent(compose(x, y))) return std::make_pair(x, y);
  }
  const Field& f = xs.field;
  std::vector<Matrix> gens;
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = 0; j < Y.size(); ++j) {
      AdjPair p = compose(X[i], Y[j]);
      gens.push_back(Matrix::block_diag({p.F, p.G.transpose()}, f));
      idx.emplace_back(i, j);
    }
  const std::size_t n = gens[0].rows();
  NilpotencyWitness w = nilpotency_witness(f, n, gens, budget);
  if (w.nilpotent) return std::nullopt;
  AdjPair x = X[idx[w.word[0]].first];
  AdjPair r = Y[idx[w.word[0]].second];
  for (std::size_t k = 1; k < w.word.size(); ++k) {
    auto [i, j] = idx[w.word[k]];
    r = compose(compose(r, X[i]), Y[j]);
  }
  return std::make_pair(x, r);
}

inline Matrix append_rows(const Matrix& a, const Matrix& b) {
  return Matrix::vstack({a, b}, a.field(), a.cols());
}

}  // namespace detail

struct IsotopismOptions {
  std::uint64_t seed = 0;
  int random_trials = 16;
  std::size_t word_budget = 200000;
};

inline PartialIsotopism partial_principal_isotopism(const Bimap& u, const Bimap& v, const Matrix& f0,
                                                    const IsotopismOptions& opt = {}) {
  if (u.c() != v.c() || f0.rows() != u.c() || f0.cols() != v.c())
    throw DimensionMismatch("codomain dimensions differ");
  if (u.field() != v.field()) throw FieldMismatch("bimaps over different fields");
  if (!is_invertible(f0)) throw NotInvertible("f0 must be invertible");
  const Field& f = u.field();
  const Bimap t = u.pullback(f0);
  PartialIsotopism out;
  out.f0 = f0;
  out.dom2 = Matrix(f, 0, u.a());
  out.img2 = Matrix(f, 0, v.a());
  out.dom1 = Matrix(f, 0, u.b());
  out.img1 = Matrix(f, 0, v.b());
  Rng rng(opt.seed);

  if (u.a() == v.a() && u.b() == v.b()) {
    const OperatorSpace adj = adjoint_morphisms(t, v);
    if (adj.dim() > 0) {
      for (int k = 0; k < opt.random_trials; ++k) {
        auto x = adj.random_element(rng);
        if (is_invertible(x[0]) && is_invertible(x[1])) {
          out.dom2 = Matrix::identity(f, u.a());
          out.img2 = x[0];
          out.dom1 = x[1];  // w Gx -> w
          out.img1 = Matrix::identity(f, v.b());
          out.u2_minus = Subspace::zero(f, u.a());
          out.u1_minus = Subspace::zero(f, u.b());
          out.v2_minus = Subspace::zero(f, v.a());
          out.v1_minus = Subspace::zero(f, v.b());
          return out;
        }
      }
    }
  }

  Subspace u2 = Subspace::full(f, u.a()), u1 = Subspace::full(f, u.b());
  Subspace v2 = Subspace::full(f, v.a()), v1 = Subspace::full(f, v.b());
  for (;;) {
    if (u2.is_zero() && u1.is_zero() && v2.is_zero() && v1.is_zero()) break;
    const Bimap tm = t.restrict(u2.basis(), u1.basis());
    const Bimap vm = v.restrict(v2.basis(), v1.basis());
    const OperatorSpace xs = adjoint_morphisms(tm, vm);
    const OperatorSpace ys = adjoint_morphisms(vm, tm);
    auto found = detail::non_nilpotent_product(xs, ys, rng, opt.word_budget);
    if (!found) break;
    const auto& [x, r] = *found;
    const detail::AdjPair z = detail::compose(x, r);   // on Tm
    const detail::AdjPair zv = detail::compose(r, x);  // on Vm
    const FittingSplit s2 = fitting_split(z.F), s1 = fitting_split(z.G);
    const FittingSplit w2 = fitting_split(zv.F), w1 = fitting_split(zv.G);
    // f2: p -> p Fx on im z.F^n; f1: p Gz -> p Gr on im z.G^n
    const Matrix& p2 = s2.image.basis();
    const Matrix& p1 = s1.image.basis();
    out.dom2 = detail::append_rows(out.dom2, p2 * u2.basis());
    out.img2 = detail::append_rows(out.img2, p2 * x.F * v2.basis());
    out.dom1 = detail::append_rows(out.dom1, p1 * z.G * u1.basis());
    out.img1 = detail::append_rows(out.img1, p1 * r.G * v1.basis());
    u2 = Subspace::span(s2.kernel.basis() * u2.basis());
    u1 = Subspace::span(s1.kernel.basis() * u1.basis());
    v2 = Subspace::span(w2.kernel.basis() * v2.basis());
    v1 = Subspace::span(w1.kernel.basis() * v1.basis());
  }
  out.u2_minus = u2;
  out.u1_minus = u1;
  out.v2_minus = v2;
  out.v1_minus = v1;
  return out;
}

/// An isotopism (f2, f1, f0): U -> V over the given f0, or nullopt.
inline std::optional<Homotopism> principal_isotopism(const Bimap& u, const Bimap& v, const Matrix& f0,
                                                     const IsotopismOptions& opt = {}) {
  if (u.a() != v.a() || u.b() != v.b() || u.c() != v.c()) return std::nullopt;
  PartialIsotopism p = partial_principal_isotopism(u, v, f0, opt);
  if (!p.complete()) return std::nullopt;
  auto d2 = try_inverse(p.dom2), d1 = try_inverse(p.dom1);
  if (!d2 || !d1) return std::nullopt;
  Homotopism h{*d2 * p.img2, *d1 * p.img1, f0};
  if (!is_isotopism(u, v, h)) return std::nullopt;
  return h;
}

/// Subgroup of GL(n) generated so far, kept as an explicit element set.
class GroupClosure {
 public:
  GroupClosure(const Field& f, std::size_t n) : f_(f), n_(n) {
    Matrix e = Matrix::identity(f, n);
    elems_.insert(e.data());
    list_.push_back(e);
  }

  bool contains(const Matrix& g) const { return elems_.count(g.data()) > 0; }
  std::size_t size() const { return list_.size(); }
  const std::vector<Matrix>& elements() const { return list_; }

  /// Adds a generator; returns false when it was already in the group.
  bool add(const Matrix& g) {
    if (contains(g)) return false;
    gens_.push_back(g);
    // every element is a word in the generators; close under right multiplication
    std::vector<Matrix> frontier = list_;
    while (!frontier.empty()) {
      std::vector<Matrix> next;
      for (const auto& x : frontier)
        for (const auto& s : gens_) {
          Matrix y = x * s;
          if (elems_.insert(y.data()).second) {
            list_.push_back(y);
            next.push_back(std::move(y));
          }
        }
      frontier.swap(next);
    }
    return true;
  }

 private:
  Field f_;
  std::size_t n_;
  std::vector<Matrix> gens_;
  std::vector<Matrix> list_;
  std::unordered_set<std::vector<Elem>, detail::VecHash> elems_;
};

enum class GStrategy { full, labels, trivial_plus };

inline const char* to_string(GStrategy s) {
  switch (s) {
    case GStrategy::full: return "full";
    case GStrategy::labels: return "labels";
    case GStrategy::trivial_plus: return "trivial-plus";
  }
  return "?";
}

inline GStrategy parse_strategy(const std::string& s) {
  if (s == "full") return GStrategy::full;
  if (s == "labels") return GStrategy::labels;
  if (s == "trivial-plus") return GStrategy::trivial_plus;
  throw BadParameters("unknown strategy: " + s);
}

struct CosetOptions {
  GStrategy strategy = GStrategy::labels;
  std::uint64_t budget = 100000000;
  std::uint64_t seed = 0;
  bool use_lines = true;
  UnitGroupOptions units;
};

struct IsotopismCoset {
  std::optional<Homotopism> representative;  // U -> V
  std::vector<Homotopism> stabilizer_generators;  // generators of Aut(U)
  std::optional<std::uint64_t> order;            // |Aut(U)|
  bool order_exact = false;
  Shuffle shuffle = Shuffle::identity;
  std::string strategy;
  std::uint64_t candidates = 0;  // size of G
  std::uint64_t lifts = 0;       // candidates g that lift
  bool empty() const { return !representative.has_value(); }
};

/// Shuffle putting the smallest space in slot 0; ties keep U0, then U1.
inline Shuffle smallest_slot_shuffle(const Bimap& u) {
  Shuffle best = Shuffle::identity;
  std::size_t dim = u.c();
  if (u.b() < dim) {
    best = Shuffle::swap10;
    dim = u.b();
  }
  if (u.a() < dim) best = Shuffle::swap20;
  return best;
}

namespace detail {

// Candidate codomain maps g for isotopisms U -> V.
inline void for_each_candidate(const Bimap& u, const Bimap& v, const CosetOptions& opt, std::string& used,
                               const std::function<void(const Matrix&)>& fn) {
  const Field& f = u.field();
  if (opt.strategy == GStrategy::trivial_plus) {
    used = "trivial-plus";
    fn(Matrix::identity(f, u.c()));
    return;
  }
  if (opt.strategy == GStrategy::labels) {
    try {
      LabeledGeometry gu(u, opt.use_lines), gv(v, opt.use_lines);
      CompatibleOptions co;
      co.use_lines = opt.use_lines;
      co.node_budget = opt.budget;
      for (const auto& g : compatible_codomain_maps(gu, gv, co)) fn(g);
      used = "labels";
      return;
    } catch (const BudgetExceeded&) {
      // fall through to the full search
    }
  }
  used = "full";
  for_each_gl(f, u.c(), opt.budget, [&](const Matrix& g) {
    fn(g);
    return true;
  });
}

}  // namespace detail

/// Isotopisms U -> V, reported as one representative together with
/// generators and the order of Aut(U).
inline IsotopismCoset isotopism_coset(const Bimap& u, const Bimap& v, const CosetOptions& opt = {}) {
  if (u.field() != v.field()) throw FieldMismatch("bimaps over different fields");
  IsotopismCoset out;
  out.shuffle = smallest_slot_shuffle(u);
  if (u.a() != v.a() || u.b() != v.b() || u.c() != v.c()) {
    out.strategy = to_string(opt.strategy);
    return out;
  }
  const Bimap us = shuffle(u, out.shuffle), vs = shuffle(v, out.shuffle);
  const Field& f = u.field();

  UnitGroupOptions uo = opt.units;
  uo.seed = opt.seed;
  PrincipalAutotopismGroup aut0 = principal_autotopism_group(us, 0, uo);

  IsotopismOptions io;
  io.seed = opt.seed;
  std::optional<Homotopism> rep;
  std::optional<Matrix> rep_inv0;
  GroupClosure lifted(f, us.c());
  std::vector<Homotopism> extra;
  detail::for_each_candidate(us, vs, opt, out.strategy, [&](const Matrix& g) {
    ++out.candidates;
    auto h = principal_isotopism(us, vs, g, io);
    if (!h) return;
    ++out.lifts;
    if (!rep) {
      rep = *h;
      rep_inv0 = inverse(h->f0);
      return;
    }
    // h then rep^-1 is an autotopism of U with codomain part g rep0^-1
    const Matrix g0 = g * *rep_inv0;
    if (lifted.add(g0)) extra.push_back(h->then(rep->inverse()));
  });
  if (!rep) return out;

  out.representative = shuffle_isotopism(*rep, out.shuffle);
  for (const auto& h : aut0.generators) out.stabilizer_generators.push_back(shuffle_isotopism(h, out.shuffle));
  for (const auto& h : extra) out.stabilizer_generators.push_back(shuffle_isotopism(h, out.shuffle));
  if (aut0.order && out.strategy != "trivial-plus") {
    unsigned __int128 total = static_cast<unsigned __int128>(*aut0.order) * out.lifts;
    if (total <= ~0ULL) out.order = static_cast<std::uint64_t>(total);
  }
  out.order_exact = aut0.exact && out.order.has_value();
  return out;
}

}  // namespace galg
