#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace galg;
using testing_helpers::random_bimap;

namespace {

void expect_identities(const Bimap& u, RingKind kind, const OperatorSpace& s) {
  for (const auto& t : s.basis) EXPECT_TRUE(satisfies_identity(u, u, kind, t)) << to_string(kind);
}

// Number of tuples in the whole ambient space satisfying the identity; the
// space is small enough to enumerate when this is called.
std::uint64_t brute_count(const Bimap& u, RingKind kind, const std::vector<std::pair<std::size_t, std::size_t>>& shapes) {
  const Field& f = u.field();
  std::size_t n = 0;
  for (auto [r, c] : shapes) n += r * c;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= f.order();
  std::uint64_t count = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Vec v = vector_from_index(idx, n, f.order());
    std::vector<Matrix> t;
    std::size_t at = 0;
    for (auto [r, c] : shapes) {
      t.emplace_back(f, r, c, Vec(v.begin() + at, v.begin() + at + r * c));
      at += r * c;
    }
    if (satisfies_identity(u, u, kind, t)) ++count;
  }
  return count;
}

}  // namespace

TEST(Rings, ZeroBimapAdjointsAreEverything) {
  Field f = Field::prime(2);
  EXPECT_EQ(adjoint_ring(Bimap::zero(f, 2, 3, 1)).dim(), 13u);
  RingDims d = tri_ring_dims(Bimap::zero(f, 1, 1, 1));
  EXPECT_EQ(d.L, 2u);
  EXPECT_EQ(d.M, 2u);
  EXPECT_EQ(d.R, 2u);
  EXPECT_EQ(d.T, 6u);
  EXPECT_EQ(d.C, 3u);
}

TEST(Rings, IdentityGramGivesMatrixRing) {
  Field f = Field::prime(5);
  for (std::size_t n = 1; n <= 3; ++n) {
    Bimap u(f, n, n, {Matrix::identity(f, n)});
    EXPECT_EQ(adjoint_ring(u).dim(), n * n);
  }
}

TEST(Rings, SingleSliceExample) {
  Field f = Field::prime(3);
  Bimap u(f, 2, 3, {Matrix::from_ints(f, {{1, 0, 0}, {0, 1, 0}})});
  EXPECT_EQ(adjoint_ring(u).dim(), 7u);
}

TEST(Rings, HeisenbergCentroidIsScalars) {
  Field f = Field::prime(3);
  OperatorSpace c = centroid(heisenberg(1, f));
  ASSERT_EQ(c.dim(), 1u);
  EXPECT_TRUE(c.basis[0][0].is_identity());
  EXPECT_TRUE(c.basis[0][1].is_identity());
  EXPECT_TRUE(c.basis[0][2].is_identity());
}

TEST(Rings, DirectSumCentroidHasBlockScalars) {
  Field f = Field::prime(3);
  Matrix s = Matrix::from_ints(f, {{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  Matrix t = Matrix::from_ints(f, {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  EXPECT_GE(centroid(Bimap(f, 4, 4, {s, t})).dim(), 2u);
}

// Dimensions from elimination agree with exhaustive counting over GF(2).
TEST(Rings, HeisenbergGf2MatchesEnumeration) {
  Field f = Field::prime(2);
  Bimap h = heisenberg(1, f);
  auto q_pow = [](std::size_t d) { return std::uint64_t{1} << d; };
  EXPECT_EQ(q_pow(adjoint_ring(h).dim()), brute_count(h, RingKind::M, {{2, 2}, {2, 2}}));
  EXPECT_EQ(q_pow(left_ring(h).dim()), brute_count(h, RingKind::L, {{2, 2}, {1, 1}}));
  EXPECT_EQ(q_pow(right_ring(h).dim()), brute_count(h, RingKind::R, {{2, 2}, {1, 1}}));
  EXPECT_EQ(q_pow(centroid(h).dim()), brute_count(h, RingKind::C, {{2, 2}, {2, 2}, {1, 1}}));
}

TEST(Rings, BasisElementsSatisfyIdentities) {
  Field f = Field::prime(3);
  Rng rng(11);
  for (int t = 0; t < 25; ++t) {
    Bimap u = random_bimap(f, 1 + rng.below(3), 1 + rng.below(3), 1 + rng.below(2), rng);
    expect_identities(u, RingKind::M, adjoint_ring(u));
    expect_identities(u, RingKind::L, left_ring(u));
    expect_identities(u, RingKind::R, right_ring(u));
    expect_identities(u, RingKind::C, centroid(u));
  }
}

TEST(Rings, AdjointRingIsClosed) {
  Field f = Field::prime(2);
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    Bimap u = random_bimap(f, 3, 2, 1, rng);
    EXPECT_TRUE(ring_algebra(adjoint_ring(u)).is_closed());
  }
}

TEST(Rings, AdjointMorphismsBetweenBimaps) {
  Field f = Field::prime(3);
  Rng rng(13);
  Bimap u = random_bimap(f, 2, 3, 2, rng), v = random_bimap(f, 2, 3, 2, rng);
  OperatorSpace s = adjoint_morphisms(u, v);
  for (const auto& t : s.basis) EXPECT_TRUE(satisfies_identity(u, v, RingKind::Adj, t));
}

TEST(Rings, AdjointRingOfIntersectionIsIntersection) {
  Rng rng(14);
  for (const char* name : {"D.json", "E.json"}) {
    Bimap u = testing_helpers::sample(name);
    for (int t = 0; t < 5; ++t) {
      // random split of the slices into two nonempty groups
      std::vector<Matrix> a, b;
      for (const auto& s : u.slices()) (rng.below(2) ? a : b).push_back(s);
      if (a.empty()) a.push_back(b.back()), b.pop_back();
      if (b.empty()) b.push_back(a.back()), a.pop_back();
      Bimap ua(u.field(), u.a(), u.b(), a), ub(u.field(), u.a(), u.b(), b);
      Subspace lhs = adjoint_ring(intersect({ua, ub})).as_subspace();
      Subspace rhs = adjoint_ring(ua).as_subspace().intersect(adjoint_ring(ub).as_subspace());
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(Rings, InvolutionSwapsPairs) {
  Field f = Field::prime(3);
  Bimap h = heisenberg(1, f);
  auto inv = involution_on_adjoints(h);
  OperatorSpace m = adjoint_ring(h);
  Subspace span = m.as_subspace();
  for (const auto& t : m.basis) {
    auto s = inv(t);
    EXPECT_EQ(inv(s), t);
    EXPECT_TRUE(span.contains(m.flatten(s)));
  }
  Bimap bad(f, 2, 2, {Matrix::from_ints(f, {{0, 1}, {0, 0}})});
  EXPECT_THROW(involution_on_adjoints(bad), NotHermitianSlices);
}

TEST(Rings, SelectionBoundsSandwichAut) {
  Field f = Field::prime(2);
  Bimap h = heisenberg(1, f);
  SelectionBounds b = selection_bounds(h);
  ASSERT_TRUE(b.upper_exact && b.lower_num && b.lower_den);
  const double aut = static_cast<double>(oracle::brute_isotopisms(h, h).size());
  EXPECT_LE(static_cast<double>(*b.lower_num) / *b.lower_den, aut);
  EXPECT_LE(std::log(aut) / std::log(2.0), b.upper_log + 1e-9);
}

TEST(Rings, ZeroBimapUpperBound) {
  Field f = Field::prime(2);
  SelectionBounds b = selection_bounds(Bimap::zero(f, 1, 1, 1));
  // M = K x K has one unit over GF(2); q^(c^2) = 2
  ASSERT_TRUE(b.m_units);
  EXPECT_EQ(*b.m_units, 1u);
  EXPECT_NEAR(b.upper_log, 1.0, 1e-9);
}
