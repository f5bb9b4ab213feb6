#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace galg;
using testing_helpers::random_bimap;
using testing_helpers::random_isotopism;

TEST(Bimap, RejectsWrongSliceShape) {
  Field f = Field::prime(3);
  EXPECT_THROW(Bimap(f, 2, 2, {Matrix(f, 2, 3)}), DimensionMismatch);
}

TEST(Bimap, EvaluateMatchesSlices) {
  Field f = Field::prime(5);
  Rng rng(1);
  Bimap u = random_bimap(f, 3, 2, 4, rng);
  Vec x{1, 2, 3}, y{4, 0};
  Vec z = u.evaluate(x, y);
  for (std::size_t k = 0; k < 4; ++k) {
    Elem acc = 0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 2; ++j) acc = f.add(acc, f.mul(x[i], f.mul(u.slice(k)(i, j), y[j])));
    EXPECT_EQ(z[k], acc);
  }
}

TEST(Bimap, TransportGivesIsotopism) {
  Field f = Field::prime(3);
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    Bimap u = random_bimap(f, 3, 2, 2, rng);
    Homotopism h = random_isotopism(u, rng);
    EXPECT_TRUE(is_isotopism(u, transport(u, h), h));
  }
}

TEST(Bimap, HomotopismRejectsWrongShapes) {
  Field f = Field::prime(2);
  Bimap u = Bimap::zero(f, 2, 2, 1);
  Homotopism h{Matrix::identity(f, 3), Matrix::identity(f, 2), Matrix::identity(f, 1)};
  EXPECT_THROW(is_homotopism(u, u, h), DimensionMismatch);
}

// An isotopism U -> V stays an isotopism after applying the same shuffle to
// both sides; this is what lets the coset search work in any slot.
TEST(Bimap, ShufflesCarryIsotopisms) {
  Field f = Field::prime(3);
  Rng rng(3);
  for (Shuffle s : {Shuffle::identity, Shuffle::swap21, Shuffle::swap10, Shuffle::swap20}) {
    for (int t = 0; t < 10; ++t) {
      Bimap u = random_bimap(f, 2, 3, 2, rng);
      Homotopism h = random_isotopism(u, rng);
      Bimap v = transport(u, h);
      EXPECT_TRUE(is_isotopism(shuffle(u, s), shuffle(v, s), shuffle_isotopism(h, s)));
    }
  }
}

TEST(Bimap, ShufflesAreInvolutions) {
  Field f = Field::prime(5);
  Rng rng(4);
  Bimap u = random_bimap(f, 2, 3, 4, rng);
  for (Shuffle s : {Shuffle::swap21, Shuffle::swap10, Shuffle::swap20}) EXPECT_EQ(shuffle(shuffle(u, s), s), u);
  EXPECT_EQ(shuffle(u, Shuffle::swap10).c(), 3u);
  EXPECT_EQ(shuffle(u, Shuffle::swap20).c(), 2u);
}

TEST(Bimap, ShuffleAxesRejectsNonPermutation) {
  Field f = Field::prime(2);
  EXPECT_THROW(shuffle_axes(Bimap::zero(f, 1, 1, 1), {0, 0, 1}), BadParameters);
}

TEST(Bimap, AlternatingAndSymmetric) {
  Field f = Field::prime(3);
  EXPECT_TRUE(heisenberg(2, f).is_alternating());
  EXPECT_FALSE(heisenberg(2, f).is_symmetric());
  Bimap s(f, 2, 2, {Matrix::from_ints(f, {{1, 2}, {2, 0}})});
  EXPECT_TRUE(s.is_symmetric());
  EXPECT_FALSE(s.is_alternating());
}

TEST(Bimap, PullbackCombinesSlices) {
  Field f = Field::prime(5);
  Rng rng(5);
  Bimap u = random_bimap(f, 2, 2, 3, rng);
  Matrix h = Matrix::random(f, 3, 2, rng);
  Bimap w = u.pullback(h);
  ASSERT_EQ(w.c(), 2u);
  for (std::size_t l = 0; l < 2; ++l) EXPECT_EQ(w.slice(l), u.combine({h(0, l), h(1, l), h(2, l)}));
}

TEST(Bimap, OrthogonalCheck) {
  Field f = Field::prime(3);
  // Heisenberg with n = 2: e1, e2 pair with e3, e4 across, so {e1,e3} | {e2,e4}
  Bimap h = heisenberg(2, f);
  Subspace p = Subspace::span(Matrix::from_ints(f, {{1, 0, 0, 0}, {0, 0, 1, 0}}));
  Subspace q = Subspace::span(Matrix::from_ints(f, {{0, 1, 0, 0}, {0, 0, 0, 1}}));
  EXPECT_TRUE(orthogonal_check(h, {p, q}, {p, q}));
  Subspace r = Subspace::span(Matrix::from_ints(f, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
  Subspace s = Subspace::span(Matrix::from_ints(f, {{0, 0, 1, 0}, {0, 0, 0, 1}}));
  EXPECT_FALSE(orthogonal_check(h, {r, s}, {r, s}));
  EXPECT_THROW(orthogonal_check(h, {p, p}, {p, q}), NotDirectSum);
}

TEST(Bimap, IntersectStacksCodomains) {
  Field f = Field::prime(2);
  Rng rng(6);
  Bimap a = random_bimap(f, 2, 3, 1, rng), b = random_bimap(f, 2, 3, 2, rng);
  Bimap c = intersect({a, b});
  EXPECT_EQ(c.c(), 3u);
  EXPECT_EQ(c.slice(2), b.slice(1));
  EXPECT_THROW(intersect({a, random_bimap(f, 3, 3, 1, rng)}), DimensionMismatch);
}
