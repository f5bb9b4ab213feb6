#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace galg;

TEST(Poly, FactorDegrees) {
  Field f = Field::prime(3);
  // (t^2 + 1)(t - 1)^2 over GF(3); t^2 + 1 is irreducible
  Poly a = poly::mul(f, Poly{1, 0, 1}, poly::mul(f, Poly{2, 1}, Poly{2, 1}));
  EXPECT_EQ(poly::factor_degrees(f, a), (std::vector<int>{1, 1, 2}));
  // t^3 - t splits completely
  EXPECT_EQ(poly::factor_degrees(f, Poly{0, 2, 0, 1}), (std::vector<int>{1, 1, 1}));
}

TEST(Poly, PthPowerFactors) {
  Field f = Field::prime(2);
  // (t^2 + t + 1)^2 = t^4 + t^2 + 1
  EXPECT_EQ(poly::factor_degrees(f, Poly{1, 0, 1, 0, 1}), (std::vector<int>{2, 2}));
}

TEST(Poly, PencilDeterminantAgreesPointwise) {
  Field f = Field::prime(5);
  Rng rng(81);
  for (int t = 0; t < 10; ++t) {
    Matrix a = Matrix::random(f, 4, 4, rng), b = Matrix::random(f, 4, 4, rng);
    Poly d = pencil_determinant(a, b);
    for (Elem x = 0; x < 5; ++x) {
      Elem v = 0, pw = 1;
      for (Elem c : d) {
        v = f.add(v, f.mul(c, pw));
        pw = f.mul(pw, x);
      }
      EXPECT_EQ(v, determinant(a + b.scaled(x)));
    }
  }
  EXPECT_THROW(pencil_determinant(Matrix(f, 2, 3), Matrix(f, 2, 3)), NotSquare);
}

// The canonical form depends only on the pencil, not the chosen basis, and
// is unchanged by congruence.
TEST(Poly, PencilFormInvariance) {
  Field f = Field::prime(3);
  Rng rng(82);
  for (int t = 0; t < 10; ++t) {
    Matrix a = Matrix::random(f, 4, 4, rng), b = Matrix::random(f, 4, 4, rng);
    auto base = pencil_form(a, b);
    Matrix g = Matrix::random_invertible(f, 2, rng), x = Matrix::random_invertible(f, 4, rng);
    Matrix a2 = a.scaled(g(0, 0)) + b.scaled(g(0, 1)), b2 = a.scaled(g(1, 0)) + b.scaled(g(1, 1));
    EXPECT_EQ(pencil_form(a2, b2), base);
    EXPECT_EQ(pencil_form(x * a * x.transpose(), x * b * x.transpose()), base);
  }
  Matrix z(f, 3, 3);
  EXPECT_FALSE(pencil_form(z, z).has_value());
}

TEST(Poly, PatternCountsRootsAtInfinity) {
  Field f = Field::prime(3);
  // det(x A + y B) = x y with A = diag(1, 0), B = diag(0, 1)
  Matrix a = Matrix::from_ints(f, {{1, 0}, {0, 0}}), b = Matrix::from_ints(f, {{0, 0}, {0, 1}});
  EXPECT_EQ(pencil_pattern(a, b), (std::vector<int>{1, 1}));
}
