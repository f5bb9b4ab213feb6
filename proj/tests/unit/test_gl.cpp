#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace galg;

TEST(Gl, OrderFormula) {
  EXPECT_EQ(gl_order(2, 2), std::optional<std::uint64_t>(6));
  EXPECT_EQ(gl_order(3, 3), std::optional<std::uint64_t>(11232));
  EXPECT_EQ(gl_order(4, 3), std::optional<std::uint64_t>(24261120));
  EXPECT_EQ(gl_order(3, 5), std::optional<std::uint64_t>(1488000));
  EXPECT_FALSE(gl_order(20, 5).has_value());
}

TEST(Gl, EnumerationCount) {
  for (auto [n, p] : {std::pair<std::size_t, std::uint32_t>{2, 3}, {3, 2}, {2, 5}}) {
    Field f = Field::prime(p);
    std::uint64_t count = 0;
    for_each_gl(f, n, 1u << 20, [&](const Matrix& g) {
      EXPECT_TRUE(is_invertible(g));
      ++count;
      return true;
    });
    EXPECT_EQ(count, *gl_order(n, p));
  }
}

TEST(Gl, BudgetIsEnforced) {
  EXPECT_THROW(oracle::all_gl(Field::prime(3), 3, 100), BudgetExceeded);
}
