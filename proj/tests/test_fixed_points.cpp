#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "bfly/butterfly.hpp"
#include "bfly/fixed_points.hpp"

using namespace bfly;

namespace {

// Distribution of the number of fixed points over the enumerated group.
std::map<std::size_t, std::size_t> fixed_point_census(unsigned m, unsigned n) {
  std::map<std::size_t, std::size_t> census;
  enumerate_group(m, n, false, [&](const Permutation& p) { ++census[cycle_stats(p).fixed_points]; });
  return census;
}

}  // namespace

TEST(FixedPoints, XStar) {
  EXPECT_NEAR(x_star(3), (std::sqrt(3.0) - 1) / 2, 1e-14);
  EXPECT_NEAR(x_star(3), 0.366025, 1e-6);
  EXPECT_NEAR(x_star(5), 0.200257, 1e-6);
  EXPECT_NEAR(x_star(7), 0.142858, 1e-6);
  EXPECT_EQ(x_star(2), 1.0);
  for (unsigned m = 3; m <= 12; ++m) {
    const double x = x_star(m);
    EXPECT_NEAR(q_poly(m, x), 0, 1e-13);
    EXPECT_NEAR(h_map(m, x), x, 1e-13);
    EXPECT_GT(x, 1.0 / m);
    EXPECT_LT(x, 1.0);
  }
  EXPECT_THROW(x_star(1), std::invalid_argument);
}

TEST(FixedPoints, QPolyFactorsHMap) {
  // m (h_m(x) - x) = (x - 1) q_m(x).
  for (unsigned m = 2; m <= 9; ++m)
    for (double x = 0; x <= 1.0; x += 0.125) EXPECT_NEAR(m * (h_map(m, x) - x), (x - 1) * q_poly(m, x), 1e-13);
}

TEST(FixedPoints, BinaryFourIsFiveOfEight) {
  const auto census = fixed_point_census(2, 2);
  EXPECT_EQ(census.at(0), 5u);
  EXPECT_EQ(no_fixed_point_prob_exact(2, 2), make_q(5, 8));
}

TEST(FixedPoints, ExactLawMatchesCensus) {
  for (auto [m, nmax] : {std::pair{2u, 4u}, std::pair{3u, 2u}, std::pair{5u, 1u}})
    for (unsigned n = 0; n <= nmax; ++n) {
      const auto census = fixed_point_census(m, n);
      std::size_t total = 0;
      for (auto [k, c] : census) total += c;
      const auto it = census.find(0);
      const mpq_class zero = make_q(it == census.end() ? 0 : it->second, total);
      EXPECT_EQ(no_fixed_point_prob_exact(m, n), zero) << "m=" << m << " n=" << n;
      EXPECT_NEAR(no_fixed_point_prob(m, n), zero.get_d(), 1e-15);
    }
}

TEST(FixedPoints, MomentsByEnumeration) {
  for (auto [m, nmax] : {std::pair{2u, 4u}, std::pair{3u, 2u}})
    for (unsigned n = 0; n <= nmax; ++n) {
      const auto census = fixed_point_census(m, n);
      std::size_t total = 0, s1 = 0, s2 = 0;
      for (auto [k, c] : census) {
        total += c;
        s1 += k * c;
        s2 += k * k * c;
      }
      EXPECT_EQ(make_q(s1, total), fixed_point_moments(m, n, 1));
      EXPECT_EQ(make_q(s2, total), fixed_point_moments(m, n, 2)) << "m=" << m << " n=" << n;
      EXPECT_EQ(fixed_point_moments(m, n, 2), n * (m - 1) + 1);
    }
  EXPECT_THROW(fixed_point_moments(2, 3, 3), std::invalid_argument);
}

TEST(FixedPoints, IterationLimit) {
  EXPECT_EQ(no_fixed_point_prob(2, 0), 0.0);
  for (unsigned m = 2; m <= 7; ++m) {
    double prev = 0;
    for (unsigned n = 1; n <= 40; ++n) {
      const double p = no_fixed_point_prob(m, n);
      EXPECT_GE(p, prev);
      EXPECT_LE(p, 1.0);
      prev = p;
    }
  }
  // Binary iteration is h_2 itself, with fixed point 1 approached like 1 - 2/n.
  EXPECT_NEAR(no_fixed_point_prob(2, 1), h_map(2, 0), 1e-15);
  const double p = no_fixed_point_prob(2, 100000);
  EXPECT_NEAR(100000 * (1 - p), 2.0, 0.01);
}
