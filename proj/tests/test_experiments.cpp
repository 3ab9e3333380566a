#include <gtest/gtest.h>

#include "bfly/experiments.hpp"
#include "bfly/moments.hpp"

using namespace bfly;

TEST(MonteCarloW, SizeZeroIsDegenerate) {
  const WMoments r = monte_carlo_w(2, 0, 50, 1);
  for (std::size_t k = 0; k < w_moment_count; ++k) {
    EXPECT_EQ(r.moments[k], 1.0);
    EXPECT_EQ(r.std_errors[k], 0.0);
  }
  EXPECT_THROW(monte_carlo_w(2, 3, 0, 1), std::invalid_argument);
}

TEST(MonteCarloW, BinaryFirstTwoMoments) {
  const WMoments r = monte_carlo_w(2, 15, 10000, 2024);
  EXPECT_EQ(r.trials, 10000u);
  EXPECT_GE(r.moments[0], 0.97);
  EXPECT_LE(r.moments[0], 1.03);
  EXPECT_GE(r.moments[1], 1.28);
  EXPECT_LE(r.moments[1], 1.40);
}

TEST(MonteCarloW, MatchesExactFiniteMoments) {
  // At n = 4 the exact E W_n^k is known; 5 standard errors covers the sample.
  const MomentTable t = moment_polynomials(3, 6);
  const WMoments r = monte_carlo_w(3, 4, 20000, 7);
  mpq_class l4 = 1;
  for (int i = 0; i < 4; ++i) l4 *= t.lambda;
  mpq_class scale = 1;
  for (unsigned k = 1; k <= 6; ++k) {
    scale *= l4;
    const double exact = mpq_class(t.moment(k, 4) / scale).get_d();
    EXPECT_NEAR(r.moments[k - 1], exact, 5 * r.std_errors[k - 1]) << "k=" << k;
  }
}

TEST(MonteCarloW, ThreadCountDoesNotChangeResults) {
  const WMoments a = monte_carlo_w(2, 8, 500, 99, 1), b = monte_carlo_w(2, 8, 500, 99, 4);
  EXPECT_EQ(a.moments, b.moments);
  EXPECT_EQ(a.std_errors, b.std_errors);
  const SampleSummary c = lis_monte_carlo(LisModel::goe, 4, 40, 5, 1), d = lis_monte_carlo(LisModel::goe, 4, 40, 5, 3);
  EXPECT_EQ(c.mean, d.mean);
  EXPECT_EQ(c.sd, d.sd);
}

TEST(MonteCarloW, SeedsMatter) {
  EXPECT_NE(monte_carlo_w(2, 8, 200, 1).moments[0], monte_carlo_w(2, 8, 200, 2).moments[0]);
}

TEST(LisModels, ParseRoundTrip) {
  for (LisModel m : all_lis_models) EXPECT_EQ(parse_lis_model(to_string(m)), m);
  EXPECT_THROW(parse_lis_model("wishart"), std::invalid_argument);
}

TEST(LisModels, SampleSizesAndMembership) {
  Rng rng(3);
  for (LisModel m : all_lis_models)
    for (unsigned n = 0; n <= 4; ++n) {
      const Permutation p = sample_model(m, n, rng);
      EXPECT_EQ(p.size(), std::size_t{1} << n) << to_string(m);
      if (m == LisModel::simple_scalar || m == LisModel::nonsimple_scalar) EXPECT_TRUE(check_membership(p, 2).member());
    }
}

TEST(LisModels, SimpleScalarMeanIsExact) {
  // E L = (3/2)^n for simple butterflies; n = 6 gives 11.390625.
  const SampleSummary s = lis_monte_carlo(LisModel::simple_scalar, 6, 4000, 17);
  EXPECT_NEAR(s.mean, 11.390625, 5 * s.sd / std::sqrt(4000.0));
  EXPECT_EQ(s.trials, 4000u);
}
