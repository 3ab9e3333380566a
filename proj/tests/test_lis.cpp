#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "bfly/bounds.hpp"
#include "bfly/butterfly.hpp"
#include "bfly/experiments.hpp"
#include "bfly/lis.hpp"
#include "bfly/lis_stats.hpp"

using namespace bfly;

namespace {

// b(n+1,k) = b(n,k)^2 + sum_{j<k} b(n,j) [b(n,k-j) + 2 b(n,k)], binary case.
std::vector<mpz_class> binary_recursion_oracle(unsigned n) {
  std::vector<mpz_class> b{0, 1};  // index k, b[0] unused
  for (unsigned lvl = 0; lvl < n; ++lvl) {
    const std::size_t N = b.size() - 1;
    auto at = [&](std::size_t k) { return k <= N ? b[k] : mpz_class(0); };
    std::vector<mpz_class> next(2 * N + 1, 0);
    for (std::size_t k = 1; k <= 2 * N; ++k) {
      mpz_class v = at(k) * at(k);
      for (std::size_t j = 1; j < k; ++j) v += at(j) * (at(k - j) + 2 * at(k));
      next[k] = v;
    }
    b = std::move(next);
  }
  return b;
}

std::map<std::size_t, std::size_t> lis_census(unsigned m, unsigned n, bool simple) {
  std::map<std::size_t, std::size_t> census;
  enumerate_group(m, n, simple, [&](const Permutation& p) { ++census[lis(p)]; });
  return census;
}

mpz_class binom(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

TEST(Lis, Examples) {
  const Permutation fig = Permutation::parse("4,8,5,1,3,6,7,2");
  EXPECT_EQ(lis(fig), 4u);
  EXPECT_EQ(lis_oracle(fig), 4u);
  EXPECT_EQ(lis(Permutation::identity(9)), 9u);
  EXPECT_EQ(lds(Permutation::identity(9)), 1u);
  EXPECT_EQ(lis(Permutation::parse("4,3,2,1")), 1u);
  EXPECT_EQ(lds(Permutation::parse("4,3,2,1")), 4u);
  EXPECT_EQ(lis_oracle(Permutation::identity(1)), 1u);
  EXPECT_THROW(lis_oracle(Permutation::identity(lis_oracle_cap + 1)), std::length_error);
}

TEST(Lis, AgreesWithOracle) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const Permutation p = fisher_yates(1 + rng.below(256), rng);
    ASSERT_EQ(lis(p), lis_oracle(p)) << p.to_string();
    std::vector<std::size_t> flipped(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) flipped[k] = p.size() - 1 - p[k];
    ASSERT_EQ(lds(p), lis_oracle(Permutation(flipped)));
  }
}

TEST(SimpleLis, BinaryLaw) {
  const DiscreteLaw law = simple_lis_pmf(2, 3);
  ASSERT_EQ(law.size(), 4u);
  for (unsigned k = 0; k <= 3; ++k) EXPECT_EQ(law.at(1 << k), mpq_class(binom(3, k), 8));
  for (unsigned n = 0; n <= 12; ++n) {
    mpq_class mean = 1;
    for (unsigned i = 0; i < n; ++i) mean *= mpq_class(3, 2);
    EXPECT_EQ(moment_exact(simple_lis_pmf(2, n), 1), mean);
  }
}

TEST(SimpleLis, TernaryStep) {
  const DiscreteLaw law = simple_lis_pmf(3, 1);
  ASSERT_EQ(law.size(), 2u);
  EXPECT_EQ(law.at(2), mpq_class(2, 3));
  EXPECT_EQ(law.at(3), mpq_class(1, 3));
  EXPECT_EQ(moment_exact(law, 1), mpq_class(7, 3));
}

TEST(SimpleLds, Examples) {
  const DiscreteLaw t = simple_lds_pmf(3, 1);
  EXPECT_EQ(t.at(1), mpq_class(1, 3));
  EXPECT_EQ(t.at(2), mpq_class(2, 3));
  const DiscreteLaw b = simple_lds_pmf(2, 2);
  EXPECT_EQ(b.at(1), mpq_class(1, 4));
  EXPECT_EQ(b.at(2), mpq_class(1, 2));
  EXPECT_EQ(b.at(4), mpq_class(1, 4));
}

TEST(SimpleLis, BinaryCensusExhaustive) {
  for (unsigned n = 0; n <= 6; ++n) {
    std::map<std::size_t, std::size_t> census;
    const std::size_t N = std::size_t{1} << n;
    enumerate_group(2, n, true, [&](const Permutation& p) {
      const std::size_t L = lis(p), D = lds(p);
      EXPECT_EQ(L * D, N);
      ++census[L];
    });
    ASSERT_EQ(census.size(), n + 1u);
    for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(mpz_class(census[std::size_t{1} << k]), binom(n, k));
  }
}

// Exhaustive LIS and LDS laws over B_{s,n}^{(m)} against the closed forms.
TEST(SimpleLis, GeneralBaseCensus) {
  for (unsigned m : {2u, 3u, 4u, 5u})
    for (unsigned n = 0; n <= 3; ++n) {
      DiscreteLaw lis_law, lds_law;
      const mpq_class w(1, static_cast<unsigned long>(checked_pow(m, n)));
      enumerate_group(m, n, true, [&](const Permutation& p) {
        lis_law[static_cast<std::int64_t>(lis(p))] += w;
        lds_law[static_cast<std::int64_t>(lds(p))] += w;
      });
      EXPECT_EQ(lis_law, simple_lis_pmf(m, n)) << "m=" << m << " n=" << n;
      EXPECT_EQ(lds_law, simple_lds_pmf(m, n)) << "m=" << m << " n=" << n;
    }
}

TEST(NonsimpleLis, TableRows) {
  const std::vector<std::vector<long>> rows = {
      {1, 1}, {1, 4, 2, 1}, {1, 25, 32, 35, 18, 12, 4, 1}, {1, 676, 2738, 5974, 5342, 5618, 4164, 3240}};
  for (unsigned n = 1; n <= 4; ++n) {
    const CountPmf c = nonsimple_lis_counts(n);
    EXPECT_EQ(c.offset, 1);
    EXPECT_EQ(c.size(), std::size_t{1} << n);
    EXPECT_EQ(sum(c.mass), c.total);
    EXPECT_EQ(c.total, group_order(2, n, false));
    for (std::size_t k = 0; k < rows[n - 1].size(); ++k) EXPECT_EQ(c.mass[k], rows[n - 1][k]) << "n=" << n;
  }
  EXPECT_EQ(nonsimple_lis_counts(0).mass, std::vector<mpz_class>{1});
}

TEST(NonsimpleLis, MatchesDirectRecursion) {
  for (unsigned n = 0; n <= 8; ++n) {
    const std::vector<mpz_class> want = binary_recursion_oracle(n);
    const CountPmf got = nonsimple_lis_counts(n);
    ASSERT_EQ(got.size() + 1, want.size());
    for (std::size_t k = 1; k < want.size(); ++k) ASSERT_EQ(got.mass[k - 1], want[k]) << "n=" << n << " k=" << k;
  }
}

TEST(NonsimpleLis, ExhaustiveCensus) {
  for (unsigned n = 0; n <= 4; ++n) {
    const auto census = lis_census(2, n, false);
    const CountPmf c = nonsimple_lis_counts(n);
    for (std::size_t k = 1; k <= c.size(); ++k) {
      const auto it = census.find(k);
      EXPECT_EQ(c.at(static_cast<std::int64_t>(k)), it == census.end() ? 0 : it->second) << "n=" << n << " k=" << k;
    }
  }
  for (unsigned n = 0; n <= 2; ++n) {
    const auto census = lis_census(3, n, false);
    const CountPmf c = nonsimple_lis_counts(n, 3);
    EXPECT_EQ(c.total, group_order(3, n, false));
    for (std::size_t k = 1; k <= c.size(); ++k) {
      const auto it = census.find(k);
      EXPECT_EQ(c.at(static_cast<std::int64_t>(k)), it == census.end() ? 0 : it->second) << "m=3 n=" << n;
    }
  }
}

TEST(NonsimpleLis, BoundaryCounts) {
  for (unsigned n = 1; n <= 11; ++n) {
    const CountPmf c = nonsimple_lis_counts(n);
    const std::int64_t N = std::int64_t{1} << n;
    EXPECT_EQ(c.at(1), 1);
    EXPECT_EQ(c.at(N), 1);
    EXPECT_EQ(c.at(N - 1), std::int64_t{1} << (n - 1));
    const CountPmf next = nonsimple_lis_counts(n + 1);
    EXPECT_EQ(next.at(2), (c.at(2) + 1) * (c.at(2) + 1));
  }
  EXPECT_THROW(nonsimple_lis_counts(13), std::length_error);
  EXPECT_THROW(nonsimple_lis_probs(21), std::length_error);
}

TEST(NonsimpleLis, FloatMatchesExact) {
  for (unsigned n = 0; n <= 12; ++n) {
    const FloatPmf e = to_float(nonsimple_lis_counts(n));
    const FloatPmf f = nonsimple_lis_probs(n);
    ASSERT_EQ(e.size(), f.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e.mass[k] < 1e-280) {
        EXPECT_LE(f.mass[k], 1e-280);
        continue;
      }
      EXPECT_NEAR(f.mass[k] / e.mass[k], 1.0, 1e-12) << "n=" << n << " k=" << k + 1;
    }
  }
  for (unsigned m : {3u, 5u}) {
    const FloatPmf e = to_float(nonsimple_lis_counts(2, m));
    const FloatPmf f = nonsimple_lis_probs(2, m);
    for (std::size_t k = 0; k < e.size(); ++k) EXPECT_NEAR(f.mass[k], e.mass[k], 1e-15);
  }
}

TEST(NonsimpleLis, FftModeKeepsMass) {
  const FloatPmf f = nonsimple_lis_probs(17);
  EXPECT_NEAR(sum(f.mass), 1.0, 1e-9);
  for (double x : f.mass) EXPECT_GE(x, 0.0);
}

TEST(NonsimpleLis, Moments) {
  EXPECT_EQ(nonsimple_lis_moments_exact(0).mean, 1);
  EXPECT_EQ(nonsimple_lis_moments_exact(0).second, 1);
  EXPECT_EQ(nonsimple_lis_moments_exact(1).mean, mpq_class(3, 2));
  EXPECT_EQ(nonsimple_lis_moments_exact(1).second, mpq_class(5, 2));
  EXPECT_EQ(nonsimple_lis_moments_exact(2).mean, mpq_class(19, 8));
  const LisMoments m15 = nonsimple_lis_moments(15);
  EXPECT_NEAR(m15.mean, 1099.53, 0.005);
  EXPECT_NEAR(std::sqrt(m15.second) / m15.mean, 1.06683, 0.000005);
}

TEST(NonsimpleLis, MeanGrowthAndPowerLawSandwich) {
  const double a2 = lis_alpha(2), bstar = bounds(2).beta_star;
  mpq_class prev = 1;
  for (unsigned n = 1; n <= 12; ++n) {
    const mpq_class mean = nonsimple_lis_moments_exact(n).mean;
    if (n >= 2) EXPECT_GT(mean, prev * mpq_class(3, 2)) << "n=" << n;
    prev = mean;
  }
  for (unsigned n = 1; n <= 15; ++n) {
    const double N = std::ldexp(1.0, static_cast<int>(n)), mean = nonsimple_lis_moments(n).mean;
    EXPECT_GE(mean, std::pow(N, a2) * (1 - 1e-12)) << "n=" << n;
    EXPECT_LE(mean, std::pow(N, bstar)) << "n=" << n;
  }
  for (unsigned m : {3u, 5u})
    for (unsigned n = 1; n <= (m == 3 ? 6u : 4u); ++n) {
      const double N = std::pow(double(m), n), mean = nonsimple_lis_moments(n, m).mean;
      EXPECT_GE(mean, std::pow(N, lis_alpha(m)) * (1 - 1e-12));
      EXPECT_LE(mean, std::pow(N, lis_beta(m)));
    }
}

TEST(NonsimpleLis, Cdf) {
  EXPECT_NEAR(nonsimple_lis_cdf(3, 2), 26.0 / 128, 1e-15);
  for (unsigned n = 0; n <= 14; ++n) {
    EXPECT_EQ(nonsimple_lis_cdf(n, 0), 0.0);
    EXPECT_EQ(nonsimple_lis_cdf(n, std::int64_t{1} << n), 1.0);
  }
  for (unsigned n : {3u, 8u, 12u, 14u}) {
    const std::vector<double> table = nonsimple_lis_cdf_table(n);
    const std::vector<double> F = cumulative(nonsimple_lis_probs(n));
    for (std::size_t t = 1; t < table.size(); ++t) ASSERT_NEAR(table[t], F[t - 1], 1e-9) << "n=" << n << " t=" << t;
  }
}

TEST(Fit, Synthetic) {
  std::vector<std::pair<double, double>> line;
  for (int n = 1; n <= 10; ++n) line.emplace_back(std::ldexp(1.0, n), std::pow(std::ldexp(1.0, n), 0.5));
  const FitResult f = fit_exponent(line);
  EXPECT_NEAR(f.alpha_hat, 0.5, 1e-15);
  EXPECT_NEAR(f.intercept, 0.0, 1e-14);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-15);

  std::vector<std::pair<double, double>> simple;
  for (unsigned n = 1; n <= 10; ++n)
    simple.emplace_back(std::ldexp(1.0, static_cast<int>(n)), moment_exact(simple_lis_pmf(2, n), 1).get_d());
  EXPECT_NEAR(fit_exponent(simple).alpha_hat, std::log2(1.5), 1e-14);

  EXPECT_THROW(fit_exponent({{2, 1}, {4, 2}}), std::invalid_argument);
  EXPECT_THROW(fit_exponent({{2, 1}, {2, 2}, {2, 3}}), std::invalid_argument);
  EXPECT_THROW(fit_exponent({{2, 1}, {4, 0}, {8, 3}}), std::invalid_argument);
}

TEST(NonsimpleLis, MonteCarloAgreesWithExactMean) {
  for (unsigned n : {6u, 10u}) {
    const SampleSummary s = lis_monte_carlo(LisModel::nonsimple_scalar, n, 10000, 100 + n, 1);
    const double exact = nonsimple_lis_moments_exact(n).mean.get_d();
    EXPECT_LE(std::abs(s.mean - exact), 3 * s.sd / std::sqrt(double(s.trials))) << "n=" << n;
  }
}
