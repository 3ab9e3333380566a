#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "bfly/butterfly.hpp"
#include "bfly/butterfly_matrix.hpp"
#include "bfly/chi_square.hpp"
#include "bfly/cycles.hpp"
#include "bfly/gepp.hpp"

using namespace bfly;

namespace {

mpz_class pow_z(unsigned long b, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

std::map<std::size_t, std::size_t> cycle_census(unsigned m, unsigned n, bool simple) {
  std::map<std::size_t, std::size_t> census;
  enumerate_group(m, n, simple, [&](const Permutation& p) { ++census[cycle_count(p)]; });
  return census;
}

DiscreteLaw census_law(const std::map<std::size_t, std::size_t>& census, std::size_t total) {
  DiscreteLaw law;
  for (auto [k, c] : census) law[static_cast<std::int64_t>(k)] = make_q(c, total);
  return law;
}

void expect_row(const CountPmf& c, unsigned step, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i)
    EXPECT_EQ(c.at(static_cast<std::int64_t>(1 + i * step)), mpz_class(row[i])) << "k=" << 1 + i * step;
}

}  // namespace

TEST(SimpleCycles, PrimeLaw) {
  const DiscreteLaw b = simple_cycle_dist(2, 3);
  EXPECT_EQ(b.at(4), mpq_class(7, 8));
  EXPECT_EQ(b.at(8), mpq_class(1, 8));
  const DiscreteLaw t = simple_cycle_dist(3, 1);
  EXPECT_EQ(t.at(1), mpq_class(2, 3));
  EXPECT_EQ(t.at(3), mpq_class(1, 3));
  EXPECT_THROW(simple_cycle_dist(4, 2), std::invalid_argument);
}

TEST(SimpleCycles, PrimeCensus) {
  for (unsigned n = 1; n <= 6; ++n)
    EXPECT_EQ(census_law(cycle_census(2, n, true), std::size_t{1} << n), simple_cycle_dist(2, n)) << "n=" << n;
  for (unsigned p : {3u, 5u})
    for (unsigned n = 1; n <= 3; ++n)
      EXPECT_EQ(census_law(cycle_census(p, n, true), checked_pow(p, n)), simple_cycle_dist(p, n));
}

TEST(SimpleCycles, CompositeExamples) {
  const DiscreteLaw a = simple_cd_dist(4, 1, 1);
  EXPECT_EQ(a.at(4), mpq_class(1, 4));
  EXPECT_EQ(a.at(0), mpq_class(3, 4));
  const DiscreteLaw b = simple_cd_dist(6, 1, 3);
  EXPECT_EQ(b.at(2), mpq_class(1, 3));
  const DiscreteLaw c = simple_cd_dist(4, 2, 2);
  EXPECT_EQ(c.at(8), mpq_class(1, 4) - mpq_class(1, 16));
  EXPECT_THROW(simple_cd_dist(6, 1, 4), std::invalid_argument);
}

TEST(SimpleCycles, CompositeCensus) {
  for (unsigned m : {4u, 6u, 8u, 9u, 12u})
    for (unsigned n = 1; n <= 2; ++n)
      for (unsigned d = 1; d <= m; ++d) {
        if (m % d) continue;
        DiscreteLaw law;
        const std::size_t total = checked_pow(m, n);
        enumerate_group(m, n, true, [&](const Permutation& p) {
          const CycleStats s = cycle_stats(p);
          const auto it = s.by_length.find(d);
          law[static_cast<std::int64_t>(it == s.by_length.end() ? 0 : it->second)] += make_q(1, total);
        });
        EXPECT_EQ(law, simple_cd_dist(m, n, d)) << "m=" << m << " n=" << n << " d=" << d;
      }
}

TEST(NonsimpleCycles, Tables) {
  expect_row(nonsimple_cycle_counts(2, 1), 1, {"1", "1"});
  expect_row(nonsimple_cycle_counts(2, 2), 1, {"2", "3", "2", "1"});
  expect_row(nonsimple_cycle_counts(2, 3), 1, {"16", "28", "28", "25", "16", "10", "4", "1"});
  expect_row(nonsimple_cycle_counts(2, 4), 1, {"2048", "3840", "4480", "4880", "4416", "3976", "3128", "2337"});
  expect_row(nonsimple_cycle_counts(3, 2), 2, {"36", "26", "12", "6", "1"});
  expect_row(nonsimple_cycle_counts(3, 3), 2, {"472392", "387828", "258552", "198396", "121418", "77472"});
  expect_row(nonsimple_cycle_counts(5, 1), 4, {"4", "1"});
  expect_row(nonsimple_cycle_counts(5, 2), 4, {"10000", "3524", "1280", "640", "160", "20", "1"});
  expect_row(nonsimple_cycle_counts(5, 3), 4, {"2384185791015625000000"});
}

TEST(NonsimpleCycles, ExhaustiveCensus) {
  for (auto [p, nmax] : {std::pair{2u, 4u}, std::pair{3u, 2u}})
    for (unsigned n = 0; n <= nmax; ++n) {
      const auto census = cycle_census(p, n, false);
      const CountPmf c = nonsimple_cycle_counts(p, n);
      for (std::int64_t k = 1; k <= c.hi(); ++k) {
        const auto it = census.find(static_cast<std::size_t>(k));
        EXPECT_EQ(c.at(k), it == census.end() ? 0 : it->second) << "p=" << p << " n=" << n << " k=" << k;
      }
    }
}

TEST(NonsimpleCycles, StructuralIdentities) {
  for (unsigned p : {2u, 3u, 5u, 7u})
    for (unsigned n = 0; checked_pow(p, n) <= 1024; ++n) {
      const CountPmf c = nonsimple_cycle_counts(p, n);
      const std::int64_t N = static_cast<std::int64_t>(checked_pow(p, n));
      EXPECT_EQ(sum(c.mass), c.total);
      EXPECT_EQ(c.total, group_order(p, n, false));
      EXPECT_EQ(c.at(N), 1);
      for (std::int64_t k = 1; k <= N; ++k)
        if ((k - 1) % (p - 1) != 0) EXPECT_EQ(c.at(k), 0) << "p=" << p << " n=" << n << " k=" << k;
      // s(n,1) = (p-1)^n p^{(p^n-1)/(p-1) - n}, i.e. P(Y_n = 1) = (1 - 1/p)^n.
      const unsigned long e = tree_nodes(p, n) - n;
      EXPECT_EQ(c.at(1), pow_z(p - 1, n) * pow_z(p, e));
      if (p == 2 && n >= 1) {
        EXPECT_EQ(c.at(N - 1), std::int64_t{1} << (n - 1));
        EXPECT_EQ(c.at(1), pow_z(2, (1ul << n) - n - 1));
      }
    }
  EXPECT_THROW(nonsimple_cycle_counts(4, 2), std::invalid_argument);
  EXPECT_THROW(nonsimple_cycle_counts(2, 13), std::length_error);
}

TEST(NonsimpleCycles, BinaryStirlingRecursion) {
  // s(n+1,k) = 2^{2^n-1} s(n,k) + sum_{j<k} s(n,j) s(n,k-j)
  for (unsigned n = 0; n < 8; ++n) {
    const CountPmf a = nonsimple_cycle_counts(2, n), b = nonsimple_cycle_counts(2, n + 1);
    const mpz_class w = pow_z(2, (1ul << n) - 1);
    for (std::int64_t k = 1; k <= b.hi(); ++k) {
      mpz_class v = w * a.at(k);
      for (std::int64_t j = 1; j < k; ++j) v += a.at(j) * a.at(k - j);
      ASSERT_EQ(b.at(k), v) << "n=" << n + 1 << " k=" << k;
    }
  }
}

TEST(NonsimpleCycles, FloatMatchesExact) {
  for (unsigned p : {2u, 3u, 5u})
    for (unsigned n = 0; checked_pow(p, n) <= 4096; ++n) {
      const FloatPmf e = to_float(nonsimple_cycle_counts(p, n));
      const FloatPmf f = nonsimple_cycle_probs(p, n);
      ASSERT_EQ(e.size(), f.size());
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e.mass[i] < 1e-280) {
          EXPECT_LE(f.mass[i], 1e-280);
          continue;
        }
        EXPECT_NEAR(f.mass[i] / e.mass[i], 1.0, 1e-12) << "p=" << p << " n=" << n << " k=" << i + 1;
      }
    }
  const CyclePmf d = nonsimple_cycle_dist(3, 2, Mode::exact);
  EXPECT_EQ(d.counts.at(1), 36);
  EXPECT_TRUE(nonsimple_cycle_dist(3, 2, Mode::floating).counts.mass.empty());
}

TEST(NonsimpleCycles, FftModeKeepsMass) {
  const FloatPmf f = nonsimple_cycle_probs(2, 20);
  EXPECT_NEAR(sum(f.mass), 1.0, 1e-9);
  for (double x : f.mass) EXPECT_GE(x, 0.0);
  EXPECT_NEAR(moment(f, 1), std::pow(1.5, 20), 1e-6 * std::pow(1.5, 20));
}

TEST(Density, SmallestGridPoint) {
  for (unsigned n = 1; n <= 12; ++n) {
    const double l2 = std::pow(1.5, n), l3 = std::pow(5.0 / 3, n);
    const double f2 = density_grid(2, n, {1.5 / l2})[0].second;
    EXPECT_NEAR(f2, std::pow(0.75, n), 1e-12);
    if (std::pow(3.0, n) <= 1u << 20) {
      const double f3 = density_grid(3, n, {1.5 / l3})[0].second;
      EXPECT_NEAR(f3, 0.5 * std::pow(10.0 / 9, n), 1e-12 * f3);
    }
  }
  EXPECT_EQ(density_grid(2, 5, {0.0})[0].second, 0.0);
  EXPECT_THROW(density_grid(2, 5, {-0.1}), std::domain_error);
}

TEST(Density, TernaryGridIsStable) {
  std::vector<double> ts;
  for (int i = 10; i <= 500; ++i) ts.push_back(i / 100.0);
  const auto g8 = density_grid(3, 8, ts), g9 = density_grid(3, 9, ts);
  double worst = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) worst = std::max(worst, std::abs(g8[i].second - g9[i].second));
  EXPECT_LT(worst, 0.001) << "worst=" << worst;
}

TEST(Density, IntegratesToOne) {
  // Riemann sum at the midpoints of the lattice cells of Y_n.
  for (unsigned p : {2u, 3u}) {
    const unsigned n = p == 2 ? 14 : 9;
    const double lam_n = std::pow(2.0 - 1.0 / p, n);
    std::vector<double> ts;
    for (std::int64_t j = 0; (j * (p - 1) + 1) <= static_cast<std::int64_t>(checked_pow(p, n)); ++j)
      ts.push_back((j * (p - 1) + 1 + 0.5 * (p - 1)) / lam_n);
    double area = 0;
    for (const auto& [t, f] : density_grid(p, n, ts)) area += f * (p - 1) / lam_n;
    EXPECT_NEAR(area, 1.0, 1e-9);
  }
}

TEST(GeppLinkage, CycleCountsOfFactorPermutations) {
  const CountPmf c = nonsimple_cycle_counts(2, 4);
  std::vector<std::uint64_t> observed(16, 0);
  Rng rng(77);
  for (int i = 0; i < 1000; ++i) {
    const Permutation p = gepp(build_butterfly(sample_spec(Flavor::scalar, Shape::nonsimple, 16, rng))).perm;
    ++observed[cycle_count(p) - 1];
  }
  // Pool the sparse upper tail so each expected cell has >= 5 observations.
  std::vector<std::uint64_t> obs;
  std::vector<double> expected;
  double tail_p = 0;
  std::uint64_t tail_o = 0;
  for (std::size_t k = 0; k < 16; ++k) {
    const double p = make_q(c.mass[k], c.total).get_d();
    if (p * 1000 >= 5 && tail_p == 0) {
      obs.push_back(observed[k]);
      expected.push_back(p);
    } else {
      tail_p += p;
      tail_o += observed[k];
    }
  }
  obs.push_back(tail_o);
  expected.push_back(tail_p);
  EXPECT_GT(chi_square(obs, expected).p_value, 0.01);
}
