#pragma once
// Cross-module oracle suite behind `bfly verify`. Each check compares two
// independent routes to the same quantity; --quick shrinks the sizes.

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bfly/bounds.hpp"
#include "bfly/butterfly.hpp"
#include "bfly/butterfly_matrix.hpp"
#include "bfly/cycles.hpp"
#include "bfly/experiments.hpp"
#include "bfly/fixed_points.hpp"
#include "bfly/gepp.hpp"
#include "bfly/lis.hpp"
#include "bfly/lis_stats.hpp"
#include "bfly/moments.hpp"

namespace bfly::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace verify_detail {

inline CheckResult census_vs_recursion(bool quick) {
  const unsigned n2 = quick ? 3 : 4;
  for (auto [m, nmax] : {std::pair{2u, n2}, std::pair{3u, 2u}})
    for (unsigned n = 0; n <= nmax; ++n) {
      std::map<std::int64_t, std::size_t> lis_c, cyc_c;
      enumerate_group(m, n, false, [&](const Permutation& p) {
        ++lis_c[static_cast<std::int64_t>(lis(p))];
        ++cyc_c[static_cast<std::int64_t>(cycle_count(p))];
      });
      const CountPmf b = nonsimple_lis_counts(n, m), s = nonsimple_cycle_counts(m, n);
      for (std::int64_t k = 1; k <= static_cast<std::int64_t>(checked_pow(m, n)); ++k) {
        const std::size_t bl = lis_c.count(k) ? lis_c[k] : 0, cl = cyc_c.count(k) ? cyc_c[k] : 0;
        if (b.at(k) != bl || s.at(k) != cl)
          return {"", false, "m=" + std::to_string(m) + " n=" + std::to_string(n) + " k=" + std::to_string(k)};
      }
    }
  return {"", true, "m=2 n<=" + std::to_string(n2) + ", m=3 n<=2"};
}

inline CheckResult simple_laws(bool quick) {
  const unsigned nmax = quick ? 4 : 6;
  for (unsigned n = 1; n <= nmax; ++n) {
    DiscreteLaw lis_law, cyc_law;
    const std::size_t total = std::size_t{1} << n;
    bool product_ok = true;
    enumerate_group(2, n, true, [&](const Permutation& p) {
      const std::size_t L = lis(p);
      product_ok = product_ok && L * lds(p) == total;
      lis_law[static_cast<std::int64_t>(L)] += make_q(1, total);
      cyc_law[static_cast<std::int64_t>(cycle_count(p))] += make_q(1, total);
    });
    if (!product_ok) return {"", false, "L*D != N at n=" + std::to_string(n)};
    if (lis_law != simple_lis_pmf(2, n)) return {"", false, "LIS law at n=" + std::to_string(n)};
    if (cyc_law != simple_cycle_dist(2, n)) return {"", false, "cycle law at n=" + std::to_string(n)};
  }
  return {"", true, "n<=" + std::to_string(nmax)};
}

inline CheckResult moments_vs_counts(bool) {
  for (auto [p, nmax] : {std::pair{2u, 6u}, std::pair{3u, 4u}}) {
    const MomentTable t = moment_polynomials(p, 5);
    for (unsigned n = 0; n <= nmax; ++n) {
      const CountPmf c = nonsimple_cycle_counts(p, n);
      for (unsigned k = 1; k <= 5; ++k)
        if (t.moment(k, n) != moment_exact(c, k))
          return {"", false, "p=" + std::to_string(p) + " n=" + std::to_string(n) + " k=" + std::to_string(k)};
    }
  }
  return {"", true, "p=2 n<=6, p=3 n<=4, k<=5"};
}

inline CheckResult functional_equation(bool) {
  for (unsigned p : {2u, 3u}) {
    const unsigned K = 20;
    const std::vector<mpq_class> m = limit_moments(p, K);
    std::vector<mpq_class> xi(K + 1), pw(K + 1);
    mpq_class fact = 1;
    for (unsigned k = 0; k <= K; ++k) {
      if (k) fact *= k;
      xi[k] = m[k] / fact;
    }
    pw = xi;
    for (unsigned r = 1; r < p; ++r) {
      std::vector<mpq_class> next(K + 1, mpq_class(0));
      for (unsigned i = 0; i <= K; ++i)
        for (unsigned j = 0; i + j <= K; ++j) next[i + j] += pw[i] * xi[j];
      pw = next;
    }
    mpq_class lam_k = 1;
    for (unsigned k = 0; k <= K; ++k) {
      if (p * lam_k * xi[k] != pw[k] + (p - 1) * xi[k])
        return {"", false, "p=" + std::to_string(p) + " order " + std::to_string(k)};
      lam_k *= lambda_p(p);
    }
  }
  return {"", true, "p in {2,3}, orders 0..20"};
}

inline CheckResult float_vs_exact(bool) {
  double worst = 0;
  for (unsigned p : {2u, 3u})
    for (unsigned n = 0; checked_pow(p, n) <= 2048; ++n) {
      const FloatPmf e = to_float(nonsimple_cycle_counts(p, n)), f = nonsimple_cycle_probs(p, n);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e.mass[i] > 1e-280) worst = std::max(worst, std::abs(f.mass[i] / e.mass[i] - 1));
    }
  for (unsigned n = 0; n <= 10; ++n) {
    const FloatPmf e = to_float(nonsimple_lis_counts(n)), f = nonsimple_lis_probs(n);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e.mass[i] > 1e-280) worst = std::max(worst, std::abs(f.mass[i] / e.mass[i] - 1));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max relative diff %.3g", worst);
  return {"", worst <= 1e-12, buf};
}

inline CheckResult gepp_links(bool quick, std::uint64_t seed) {
  Rng rng(seed);
  const int trials = quick ? 200 : 1000;
  double worst = 0;
  for (int i = 0; i < trials; ++i) {
    const std::size_t N = std::size_t{1} << (1 + rng.below(quick ? 4 : 6));
    const Shape shape = rng.below(2) ? Shape::simple : Shape::nonsimple;
    const ButterflySpec spec = sample_spec(Flavor::scalar, shape, N, rng);
    const GeppResult want = gepp(build_butterfly(spec)), got = predicted_factorization(spec);
    if (got.perm != want.perm) return {"", false, "permutation mismatch at trial " + std::to_string(i)};
    const Membership mem = check_membership(want.perm, 2);
    if (!mem.member() || (shape == Shape::simple && !mem.simple)) return {"", false, "factor outside the group"};
    worst = std::max({worst, max_abs_diff(got.lower, want.lower), max_abs_diff(got.upper, want.upper)});
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%d specs, max diff %.3g", trials, worst);
  return {"", worst <= 1e-10, buf};
}

inline CheckResult fixed_point_law(bool) {
  for (auto [m, nmax] : {std::pair{2u, 4u}, std::pair{3u, 2u}})
    for (unsigned n = 0; n <= nmax; ++n) {
      std::size_t total = 0, none = 0, s2 = 0;
      enumerate_group(m, n, false, [&](const Permutation& p) {
        const std::size_t f = cycle_stats(p).fixed_points;
        ++total;
        none += f == 0;
        s2 += f * f;
      });
      if (make_q(none, total) != no_fixed_point_prob_exact(m, n) || make_q(s2, total) != fixed_point_moments(m, n, 2))
        return {"", false, "m=" + std::to_string(m) + " n=" + std::to_string(n)};
    }
  return {"", true, "m=2 n<=4, m=3 n<=2"};
}

inline CheckResult bounds_order(bool) {
  for (unsigned m = 2; m <= 200; ++m)
    if (!(0.5 < lis_alpha(m) && lis_alpha(m) < lis_beta(m) && lis_beta(m) < 1))
      return {"", false, "m=" + std::to_string(m)};
  for (unsigned n = 1; n <= 12; ++n) {
    const double N = std::ldexp(1.0, static_cast<int>(n)), mean = nonsimple_lis_moments(n).mean;
    if (mean < std::pow(N, lis_alpha(2)) * (1 - 1e-12) || mean > std::pow(N, bounds(2).beta_star))
      return {"", false, "binary mean outside N^alpha..N^beta* at n=" + std::to_string(n)};
  }
  return {"", true, "m<=200; binary means n<=12"};
}

inline CheckResult monte_carlo_mean(bool quick, std::uint64_t seed) {
  const unsigned n = quick ? 6 : 10;
  const WMoments w = monte_carlo_w(2, n, quick ? 2000 : 10000, seed);
  // E W_n = 1 for every n.
  const double z = (w.moments[0] - 1) / w.std_errors[0];
  char buf[64];
  std::snprintf(buf, sizeof buf, "n=%u z=%.2f", n, z);
  return {"", std::abs(z) <= 5, buf};
}

}  // namespace verify_detail

inline std::vector<CheckResult> run_verify(bool quick, std::uint64_t seed) {
  using namespace verify_detail;
  const std::vector<std::pair<std::string, std::function<CheckResult()>>> checks = {
      {"census_vs_recursion", [&] { return census_vs_recursion(quick); }},
      {"simple_laws", [&] { return simple_laws(quick); }},
      {"moment_polys_vs_counts", [&] { return moments_vs_counts(quick); }},
      {"functional_equation", [&] { return functional_equation(quick); }},
      {"float_vs_exact", [&] { return float_vs_exact(quick); }},
      {"gepp_predicted_factorization", [&] { return gepp_links(quick, seed); }},
      {"fixed_point_law", [&] { return fixed_point_law(quick); }},
      {"bounds_ordering", [&] { return bounds_order(quick); }},
      {"monte_carlo_w_mean", [&] { return monte_carlo_mean(quick, seed); }},
  };
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : checks) {
    CheckResult r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = {"", false, std::string("threw: ") + e.what()};
    }
    r.name = name;
    out.push_back(r);
  }
  return out;
}

}  // namespace bfly::cli
