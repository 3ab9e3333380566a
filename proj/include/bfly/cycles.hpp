#pragma once

// Cycle counts of uniform butterfly permutations.
//
// Simple, prime p: every nonidentity element is a product of N/p disjoint
// p-cycles, so C = N/p with probability 1 - 1/N and C = N otherwise.
//
// Simple, composite m: all cycles share the order d of the element, and
// P(order divides e) = (e/m)^n for e | m, so by Moebius inversion
// P(order = d) = sum_{e | d} mu(d/e) (e/m)^n and C_d = (N/d) on that event.
//
// Nonsimple, prime p: Y_{n+1} = Y_n with probability 1 - 1/p (a nonzero
// root exponent glues the p blocks; the cycle count is that of a product of
// p independent uniform elements) and the sum of p iid copies otherwise.
// Counts: s(n+1, k) = (p-1)|B_n|^{p-1} s(n, k) + s_n^{*p}(k).
// Support is k = 1 mod (p-1); convolutions run on j = (k-1)/(p-1).

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bfly/butterfly.hpp"
#include "bfly/convolution.hpp"
#include "bfly/pmf.hpp"

namespace bfly {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline void require_prime(unsigned p, const char* who) {
  if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": p must be prime");
}

inline DiscreteLaw simple_cycle_dist(unsigned p, unsigned n) {
  require_prime(p, "simple_cycle_dist");
  if (n == 0) throw std::invalid_argument("simple_cycle_dist: n >= 1");
  const std::size_t N = checked_pow(p, n);
  DiscreteLaw law;
  law[static_cast<std::int64_t>(N / p)] = make_q(N - 1, N);
  law[static_cast<std::int64_t>(N)] = make_q(1, N);
  return law;
}

inline int moebius(unsigned x) {
  int mu = 1;
  for (unsigned d = 2; d * d <= x; ++d) {
    if (x % d) continue;
    x /= d;
    if (x % d == 0) return 0;
    mu = -mu;
  }
  if (x > 1) mu = -mu;
  return mu;
}

// P(the element has order exactly d), d | m.
inline mpq_class simple_order_prob(unsigned m, unsigned n, unsigned d) {
  mpq_class total = 0;
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e) continue;
    const int mu = moebius(d / e);
    if (!mu) continue;
    mpz_class num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), e, n);
    mpz_ui_pow_ui(den.get_mpz_t(), m, n);
    total += mu * make_q(num, den);
  }
  total.canonicalize();
  return total;
}

// Law of C_d, the number of d-cycles: N/d times a Bernoulli.
inline DiscreteLaw simple_cd_dist(unsigned m, unsigned n, unsigned d) {
  require_base(m);
  if (d == 0 || m % d) throw std::invalid_argument("simple_cd_dist: d must divide m");
  const std::size_t N = checked_pow(m, n);
  const mpq_class q = simple_order_prob(m, n, d);
  DiscreteLaw law;
  if (q != 1) law[0] = 1 - q;
  if (q != 0) law[static_cast<std::int64_t>(N / d)] += q;
  return law;
}

inline constexpr std::size_t cycle_exact_cap = 4096;
inline constexpr std::size_t cycle_float_cap = 1u << 20;
inline constexpr std::size_t cycle_direct_limit = 1u << 12;

struct CyclePmf {
  unsigned p = 2;
  unsigned n = 0;
  // Exactly one of these is filled, depending on the mode used.
  CountPmf counts;
  FloatPmf probs;
};

namespace detail {
template <class T>
Pmf<T> expand_strided(unsigned p, std::vector<T> compressed, T total) {
  Pmf<T> out;
  out.offset = 1;
  out.total = total;
  if (p == 2) {
    out.mass = std::move(compressed);
    return out;
  }
  out.mass.assign((compressed.size() - 1) * (p - 1) + 1, T(0));
  for (std::size_t j = 0; j < compressed.size(); ++j) out.mass[j * (p - 1)] = compressed[j];
  return out;
}
}  // namespace detail

// Exact s_B^{(p)}(n, k) for k = 1..p^n.
inline CountPmf nonsimple_cycle_counts(unsigned p, unsigned n) {
  require_prime(p, "nonsimple_cycle_counts");
  if (checked_pow(p, n) > cycle_exact_cap)
    throw std::length_error("nonsimple_cycle_counts: p^n exceeds exact cap " + std::to_string(cycle_exact_cap));
  // Compressed index j = (k-1)/(p-1); Y_0 = 1 sits at j = 0.
  std::vector<mpz_class> s{1};
  auto conv = [](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) { return convolve(a, b); };
  for (unsigned lvl = 0; lvl < n; ++lvl) {
    const mpz_class order = group_order(p, lvl, false);
    mpz_class weight;
    mpz_pow_ui(weight.get_mpz_t(), order.get_mpz_t(), p - 1);
    weight *= (p - 1);
    std::vector<mpz_class> pw = convolve_power(s, p, conv);
    // A sum of p values with indices j_i has index 1 + sum j_i.
    std::vector<mpz_class> next(pw.size() + 1);
    for (std::size_t j = 0; j < s.size(); ++j) next[j] = weight * s[j];
    for (std::size_t j = 0; j < pw.size(); ++j) next[j + 1] += pw[j];
    s = std::move(next);
  }
  return detail::expand_strided<mpz_class>(p, std::move(s), group_order(p, n, false));
}

// Float probabilities P(Y_n = k); direct convolution up to compressed
// support 2^12, FFT above with clipping and a per-level mass check.
inline FloatPmf nonsimple_cycle_probs(unsigned p, unsigned n) {
  require_prime(p, "nonsimple_cycle_probs");
  if (checked_pow(p, n) > cycle_float_cap)
    throw std::length_error("nonsimple_cycle_probs: p^n exceeds float cap " + std::to_string(cycle_float_cap));
  std::vector<double> s{1.0};
  for (unsigned lvl = 0; lvl < n; ++lvl) {
    const bool fft = s.size() > cycle_direct_limit;
    auto conv = [fft](const std::vector<double>& a, const std::vector<double>& b) {
      return convolve(a, b, fft ? ConvMethod::fft : ConvMethod::direct);
    };
    std::vector<double> pw = convolve_power(s, p, conv);
    if (fft) {
      const double mass = clip_and_normalize(pw);
      if (std::abs(mass - 1.0) >= 1e-9)
        throw std::runtime_error("nonsimple_cycle_probs: mass drift at level " + std::to_string(lvl + 1));
    }
    std::vector<double> next(pw.size() + 1, 0.0);
    const double stay = 1.0 - 1.0 / p;
    for (std::size_t j = 0; j < s.size(); ++j) next[j] = stay * s[j];
    for (std::size_t j = 0; j < pw.size(); ++j) next[j + 1] += pw[j] / p;
    s = std::move(next);
  }
  return detail::expand_strided<double>(p, std::move(s), 1.0);
}

inline CyclePmf nonsimple_cycle_dist(unsigned p, unsigned n, Mode mode) {
  CyclePmf c{p, n, {}, {}};
  if (mode == Mode::exact)
    c.counts = nonsimple_cycle_counts(p, n);
  else
    c.probs = nonsimple_cycle_probs(p, n);
  return c;
}

// f(t) ~ P(Y_n = floor((t lambda^n - 1)/(p-1))(p-1) + 1) * lambda^n / (p-1),
// lambda = 2 - 1/p. Zero where the index falls outside 1..p^n.
inline std::vector<std::pair<double, double>> density_grid(unsigned p, unsigned n, const FloatPmf& probs,
                                                           const std::vector<double>& t_values) {
  require_prime(p, "density_grid");
  const long double lam_n = std::pow(2.0L - 1.0L / p, static_cast<long double>(n));
  std::vector<std::pair<double, double>> out;
  out.reserve(t_values.size());
  for (double t : t_values) {
    if (t < 0) throw std::domain_error("density_grid: t must be >= 0");
    const long double j = std::floor((t * lam_n - 1) / (p - 1));
    double f = 0;
    if (j >= 0 && j < 9.0e18L) {
      const auto k = static_cast<std::int64_t>(j) * (p - 1) + 1;
      f = static_cast<double>(probs.at(k) * lam_n / (p - 1));
    }
    out.emplace_back(t, f);
  }
  return out;
}

inline std::vector<std::pair<double, double>> density_grid(unsigned p, unsigned n,
                                                           const std::vector<double>& t_values) {
  return density_grid(p, n, nonsimple_cycle_probs(p, n), t_values);
}

}  // namespace bfly
