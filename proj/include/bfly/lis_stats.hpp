#pragma once

// LIS laws for uniform butterfly permutations.
//
// Simple: L is a product of n iid copies of max(X, m-X), X uniform on [m]
// (X = m gives m). For m = 2, log2 L ~ Binom(n, 1/2) and L*D = 2^n.
//
// Nonsimple: with X_0 = 1 and S_k the sum of k iid copies of X_n,
//   X_{n+1} = max(S_{m-e}, S_e) for root exponent e != 0, and S_m for e = 0,
// each e having probability 1/m. Counts b(n,k) = #{sigma in B_n^{(m)}: L = k}
// follow the same recursion with the weights dropped.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bfly/butterfly.hpp"
#include "bfly/convolution.hpp"
#include "bfly/pmf.hpp"

namespace bfly {

// Law of max(X, m-X) for X uniform on {1..m}.
inline DiscreteLaw simple_lis_step_law(unsigned m) {
  require_base(m);
  DiscreteLaw law;
  for (unsigned x = 1; x <= m; ++x) law[std::max(x, m - x)] += mpq_class(1, m);
  return law;
}

inline DiscreteLaw simple_lis_pmf(unsigned m, unsigned n) {
  const DiscreteLaw step = simple_lis_step_law(m);
  DiscreteLaw law{{1, mpq_class(1)}};
  for (unsigned i = 0; i < n; ++i) {
    DiscreteLaw next;
    for (const auto& [a, pa] : law)
      for (const auto& [b, pb] : step) next[a * b] += pa * pb;
    law = std::move(next);
  }
  return law;
}

// log2 D ~ Binom(n, 1 - 1/m): D doubles exactly when a digit is nonzero.
inline DiscreteLaw simple_lds_pmf(unsigned m, unsigned n) {
  require_base(m);
  DiscreteLaw law;
  const mpq_class q(m - 1, m), r(1, m);
  for (unsigned k = 0; k <= n; ++k) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), n, k);
    mpq_class p = binom;
    for (unsigned i = 0; i < k; ++i) p *= q;
    for (unsigned i = k; i < n; ++i) p *= r;
    law[std::int64_t{1} << k] = p;
  }
  return law;
}

inline constexpr std::size_t lis_exact_cap = 4096;         // m^n for exact counts
inline constexpr std::size_t lis_float_cap = 1u << 20;     // m^n for float mode
inline constexpr std::size_t lis_direct_limit = 1u << 15;  // above this, FFT
inline constexpr double pmf_drift_limit = 1e-9;

struct pmf_drift_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Law of max(A, B) for independent A (support starting at offA) and B.
template <class T>
std::vector<T> max_law(std::int64_t offA, const std::vector<T>& A, std::int64_t offB, const std::vector<T>& B,
                       std::int64_t out_off, std::size_t out_len) {
  const std::int64_t hiA = offA + static_cast<std::int64_t>(A.size()) - 1;
  const std::int64_t hiB = offB + static_cast<std::int64_t>(B.size()) - 1;
  auto cum = [](const std::vector<T>& v) {
    std::vector<T> c(v.size());
    T acc = T(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      acc += v[i];
      c[i] = acc;
    }
    return c;
  };
  const std::vector<T> FA = cum(A), FB = cum(B);
  auto F = [](const std::vector<T>& Fv, std::int64_t off, std::int64_t hi, std::int64_t t) -> T {
    if (t < off) return T(0);
    if (t > hi) return Fv.back();
    return Fv[static_cast<std::size_t>(t - off)];
  };
  auto P = [](const std::vector<T>& v, std::int64_t off, std::int64_t hi, std::int64_t t) -> T {
    if (t < off || t > hi) return T(0);
    return v[static_cast<std::size_t>(t - off)];
  };
  std::vector<T> out(out_len, T(0));
  const std::int64_t lo = std::max(offA, offB), hi = std::max(hiA, hiB);
  for (std::int64_t t = lo; t <= hi; ++t) {
    T v = P(A, offA, hiA, t) * F(FB, offB, hiB, t) + F(FA, offA, hiA, t - 1) * P(B, offB, hiB, t);
    out[static_cast<std::size_t>(t - out_off)] += v;
  }
  return out;
}

// One level of the nonsimple recursion on masses c over support 1..len.
template <class T, class Conv>
std::vector<T> lis_level(unsigned m, const std::vector<T>& c, Conv&& conv) {
  std::vector<std::vector<T>> S(m + 1);  // S[k] has support k..k*len
  S[1] = c;
  for (unsigned k = 2; k <= m; ++k) S[k] = conv(S[k - 1], c);
  const std::size_t out_len = c.size() * m;
  std::vector<T> out(out_len, T(0));
  for (std::size_t i = 0; i < S[m].size(); ++i) out[i + m - 1] += S[m][i];
  for (unsigned e = 1; e < m; ++e) {
    std::vector<T> mx = max_law<T>(m - e, S[m - e], e, S[e], 1, out_len);
    for (std::size_t i = 0; i < out_len; ++i) out[i] += mx[i];
  }
  return out;
}

}  // namespace detail

// Exact b(n, k) for k = 1..m^n, total |B_n^{(m)}|.
inline CountPmf nonsimple_lis_counts(unsigned n, unsigned m = 2) {
  require_base(m);
  if (checked_pow(m, n) > lis_exact_cap)
    throw std::length_error("nonsimple_lis_counts: m^n exceeds exact cap " + std::to_string(lis_exact_cap));
  std::vector<mpz_class> c{1};
  for (unsigned lvl = 0; lvl < n; ++lvl)
    c = detail::lis_level<mpz_class>(
        m, c, [](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) { return convolve(a, b); });
  CountPmf p;
  p.offset = 1;
  p.mass = std::move(c);
  p.total = group_order(m, n, false);
  return p;
}

// Float probabilities via the same recursion; direct convolution up to
// support 2^15, FFT beyond with clipping and a per-level mass check.
inline FloatPmf nonsimple_lis_probs(unsigned n, unsigned m = 2) {
  require_base(m);
  if (checked_pow(m, n) > lis_float_cap)
    throw std::length_error("nonsimple_lis_probs: m^n exceeds float cap " + std::to_string(lis_float_cap));
  std::vector<double> c{1.0};
  for (unsigned lvl = 0; lvl < n; ++lvl) {
    const bool fft = c.size() * m > lis_direct_limit;
    auto conv = [fft](const std::vector<double>& a, const std::vector<double>& b) {
      std::vector<double> r = convolve(a, b, fft ? ConvMethod::fft : ConvMethod::direct);
      if (fft)
        for (auto& x : r) x = x < 0 ? 0 : x;
      return r;
    };
    c = detail::lis_level<double>(m, c, conv);
    for (auto& x : c) x /= m;
    if (fft) {
      const double mass = clip_and_normalize(c);
      if (std::abs(mass - 1.0) >= pmf_drift_limit)
        throw pmf_drift_error("nonsimple_lis_probs: mass drift " + std::to_string(mass - 1.0) + " at level " +
                              std::to_string(lvl + 1));
    }
  }
  FloatPmf p;
  p.offset = 1;
  p.mass = std::move(c);
  return p;
}

struct LisMoments {
  double mean = 0;
  double second = 0;
};

inline LisMoments nonsimple_lis_moments(unsigned n, unsigned m = 2) {
  const FloatPmf p = nonsimple_lis_probs(n, m);
  return {moment(p, 1), moment(p, 2)};
}

struct ExactLisMoments {
  mpq_class mean;
  mpq_class second;
};

inline ExactLisMoments nonsimple_lis_moments_exact(unsigned n, unsigned m = 2) {
  const CountPmf c = nonsimple_lis_counts(n, m);
  return {moment_exact(c, 1), moment_exact(c, 2)};
}

// F_n(t) for t = 0..2^n (binary case), from
//   F_{n+1}(t) = F_n(t)^2 / 2 + (1/2) sum_j F_n(t-j) p_n(j).
inline std::vector<double> nonsimple_lis_cdf_table(unsigned n) {
  if ((std::size_t{1} << n) > lis_float_cap) throw std::length_error("nonsimple_lis_cdf: n exceeds float cap");
  std::vector<double> F{0.0, 1.0};  // F_0 on t = 0, 1
  for (unsigned lvl = 0; lvl < n; ++lvl) {
    const std::size_t N = F.size() - 1, N2 = 2 * N;
    std::vector<double> Fext(N2 + 1, 1.0), p(N + 1, 0.0);
    for (std::size_t t = 0; t <= N; ++t) Fext[t] = F[t];
    for (std::size_t j = 1; j <= N; ++j) p[j] = F[j] - F[j - 1];
    const bool fft = N2 > lis_direct_limit / 8;
    std::vector<double> g = convolve(Fext, p, fft ? ConvMethod::fft : ConvMethod::direct);
    std::vector<double> next(N2 + 1);
    for (std::size_t t = 0; t <= N2; ++t) {
      const double v = 0.5 * Fext[t] * Fext[t] + 0.5 * g[t];
      next[t] = std::min(1.0, std::max(0.0, v));
    }
    next[N2] = 1.0;
    F = std::move(next);
  }
  return F;
}

inline double nonsimple_lis_cdf(unsigned n, std::int64_t t) {
  if (t <= 0) return 0.0;
  if (static_cast<std::uint64_t>(t) >= (std::uint64_t{1} << n)) return 1.0;
  return nonsimple_lis_cdf_table(n)[static_cast<std::size_t>(t)];
}

struct FitResult {
  double alpha_hat = 0;
  double intercept = 0;
  double r_squared = 0;
};

// Ordinary least squares of ln(mean) on ln(N), unweighted.
inline FitResult fit_exponent(const std::vector<std::pair<double, double>>& values) {
  if (values.size() < 3) throw std::invalid_argument("fit_exponent: need at least 3 points");
  long double sx = 0, sy = 0;
  std::vector<long double> xs, ys;
  for (const auto& [N, mean] : values) {
    if (!(N > 0) || !(mean > 0)) throw std::invalid_argument("fit_exponent: values must be positive");
    xs.push_back(std::log(static_cast<long double>(N)));
    ys.push_back(std::log(static_cast<long double>(mean)));
    sx += xs.back();
    sy += ys.back();
  }
  const long double n = static_cast<long double>(xs.size());
  const long double mx = sx / n, my = sy / n;
  long double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("fit_exponent: degenerate input (all N equal)");
  const long double slope = sxy / sxx, icpt = my - slope * mx;
  long double ssr = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const long double r = ys[i] - (icpt + slope * xs[i]);
    ssr += r * r;
  }
  FitResult f;
  f.alpha_hat = static_cast<double>(slope);
  f.intercept = static_cast<double>(icpt);
  f.r_squared = syy == 0 ? 1.0 : static_cast<double>(1 - ssr / syy);
  return f;
}

}  // namespace bfly
