#pragma once

// Power-law exponent constants for LIS of butterfly permutations.
//
//   m^alpha_m = (3m^2 + r_m) / (4m), r_m = m mod 2   (= E max(X, m-X))
//   m^beta_m  = (m+1)/2 + (1/2m) sum_{j=1}^{m-1} sqrt(m + (m-2j)^2)
//   beta*_2   = log2(6 + sqrt(2 c*)) - 2, c* the fixed point of h below
//   mu_m, nu_m = mean and variance of log_m max(X, m-X)
//   N_0(m)    = ceil(2^{1/(alpha_m - 1/2)})

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bfly {

inline double lis_alpha(unsigned m) {
  if (m < 2) throw std::invalid_argument("lis_alpha: m >= 2");
  const long double M = m;
  return static_cast<double>(std::log((3 * M * M + (m % 2)) / (4 * M)) / std::log(M));
}

inline double lis_beta(unsigned m) {
  if (m < 2) throw std::invalid_argument("lis_beta: m >= 2");
  const long double M = m;
  long double s = 0, comp = 0;  // Kahan summation; m can be ~10^6
  for (unsigned j = 1; j < m; ++j) {
    const long double d = M - 2.0L * j;
    const long double y = std::sqrt(M + d * d) - comp;
    const long double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  const long double v = (M + 1) / 2 + s / (2 * M);
  return static_cast<double>(std::log(v) / std::log(M));
}

// Contraction map for the sharpened binary upper bound, with the factor
// sqrt(x) in the last term (this reproduces c_1 = 0.80597, c_2 = 0.71783).
inline double beta_contraction(double x) {
  const double r = std::sqrt(2 * x);
  const double d = 18 + 6 * r + x;
  return 1.0 / 9 + (107 * x - 6 * r) / (9 * d) +
         2 * r * std::sqrt(4 / (d * d) + 1 / (9 * (3 + r) * (3 + r)));
}

// c_0 = 1, c_{k+1} = h(c_k), for k = 0..count-1.
inline std::vector<double> contraction_sequence(std::size_t count) {
  std::vector<double> c{1.0};
  while (c.size() < count) c.push_back(beta_contraction(c.back()));
  return c;
}

struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double contraction_fixed_point() {
  double c = 1.0;
  for (int i = 0; i < 10000; ++i) {
    const double next = beta_contraction(c);
    if (std::abs(next - c) < 1e-15) return next;
    c = next;
  }
  throw convergence_error("contraction_fixed_point: no convergence");
}

inline double beta_star_from(double c) { return std::log2(6 + std::sqrt(2 * c)) - 2; }

struct LogMaxMoments {
  double mu = 0;
  double nu = 0;
};

inline LogMaxMoments log_max_moments(unsigned m) {
  if (m < 2) throw std::invalid_argument("log_max_moments: m >= 2");
  const long double lm = std::log(static_cast<long double>(m));
  long double s1 = 0, s2 = 0;
  for (unsigned x = 1; x <= m; ++x) {
    const long double y = std::log(static_cast<long double>(std::max(x, m - x))) / lm;
    s1 += y;
    s2 += y * y;
  }
  const long double mu = s1 / m;
  return {static_cast<double>(mu), static_cast<double>(s2 / m - mu * mu)};
}

inline std::uint64_t lis_n0(unsigned m) {
  const long double a = lis_alpha(m);
  if (a <= 0.5L) throw std::domain_error("lis_n0: alpha_m must exceed 1/2");
  return static_cast<std::uint64_t>(std::ceil(std::pow(2.0L, 1.0L / (a - 0.5L))));
}

struct BoundsTable {
  unsigned m = 2;
  double alpha = 0;
  double beta = 0;
  double beta_star = NAN;  // m = 2 only
  double c_star = NAN;     // m = 2 only
  double mu = 0;
  double nu = 0;
  std::uint64_t n0 = 0;
};

inline BoundsTable bounds(unsigned m) {
  BoundsTable b;
  b.m = m;
  b.alpha = lis_alpha(m);
  b.beta = lis_beta(m);
  if (m == 2) {
    b.c_star = contraction_fixed_point();
    b.beta_star = beta_star_from(b.c_star);
  }
  const LogMaxMoments mm = log_max_moments(m);
  b.mu = mm.mu;
  b.nu = mm.nu;
  b.n0 = lis_n0(m);
  return b;
}

}  // namespace bfly
