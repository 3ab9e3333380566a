#pragma once

// Fixed points T_n = C_1(sigma_n) of uniform sigma_n in B_n^{(m)}.
//
// A nonzero root exponent moves every block, so T_{n+1} = 0 then; with a
// zero exponent T_{n+1} is the sum over the m children. Hence
//   P(T_{n+1} = 0) = (1 - 1/m) + (1/m) P(T_n = 0)^m,   P(T_0 = 0) = 0,
// E T_n = 1 and E T_n^2 = n(m-1) + 1.
//
// x_star(m) is the root in (0, 1) of
//   q_m(x) = (m-1)(x^{m-1} + ... + x) - 1,
// i.e. the fixed point other than 1 of h_m(x) = 1/m + (1 - 1/m) x^m
// (x*_3 = (sqrt(3) - 1)/2). Note h_m is not the map iterated above for m >= 3;
// the two coincide at m = 2.

#include <cmath>
#include <stdexcept>

#include <gmpxx.h>

#include "bfly/pmf.hpp"

namespace bfly {

inline mpq_class no_fixed_point_prob_exact(unsigned m, unsigned n) {
  if (m < 2) throw std::invalid_argument("no_fixed_point_prob: m >= 2");
  const mpq_class move = make_q(m - 1, m), stay = make_q(1, m);
  mpq_class p = 0;
  for (unsigned i = 0; i < n; ++i) {
    mpq_class pm = 1;
    for (unsigned j = 0; j < m; ++j) pm *= p;
    p = move + stay * pm;
  }
  return p;
}

inline double no_fixed_point_prob(unsigned m, unsigned n) {
  if (m < 2) throw std::invalid_argument("no_fixed_point_prob: m >= 2");
  double p = 0;
  for (unsigned i = 0; i < n; ++i) p = (1.0 - 1.0 / m) + std::pow(p, static_cast<double>(m)) / m;
  return p;
}

inline double h_map(unsigned m, double x) { return 1.0 / m + (1.0 - 1.0 / m) * std::pow(x, static_cast<double>(m)); }

inline double q_poly(unsigned m, double x) {
  double s = 0, xp = 1;
  for (unsigned j = 1; j < m; ++j) {
    xp *= x;
    s += xp;
  }
  return (m - 1) * s - 1;
}

inline double x_star(unsigned m) {
  if (m < 2) throw std::invalid_argument("x_star: m >= 2");
  if (m == 2) return 1.0;
  // q_m(0) = -1 < 0 < q_m(1) = (m-1)^2 - 1 and q_m is increasing on [0, 1].
  double lo = 0, hi = 1;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    (q_poly(m, mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline mpq_class fixed_point_moments(unsigned m, unsigned n, unsigned k) {
  if (m < 2) throw std::invalid_argument("fixed_point_moments: m >= 2");
  if (k == 0 || k == 1) return 1;
  if (k == 2) return mpq_class(static_cast<unsigned long>(n) * (m - 1) + 1);
  throw std::invalid_argument("fixed_point_moments: only k <= 2 is supported");
}

}  // namespace bfly
