#pragma once

// Moments of the nonsimple cycle count Y_n for prime p.
//
// E Y_n^k = p_k(lambda^n) with lambda = 2 - 1/p, where the polynomials obey
//   p_k(lambda x) = lambda p_k(x) + (1/p) R_k(x),
//   R_k = sum over compositions k = k_1 + ... + k_p with all parts < k of
//         multinomial(k; k_1..k_p) prod p_{k_i}.
// Hence a_kj = r_kj / (p (lambda^j - lambda)) for j >= 2, and a_k1 closes
// p_k(1) = 1. The limits m_k = E (W^{(p)})^k are the leading coefficients.
//
// R_k is read off the exponential generating function: with
// T(z) = sum_i p_i z^i / i! and U = T^p, R_k / k! = [z^k]U - p [z^k]T, and
// the coefficients of U follow from the power recurrence
//   u_k = (1/k) sum_{i=1}^{k} ((p+1) i - k) t_i u_{k-i}   (t_0 = 1).

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "bfly/pmf.hpp"

namespace bfly {

using RationalPoly = std::vector<mpq_class>;  // index j holds the x^j coefficient

inline mpq_class evaluate(const RationalPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t j = p.size(); j-- > 0;) acc = acc * x + p[j];
  return acc;
}

struct MomentTable {
  unsigned p = 2;
  mpq_class lambda;
  std::vector<RationalPoly> polys;  // polys[k] = p_k, k = 0..k_max
  std::vector<mpq_class> limits;    // limits[k] = m_k

  // E Y_n^k exactly.
  mpq_class moment(unsigned k, unsigned n) const {
    mpq_class x = 1;
    for (unsigned i = 0; i < n; ++i) x *= lambda;
    return evaluate(polys.at(k), x);
  }
};

inline mpq_class lambda_p(unsigned p) {
  if (p < 2) throw std::invalid_argument("lambda_p: p >= 2");
  return make_q(2 * p - 1, p);
}

namespace detail {
inline mpq_class pow_q(const mpq_class& b, unsigned e) {
  mpq_class r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

inline RationalPoly poly_mul(const RationalPoly& a, const RationalPoly& b) {
  if (a.empty() || b.empty()) return {};
  RationalPoly c(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

inline void poly_axpy(RationalPoly& y, const mpq_class& a, const RationalPoly& x) {
  if (y.size() < x.size()) y.resize(x.size(), mpq_class(0));
  for (std::size_t j = 0; j < x.size(); ++j) y[j] += a * x[j];
}
}  // namespace detail

inline constexpr unsigned moment_poly_cap = 60;

inline MomentTable moment_polynomials(unsigned p, unsigned k_max) {
  if (p < 2) throw std::invalid_argument("moment_polynomials: p >= 2");
  if (k_max < 1) throw std::invalid_argument("moment_polynomials: k_max >= 1");
  if (k_max > moment_poly_cap) throw std::length_error("moment_polynomials: k_max above cap");
  MomentTable tab;
  tab.p = p;
  tab.lambda = lambda_p(p);
  std::vector<mpq_class> lam_pow(k_max + 1);
  for (unsigned j = 0; j <= k_max; ++j) lam_pow[j] = detail::pow_q(tab.lambda, j);

  std::vector<RationalPoly> t(k_max + 1), u(k_max + 1);
  t[0] = {mpq_class(1)};
  u[0] = {mpq_class(1)};
  mpq_class inv_fact = 1;
  for (unsigned k = 1; k <= k_max; ++k) {
    inv_fact /= k;
    RationalPoly S;
    for (unsigned i = 1; i < k; ++i) {
      const long w = static_cast<long>((p + 1) * i) - static_cast<long>(k);
      if (w == 0) continue;
      detail::poly_axpy(S, make_q(w, k), detail::poly_mul(t[i], u[k - i]));
    }
    S.resize(k + 1, mpq_class(0));
    RationalPoly tk(k + 1, mpq_class(0));
    mpq_class rest = 0;
    for (unsigned j = 2; j <= k; ++j) {
      tk[j] = S[j] / (p * (lam_pow[j] - tab.lambda));
      rest += tk[j];
    }
    tk[1] = inv_fact - rest;
    t[k] = tk;
    u[k] = S;
    detail::poly_axpy(u[k], mpq_class(p), tk);
  }
  tab.polys.resize(k_max + 1);
  tab.limits.resize(k_max + 1);
  mpq_class fact = 1;
  for (unsigned k = 0; k <= k_max; ++k) {
    if (k) fact *= k;
    tab.polys[k].resize(t[k].size());
    for (std::size_t j = 0; j < t[k].size(); ++j) tab.polys[k][j] = t[k][j] * fact;
    tab.limits[k] = tab.polys[k].back();
  }
  return tab;
}

// m_0..m_{k_max} from the leading-coefficient recursion alone.
inline std::vector<mpq_class> limit_moments(unsigned p, unsigned k_max) {
  if (p < 2) throw std::invalid_argument("limit_moments: p >= 2");
  const mpq_class lam = lambda_p(p);
  std::vector<mpq_class> t(k_max + 1), u(k_max + 1), m(k_max + 1);
  t[0] = u[0] = m[0] = 1;
  mpq_class lam_k = 1, fact = 1;
  for (unsigned k = 1; k <= k_max; ++k) {
    lam_k *= lam;
    fact *= k;
    mpq_class S = 0;
    for (unsigned i = 1; i < k; ++i) {
      const long w = static_cast<long>((p + 1) * i) - static_cast<long>(k);
      if (w) S += make_q(w, k) * t[i] * u[k - i];
    }
    t[k] = k == 1 ? mpq_class(1) : mpq_class(S / (p * (lam_k - lam)));
    u[k] = S + p * t[k];
    m[k] = t[k] * fact;
  }
  return m;
}

}  // namespace bfly
