#pragma once

// Convolution of nonnegative sequences.
//
// Big integers: schoolbook for small inputs, otherwise Kronecker substitution
// (pack each sequence into one integer with limb-aligned slots, multiply once
// with GMP, unpack). Doubles: direct summation or FFTW.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>
#include <gmpxx.h>

namespace bfly {

namespace detail {

inline std::vector<mpz_class> convolve_schoolbook(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  std::vector<mpz_class> c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return c;
}

inline std::size_t max_limbs(const std::vector<mpz_class>& v) {
  std::size_t m = 0;
  for (const auto& x : v) {
    if (sgn(x) < 0) throw std::invalid_argument("convolve: negative entry");
    m = std::max(m, mpz_size(x.get_mpz_t()));
  }
  return m;
}

inline mpz_class pack(const std::vector<mpz_class>& v, std::size_t slot) {
  std::vector<mp_limb_t> limbs(v.size() * slot, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const mpz_srcptr z = v[i].get_mpz_t();
    const std::size_t n = mpz_size(z);
    for (std::size_t k = 0; k < n; ++k) limbs[i * slot + k] = mpz_getlimbn(z, static_cast<mp_size_t>(k));
  }
  mpz_class r;
  mpz_import(r.get_mpz_t(), limbs.size(), -1, sizeof(mp_limb_t), 0, 0, limbs.data());
  return r;
}

inline std::vector<mpz_class> convolve_kronecker(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  const std::size_t out_len = a.size() + b.size() - 1;
  std::size_t bits = (max_limbs(a) + max_limbs(b)) * GMP_NUMB_BITS;
  std::size_t terms = std::min(a.size(), b.size());
  while (terms) {
    ++bits;
    terms >>= 1;
  }
  const std::size_t slot = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
  const mpz_class prod = pack(a, slot) * pack(b, slot);
  const mpz_srcptr z = prod.get_mpz_t();
  const std::size_t n = mpz_size(z);
  std::vector<mpz_class> c(out_len);
  std::vector<mp_limb_t> chunk(slot);
  for (std::size_t i = 0; i < out_len; ++i) {
    const std::size_t base = i * slot;
    if (base >= n) break;
    for (std::size_t k = 0; k < slot; ++k)
      chunk[k] = base + k < n ? mpz_getlimbn(z, static_cast<mp_size_t>(base + k)) : 0;
    mpz_import(c[i].get_mpz_t(), slot, -1, sizeof(mp_limb_t), 0, 0, chunk.data());
  }
  return c;
}

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace detail

inline std::vector<mpz_class> convolve(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  if (a.empty() || b.empty()) return {};
  if (a.size() * b.size() <= 256) return detail::convolve_schoolbook(a, b);
  return detail::convolve_kronecker(a, b);
}

enum class ConvMethod { direct, fft };

inline std::vector<double> convolve_direct(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    double* ci = c.data() + i;
    for (std::size_t j = 0; j < b.size(); ++j) ci[j] += ai * b[j];
  }
  return c;
}

// FFT convolution. Round-off can leave tiny negative values; callers that need
// probabilities clip them.
inline std::vector<double> convolve_fft(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  std::size_t L = 1;
  while (L < out_len) L <<= 1;
  const std::size_t H = L / 2 + 1;
  double* x = fftw_alloc_real(L);
  double* y = fftw_alloc_real(L);
  fftw_complex* X = fftw_alloc_complex(H);
  fftw_complex* Y = fftw_alloc_complex(H);
  fftw_plan px, py, inv;
  {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    px = fftw_plan_dft_r2c_1d(static_cast<int>(L), x, X, FFTW_ESTIMATE);
    py = fftw_plan_dft_r2c_1d(static_cast<int>(L), y, Y, FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_1d(static_cast<int>(L), X, x, FFTW_ESTIMATE);
  }
  std::fill(x, x + L, 0.0);
  std::fill(y, y + L, 0.0);
  std::copy(a.begin(), a.end(), x);
  std::copy(b.begin(), b.end(), y);
  fftw_execute(px);
  fftw_execute(py);
  for (std::size_t k = 0; k < H; ++k) {
    const double re = X[k][0] * Y[k][0] - X[k][1] * Y[k][1];
    const double im = X[k][0] * Y[k][1] + X[k][1] * Y[k][0];
    X[k][0] = re;
    X[k][1] = im;
  }
  fftw_execute(inv);
  std::vector<double> c(x, x + out_len);
  const double scale = 1.0 / static_cast<double>(L);
  for (auto& v : c) v *= scale;
  {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(px);
    fftw_destroy_plan(py);
    fftw_destroy_plan(inv);
  }
  fftw_free(x);
  fftw_free(y);
  fftw_free(X);
  fftw_free(Y);
  return c;
}

inline std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b,
                                    ConvMethod method = ConvMethod::direct) {
  return method == ConvMethod::fft ? convolve_fft(a, b) : convolve_direct(a, b);
}

// k-fold self convolution by repeated squaring.
template <class T, class Conv>
std::vector<T> convolve_power(const std::vector<T>& a, unsigned k, Conv&& conv) {
  if (k == 0) throw std::invalid_argument("convolve_power: k must be >= 1");
  std::vector<T> result, base = a;
  bool have = false;
  while (k) {
    if (k & 1u) {
      result = have ? conv(result, base) : base;
      have = true;
    }
    k >>= 1;
    if (k) base = conv(base, base);
  }
  return result;
}

// Clips negatives to zero and rescales to unit mass. Returns the mass before
// rescaling.
inline double clip_and_normalize(std::vector<double>& v) {
  long double s = 0;
  for (auto& x : v) {
    if (x < 0) x = 0;
    s += x;
  }
  if (s > 0)
    for (auto& x : v) x = static_cast<double>(x / s);
  return static_cast<double>(s);
}

}  // namespace bfly
