#pragma once

// Gaussian elimination with partial pivoting, P A = L U.
//
// At step k the pivot row is the smallest j >= k whose |a_jk| is within a
// relative 2^-40 of the column maximum. The permutation factor is reported as
// sigma with P = P_sigma, i.e. sigma(k) is where original row k ends up; it
// equals the product (N i_N) ... (2 i_2)(1 i_1) of the pivot swaps.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "bfly/matrix.hpp"
#include "bfly/permutation.hpp"

namespace bfly {

inline constexpr double pivot_tie_tolerance = 0x1.0p-40;
inline constexpr double singular_pivot_threshold = 1e-300;

struct singular_pivot_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
struct BasicGeppResult {
  Permutation perm;
  BasicMatrix<T> lower;
  BasicMatrix<T> upper;
  std::size_t pivot_count = 0;
  bool tie_encountered = false;
  std::vector<std::size_t> pivot_rows;  // i_k, 0-based
};

using GeppResult = BasicGeppResult<double>;

template <class T>
struct GeppOptions {
  // Called after step k (0-based) with the partially reduced matrix: rows and
  // columns < k+1 are in final upper triangular form, entries below the
  // diagonal in those columns are zero.
  std::function<void(std::size_t, const BasicMatrix<T>&)> on_step;
  // Treat an all-zero pivot column as a skipped step instead of an error.
  bool allow_singular = false;
};

template <class T>
BasicGeppResult<T> gepp(const BasicMatrix<T>& a, const GeppOptions<T>& opts = {}) {
  if (a.rows() != a.cols()) throw std::invalid_argument("gepp: matrix must be square");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(std::abs(a(i, j)))) throw std::invalid_argument("gepp: non-finite entry");

  BasicMatrix<T> w = a;
  BasicMatrix<T> lower = BasicMatrix<T>::identity(n);
  std::vector<std::size_t> chain(n);
  bool tie = false;
  std::size_t moves = 0;

  for (std::size_t k = 0; k < n; ++k) {
    double best = 0;
    for (std::size_t j = k; j < n; ++j) best = std::max(best, static_cast<double>(std::abs(w(j, k))));
    std::size_t piv = k;
    if (best < singular_pivot_threshold) {
      if (!opts.allow_singular) throw singular_pivot_error("gepp: singular pivot column");
      chain[k] = k;
      if (opts.on_step) opts.on_step(k, w);
      continue;
    }
    const double cutoff = best * (1.0 - pivot_tie_tolerance);
    std::size_t candidates = 0;
    bool chosen = false;
    for (std::size_t j = k; j < n; ++j) {
      if (static_cast<double>(std::abs(w(j, k))) >= cutoff) {
        ++candidates;
        if (!chosen) {
          piv = j;
          chosen = true;
        }
      }
    }
    if (candidates > 1) tie = true;
    chain[k] = piv;
    if (piv != k) {
      ++moves;
      w.swap_rows(k, piv);
      for (std::size_t c = 0; c < k; ++c) std::swap(lower(k, c), lower(piv, c));
    }
    const T d = w(k, k);
    const T* rk = w.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const T l = w(i, k) / d;
      lower(i, k) = l;
      T* ri = w.row(i);
      ri[k] = T{};
      if (l == T{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= l * rk[j];
    }
    if (opts.on_step) opts.on_step(k, w);
  }

  BasicGeppResult<T> r;
  r.perm = from_transposition_chain(chain);
  r.lower = std::move(lower);
  r.upper = std::move(w);
  r.pivot_count = moves;
  r.tie_encountered = tie;
  r.pivot_rows = std::move(chain);
  return r;
}

}  // namespace bfly
