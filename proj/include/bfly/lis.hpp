#pragma once

// Longest increasing / decreasing subsequence of a permutation's one-line form.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bfly/permutation.hpp"

namespace bfly {

// Patience sorting, O(M log M).
inline std::size_t lis(const Permutation& p) {
  std::vector<std::size_t> tops;
  tops.reserve(64);
  for (std::size_t k = 0; k < p.size(); ++k) {
    auto it = std::lower_bound(tops.begin(), tops.end(), p[k]);
    if (it == tops.end())
      tops.push_back(p[k]);
    else
      *it = p[k];
  }
  return tops.size();
}

// LDS of sigma is the LIS of the reversed values M-1-sigma(k).
inline std::size_t lds(const Permutation& p) {
  std::vector<std::size_t> tops;
  const std::size_t M = p.size();
  for (std::size_t k = 0; k < M; ++k) {
    const std::size_t v = M - 1 - p[k];
    auto it = std::lower_bound(tops.begin(), tops.end(), v);
    if (it == tops.end())
      tops.push_back(v);
    else
      *it = v;
  }
  return tops.size();
}

inline constexpr std::size_t lis_oracle_cap = 10'000;

// Quadratic dynamic program, kept independent of lis() for cross-checking.
inline std::size_t lis_oracle(const Permutation& p) {
  if (p.size() > lis_oracle_cap) throw std::length_error("lis_oracle: permutation too long");
  std::vector<std::size_t> best(p.size(), 1);
  std::size_t overall = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (p[j] < p[i] && best[j] + 1 > best[i]) best[i] = best[j] + 1;
    overall = std::max(overall, best[i]);
  }
  return overall;
}

}  // namespace bfly
