#pragma once

// Pearson chi-square goodness of fit.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

namespace bfly {

struct ChiSquare {
  double statistic = 0;
  std::size_t df = 0;
  double p_value = 1;
};

inline ChiSquare chi_square(const std::vector<std::uint64_t>& observed, const std::vector<double>& expected_probs) {
  if (observed.size() != expected_probs.size()) throw std::invalid_argument("chi_square: support mismatch");
  if (observed.size() < 2) throw std::invalid_argument("chi_square: need at least 2 cells");
  std::uint64_t n = 0;
  for (auto o : observed) n += o;
  double total_p = 0;
  for (double p : expected_probs) {
    if (!(p > 0)) throw std::invalid_argument("chi_square: expected masses must be positive");
    total_p += p;
  }
  ChiSquare r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = static_cast<double>(n) * expected_probs[i] / total_p;
    const double d = static_cast<double>(observed[i]) - e;
    r.statistic += d * d / e;
  }
  r.df = observed.size() - 1;
  r.p_value = boost::math::gamma_q(0.5 * static_cast<double>(r.df), 0.5 * r.statistic);
  return r;
}

// Uniform expectation over `cells` outcomes.
inline ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& observed) {
  return chi_square(observed, std::vector<double>(observed.size(), 1.0));
}

}  // namespace bfly
