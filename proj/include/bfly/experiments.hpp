#pragma once

// Seeded Monte Carlo drivers. Trial i always draws from Rng::substream(seed, i)
// and results are reduced in trial order, so output does not depend on the
// number of worker threads.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bfly/butterfly.hpp"
#include "bfly/butterfly_matrix.hpp"
#include "bfly/ensembles.hpp"
#include "bfly/gepp.hpp"
#include "bfly/lis.hpp"
#include "bfly/permutation.hpp"
#include "bfly/rng.hpp"

namespace bfly {

inline unsigned default_threads() {
  const unsigned h = std::thread::hardware_concurrency();
  return h ? h : 1;
}

// Calls fn(i) for i in [0, trials) across `threads` workers.
template <class Fn>
void parallel_for(std::size_t trials, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads ? threads : default_threads(),
                                            static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < trials; ++i) fn(i);
    return;
  }
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < trials; i += threads) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

inline constexpr std::size_t w_moment_count = 6;

struct WMoments {
  std::size_t trials = 0;
  std::array<double, w_moment_count> moments{};     // mean of W^k, k = 1..6
  std::array<double, w_moment_count> std_errors{};  // sd(W^k) / sqrt(trials)
};

// W_n = C(sigma_n) lambda^{-n} for sigma_n uniform on B_n^{(p)}.
inline WMoments monte_carlo_w(unsigned p, unsigned n, std::size_t trials, std::uint64_t seed,
                              unsigned threads = 0) {
  if (trials < 1) throw std::invalid_argument("monte_carlo_w: trials >= 1");
  const double scale = std::pow(2.0 - 1.0 / p, -static_cast<double>(n));
  std::vector<double> w(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    Rng rng = Rng::substream(seed, i);
    const NonsimpleButterfly t = sample_nonsimple(p, n, rng);
    w[i] = static_cast<double>(cycle_count(materialize(t))) * scale;
  });
  WMoments r;
  r.trials = trials;
  for (std::size_t k = 0; k < w_moment_count; ++k) {
    long double s = 0, s2 = 0;
    for (double x : w) {
      const long double v = std::pow(static_cast<long double>(x), static_cast<long double>(k + 1));
      s += v;
      s2 += v * v;
    }
    const long double mean = s / trials;
    const long double var = trials > 1 ? (s2 - trials * mean * mean) / (trials - 1) : 0.0L;
    r.moments[k] = static_cast<double>(mean);
    r.std_errors[k] = static_cast<double>(std::sqrt(std::max(0.0L, var) / trials));
  }
  return r;
}

// The eight permutation models compared in the LIS experiments.
enum class LisModel {
  simple_scalar,       // Unif(B_{s,N}), sampled directly
  nonsimple_scalar,    // Unif(B_N), sampled directly
  simple_diagonal,     // GEPP on simple diagonal butterfly
  nonsimple_diagonal,  // GEPP on nonsimple diagonal butterfly
  uniform,             // Unif(S_N) by Fisher-Yates
  goe,
  gue,
  bernoulli,  // Bern(1/2)^{N x N}
};

inline constexpr std::array<LisModel, 8> all_lis_models = {
    LisModel::simple_scalar, LisModel::nonsimple_scalar, LisModel::simple_diagonal, LisModel::nonsimple_diagonal,
    LisModel::uniform,       LisModel::goe,              LisModel::gue,             LisModel::bernoulli};

inline const char* to_string(LisModel m) {
  switch (m) {
    case LisModel::simple_scalar: return "simple_scalar";
    case LisModel::nonsimple_scalar: return "nonsimple_scalar";
    case LisModel::simple_diagonal: return "simple_diagonal";
    case LisModel::nonsimple_diagonal: return "nonsimple_diagonal";
    case LisModel::uniform: return "uniform";
    case LisModel::goe: return "goe";
    case LisModel::gue: return "gue";
    case LisModel::bernoulli: return "bernoulli";
  }
  return "?";
}

inline LisModel parse_lis_model(const std::string& s) {
  for (LisModel m : all_lis_models)
    if (s == to_string(m)) return m;
  throw std::invalid_argument("unknown LIS model: " + s);
}

// True when sampling requires a dense factorization.
inline bool uses_gepp(LisModel m) {
  return m != LisModel::simple_scalar && m != LisModel::nonsimple_scalar && m != LisModel::uniform;
}

inline Permutation sample_model(LisModel model, unsigned n, Rng& rng) {
  const std::size_t N = std::size_t{1} << n;
  switch (model) {
    case LisModel::simple_scalar: return materialize(sample_simple(2, n, rng));
    case LisModel::nonsimple_scalar: return materialize(sample_nonsimple(2, n, rng));
    case LisModel::simple_diagonal:
      return gepp(build_butterfly(sample_spec(Flavor::diagonal, Shape::simple, N, rng))).perm;
    case LisModel::nonsimple_diagonal:
      return gepp(build_butterfly(sample_spec(Flavor::diagonal, Shape::nonsimple, N, rng))).perm;
    case LisModel::uniform: return fisher_yates(N, rng);
    case LisModel::goe: return ensemble_perm({EnsembleKind::goe}, N, rng);
    case LisModel::gue: return ensemble_perm({EnsembleKind::gue}, N, rng);
    case LisModel::bernoulli: return ensemble_perm({EnsembleKind::bernoulli, 0.5}, N, rng);
  }
  throw std::logic_error("unreachable");
}

struct SampleSummary {
  double mean = 0;
  double sd = 0;
  std::size_t trials = 0;
};

inline SampleSummary summarize(const std::vector<double>& xs) {
  SampleSummary s;
  s.trials = xs.size();
  if (xs.empty()) return s;
  long double acc = 0;
  for (double x : xs) acc += x;
  const long double mean = acc / xs.size();
  long double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  s.mean = static_cast<double>(mean);
  s.sd = xs.size() > 1 ? static_cast<double>(std::sqrt(ss / (xs.size() - 1))) : 0.0;
  return s;
}

// Sample mean and standard deviation of LIS for one model and size.
inline SampleSummary lis_monte_carlo(LisModel model, unsigned n, std::size_t trials, std::uint64_t seed,
                                     unsigned threads = 0) {
  std::vector<double> v(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    Rng rng = Rng::substream(seed, i);
    v[i] = static_cast<double>(lis(sample_model(model, n, rng)));
  });
  return summarize(v);
}

}  // namespace bfly
