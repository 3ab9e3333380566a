#pragma once

// Random matrix ensembles for the pivoting experiments.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>

#include "bfly/butterfly_matrix.hpp"
#include "bfly/gepp.hpp"
#include "bfly/matrix.hpp"
#include "bfly/rng.hpp"

namespace bfly {

// Symmetric; N(0,2) diagonal, N(0,1) off the diagonal.
inline DenseMatrix sample_goe(std::size_t N, Rng& rng) {
  DenseMatrix a(N, N);
  for (std::size_t i = 0; i < N; ++i) {
    a(i, i) = std::sqrt(2.0) * rng.normal();
    for (std::size_t j = i + 1; j < N; ++j) a(i, j) = a(j, i) = rng.normal();
  }
  return a;
}

// Hermitian; N(0,1) real diagonal, off-diagonal real and imaginary parts
// N(0,1/2).
inline ComplexMatrix sample_gue(std::size_t N, Rng& rng) {
  ComplexMatrix a(N, N);
  const double s = std::sqrt(0.5);
  for (std::size_t i = 0; i < N; ++i) {
    a(i, i) = rng.normal();
    for (std::size_t j = i + 1; j < N; ++j) {
      const double re = s * rng.normal(), im = s * rng.normal();
      a(i, j) = {re, im};
      a(j, i) = {re, -im};
    }
  }
  return a;
}

// iid entries equal to 1 with probability q, else 0.
inline DenseMatrix sample_bernoulli(std::size_t N, double q, Rng& rng) {
  DenseMatrix a(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) a(i, j) = rng.bernoulli(q) ? 1.0 : 0.0;
  return a;
}

enum class EnsembleKind { goe, gue, bernoulli, haar_so2_angles };

struct Ensemble {
  EnsembleKind kind = EnsembleKind::goe;
  double q = 0.5;  // bernoulli only
};

inline Ensemble parse_ensemble(const std::string& name) {
  if (name == "goe") return {EnsembleKind::goe};
  if (name == "gue") return {EnsembleKind::gue};
  if (name == "haar_so2_angles") return {EnsembleKind::haar_so2_angles};
  if (name.rfind("bernoulli", 0) == 0) {
    Ensemble e{EnsembleKind::bernoulli, 0.5};
    if (name.size() > 9) {
      if (name[9] != ':') throw std::invalid_argument("ensemble: expected bernoulli:q");
      e.q = std::stod(name.substr(10));
    }
    return e;
  }
  throw std::invalid_argument("unknown ensemble: " + name);
}

using AnyMatrix = std::variant<DenseMatrix, ComplexMatrix>;

// haar_so2_angles is the Kronecker product of n rotations with iid uniform
// angles (the simple scalar butterfly), so N must be a power of 2.
inline AnyMatrix ensemble_sample(const Ensemble& e, std::size_t N, Rng& rng) {
  if (N == 0) throw std::invalid_argument("ensemble_sample: N must be >= 1");
  switch (e.kind) {
    case EnsembleKind::goe:
      return sample_goe(N, rng);
    case EnsembleKind::gue:
      return sample_gue(N, rng);
    case EnsembleKind::bernoulli:
      return sample_bernoulli(N, e.q, rng);
    case EnsembleKind::haar_so2_angles:
      return build_butterfly(sample_spec(Flavor::scalar, Shape::simple, N, rng));
  }
  throw std::logic_error("unreachable");
}

// GEPP permutation factor of a sampled matrix. Singular Bernoulli columns are
// skipped rather than rejected.
inline Permutation ensemble_perm(const Ensemble& e, std::size_t N, Rng& rng) {
  AnyMatrix m = ensemble_sample(e, N, rng);
  if (auto* d = std::get_if<DenseMatrix>(&m)) {
    GeppOptions<double> o;
    o.allow_singular = e.kind == EnsembleKind::bernoulli;
    return gepp(*d, o).perm;
  }
  return gepp(std::get<ComplexMatrix>(m)).perm;
}

}  // namespace bfly
