#pragma once

// Butterfly matrices of order N = 2^n and the closed-form GEPP factorization
// of scalar butterflies.
//
// Scalar:   B = (R_theta (x) I_{N/2})(A_1 (+) A_2)
// Diagonal: B = D(theta_1..theta_{N/2})(A_1 (+) A_2), where D has c_j on the
//           diagonal, s_j at (j, N/2+j) and -s_j at (N/2+j, j).
// Simple shapes use A_1 = A_2 at every level.
//
// Angle layouts:
//   scalar simple      n angles, outermost factor first
//   scalar nonsimple   N-1 angles, one per tree node, breadth first
//   diagonal simple    N-1 angles: N/2 for the top level, then N/4, ...
//   diagonal nonsimple nN/2 angles: each node (breadth first) carries
//                      (its order)/2 angles

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "bfly/gepp.hpp"
#include "bfly/matrix.hpp"
#include "bfly/permutation.hpp"
#include "bfly/rng.hpp"

namespace bfly {

enum class Flavor { scalar, diagonal };
enum class Shape { simple, nonsimple };

inline const char* to_string(Flavor f) { return f == Flavor::scalar ? "scalar" : "diagonal"; }
inline const char* to_string(Shape s) { return s == Shape::simple ? "simple" : "nonsimple"; }

inline std::size_t angle_count(Flavor flavor, Shape shape, unsigned n) {
  const std::size_t N = std::size_t{1} << n;
  if (flavor == Flavor::scalar) return shape == Shape::simple ? n : N - 1;
  return shape == Shape::simple ? N - 1 : n * N / 2;
}

struct ButterflySpec {
  unsigned n = 0;
  Flavor flavor = Flavor::scalar;
  Shape shape = Shape::simple;
  std::vector<double> angles;

  std::size_t order() const { return std::size_t{1} << n; }

  void validate() const {
    if (angles.size() != angle_count(flavor, shape, n))
      throw std::invalid_argument("butterfly spec: expected " + std::to_string(angle_count(flavor, shape, n)) +
                                  " angles, got " + std::to_string(angles.size()));
  }
};

inline DenseMatrix rotation(double theta) {
  DenseMatrix r(2, 2);
  const double c = std::cos(theta), s = std::sin(theta);
  r(0, 0) = c;
  r(0, 1) = s;
  r(1, 0) = -s;
  r(1, 1) = c;
  return r;
}

// q(a*N/2 + b) = 2b + a for a in {0,1}; Q (A (x) B) Q^T = B (x) A with A 2x2
// and B of order N/2.
inline Permutation perfect_shuffle(std::size_t N) {
  if (N < 2 || (N & (N - 1)) != 0) throw std::invalid_argument("perfect_shuffle: N must be a power of 2, N >= 2");
  const std::size_t h = N / 2;
  std::vector<std::size_t> q(N);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < h; ++b) q[a * h + b] = 2 * b + a;
  return Permutation(std::move(q), Permutation::trusted{});
}

namespace detail {

// left * (a1 (+) a2) where left is the scalar or diagonal rotation factor
// with angles th[0..h) (scalar: th has one entry).
inline DenseMatrix apply_butterfly_factor(const double* th, bool diagonal, const DenseMatrix& a1,
                                          const DenseMatrix& a2) {
  const std::size_t h = a1.rows();
  DenseMatrix b(2 * h, 2 * h);
  for (std::size_t j = 0; j < h; ++j) {
    const double t = diagonal ? th[j] : th[0];
    const double c = std::cos(t), s = std::sin(t);
    for (std::size_t k = 0; k < h; ++k) {
      b(j, k) = c * a1(j, k);
      b(j, h + k) = s * a2(j, k);
      b(h + j, k) = -s * a1(j, k);
      b(h + j, h + k) = c * a2(j, k);
    }
  }
  return b;
}

inline DenseMatrix build_node(const ButterflySpec& spec, unsigned level, std::size_t pos) {
  const unsigned n = spec.n;
  if (level == n) return DenseMatrix::identity(1);
  const std::size_t half = std::size_t{1} << (n - 1 - level);
  const bool diag = spec.flavor == Flavor::diagonal;
  const double* th = nullptr;
  const std::size_t node = (std::size_t{1} << level) - 1 + pos;
  if (!diag)
    th = &spec.angles[spec.shape == Shape::simple ? level : node];
  else if (spec.shape == Shape::simple)
    th = &spec.angles[spec.order() - 2 * half];  // sum of N/2, N/4, ... above this level
  else
    th = &spec.angles[level * (spec.order() / 2) + pos * half];
  if (spec.shape == Shape::simple) {
    DenseMatrix a = build_node(spec, level + 1, 0);
    return apply_butterfly_factor(th, diag, a, a);
  }
  return apply_butterfly_factor(th, diag, build_node(spec, level + 1, 2 * pos),
                                build_node(spec, level + 1, 2 * pos + 1));
}

}  // namespace detail

inline DenseMatrix build_butterfly(const ButterflySpec& spec) {
  spec.validate();
  return detail::build_node(spec, 0, 0);
}

inline ButterflySpec sample_spec(Flavor flavor, Shape shape, std::size_t N, Rng& rng) {
  if (N == 0 || (N & (N - 1)) != 0) throw std::invalid_argument("sample_spec: N must be a power of 2");
  unsigned n = 0;
  while ((std::size_t{1} << n) < N) ++n;
  ButterflySpec s{n, flavor, shape, std::vector<double>(angle_count(flavor, shape, n))};
  for (auto& a : s.angles) a = 2.0 * std::numbers::pi * rng.uniform01();
  return s;
}

struct tie_angle_error : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

struct Predicted {
  Permutation perm;
  DenseMatrix lower, upper, b;
};

inline Predicted predict_node(const ButterflySpec& spec, unsigned level, std::size_t pos) {
  if (level == spec.n) return {Permutation::identity(1), DenseMatrix::identity(1), DenseMatrix::identity(1),
                               DenseMatrix::identity(1)};
  const std::size_t node = (std::size_t{1} << level) - 1 + pos;
  const double theta = spec.angles[spec.shape == Shape::simple ? level : node];
  const double c = std::cos(theta), s = std::sin(theta);
  if (std::abs(std::abs(s) - std::abs(c)) <= pivot_tie_tolerance * std::max(std::abs(s), std::abs(c)))
    throw tie_angle_error("predicted_factorization: |tan theta| = 1 at node " + std::to_string(node));
  const bool e = std::abs(s) > std::abs(c);
  // theta-hat is theta, or pi/2 - theta when the 2x2 block pivots.
  const double ch = e ? s : c, sh = e ? c : s;
  const double tanh_ = sh / ch;

  Predicted r1 = predict_node(spec, level + 1, 2 * pos);
  Predicted r2 = spec.shape == Shape::simple ? r1 : predict_node(spec, level + 1, 2 * pos + 1);
  const std::size_t h = r1.b.rows();

  Predicted out;
  const Permutation swap_blocks = e ? kron(Permutation::from_one_based({2, 1}), Permutation::identity(h))
                                    : Permutation::identity(2 * h);
  out.perm = compose(dsum(r1.perm, r2.perm), swap_blocks);

  const DenseMatrix p1 = permutation_matrix(r1.perm), p2 = permutation_matrix(r2.perm);
  out.lower = DenseMatrix(2 * h, 2 * h);
  set_block(out.lower, 0, 0, r1.lower);
  set_block(out.lower, h, h, r2.lower);
  set_block(out.lower, h, 0, scaled(p2 * transpose(p1) * r1.lower, -tanh_));

  out.upper = DenseMatrix(2 * h, 2 * h);
  set_block(out.upper, 0, 0, scaled(r1.upper, e ? -ch : ch));
  set_block(out.upper, 0, h, scaled(r1.upper * transpose(r1.b) * r2.b, sh));
  set_block(out.upper, h, h, scaled(r2.upper, 1.0 / ch));

  out.b = apply_butterfly_factor(&theta, false, r1.b, r2.b);
  return out;
}

}  // namespace detail

// Closed-form P, L, U for a scalar butterfly, computed block-recursively
// without elimination. Throws tie_angle_error when some |tan theta| = 1.
inline GeppResult predicted_factorization(const ButterflySpec& spec) {
  spec.validate();
  if (spec.flavor != Flavor::scalar) throw std::invalid_argument("predicted_factorization: scalar flavor only");
  detail::Predicted p = detail::predict_node(spec, 0, 0);
  GeppResult r;
  r.pivot_rows = transposition_chain(p.perm);
  r.pivot_count = pivot_movements(p.perm);
  r.perm = std::move(p.perm);
  r.lower = std::move(p.lower);
  r.upper = std::move(p.upper);
  r.tie_encountered = false;
  return r;
}

}  // namespace bfly
