#pragma once

// Integer-supported distributions.
//
// Pmf<Mass> stores masses for the contiguous support offset, offset+1, ...
// Three instantiations are used:
//   CountPmf     exact big-integer counts plus their total
//   RationalPmf  exact probabilities
//   FloatPmf     double probabilities
// Laws with very sparse support (products, two-point laws) use DiscreteLaw.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace bfly {

template <class Mass>
struct Pmf {
  std::int64_t offset = 0;
  std::vector<Mass> mass;
  Mass total = Mass(1);

  std::size_t size() const { return mass.size(); }
  std::int64_t lo() const { return offset; }
  std::int64_t hi() const { return offset + static_cast<std::int64_t>(mass.size()) - 1; }

  Mass at(std::int64_t k) const {
    if (k < lo() || k > hi()) return Mass(0);
    return mass[static_cast<std::size_t>(k - offset)];
  }
};

using CountPmf = Pmf<mpz_class>;
using RationalPmf = Pmf<mpq_class>;
using FloatPmf = Pmf<double>;

using DiscreteLaw = std::map<std::int64_t, mpq_class>;

enum class Mode { exact, floating };

// a/b in canonical form (GMP arithmetic requires canonical operands).
inline mpq_class make_q(const mpz_class& a, const mpz_class& b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

inline mpz_class sum(const std::vector<mpz_class>& v) {
  mpz_class s = 0;
  for (const auto& x : v) s += x;
  return s;
}

inline double sum(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s;
}

inline FloatPmf to_float(const CountPmf& c) {
  FloatPmf f;
  f.offset = c.offset;
  f.mass.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) f.mass[i] = make_q(c.mass[i], c.total).get_d();
  return f;
}

inline RationalPmf to_rational(const CountPmf& c) {
  RationalPmf r;
  r.offset = c.offset;
  r.mass.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    r.mass[i] = make_q(c.mass[i], c.total);
  }
  return r;
}

// E[K^j] as an exact rational.
inline mpq_class moment_exact(const CountPmf& c, unsigned j) {
  mpz_class acc = 0, kj;
  for (std::size_t i = 0; i < c.size(); ++i) {
    mpz_class k = c.offset + static_cast<long>(i);
    mpz_pow_ui(kj.get_mpz_t(), k.get_mpz_t(), j);
    acc += kj * c.mass[i];
  }
  return make_q(acc, c.total);
}

inline double moment(const FloatPmf& f, unsigned j) {
  long double acc = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const long double k = static_cast<long double>(f.offset + static_cast<std::int64_t>(i));
    acc += std::pow(k, static_cast<long double>(j)) * f.mass[i];
  }
  return static_cast<double>(acc);
}

inline mpq_class moment_exact(const DiscreteLaw& law, unsigned j) {
  mpq_class acc = 0;
  for (const auto& [k, p] : law) {
    mpz_class kj, base = static_cast<long>(k);
    mpz_pow_ui(kj.get_mpz_t(), base.get_mpz_t(), j);
    acc += p * kj;
  }
  return acc;
}

// Cumulative probabilities F(k) for k = lo..hi.
inline std::vector<double> cumulative(const FloatPmf& f) {
  std::vector<double> F(f.size());
  long double acc = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc += f.mass[i];
    F[i] = static_cast<double>(acc);
  }
  return F;
}

namespace detail {
inline std::string mass_text(const mpz_class& x) { return x.get_str(); }
inline std::string mass_text(const mpq_class& x) { return x.get_str(); }
inline std::string mass_text(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
}  // namespace detail

// CSV with header "k,mass"; exact masses as integer or "a/b" strings.
template <class Mass>
void write_csv(std::ostream& os, const Pmf<Mass>& p, bool skip_zero = false) {
  os << "k,mass\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (skip_zero && p.mass[i] == 0) continue;
    os << (p.offset + static_cast<std::int64_t>(i)) << ',' << detail::mass_text(p.mass[i]) << '\n';
  }
}

inline void write_csv(std::ostream& os, const DiscreteLaw& law) {
  os << "k,mass\n";
  for (const auto& [k, p] : law) os << k << ',' << p.get_str() << '\n';
}

}  // namespace bfly
