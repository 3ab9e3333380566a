#pragma once

// Simple and nonsimple m-nary butterfly permutations.
//
// Simple: digits (j_1, ..., j_n), sigma = tau^{j_1} (x) ... (x) tau^{j_n},
// acting on base-m digits of the 0-based index by b_l = a_l + j_l (mod m).
//
// Nonsimple: a full m-ary tree of depth n with an exponent e at every
// internal node, stored breadth first (children of node i are m*i+1+c).
// Node meaning: sigma = (sigma_1 (+) ... (+) sigma_m)(tau^e (x) 1), so input
// block i lands in output block (i+e) mod m and is then permuted by the child
// attached to that output block.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "bfly/permutation.hpp"
#include "bfly/rng.hpp"

namespace bfly {

// m^n, throwing on overflow of std::size_t.
inline std::size_t checked_pow(std::size_t m, unsigned n) {
  std::size_t r = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (r > std::numeric_limits<std::size_t>::max() / m) throw std::overflow_error("m^n overflows");
    r *= m;
  }
  return r;
}

// (m^n - 1)/(m - 1): number of internal nodes of the exponent tree.
inline std::size_t tree_nodes(unsigned m, unsigned n) {
  std::size_t total = 0, level = 1;
  for (unsigned i = 0; i < n; ++i) {
    total += level;
    level *= m;
  }
  return total;
}

struct SimpleButterfly {
  unsigned m = 2;
  std::vector<unsigned> digits;  // leading factor first

  unsigned n() const { return static_cast<unsigned>(digits.size()); }
  std::size_t size() const { return checked_pow(m, n()); }
  friend bool operator==(const SimpleButterfly&, const SimpleButterfly&) = default;
};

struct NonsimpleButterfly {
  unsigned m = 2;
  unsigned n = 0;
  std::vector<unsigned> exponents;  // breadth-first

  std::size_t size() const { return checked_pow(m, n); }
  friend bool operator==(const NonsimpleButterfly&, const NonsimpleButterfly&) = default;
};

inline void require_base(unsigned m) {
  if (m < 2) throw std::invalid_argument("butterfly base m must be >= 2");
}

inline SimpleButterfly sample_simple(unsigned m, unsigned n, Rng& rng) {
  require_base(m);
  SimpleButterfly s{m, std::vector<unsigned>(n)};
  for (auto& d : s.digits) d = static_cast<unsigned>(rng.below(m));
  return s;
}

inline NonsimpleButterfly sample_nonsimple(unsigned m, unsigned n, Rng& rng) {
  require_base(m);
  NonsimpleButterfly t{m, n, std::vector<unsigned>(tree_nodes(m, n))};
  for (auto& e : t.exponents) e = static_cast<unsigned>(rng.below(m));
  return t;
}

// Every node at level l carries j_l.
inline NonsimpleButterfly to_nonsimple(const SimpleButterfly& s) {
  NonsimpleButterfly t{s.m, s.n(), {}};
  t.exponents.reserve(tree_nodes(s.m, s.n()));
  std::size_t width = 1;
  for (unsigned l = 0; l < s.n(); ++l) {
    t.exponents.insert(t.exponents.end(), width, s.digits[l]);
    width *= s.m;
  }
  return t;
}

// 0-based index in, 0-based index out.
inline std::size_t apply(const SimpleButterfly& s, std::size_t k) {
  const std::size_t N = s.size();
  if (k >= N) throw std::out_of_range("apply: index out of range");
  std::size_t out = 0, scale = N;
  for (unsigned l = 0; l < s.n(); ++l) {
    scale /= s.m;
    const std::size_t a = (k / scale) % s.m;
    out += ((a + s.digits[l]) % s.m) * scale;
  }
  return out;
}

inline std::size_t apply(const NonsimpleButterfly& t, std::size_t k) {
  const std::size_t N = t.size();
  if (k >= N) throw std::out_of_range("apply: index out of range");
  if (t.exponents.size() != tree_nodes(t.m, t.n)) throw std::invalid_argument("apply: bad exponent count");
  std::size_t out = 0, node = 0, block = N;
  for (unsigned l = 0; l < t.n; ++l) {
    block /= t.m;
    const std::size_t i = k / block;
    k %= block;
    const std::size_t b = (i + t.exponents[node]) % t.m;
    out += b * block;
    node = node * t.m + 1 + b;
  }
  return out;
}

inline Permutation materialize(const SimpleButterfly& s) {
  require_base(s.m);
  // Build from the least significant digit outwards.
  std::vector<std::size_t> cur{0};
  for (unsigned l = s.n(); l-- > 0;) {
    const std::size_t sz = cur.size();
    std::vector<std::size_t> next(sz * s.m);
    for (std::size_t a = 0; a < s.m; ++a) {
      const std::size_t b = (a + s.digits[l]) % s.m;
      for (std::size_t x = 0; x < sz; ++x) next[a * sz + x] = b * sz + cur[x];
    }
    cur = std::move(next);
  }
  return Permutation(std::move(cur), Permutation::trusted{});
}

namespace detail {
inline void fill_nonsimple(const NonsimpleButterfly& t, std::size_t node, std::size_t size, std::size_t in_off,
                           std::size_t out_off, std::vector<std::size_t>& out) {
  if (size == 1) {
    out[in_off] = out_off;
    return;
  }
  const std::size_t sub = size / t.m;
  const unsigned e = t.exponents[node];
  for (std::size_t i = 0; i < t.m; ++i) {
    const std::size_t b = (i + e) % t.m;
    fill_nonsimple(t, node * t.m + 1 + b, sub, in_off + i * sub, out_off + b * sub, out);
  }
}
}  // namespace detail

inline Permutation materialize(const NonsimpleButterfly& t) {
  require_base(t.m);
  if (t.exponents.size() != tree_nodes(t.m, t.n)) throw std::invalid_argument("materialize: bad exponent count");
  std::vector<std::size_t> out(t.size());
  detail::fill_nonsimple(t, 0, out.size(), 0, 0, out);
  return Permutation(std::move(out), Permutation::trusted{});
}

inline mpz_class group_order(unsigned m, unsigned n, bool simple) {
  require_base(m);
  mpz_class r;
  mpz_class base = m;
  if (simple) {
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), n);
  } else {
    mpz_class m_n;
    mpz_pow_ui(m_n.get_mpz_t(), base.get_mpz_t(), n);
    mpz_class e = (m_n - 1) / (m - 1);
    if (!e.fits_ulong_p()) throw std::overflow_error("group order exponent too large");
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e.get_ui());
  }
  return r;
}

inline constexpr std::size_t default_enumeration_cap = 1'000'000;

namespace detail {
// Mixed-radix odometer over `len` digits in base m; calls fn for each vector.
template <class Fn>
void odometer(unsigned m, std::size_t len, std::size_t cap, Fn&& fn) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < len; ++i) {
    if (count > cap / m) throw std::length_error("group order exceeds enumeration cap");
    count *= m;
  }
  std::vector<unsigned> d(len, 0);
  for (std::size_t c = 0; c < count; ++c) {
    fn(static_cast<const std::vector<unsigned>&>(d));
    for (std::size_t i = len; i-- > 0;) {
      if (++d[i] < m) break;
      d[i] = 0;
    }
  }
}
}  // namespace detail

template <class Fn>
void enumerate_simple(unsigned m, unsigned n, Fn&& fn, std::size_t cap = default_enumeration_cap) {
  require_base(m);
  SimpleButterfly s{m, {}};
  detail::odometer(m, n, cap, [&](const std::vector<unsigned>& d) {
    s.digits = d;
    fn(static_cast<const SimpleButterfly&>(s));
  });
}

template <class Fn>
void enumerate_nonsimple(unsigned m, unsigned n, Fn&& fn, std::size_t cap = default_enumeration_cap) {
  require_base(m);
  NonsimpleButterfly t{m, n, {}};
  detail::odometer(m, tree_nodes(m, n), cap, [&](const std::vector<unsigned>& d) {
    t.exponents = d;
    fn(static_cast<const NonsimpleButterfly&>(t));
  });
}

// Streams the materialized permutations of B_{s,n}^{(m)} or B_n^{(m)}.
template <class Fn>
void enumerate_group(unsigned m, unsigned n, bool simple, Fn&& fn, std::size_t cap = default_enumeration_cap) {
  if (simple)
    enumerate_simple(m, n, [&](const SimpleButterfly& s) { fn(materialize(s)); }, cap);
  else
    enumerate_nonsimple(m, n, [&](const NonsimpleButterfly& t) { fn(materialize(t)); }, cap);
}

struct Membership {
  std::optional<NonsimpleButterfly> nonsimple;  // set iff p is in B_n^{(m)}
  std::optional<SimpleButterfly> simple;        // set iff p is in B_{s,n}^{(m)}

  bool member() const { return nonsimple.has_value(); }
};

namespace detail {
inline bool recover_tree(const Permutation& p, unsigned m, std::size_t node, std::size_t size, std::size_t in_off,
                         std::size_t out_off, std::vector<unsigned>& exps) {
  if (size == 1) return p[in_off] == out_off;
  const std::size_t sub = size / m;
  std::optional<unsigned> e;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t v = p[in_off + i * sub];
    if (v < out_off || v >= out_off + size) return false;
    const std::size_t b = (v - out_off) / sub;
    const auto ei = static_cast<unsigned>((b + m - i) % m);
    if (e && *e != ei) return false;
    e = ei;
  }
  exps[node] = *e;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = (i + *e) % m;
    if (!recover_tree(p, m, node * m + 1 + b, sub, in_off + i * sub, out_off + b * sub, exps)) return false;
  }
  return true;
}
}  // namespace detail

inline Membership check_membership(const Permutation& p, unsigned m) {
  require_base(m);
  unsigned n = 0;
  std::size_t N = 1;
  while (N < p.size()) {
    N *= m;
    ++n;
  }
  if (N != p.size()) throw std::invalid_argument("check_membership: length is not a power of m");
  Membership res;
  std::vector<unsigned> exps(tree_nodes(m, n), 0);
  if (!detail::recover_tree(p, m, 0, N, 0, 0, exps)) return res;
  NonsimpleButterfly t{m, n, std::move(exps)};
  SimpleButterfly s{m, std::vector<unsigned>(n)};
  bool simple = true;
  std::size_t start = 0, width = 1;
  for (unsigned l = 0; l < n && simple; ++l) {
    s.digits[l] = t.exponents[start];
    for (std::size_t i = start; i < start + width; ++i)
      if (t.exponents[i] != s.digits[l]) {
        simple = false;
        break;
      }
    start += width;
    width *= m;
  }
  res.nonsimple = std::move(t);
  if (simple) res.simple = std::move(s);
  return res;
}

}  // namespace bfly
