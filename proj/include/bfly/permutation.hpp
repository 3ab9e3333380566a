#pragma once

// Permutations in one-line form. Stored 0-based: map[k] = sigma(k).
// Text form is 1-based and comma separated, e.g. "4,8,5,1,3,6,7,2".

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bfly/rng.hpp"

namespace bfly {

class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<std::size_t> zero_based) : map_(std::move(zero_based)) {
    std::vector<char> seen(map_.size(), 0);
    for (auto v : map_) {
      if (v >= map_.size() || seen[v]) throw std::invalid_argument("not a permutation");
      seen[v] = 1;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), std::size_t{0});
    return Permutation(std::move(m), trusted{});
  }

  static Permutation from_one_based(const std::vector<std::size_t>& values) {
    std::vector<std::size_t> m(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (values[k] == 0) throw std::invalid_argument("one-based entry 0");
      m[k] = values[k] - 1;
    }
    return Permutation(std::move(m));
  }

  static Permutation parse(std::string_view text) {
    std::vector<std::size_t> values;
    std::string tok;
    std::istringstream in{std::string(text)};
    while (std::getline(in, tok, ',')) {
      auto b = tok.find_first_not_of(" \t\r\n");
      if (b == std::string::npos) throw std::invalid_argument("empty entry in permutation text");
      auto e = tok.find_last_not_of(" \t\r\n");
      tok = tok.substr(b, e - b + 1);
      std::size_t used = 0;
      unsigned long long v = std::stoull(tok, &used);
      if (used != tok.size()) throw std::invalid_argument("bad permutation entry: " + tok);
      values.push_back(static_cast<std::size_t>(v));
    }
    return from_one_based(values);
  }

  // Skips validation; for constructions that are bijective by design.
  struct trusted {};
  Permutation(std::vector<std::size_t> zero_based, trusted) : map_(std::move(zero_based)) {}

  std::size_t size() const { return map_.size(); }
  std::size_t operator[](std::size_t k) const { return map_[k]; }
  const std::vector<std::size_t>& map() const { return map_; }

  bool is_identity() const {
    for (std::size_t k = 0; k < map_.size(); ++k)
      if (map_[k] != k) return false;
    return true;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t k = 0; k < map_.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(map_[k] + 1);
    }
    return out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> map_;
};

// result(k) = p(q(k))
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw std::invalid_argument("compose: length mismatch");
  std::vector<std::size_t> r(p.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = p[q[k]];
  return Permutation(std::move(r), Permutation::trusted{});
}

inline Permutation inverse(const Permutation& p) {
  std::vector<std::size_t> r(p.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[p[k]] = k;
  return Permutation(std::move(r), Permutation::trusted{});
}

// Matches the Kronecker product of permutation matrices.
inline Permutation kron(const Permutation& p, const Permutation& q) {
  const std::size_t a = p.size(), b = q.size();
  std::vector<std::size_t> r(a * b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) r[i * b + j] = p[i] * b + q[j];
  return Permutation(std::move(r), Permutation::trusted{});
}

inline Permutation dsum(const Permutation& p, const Permutation& q) {
  const std::size_t a = p.size();
  std::vector<std::size_t> r(a + q.size());
  for (std::size_t k = 0; k < a; ++k) r[k] = p[k];
  for (std::size_t k = 0; k < q.size(); ++k) r[a + k] = a + q[k];
  return Permutation(std::move(r), Permutation::trusted{});
}

// Transposition of positions i and j (0-based) in S_n.
inline Permutation transposition(std::size_t n, std::size_t i, std::size_t j) {
  auto m = Permutation::identity(n).map();
  std::swap(m[i], m[j]);
  return Permutation(std::move(m), Permutation::trusted{});
}

struct CycleStats {
  std::size_t total_cycles = 0;
  std::map<std::size_t, std::size_t> by_length;
  std::size_t fixed_points = 0;
};

inline CycleStats cycle_stats(const Permutation& p) {
  CycleStats s;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (seen[k]) continue;
    std::size_t len = 0;
    for (std::size_t j = k; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    ++s.total_cycles;
    ++s.by_length[len];
  }
  auto it = s.by_length.find(1);
  s.fixed_points = it == s.by_length.end() ? 0 : it->second;
  return s;
}

// Cycle count alone, without the length histogram.
inline std::size_t cycle_count(const Permutation& p) {
  std::size_t c = 0;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (seen[k]) continue;
    ++c;
    for (std::size_t j = k; !seen[j]; j = p[j]) seen[j] = 1;
  }
  return c;
}

inline std::size_t pivot_movements(const Permutation& p) { return p.size() - cycle_count(p); }

// Writes sigma = (M i_M) ... (2 i_2)(1 i_1) with i_k >= k and returns the
// 0-based i_k. This is the row GEPP swaps into position k when run on
// the transpose of the permutation matrix of sigma.
inline std::vector<std::size_t> transposition_chain(const Permutation& p) {
  const std::size_t n = p.size();
  // pos[r] = current position of original row r; at_pos[k] = row at k.
  std::vector<std::size_t> at_pos(n), pos(n), chain(n);
  for (std::size_t k = 0; k < n; ++k) at_pos[k] = pos[k] = k;
  const Permutation inv = inverse(p);
  for (std::size_t k = 0; k < n; ++k) {
    // Bring the row destined for position k (sigma(row) = k) into place.
    const std::size_t row = inv[k];
    const std::size_t j = pos[row];
    chain[k] = j;
    if (j != k) {
      const std::size_t other = at_pos[k];
      std::swap(at_pos[k], at_pos[j]);
      pos[row] = k;
      pos[other] = j;
    }
  }
  return chain;
}

// Product (M i_M) ... (2 i_2)(1 i_1), rightmost factor applied first.
inline Permutation from_transposition_chain(const std::vector<std::size_t>& chain) {
  const std::size_t n = chain.size();
  std::vector<std::size_t> at_pos(n), sigma(n);
  std::iota(at_pos.begin(), at_pos.end(), std::size_t{0});
  for (std::size_t k = 0; k < n; ++k) {
    if (chain[k] < k || chain[k] >= n) throw std::invalid_argument("chain entries need k <= i_k < n");
    std::swap(at_pos[k], at_pos[chain[k]]);
  }
  for (std::size_t k = 0; k < n; ++k) sigma[at_pos[k]] = k;
  return Permutation(std::move(sigma), Permutation::trusted{});
}

// Fisher-Yates shuffle: sigma = (M i_M) ... (1 i_1) with i_k uniform on [k, M].
inline Permutation fisher_yates(std::size_t M, Rng& rng) {
  if (M == 0) throw std::invalid_argument("fisher_yates: M must be >= 1");
  std::vector<std::size_t> chain(M);
  for (std::size_t k = 0; k < M; ++k) chain[k] = k + rng.below(M - k);
  return from_transposition_chain(chain);
}

}  // namespace bfly
