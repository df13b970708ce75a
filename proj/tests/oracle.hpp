#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's linear algebra or series code.

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "koszulkit/ncpoly.hpp"

namespace oracle {

using Row = std::vector<std::int64_t>;

inline std::int64_t mod(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, b = mod(a, p), e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

/// Rank by plain Gaussian elimination on a copy.
inline std::size_t rank(std::vector<Row> m, std::int64_t p) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && mod(m[piv][c], p) == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const std::int64_t iv = inv_mod(m[r][c], p);
    for (auto& x : m[r]) x = mod(x * iv, p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r) continue;
      const std::int64_t f = mod(m[i][c], p);
      if (!f) continue;
      for (std::size_t k = 0; k < cols; ++k) m[i][k] = mod(m[i][k] - f * m[r][k], p);
    }
    ++r;
  }
  return r;
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

/// dim A_n of T(V)/(R) from the span of all e_u (x) r (x) e_v.
inline std::size_t component_dim(const std::vector<Row>& relations, std::size_t d, std::size_t n, std::int64_t p) {
  const std::size_t total = ipow(d, n);
  if (n < 2 || relations.empty()) return total;
  std::vector<Row> span;
  for (std::size_t a = 0; a + 2 <= n; ++a) {
    const std::size_t b = n - 2 - a;
    for (std::size_t u = 0; u < ipow(d, a); ++u)
      for (std::size_t v = 0; v < ipow(d, b); ++v)
        for (const auto& r : relations) {
          Row row(total, 0);
          for (std::size_t c = 0; c < d * d; ++c)
            if (r[c]) row[(u * d * d + c) * ipow(d, b) + v] = mod(r[c], p);
          span.push_back(std::move(row));
        }
  }
  return total - rank(std::move(span), p);
}

/// Letters of a word as (generator, +1/-1), for exponents of modest size.
inline void flatten(const koszulkit::Word& w, std::vector<std::pair<std::size_t, int>>& out) {
  using K = koszulkit::Word::Kind;
  switch (w.kind()) {
    case K::Gen:
      out.push_back({w.index(), 1});
      return;
    case K::Inverse: {
      std::vector<std::pair<std::size_t, int>> inner;
      flatten(w.child(), inner);
      for (auto it = inner.rbegin(); it != inner.rend(); ++it) out.push_back({it->first, -it->second});
      return;
    }
    case K::Power: {
      const long n = w.exponent().convert_to<long>();
      std::vector<std::pair<std::size_t, int>> base;
      flatten(n >= 0 ? w.child() : koszulkit::Word::inverse(w.child()), base);
      for (long k = 0; k < (n >= 0 ? n : -n); ++k) out.insert(out.end(), base.begin(), base.end());
      return;
    }
    case K::Product:
      for (const auto& f : w.factors()) flatten(f, out);
      return;
    case K::Commutator: {
      const auto& u = w.factors()[0];
      const auto& v = w.factors()[1];
      flatten(u, out);
      flatten(v, out);
      flatten(koszulkit::Word::inverse(u), out);
      flatten(koszulkit::Word::inverse(v), out);
      return;
    }
  }
}

using Series = std::map<std::vector<int>, std::int64_t>;

/// Product of (1 + X_i) and (1 - X_i + X_i^2 - ...) letter by letter.
inline Series magnus(const koszulkit::Word& w, std::size_t cap, std::int64_t p) {
  std::vector<std::pair<std::size_t, int>> letters;
  flatten(w, letters);
  Series acc{{{}, 1}};
  for (auto [g, e] : letters) {
    Series factor{{{}, 1}};
    if (e > 0) {
      factor[{static_cast<int>(g)}] = 1;
    } else {
      for (std::size_t k = 1; k <= cap; ++k) factor[std::vector<int>(k, static_cast<int>(g))] = (k % 2) ? -1 : 1;
    }
    Series next;
    for (const auto& [m1, c1] : acc)
      for (const auto& [m2, c2] : factor) {
        if (m1.size() + m2.size() > cap) continue;
        auto m = m1;
        m.insert(m.end(), m2.begin(), m2.end());
        next[m] = mod(next[m] + c1 * c2, p);
      }
    acc.clear();
    for (auto& [m, c] : next)
      if (c) acc[m] = c;
  }
  return acc;
}

/// C(n, k) mod p via Pascal's rule for n >= 0; negative n by the sign rule.
inline std::int64_t binomial(std::int64_t n, std::size_t k, std::int64_t p) {
  if (n < 0) {
    const std::int64_t b = binomial(static_cast<std::int64_t>(k) - n - 1, k, p);
    return (k % 2) ? mod(-b, p) : b;
  }
  if (static_cast<std::int64_t>(k) > n) return 0;
  std::vector<std::int64_t> row{1};
  for (std::int64_t i = 1; i <= n; ++i) {
    std::vector<std::int64_t> nr(i + 1, 1);
    for (std::int64_t j = 1; j < i; ++j) nr[j] = (row[j - 1] + row[j]) % p;
    row = std::move(nr);
  }
  return row[k];
}

inline int mobius(std::size_t n) {
  int m = 1;
  for (std::size_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    n /= q;
    if (n % q == 0) return 0;
    m = -m;
  }
  return n > 1 ? -m : m;
}

/// Number of Lyndon words of length m over d letters.
inline std::int64_t witt(std::size_t d, std::size_t m) {
  std::int64_t s = 0;
  for (std::size_t k = 1; k <= m; ++k)
    if (m % k == 0) s += mobius(k) * static_cast<std::int64_t>(ipow(d, m / k));
  return s / static_cast<std::int64_t>(m);
}

/// Restricted Lie dimensions of the free group: l_n = sum over n = m p^k of witt(m).
inline std::int64_t restricted_free_dim(std::size_t d, std::size_t n, std::size_t p) {
  std::int64_t s = 0;
  for (std::size_t pk = 1; pk <= n; pk *= p)
    if (n % pk == 0) s += witt(d, n / pk);
  return s;
}

/// Power-series coefficients of 1 / (sum_k c_k t^k), c_0 = 1.
inline std::vector<std::int64_t> reciprocal(const std::vector<std::int64_t>& c, std::size_t n) {
  std::vector<std::int64_t> out(n + 1, 0);
  out[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    std::int64_t s = 0;
    for (std::size_t i = 1; i <= k && i < c.size(); ++i) s += c[i] * out[k - i];
    out[k] = -s;
  }
  return out;
}

inline std::int64_t choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::vector<Row> random_rows(std::mt19937& rng, std::size_t count, std::size_t width, std::int64_t p) {
  std::vector<Row> rows(count, Row(width));
  for (auto& r : rows)
    for (auto& x : r) x = static_cast<std::int64_t>(rng() % p);
  return rows;
}

}  // namespace oracle
