#pragma once

// Brute-force reference routines. Deliberately naive and independent of the
// library's elimination code so they can serve as cross-checks.

#include <gmpxx.h>

#include <cstddef>
#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "prolim/fgab.hpp"
#include "prolim/linalg.hpp"

namespace oracle {

using prolim::IntMatrix;
using prolim::Integer;

inline Integer cofactor_det(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    Integer term = m[0][j] * cofactor_det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// gcd of all k x k minors (the k-th determinant divisor); 1 for k = 0.
inline Integer determinant_divisor(const IntMatrix& a, std::size_t k) {
  if (k == 0) return 1;
  Integer g = 0;
  for_each_subset(a.rows(), k, [&](const std::vector<std::size_t>& rs) {
    for_each_subset(a.cols(), k, [&](const std::vector<std::size_t>& cs) {
      std::vector<std::vector<Integer>> m(k, std::vector<Integer>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = a(rs[i], cs[j]);
      Integer d = cofactor_det(m);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    });
  });
  return g;
}

// Invariant factors d_i = D_i / D_{i-1}, stopping at the first vanishing divisor.
inline std::vector<Integer> invariant_factors(const IntMatrix& a) {
  std::vector<Integer> out;
  Integer prev = 1;
  const std::size_t n = std::min(a.rows(), a.cols());
  for (std::size_t k = 1; k <= n; ++k) {
    Integer dk = determinant_divisor(a, k);
    if (dk == 0) break;
    out.push_back(dk / prev);
    prev = dk;
  }
  return out;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// Order of a finite abelian group given by invariants, or 0 when infinite.
inline Integer group_order(std::size_t free_rank, const std::vector<Integer>& torsion) {
  if (free_rank != 0) return 0;
  Integer o = 1;
  for (const auto& t : torsion) o *= t;
  return o;
}

// Random group in canonical form: Z/t_1 + ... + Z^r with at most `gens` generators.
inline prolim::FgAbGroup random_canonical_group(std::mt19937_64& rng, std::size_t gens) {
  std::uniform_int_distribution<std::size_t> n(0, gens);
  std::uniform_int_distribution<int> tor(2, 6);
  prolim::Invariants inv;
  std::size_t total = n(rng);
  std::size_t k = total == 0 ? 0 : rng() % (total + 1);
  std::vector<long> ts;
  for (std::size_t i = 0; i < k; ++i) ts.push_back(tor(rng));
  std::sort(ts.begin(), ts.end());
  // force the divisibility chain by taking running lcms
  long acc = 1;
  for (long t : ts) {
    acc = std::lcm(acc, t);
    inv.torsion.emplace_back(acc);
  }
  inv.free_rank = total - k;
  return prolim::FgAbGroup::from_invariants(inv);
}

// Random homomorphism between canonical groups (torsion generators first).
inline prolim::GroupHom random_hom(std::mt19937_64& rng, const prolim::FgAbGroup& s, const prolim::FgAbGroup& t,
                                   long lo = -3, long hi = 3) {
  std::uniform_int_distribution<long> d(lo, hi);
  const auto& ts = s.invariants().torsion;
  const auto& tt = t.invariants().torsion;
  IntMatrix m(t.generators(), s.generators());
  for (std::size_t i = 0; i < t.generators(); ++i)
    for (std::size_t j = 0; j < s.generators(); ++j) {
      bool ti = i < tt.size(), sj = j < ts.size();
      if (!ti && sj) continue;
      Integer step = 1;
      if (ti && sj) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), tt[i].get_mpz_t(), ts[j].get_mpz_t());
        step = tt[i] / g;
      }
      m(i, j) = step * d(rng);
    }
  return prolim::GroupHom(s, t, m);
}

// Rank over Z/p by plain Gaussian elimination on longs.
inline std::size_t rank_mod_p(const IntMatrix& a, long p) {
  std::vector<std::vector<long>> m(a.rows(), std::vector<long>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Integer r = a(i, j) % p;
      if (r < 0) r += p;
      m[i][j] = r.get_si();
    }
  auto inv = [p](long x) {
    long r = 1, e = p - 2;
    for (long b = x; e; e >>= 1, b = b * b % p)
      if (e & 1) r = r * b % p;
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < a.rows() && m[piv][c] == 0) ++piv;
    if (piv == a.rows()) continue;
    std::swap(m[piv], m[rank]);
    long iv = inv(m[rank][c]);
    for (auto& x : m[rank]) x = x * iv % p;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == rank || m[i][c] == 0) continue;
      long f = m[i][c];
      for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = ((m[i][j] - f * m[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// Rank over Q with exact rationals.
inline std::size_t rank_rational(const IntMatrix& a) {
  std::vector<std::vector<mpq_class>> m(a.rows(), std::vector<mpq_class>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = mpq_class(a(i, j));
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < a.rows() && m[piv][c] == 0) ++piv;
    if (piv == a.rows()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      if (m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[rank][c];
      for (std::size_t j = c; j < a.cols(); ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace oracle
