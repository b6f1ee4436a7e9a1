// Independent reference computations for the tests. Everything here uses
// dense matrices and naive elimination, sharing no code with the library
// beyond the rational type and exponent enumeration.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "torusfix/poly.hpp"
#include "torusfix/tgraph.hpp"

namespace oracle {

using Q = mpq_class;
using Dense = std::vector<std::vector<Q>>;

// Rank by plain Gauss elimination on a copy.
inline std::size_t dense_rank(Dense m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Q f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// True iff A x = b has a solution.
inline bool dense_solvable(const Dense& a, const std::vector<Q>& b) {
  Dense aug = a;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  return dense_rank(a) == dense_rank(aug);
}

// Exponent enumeration written independently of monomial_basis.
inline void exponents(std::size_t n, unsigned deg, std::vector<unsigned>& cur,
                      std::vector<std::vector<unsigned>>& out) {
  if (cur.size() + 1 == n) {
    cur.push_back(deg);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  if (n == 0) {
    if (deg == 0) out.push_back({});
    return;
  }
  for (unsigned k = 0; k <= deg; ++k) {
    cur.push_back(k);
    exponents(n, deg - k, cur, out);
    cur.pop_back();
  }
}

inline std::map<std::vector<unsigned>, std::size_t> monomial_positions(std::size_t n, unsigned deg) {
  std::vector<std::vector<unsigned>> all;
  std::vector<unsigned> cur;
  exponents(n, deg, cur, all);
  std::map<std::vector<unsigned>, std::size_t> pos;
  for (const auto& e : all) pos.emplace(e, pos.size());
  return pos;
}

// Columns of multiplication by the linear form alpha, degree deg-1 -> deg.
inline Dense multiplication_matrix(const std::vector<Q>& alpha, unsigned deg) {
  const std::size_t n = alpha.size();
  const auto target = monomial_positions(n, deg);
  Dense m(target.size());
  if (deg == 0) return m;
  const auto source = monomial_positions(n, deg - 1);
  for (auto& row : m) row.assign(source.size(), 0);
  for (const auto& [e, col] : source) {
    for (std::size_t i = 0; i < n; ++i) {
      if (alpha[i] == 0) continue;
      auto f = e;
      ++f[i];
      m[target.at(f)][col] += alpha[i];
    }
  }
  return m;
}

// Division oracle: p = alpha * q for some q of degree deg(p) - 1.
inline bool divisible(const torusfix::HomogeneousPoly& p, const std::vector<Q>& alpha) {
  if (p.is_zero()) return true;
  const auto pos = monomial_positions(p.n(), p.deg());
  std::vector<Q> b(pos.size(), 0);
  for (const auto& [e, c] : p.terms()) b[pos.at(e)] = c;
  return dense_solvable(multiplication_matrix(alpha, p.deg()), b);
}

// Random rational point on {alpha = 0}.
inline std::vector<Q> point_on_hyperplane(const std::vector<Q>& alpha, std::mt19937_64& rng) {
  std::vector<Q> v(alpha.size());
  for (auto& x : v) {
    x = Q(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 7) + 1);
    x.canonicalize();
  }
  std::size_t k = 0;
  while (alpha[k] == 0) ++k;
  Q dot = 0;
  for (std::size_t i = 0; i < v.size(); ++i) dot += alpha[i] * v[i];
  v[k] -= dot / alpha[k];
  return v;
}

inline bool vanishes_on_hyperplane(const torusfix::HomogeneousPoly& p, const std::vector<Q>& alpha,
                                   std::uint64_t seed, int points = 100) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < points; ++i) {
    if (p.evaluate(point_on_hyperplane(alpha, rng)) != 0) return false;
  }
  return true;
}

// Basis of H^{2d}(G) as vertex-major coefficient vectors. Unknowns are the
// vertex polynomials f_v (degree d) and, per edge, a quotient g_e (degree
// d-1); equations f_u - f_v = alpha_e g_e. Multiplication by a nonzero form
// is injective, so projecting the kernel onto the f part loses nothing.
inline Dense graph_cohomology_space(const torusfix::TGraph& g, unsigned d) {
  const std::size_t n = g.n();
  const auto top = monomial_positions(n, d);
  const std::size_t dim = g.vertex_count() * top.size();
  const std::size_t low = d == 0 ? 0 : monomial_positions(n, d - 1).size();
  const std::size_t nv = g.vertex_count(), ne = g.edges().size();
  const std::size_t cols = dim + ne * low;
  Dense m;
  for (std::size_t e = 0; e < ne; ++e) {
    const auto& edge = g.edges()[e];
    std::vector<Q> alpha;
    for (const auto& x : edge.label) alpha.push_back(Q(x));
    const Dense mult = multiplication_matrix(alpha, d);
    for (std::size_t r = 0; r < top.size(); ++r) {
      std::vector<Q> row(cols, 0);
      row[edge.u * top.size() + r] += 1;
      row[edge.v * top.size() + r] -= 1;
      for (std::size_t k = 0; k < low; ++k) row[dim + e * low + k] -= mult[r][k];
      m.push_back(std::move(row));
    }
  }
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    const Q inv = 1 / m[rank][c];
    for (auto& x : m[rank]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Q f = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    pivots.push_back(c);
    ++rank;
  }
  Dense basis;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Q> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    v.resize(dim);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::size_t graph_cohomology_dim(const torusfix::TGraph& g, unsigned d) {
  return graph_cohomology_space(g, d).size();
}

// Number of minimal generators in cohomological degree 2d: dim H^{2d}
// minus the dimension of R^2 * H^{2d-2}.
inline std::size_t generator_count(const torusfix::TGraph& g, unsigned d) {
  const Dense top = graph_cohomology_space(g, d);
  if (d == 0) return dense_rank(top);
  const Dense below = graph_cohomology_space(g, d - 1);
  const std::size_t n = g.n();
  const auto from = monomial_positions(n, d - 1);
  const auto to = monomial_positions(n, d);
  std::vector<std::vector<unsigned>> from_list(from.size());
  for (const auto& [e, i] : from) from_list[i] = e;
  Dense products;
  for (const auto& v : below) {
    for (std::size_t var = 0; var < n; ++var) {
      std::vector<Q> w(g.vertex_count() * to.size(), 0);
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) continue;
        auto e = from_list[k % from.size()];
        ++e[var];
        w[(k / from.size()) * to.size() + to.at(e)] += v[k];
      }
      products.push_back(std::move(w));
    }
  }
  return dense_rank(top) - dense_rank(products);
}

inline bool is_rational_square(const Q& q) {
  if (q < 0) return false;
  mpz_class num = q.get_num(), den = q.get_den();
  return mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t());
}

}  // namespace oracle
