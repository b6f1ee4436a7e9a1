#pragma once

#include <random>
#include <string>
#include <vector>

#include "torusfix/tgraph.hpp"

namespace support {

using torusfix::IntVector;
using torusfix::Integer;

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline IntVector random_label(std::mt19937_64& rng, std::size_t n, long bound) {
  for (;;) {
    IntVector v;
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      v.push_back(Integer(uniform(rng, -bound, bound)));
      zero = zero && v.back() == 0;
    }
    if (!zero) return v;
  }
}

inline torusfix::TGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t max_vertices,
                                     std::size_t max_edges, long label_bound) {
  const std::size_t nv = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_vertices)));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nv; ++i) names.push_back("v" + std::to_string(i));
  std::vector<torusfix::TEdge> edges;
  if (nv > 1) {
    const std::size_t ne = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_edges)));
    for (std::size_t e = 0; e < ne; ++e) {
      const std::size_t u = rng() % nv;
      std::size_t v = rng() % (nv - 1);
      if (v >= u) ++v;
      edges.push_back({u, v, random_label(rng, n, label_bound)});
    }
  }
  return torusfix::TGraph(n, names, edges);
}

// Product of random elementary matrices and signed permutations.
inline std::vector<IntVector> random_unimodular(std::mt19937_64& rng, std::size_t n) {
  std::vector<IntVector> g(n, IntVector(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = 1;
  for (int step = 0; step < 6 && n > 1; ++step) {
    const std::size_t i = rng() % n;
    std::size_t j = rng() % (n - 1);
    if (j >= i) ++j;
    const long k = uniform(rng, -2, 2);
    for (std::size_t c = 0; c < n; ++c) g[i][c] += k * g[j][c];
    if (rng() % 3 == 0) std::swap(g[i], g[j]);
  }
  if (rng() % 2) {
    for (auto& x : g[rng() % n]) x = -x;
  }
  return g;
}

inline IntVector apply(const std::vector<IntVector>& g, const IntVector& v) {
  IntVector out(g.size(), Integer(0));
  for (std::size_t r = 0; r < g.size(); ++r) {
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += g[r][c] * v[c];
  }
  return out;
}

inline torusfix::TGraph transformed(const torusfix::TGraph& gr, const std::vector<IntVector>& g) {
  std::vector<IntVector> labels;
  for (const auto& e : gr.edges()) labels.push_back(apply(g, e.label));
  return gr.relabeled(labels);
}

}  // namespace support
