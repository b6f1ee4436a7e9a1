#include "torusfix/tgraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "torusfix/errors.hpp"

namespace torusfix {

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  std::vector<std::size_t> parent;
};

bool rationally_dependent(const IntVector& a, const IntVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a[i] * b[j] - a[j] * b[i] != 0) return false;
    }
  }
  return true;
}

// Multiplies a degree-d tuple coordinate vector by x_var.
SparseVec shift_by_variable(const SparseVec& coords, const TupleSpace& from, const TupleSpace& to,
                            std::size_t var) {
  SparseVec out;
  for (const auto& e : coords) {
    const std::size_t vertex = e.col / from.monomials.size();
    Exponent m = from.monomials.at(e.col % from.monomials.size());
    ++m[var];
    out.push_back({vertex * to.monomials.size() + to.monomials.index_of(m), e.value});
  }
  std::sort(out.begin(), out.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
  return out;
}

std::vector<HomogeneousPoly> tuple_from_coordinates(const TGraph& g, unsigned d,
                                                    const TupleSpace& space,
                                                    const SparseVec& coords) {
  std::vector<HomogeneousPoly> values(g.vertex_count(), HomogeneousPoly(g.n(), d));
  for (const auto& e : coords) {
    const std::size_t vertex = e.col / space.monomials.size();
    values[vertex].add_term(space.monomials.at(e.col % space.monomials.size()), e.value);
  }
  return values;
}

}  // namespace

TGraph::TGraph(std::size_t n, std::vector<std::string> vertices, std::vector<TEdge> edges)
    : n_(n), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      if (vertices_[i] == vertices_[j]) throw InvalidInput("duplicate vertex '" + vertices_[i] + "'");
    }
  }
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& e = edges_[k];
    const std::string where = "edge " + std::to_string(k);
    if (e.u >= vertices_.size() || e.v >= vertices_.size()) {
      throw InvalidInput(where + ": unknown endpoint");
    }
    if (e.u == e.v) throw InvalidInput(where + ": loop at vertex '" + vertices_[e.u] + "'");
    if (e.label.size() != n_) throw InvalidInput(where + ": label length differs from torus rank");
    if (is_zero(e.label)) throw InvalidInput(where + ": zero label");
  }
}

std::size_t TGraph::vertex_index(const std::string& name) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), name);
  if (it == vertices_.end()) throw InvalidInput("unknown vertex '" + name + "'");
  return static_cast<std::size_t>(it - vertices_.begin());
}

LinearForm TGraph::label_form(std::size_t edge) const {
  return LinearForm{to_rational(edges_.at(edge).label)};
}

TGraph TGraph::relabeled(std::vector<IntVector> labels) const {
  if (labels.size() != edges_.size()) throw InvalidInput("label count mismatch");
  std::vector<TEdge> edges = edges_;
  for (std::size_t k = 0; k < edges.size(); ++k) edges[k].label = std::move(labels[k]);
  return TGraph(n_, vertices_, std::move(edges));
}

std::size_t connected_components(std::size_t vertex_count, const std::vector<TEdge>& edges) {
  UnionFind uf(vertex_count);
  std::size_t comps = vertex_count;
  for (const auto& e : edges) {
    if (uf.unite(e.u, e.v)) --comps;
  }
  return comps;
}

TGraph fixed_subgraph(const TGraph& g, const SubgroupLattice& h) {
  if (h.n() != g.n()) throw InvalidInput("subgroup rank differs from graph torus rank");
  std::vector<TEdge> kept;
  for (const auto& e : g.edges()) {
    if (in_rational_span(h, to_rational(e.label))) kept.push_back(e);
  }
  return TGraph(g.n(), g.vertices(), std::move(kept));
}

std::vector<ParallelClass> parallel_classes(const TGraph& g) {
  std::vector<ParallelClass> classes;
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    IntVector dir = primitive_direction(g.edges()[k].label);
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const ParallelClass& c) { return c.direction == dir; });
    if (it == classes.end()) {
      classes.push_back({std::move(dir), {k}});
    } else {
      it->edges.push_back(k);
    }
  }
  return classes;
}

RealizabilityVerdict realizable(const TGraph& g) {
  RealizabilityVerdict verdict;
  for (auto& cls : parallel_classes(g)) {
    ClassWitness w;
    w.direction = cls.direction;
    UnionFind uf(g.vertex_count());
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(g.vertex_count());
    for (std::size_t k : cls.edges) {
      const auto& e = g.edges()[k];
      if (uf.unite(e.u, e.v)) {
        adj[e.u].push_back({e.v, k});
        adj[e.v].push_back({e.u, k});
        continue;
      }
      // Path v -> u in the forest so far, then close with edge k.
      std::vector<std::pair<std::size_t, std::size_t>> prev(g.vertex_count(),
                                                            {g.vertex_count(), 0});
      std::deque<std::size_t> queue{e.v};
      prev[e.v] = {e.v, 0};
      while (!queue.empty()) {
        const std::size_t x = queue.front();
        queue.pop_front();
        if (x == e.u) break;
        for (const auto& [y, edge] : adj[x]) {
          if (prev[y].first != g.vertex_count()) continue;
          prev[y] = {x, edge};
          queue.push_back(y);
        }
      }
      std::vector<std::size_t> verts{e.u};
      std::vector<std::size_t> path_edges;
      for (std::size_t x = e.u; x != e.v; x = prev[x].first) {
        path_edges.push_back(prev[x].second);
        verts.push_back(prev[x].first);
      }
      // verts runs u .. v along the forest; edge k returns v -> u.
      w.forest = false;
      w.cycle_vertices = verts;
      w.cycle_vertices.push_back(e.u);
      w.cycle_edges = path_edges;
      w.cycle_edges.push_back(k);
      break;
    }
    if (!w.forest) verdict.realizable = false;
    verdict.witnesses.push_back(std::move(w));
  }
  return verdict;
}

GkmCheck gkm_axiom_check(const TGraph& g) {
  std::vector<std::vector<std::size_t>> incident(g.vertex_count());
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    incident[g.edges()[k].u].push_back(k);
    incident[g.edges()[k].v].push_back(k);
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& inc = incident[v];
    for (std::size_t i = 0; i < inc.size(); ++i) {
      for (std::size_t j = i + 1; j < inc.size(); ++j) {
        if (rationally_dependent(g.edges()[inc[i]].label, g.edges()[inc[j]].label)) {
          return {false, v, inc[i], inc[j]};
        }
      }
    }
  }
  return {};
}

bool satisfies_edge_divisibility(const TGraph& g, const std::vector<HomogeneousPoly>& values) {
  if (values.size() != g.vertex_count()) return false;
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const auto& e = g.edges()[k];
    if (!restrict_to_hyperplane(values[e.u] - values[e.v], g.label_form(k)).is_zero()) return false;
  }
  return true;
}

GraphCohClass::GraphCohClass(const TGraph& g, std::vector<HomogeneousPoly> values)
    : graph_(&g), degree_(0), values_(std::move(values)) {
  if (values_.size() != g.vertex_count()) throw InvariantBreach("class has wrong vertex count");
  bool have_degree = false;
  for (const auto& p : values_) {
    if (p.n() != g.n()) throw InvariantBreach("class polynomial has wrong rank");
    if (p.is_zero()) continue;
    if (have_degree && p.deg() != degree_) throw InvariantBreach("class is not homogeneous");
    degree_ = p.deg();
    have_degree = true;
  }
  if (!have_degree && !values_.empty()) degree_ = values_.front().deg();
  for (auto& p : values_) {
    if (p.is_zero()) p = HomogeneousPoly(g.n(), degree_);
  }
  if (!satisfies_edge_divisibility(g, values_)) {
    throw InvariantBreach("vertex tuple violates edge divisibility");
  }
}

SparseVec GraphCohClass::coordinates() const {
  const MonomialIndex idx(graph_->n(), degree_);
  SparseVec out;
  for (std::size_t v = 0; v < values_.size(); ++v) {
    for (const auto& e : values_[v].coordinates(idx)) {
      out.push_back({v * idx.size() + e.col, e.value});
    }
  }
  return out;
}

SparseMatrix graph_cohomology_system(const TGraph& g, unsigned d) {
  const std::size_t block = MonomialIndex(g.n(), d).size();
  const std::size_t eq_block = g.n() == 0 ? 0 : MonomialIndex(g.n() - 1, d).size();
  SparseMatrix system(g.edges().size() * eq_block, g.vertex_count() * block);
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const auto& e = g.edges()[k];
    const SparseMatrix r = restriction_matrix(g.label_form(k), d);
    for (std::size_t row = 0; row < r.rows(); ++row) {
      SparseVec eq;
      for (const auto& t : r.row(row)) eq.push_back({e.u * block + t.col, t.value});
      for (const auto& t : r.row(row)) eq.push_back({e.v * block + t.col, -t.value});
      std::sort(eq.begin(), eq.end(),
                [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
      system.set_row(k * eq_block + row, std::move(eq));
    }
  }
  return system;
}

std::vector<GraphCohClass> graph_cohomology_basis(const TGraph& g, unsigned d) {
  const TupleSpace space{g.vertex_count(), MonomialIndex(g.n(), d)};
  std::vector<GraphCohClass> basis;
  for (const auto& v : kernel_basis(graph_cohomology_system(g, d))) {
    basis.emplace_back(g, tuple_from_coordinates(g, d, space, v));
  }
  return basis;
}

GraphCohClass multiply_classes(const GraphCohClass& a, const GraphCohClass& b) {
  if (&a.graph() != &b.graph()) throw InvalidInput("classes belong to different graphs");
  std::vector<HomogeneousPoly> values;
  values.reserve(a.values().size());
  for (std::size_t v = 0; v < a.values().size(); ++v) {
    values.push_back(poly_mul(a.values()[v], b.values()[v]));
  }
  return GraphCohClass(a.graph(), std::move(values));
}

GraphCohClass scale_class(const HomogeneousPoly& r, const GraphCohClass& a) {
  std::vector<HomogeneousPoly> values;
  for (const auto& p : a.values()) values.push_back(poly_mul(r, p));
  return GraphCohClass(a.graph(), std::move(values));
}

std::vector<std::size_t> hilbert_function(const TGraph& g, unsigned max_d) {
  std::vector<std::size_t> dims;
  for (unsigned d = 0; d <= max_d; ++d) {
    const SparseMatrix system = graph_cohomology_system(g, d);
    dims.push_back(system.cols() - rank(system));
  }
  return dims;
}

std::vector<GraphGenerator> minimal_generators(const TGraph& g, unsigned degree_bound) {
  std::vector<GraphGenerator> gens;
  std::vector<SparseVec> previous;
  for (unsigned d = 0; 2 * d <= degree_bound; ++d) {
    const TupleSpace space{g.vertex_count(), MonomialIndex(g.n(), d)};
    Echelon span(space.dim());
    if (d > 0) {
      const TupleSpace lower{g.vertex_count(), MonomialIndex(g.n(), d - 1)};
      for (const auto& b : previous) {
        for (std::size_t var = 0; var < g.n(); ++var) span.insert(shift_by_variable(b, lower, space, var));
      }
    }
    const auto basis = graph_cohomology_basis(g, d);
    previous.clear();
    for (const auto& cls : basis) {
      SparseVec coords = cls.coordinates();
      if (span.insert(coords)) gens.push_back({2 * d, cls});
      previous.push_back(std::move(coords));
    }
  }
  return gens;
}

FreenessReport freeness_probe(const TGraph& g, unsigned degree_bound) {
  FreenessReport report;
  report.degree_bound = degree_bound;
  const auto gens = minimal_generators(g, degree_bound);
  for (const auto& gen : gens) report.generator_degrees.push_back(gen.degree);
  report.rank_excess = gens.size() > g.vertex_count();

  for (unsigned d = 0; 2 * d <= degree_bound && !report.syzygy; ++d) {
    const TupleSpace space{g.vertex_count(), MonomialIndex(g.n(), d)};
    SpanSolver solver(space.dim());
    std::vector<std::pair<std::size_t, Exponent>> labels;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (gens[j].degree > 2 * d) continue;
      for (const auto& m : monomial_basis(g.n(), d - gens[j].degree / 2)) {
        const GraphCohClass image = scale_class(HomogeneousPoly::monomial(m), gens[j].lift);
        labels.push_back({j, m});
        if (auto rel = solver.add(image.coordinates())) {
          Syzygy syz{2 * d, {}};
          std::map<std::size_t, HomogeneousPoly> by_gen;
          for (const auto& t : *rel) {
            const auto& [gen, mono] = labels[t.col];
            auto it = by_gen.try_emplace(gen, g.n(), d - gens[gen].degree / 2).first;
            it->second.add_term(mono, t.value);
          }
          for (auto& [gen, poly] : by_gen) syz.coefficients.emplace_back(gen, std::move(poly));
          report.syzygy = std::move(syz);
          break;
        }
      }
      if (report.syzygy) break;
    }
  }
  report.free_up_to_bound = !report.syzygy && !report.rank_excess;
  return report;
}

}  // namespace torusfix
