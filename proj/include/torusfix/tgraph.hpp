#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "torusfix/lattice.hpp"
#include "torusfix/poly.hpp"

namespace torusfix {

struct TEdge {
  std::size_t u;
  std::size_t v;
  IntVector label;
};

/// Finite multigraph with nonzero labels in Z^n. Loops are rejected.
class TGraph {
 public:
  /// Throws InvalidInput on a loop, a zero label, a label of the wrong
  /// length, an unknown endpoint or a duplicate vertex name.
  TGraph(std::size_t n, std::vector<std::string> vertices, std::vector<TEdge> edges);

  std::size_t n() const { return n_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<TEdge>& edges() const { return edges_; }
  std::size_t vertex_index(const std::string& name) const;
  LinearForm label_form(std::size_t edge) const;

  /// Same vertices and edges, labels replaced (validated again).
  TGraph relabeled(std::vector<IntVector> labels) const;

 private:
  std::size_t n_;
  std::vector<std::string> vertices_;
  std::vector<TEdge> edges_;
};

std::size_t connected_components(std::size_t vertex_count, const std::vector<TEdge>& edges);

/// Edges whose label vanishes rationally on H, i.e. lies in L(H) ⊗ Q.
TGraph fixed_subgraph(const TGraph& g, const SubgroupLattice& h);

struct ParallelClass {
  IntVector direction;  ///< primitive, first nonzero entry positive
  std::vector<std::size_t> edges;
};

/// Classes ordered by their first edge.
std::vector<ParallelClass> parallel_classes(const TGraph& g);

struct ClassWitness {
  IntVector direction;
  bool forest = true;
  std::vector<std::size_t> cycle_edges;     ///< closed walk, edge indices
  std::vector<std::size_t> cycle_vertices;  ///< vertices visited, first repeated at end
};

struct RealizabilityVerdict {
  bool realizable = true;
  std::vector<ClassWitness> witnesses;  ///< one per parallel class
};

/// Every parallel class (with the full vertex set) must be a forest.
RealizabilityVerdict realizable(const TGraph& g);

struct GkmCheck {
  bool ok = true;
  std::size_t vertex = 0;
  std::size_t edge_a = 0;
  std::size_t edge_b = 0;
};

/// Incident edges at every vertex must have Q-linearly independent labels.
GkmCheck gkm_axiom_check(const TGraph& g);

/// An element of H^{2d}(Γ): one degree-d polynomial per vertex.
class GraphCohClass {
 public:
  /// Throws InvariantBreach unless every edge difference is divisible by its label.
  GraphCohClass(const TGraph& g, std::vector<HomogeneousPoly> values);

  const TGraph& graph() const { return *graph_; }
  unsigned degree() const { return degree_; }
  const std::vector<HomogeneousPoly>& values() const { return values_; }
  SparseVec coordinates() const;

 private:
  const TGraph* graph_;
  unsigned degree_;
  std::vector<HomogeneousPoly> values_;
};

bool satisfies_edge_divisibility(const TGraph& g, const std::vector<HomogeneousPoly>& values);

/// Coordinates of vertex tuples in degree d: vertex-major, monomials in
/// graded-lex order inside each block.
struct TupleSpace {
  std::size_t vertices;
  MonomialIndex monomials;
  std::size_t dim() const { return vertices * monomials.size(); }
};

/// Linear constraints cutting out H^{2d}(Γ) inside R_T^{V}.
SparseMatrix graph_cohomology_system(const TGraph& g, unsigned d);

std::vector<GraphCohClass> graph_cohomology_basis(const TGraph& g, unsigned d);

GraphCohClass multiply_classes(const GraphCohClass& a, const GraphCohClass& b);
/// Diagonal action of r ∈ R_T.
GraphCohClass scale_class(const HomogeneousPoly& r, const GraphCohClass& a);

/// dim H^{2d}(Γ) for d = 0..max_d.
std::vector<std::size_t> hilbert_function(const TGraph& g, unsigned max_d);

struct GraphGenerator {
  unsigned degree;  ///< cohomological
  GraphCohClass lift;
};

/// Lifts of a basis of H^{2d} / (R^2 · H^{2d-2}) for all 2d <= degree_bound.
std::vector<GraphGenerator> minimal_generators(const TGraph& g, unsigned degree_bound);

struct Syzygy {
  unsigned degree;                                         ///< cohomological
  std::vector<std::pair<std::size_t, HomogeneousPoly>> coefficients;  ///< (generator, coefficient)
};

struct FreenessReport {
  unsigned degree_bound;  ///< cohomological
  std::vector<unsigned> generator_degrees;
  bool free_up_to_bound = true;
  std::optional<Syzygy> syzygy;
  bool rank_excess = false;  ///< more minimal generators than vertices
};

FreenessReport freeness_probe(const TGraph& g, unsigned degree_bound);

}  // namespace torusfix
