#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "torusfix/errors.hpp"
#include "torusfix/fixtures.hpp"
#include "torusfix/tgraph.hpp"

using namespace torusfix;

namespace {

TGraph fixture_graph(const std::string& name) { return parse_graph(fixture_document(name)); }

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.push_back(Integer(x));
  return v;
}

std::vector<unsigned> sorted(std::vector<unsigned> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(TGraph(1, {"p"}, {{0, 0, iv({1})}}), InvalidInput);
  CHECK_THROWS_AS(TGraph(2, {"p", "q"}, {{0, 1, iv({0, 0})}}), InvalidInput);
  CHECK_THROWS_AS(TGraph(2, {"p", "q"}, {{0, 1, iv({1})}}), InvalidInput);
  CHECK_THROWS_AS(TGraph(2, {"p", "p"}, {}), InvalidInput);
}

TEST_CASE("fixed subgraphs and parallel classes") {
  const TGraph s6 = fixture_graph("s6-graph");
  CHECK(fixed_subgraph(s6, SubgroupLattice::trivial(2)).edges().size() == 3);
  CHECK(fixed_subgraph(s6, SubgroupLattice::full_torus(2)).edges().empty());
  const auto h3 = fixed_subgraph(s6, SubgroupLattice::from_rows({iv({1, 0})}, 2));
  REQUIRE(h3.edges().size() == 1);
  CHECK(h3.edges()[0].label == iv({1, 0}));
  CHECK(parallel_classes(s6).size() == 3);

  const TGraph par(2, {"p", "q"}, {{0, 1, iv({2, 0})}, {0, 1, iv({-1, 0})}});
  const auto classes = parallel_classes(par);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].direction == iv({1, 0}));
  CHECK(parallel_classes(TGraph(2, {"p"}, {})).empty());
}

TEST_CASE("forest criterion") {
  CHECK(realizable(fixture_graph("single-edge")).realizable);
  const auto tri = realizable(fixture_graph("triangle-parallel"));
  CHECK_FALSE(tri.realizable);
  REQUIRE(tri.witnesses.size() == 1);
  CHECK_FALSE(tri.witnesses[0].forest);
  CHECK(tri.witnesses[0].cycle_edges.size() == 3);
  CHECK(tri.witnesses[0].cycle_vertices.size() == 4);
  CHECK(tri.witnesses[0].cycle_vertices.front() == tri.witnesses[0].cycle_vertices.back());
  CHECK(realizable(fixture_graph("s6-graph")).realizable);
  // Two parallel edges between the same vertices already form a cycle.
  CHECK_FALSE(realizable(TGraph(1, {"p", "q"}, {{0, 1, iv({1})}, {0, 1, iv({2})}})).realizable);
}

TEST_CASE("GKM axiom") {
  CHECK(gkm_axiom_check(fixture_graph("s6-graph")).ok);
  const auto bad = gkm_axiom_check(TGraph(2, {"p", "q"}, {{0, 1, iv({1, 1})}, {0, 1, iv({1, 1})}}));
  CHECK_FALSE(bad.ok);
  CHECK(bad.vertex == 0);
  CHECK(gkm_axiom_check(fixture_graph("single-edge")).ok);
}

TEST_CASE("graph cohomology examples") {
  const TGraph edge = fixture_graph("single-edge");
  CHECK(graph_cohomology_basis(edge, 0).size() == 1);
  CHECK(graph_cohomology_basis(edge, 1).size() == 2);
  CHECK(hilbert_function(fixture_graph("s6-graph"), 4) == std::vector<std::size_t>{1, 2, 3, 5, 7});
  CHECK(hilbert_function(TGraph(1, {"p", "q"}, {}), 2) == std::vector<std::size_t>{2, 2, 2});
  CHECK(hilbert_function(fixture_graph("double-edge"), 5) == std::vector<std::size_t>{1, 2, 4, 6, 8, 10});
  CHECK(hilbert_function(fixture_graph("theta3-triangle"), 4) == std::vector<std::size_t>{1, 3, 9, 18, 30});
}

TEST_CASE("products of classes") {
  const TGraph edge = fixture_graph("single-edge");
  const HomogeneousPoly x = HomogeneousPoly::variable(1, 0);
  const GraphCohClass one(edge, {HomogeneousPoly::constant(1, 1), HomogeneousPoly::constant(1, 1)});
  const GraphCohClass a(edge, {HomogeneousPoly(1, 1), x});
  CHECK(multiply_classes(one, a).values() == a.values());
  const auto aa = multiply_classes(a, a);
  CHECK(aa.values()[0].is_zero());
  CHECK(aa.values()[1] == poly_mul(x, x));
  CHECK(scale_class(x, one).values() == std::vector<HomogeneousPoly>{x, x});
  CHECK_THROWS_AS(GraphCohClass(edge, {HomogeneousPoly::constant(1, 1), HomogeneousPoly::constant(1, 2)}),
                  InvariantBreach);
}

TEST_CASE("minimal generators") {
  const auto degrees = [](const TGraph& g, unsigned bound) {
    std::vector<unsigned> out;
    for (const auto& gen : minimal_generators(g, bound)) out.push_back(gen.degree);
    return sorted(out);
  };
  CHECK(degrees(TGraph(1, {"p", "q", "r"}, {}), 6) == std::vector<unsigned>{0, 0, 0});
  CHECK(degrees(fixture_graph("single-edge"), 8) == std::vector<unsigned>{0, 2});
  CHECK(degrees(fixture_graph("double-edge"), 8) == std::vector<unsigned>{0, 4});
}

TEST_CASE("freeness probe") {
  const auto edge = freeness_probe(fixture_graph("single-edge"), 8);
  CHECK(edge.free_up_to_bound);
  CHECK(sorted(edge.generator_degrees) == std::vector<unsigned>{0, 2});

  const auto s6 = freeness_probe(fixture_graph("s6-graph"), 12);
  CHECK(s6.free_up_to_bound);
  CHECK(sorted(s6.generator_degrees) == std::vector<unsigned>{0, 6});

  const TGraph theta = fixture_graph("theta3-triangle");
  // Brute-force generator pattern: one generator in degree 0, three in degree 4.
  std::vector<std::size_t> counts;
  for (unsigned d = 0; d <= 4; ++d) counts.push_back(oracle::generator_count(theta, d));
  CHECK(counts == std::vector<std::size_t>{1, 0, 3, 0, 0});
  const auto f = freeness_probe(theta, 8);
  CHECK_FALSE(f.free_up_to_bound);
  CHECK(f.rank_excess);
  REQUIRE(f.syzygy);
  CHECK(f.syzygy->degree == 6);
  CHECK(sorted(f.generator_degrees) == std::vector<unsigned>{0, 4, 4, 4});
}

TEST_CASE("graph cohomology matches the dense oracle") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const TGraph g = support::random_graph(rng, n, 5, 7, 2);
    const unsigned d = rng() % 5;
    CHECK(graph_cohomology_basis(g, d).size() == oracle::graph_cohomology_dim(g, d));
  }
}

TEST_CASE("structural laws on random graphs") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const TGraph g = support::random_graph(rng, n, 5, 6, 2);
    CHECK(graph_cohomology_basis(g, 0).size() == connected_components(g.vertex_count(), g.edges()));
    const auto b1 = graph_cohomology_basis(g, 1);
    for (std::size_t i = 0; i < b1.size(); ++i) {
      for (std::size_t j = i + 1; j < b1.size(); ++j) CHECK(b1[i].values() != b1[j].values());
      for (const auto& c : b1) {
        const auto prod = multiply_classes(b1[i], c);
        CHECK(satisfies_edge_divisibility(g, prod.values()));
      }
    }
  }
}

TEST_CASE("unimodular relabeling and sign flips change nothing") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const TGraph g = support::random_graph(rng, n, 4, 5, 2);
    const TGraph h = support::transformed(g, support::random_unimodular(rng, n));
    std::vector<IntVector> flipped;
    for (const auto& e : g.edges()) {
      IntVector l = e.label;
      if (rng() % 2) {
        for (auto& x : l) x = -x;
      }
      flipped.push_back(l);
    }
    for (const TGraph& other : {h, g.relabeled(flipped)}) {
      CHECK(hilbert_function(other, 3) == hilbert_function(g, 3));
      CHECK(realizable(other).realizable == realizable(g).realizable);
      CHECK(gkm_axiom_check(other).ok == gkm_axiom_check(g).ok);
      const auto a = freeness_probe(g, 6), b = freeness_probe(other, 6);
      CHECK(sorted(a.generator_degrees) == sorted(b.generator_degrees));
      CHECK(a.free_up_to_bound == b.free_up_to_bound);
    }
  }
}

TEST_CASE("modules over Q[x] and Q[x1,x2] come out free") {
  std::mt19937_64 rng(53);
  for (std::size_t n : {1u, 2u}) {
    for (int trial = 0; trial < 40; ++trial) {
      const TGraph g = support::random_graph(rng, n, 5, 6, 3);
      CHECK(freeness_probe(g, 8).free_up_to_bound);
    }
  }
}

TEST_CASE("generator count equals the vertex count once all generators are seen") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const TGraph g = support::random_graph(rng, 2, 4, 4, 2);
    const unsigned bound = 4 * static_cast<unsigned>(g.edges().size()) + 4;
    const auto f = freeness_probe(g, bound);
    REQUIRE(f.free_up_to_bound);
    const unsigned top = f.generator_degrees.empty() ? 0 : *std::max_element(f.generator_degrees.begin(), f.generator_degrees.end());
    if (bound >= 2 * top) CHECK(f.generator_degrees.size() == g.vertex_count());
  }
}
