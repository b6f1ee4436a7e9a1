#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "torusfix/circle.hpp"
#include "torusfix/errors.hpp"
#include "torusfix/tgraph.hpp"

using namespace torusfix;

namespace {

Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

CircleGenerator free_gen(std::string name, unsigned degree) { return {std::move(name), degree, std::nullopt}; }

// Q[t]/(t^2 - c) for a block of size 2, Q for size 1.
struct Block {
  std::size_t size;
  Rational c;
};

FiniteCommAlgebra product_algebra(const std::vector<Block>& blocks) {
  std::size_t dim = 0;
  for (const auto& b : blocks) dim += b.size;
  std::vector<std::string> names;
  std::vector<std::vector<RatVector>> mult(dim, std::vector<RatVector>(dim, RatVector(dim)));
  RatVector unit(dim);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    names.push_back("u" + std::to_string(off));
    unit[off] = 1;
    mult[off][off][off] = 1;
    if (b.size == 2) {
      names.push_back("t" + std::to_string(off));
      mult[off][off + 1][off + 1] = 1;
      mult[off + 1][off][off + 1] = 1;
      mult[off + 1][off + 1][off] = b.c;
    }
    off += b.size;
  }
  return FiniteCommAlgebra(names, mult, unit);
}

void check_idempotents(const FiniteCommAlgebra& b, const SplitResult& r) {
  RatVector sum(b.dim());
  for (std::size_t i = 0; i < r.idempotents.size(); ++i) {
    const auto& e = r.idempotents[i];
    CHECK_FALSE(is_zero(e));
    CHECK(b.multiply(e, e) == e);
    for (std::size_t j = i + 1; j < r.idempotents.size(); ++j) {
      CHECK(is_zero(b.multiply(e, r.idempotents[j])));
    }
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += e[k];
  }
  CHECK(sum == b.unit());
}

}  // namespace

TEST_CASE("A_c has graded dimensions 1, 2, 2, ...") {
  for (const Rational& c : {q(0), q(1), q(2), q(-3, 4)}) {
    const CircleAlgebra a = mk_Ac(c);
    CHECK(validate(a).empty());
    CHECK(a.dimension(0) == 1);
    CHECK(a.dimension(1) == 0);
    CHECK(a.dimension(2) == 2);
    CHECK(a.dimension(4) == 2);
    CHECK(a.dimension(10) == 2);
  }
}

TEST_CASE("validate reports a non-associative table") {
  CircleAlgebra::Table t;
  t[{1, 1}] = {{0, q(1), 2}};
  t[{1, 2}] = {{2, q(1), 1}};
  t[{2, 2}] = {{0, q(1), 2}};
  const CircleAlgebra a({free_gen("1", 0), free_gen("a", 2), free_gen("b", 2)}, 0, t);
  const auto problems = validate(a);
  REQUIRE_FALSE(problems.empty());
  CHECK_THROWS_AS(realizable_circle(a), InvalidInput);
}

TEST_CASE("constructor rejects malformed generator data") {
  CHECK_THROWS_AS(CircleAlgebra({free_gen("a", 0), free_gen("a", 2)}, 0, {}), InvalidInput);
  CHECK_THROWS_AS(CircleAlgebra({free_gen("a", 0)}, 3, {}), InvalidInput);
  CHECK_THROWS_AS(CircleAlgebra({{"t", 0, 0u}}, 0, {}), InvalidInput);
  CircleAlgebra::Table t;
  t[{0, 4}] = {};
  CHECK_THROWS_AS(CircleAlgebra({free_gen("1", 0)}, 0, t), InvalidInput);
}

TEST_CASE("hypothesis failures are detected") {
  SUBCASE("odd free generator") {
    const CircleAlgebra a({free_gen("1", 0), free_gen("e", 1)}, 0, {});
    REQUIRE(validate(a).empty());
    const auto h = hypothesis_check(a);
    CHECK_FALSE(h.a1_zero);
    const auto v = realizable_circle(a);
    CHECK(v.kind == CircleVerdictKind::HypothesisViolated);
    CHECK(v.violated == CircleHypothesis::A1Nonzero);
  }
  SUBCASE("dual numbers in degree zero") {
    const CircleAlgebra a({free_gen("1", 0), free_gen("e", 0)}, 0, {});
    REQUIRE(validate(a).empty());
    CHECK_FALSE(hypothesis_check(a).spacelike);
    CHECK(realizable_circle(a).violated == CircleHypothesis::NotSpacelike);
  }
  SUBCASE("x kills a degree zero class") {
    const CircleAlgebra a({free_gen("1", 0), {"s", 0, 1u}}, 0, {{{1, 1}, {{1, q(1), 0}}}});
    REQUIRE(validate(a).empty());
    const auto h = hypothesis_check(a);
    CHECK(h.spacelike);
    CHECK_FALSE(h.injective_a0_a2);
    CHECK(realizable_circle(a).violated == CircleHypothesis::InjectivityA0A2);
  }
  SUBCASE("A_0 has a nilpotent after localization") {
    const auto v = realizable_circle(mk_Ac(0));
    CHECK(v.kind == CircleVerdictKind::HypothesisViolated);
    CHECK(v.violated == CircleHypothesis::NilpotentsInLocalization);
  }
}

TEST_CASE("torsion dies in the localization") {
  const CircleAlgebra a({free_gen("1", 0), {"s", 2, 3u}, free_gen("b", 2)}, 0,
                        {{{2, 2}, {{2, q(1), 1}}}});
  REQUIRE(validate(a).empty());
  const Localization loc = localized_degree_zero(a);
  REQUIRE(loc.algebra);
  CHECK(loc.algebra->dim() == 2);
  CHECK(a.dimension(2) == 3);
  CHECK(a.dimension(8) == 2);
  const auto v = realizable_circle(a);
  CHECK(v.kind == CircleVerdictKind::Realizable);
  CHECK(v.fixed_points == 2);
}

TEST_CASE("A_c is realizable exactly when c is a nonzero rational square") {
  std::mt19937_64 rng(11);
  for (long p : {2L, 3L, 5L, -1L, -4L}) {
    const auto v = realizable_circle(mk_Ac(q(p)));
    CHECK(v.kind == CircleVerdictKind::NotRealizable);
    CHECK(v.field_polynomial.degree() == 2);
    CHECK(v.field_polynomial.coeffs[0] == -q(p));
  }
  for (int trial = 0; trial < 150; ++trial) {
    const Rational c = q(support::uniform(rng, -30, 30), support::uniform(rng, 1, 12));
    const auto v = realizable_circle(mk_Ac(c));
    if (c == 0) {
      CHECK(v.kind == CircleVerdictKind::HypothesisViolated);
    } else if (oracle::is_rational_square(c)) {
      CHECK(v.kind == CircleVerdictKind::Realizable);
      CHECK(v.fixed_points == 2);
    } else {
      CHECK(v.kind == CircleVerdictKind::NotRealizable);
    }
  }
}

TEST_CASE("split test on products of small fields") {
  const auto split = product_algebra({{1, 0}, {2, q(4)}, {2, q(9, 4)}});
  REQUIRE(split.violations().empty());
  const auto r = split_semisimple_test(split);
  CHECK(r.kind == SplitKind::SplitSemisimple);
  CHECK(r.idempotents.size() == 5);
  check_idempotents(split, r);

  const auto nil = product_algebra({{1, 0}, {2, q(0)}});
  const auto rn = split_semisimple_test(nil);
  CHECK(rn.kind == SplitKind::Nilpotents);
  CHECK(is_zero(nil.multiply(rn.witness, rn.witness)));

  const auto field = product_algebra({{2, q(1)}, {2, q(-2)}});
  const auto rf = split_semisimple_test(field);
  CHECK(rf.kind == SplitKind::FieldExtension);
  CHECK(rational_roots(rf.witness_polynomial).empty());
}

TEST_CASE("split test is invariant under permutations of the basis") {
  std::mt19937_64 rng(5);
  const std::vector<std::vector<Block>> cases = {
      {{1, 0}, {2, q(1)}, {2, q(16)}},
      {{2, q(1, 9)}, {1, 0}, {2, q(0)}},
      {{2, q(3)}, {1, 0}, {1, 0}},
  };
  for (const auto& blocks : cases) {
    const auto base = product_algebra(blocks);
    const auto expect = split_semisimple_test(base);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::size_t> perm(base.dim());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const auto b = base.permuted(perm);
      REQUIRE(b.violations().empty());
      const auto r = split_semisimple_test(b);
      CHECK(r.kind == expect.kind);
      CHECK(r.idempotents.size() == expect.idempotents.size());
      if (r.kind == SplitKind::SplitSemisimple) check_idempotents(b, r);
    }
  }
}

TEST_CASE("minimal polynomials and rational roots") {
  CHECK(rational_roots({{q(-2), q(0), q(1)}}).empty());
  const auto roots = rational_roots({{q(-1, 4), q(0), q(1)}});
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == q(1, 2));
  CHECK(roots[1] == q(-1, 2));
  const auto b = product_algebra({{2, q(5)}});
  const auto m = minimal_polynomial(b, {q(0), q(1)}, b.unit());
  CHECK(m.degree() == 2);
  CHECK(m.coeffs[0] == q(-5));
  CHECK(m.coeffs[1] == 0);
}

// A connected graph over the circle gives a free Q[x]-algebra generated in
// degrees 0 and 2. Products are evaluated vertexwise at x = 1.
TEST_CASE("circle algebras of connected one-dimensional graphs are realizable") {
  std::mt19937_64 rng(23);
  int tested = 0;
  while (tested < 30) {
    const TGraph g = support::random_graph(rng, 1, 5, 7, 3);
    if (connected_components(g.vertex_count(), g.edges()) != 1) continue;
    ++tested;
    const std::size_t nv = g.vertex_count();
    std::vector<RatVector> vals{RatVector(nv, Rational(1))};
    std::vector<CircleGenerator> gens{free_gen("1", 0)};
    for (const auto& gen : minimal_generators(g, 2)) {
      if (gen.degree != 2) continue;
      RatVector v;
      for (const auto& p : gen.lift.values()) v.push_back(p.evaluate({Rational(1)}));
      vals.push_back(v);
      gens.push_back(free_gen("g" + std::to_string(gens.size()), 2));
    }
    REQUIRE(gens.size() == nv);
    SpanSolver solver(nv);
    for (const auto& v : vals) REQUIRE_FALSE(solver.add(to_sparse(v)));
    CircleAlgebra::Table t;
    for (std::size_t i = 1; i < nv; ++i) {
      for (std::size_t j = i; j < nv; ++j) {
        RatVector prod(nv);
        for (std::size_t k = 0; k < nv; ++k) prod[k] = vals[i][k] * vals[j][k];
        const auto coeffs = solver.express(to_sparse(prod));
        REQUIRE(coeffs);
        std::vector<CircleTerm> terms;
        for (const auto& e : *coeffs) terms.push_back({e.col, e.value, e.col == 0 ? 2u : 1u});
        t[{i, j}] = terms;
      }
    }
    const CircleAlgebra a(gens, 0, t);
    REQUIRE(validate(a).empty());
    const auto v = realizable_circle(a);
    CHECK(v.kind == CircleVerdictKind::Realizable);
    CHECK(v.fixed_points == nv);
  }
}
