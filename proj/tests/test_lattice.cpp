#include <doctest.h>

#include <random>

#include "support.hpp"
#include "torusfix/errors.hpp"
#include "torusfix/lattice.hpp"

using namespace torusfix;

namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.push_back(Integer(x));
  return v;
}

SubgroupLattice lat(std::initializer_list<std::initializer_list<long>> rows, std::size_t n) {
  IntMatrix m;
  for (auto r : rows) m.push_back(iv(r));
  return SubgroupLattice::from_rows(m, n);
}

// Rational-span membership inside a box, as an oracle for saturation.
bool saturated_in_box(const SubgroupLattice& h, const SubgroupLattice& sat, long box) {
  const std::size_t n = h.n();
  IntVector v(n, Integer(-box));
  for (;;) {
    if (in_rational_span(h, to_rational(v)) != in_integer_span(sat.ann(), v)) return false;
    std::size_t i = 0;
    while (i < n && v[i] == box) v[i++] = -box;
    if (i == n) return true;
    ++v[i];
  }
}

}  // namespace

TEST_CASE("canonical forms") {
  CHECK(lat({{2, 0}}, 2).ann() == IntMatrix{iv({2, 0})});
  CHECK(lat({{1, 1}, {1, -1}}, 2).ann() == IntMatrix{iv({1, 1}), iv({0, 2})});
  CHECK(lat({}, 3).ann().empty());
  CHECK(lat({}, 3) == SubgroupLattice::full_torus(3));
  CHECK(SubgroupLattice::trivial(2).ann() == IntMatrix{iv({1, 0}), iv({0, 1})});
  CHECK_THROWS_AS(lat({{1, 2, 3}}, 2), InvalidInput);
}

TEST_CASE("canonical form is idempotent and invariant under unimodular recombination") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const std::size_t k = rng() % (n + 1);
    IntMatrix rows;
    for (std::size_t r = 0; r < k; ++r) rows.push_back(support::random_label(rng, n, 4));
    const auto h = SubgroupLattice::from_rows(rows, n);
    CHECK(SubgroupLattice::from_rows(h.ann(), n).ann() == h.ann());
    if (k == 0) continue;
    const auto g = support::random_unimodular(rng, k);
    IntMatrix mixed(k, IntVector(n, Integer(0)));
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t s = 0; s < k; ++s) {
        for (std::size_t c = 0; c < n; ++c) mixed[r][c] += g[r][s] * rows[s][c];
      }
    }
    CHECK(SubgroupLattice::from_rows(mixed, n) == h);
  }
}

TEST_CASE("containment") {
  const auto t2 = SubgroupLattice::full_torus(2);
  CHECK(contains(t2, lat({{3, 1}}, 2)));
  CHECK(contains(SubgroupLattice::full_torus(1), lat({{2}}, 1)));
  CHECK_FALSE(contains(lat({{1, -1}}, 2), lat({{0, 1}}, 2)));
  CHECK(contains(lat({{4}}, 1), lat({{2}}, 1)));
  CHECK_FALSE(contains(lat({{2}}, 1), lat({{4}}, 1)));
  CHECK_THROWS_AS(contains(t2, SubgroupLattice::full_torus(3)), InvalidInput);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2;
    auto random_group = [&] {
      IntMatrix rows;
      for (std::size_t r = 0; r < rng() % 3; ++r) rows.push_back(support::random_label(rng, n, 3));
      return SubgroupLattice::from_rows(rows, n);
    };
    const auto a = random_group(), b = random_group(), c = random_group();
    CHECK(contains(a, a));
    if (contains(a, b) && contains(b, c)) CHECK(contains(a, c));
    if (contains(a, b) && contains(b, a)) CHECK(a == b);
  }
}

TEST_CASE("intersection") {
  const auto h1 = lat({{0, 1}}, 2), diag = lat({{1, -1}}, 2);
  CHECK(intersect(h1, SubgroupLattice::full_torus(2)) == h1);
  CHECK(intersect(h1, diag) == SubgroupLattice::trivial(2));
  CHECK(intersect(lat({{2}}, 1), lat({{3}}, 1)) == SubgroupLattice::trivial(1));

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    auto random_group = [&] {
      IntMatrix rows;
      for (std::size_t r = 0; r < rng() % 3; ++r) rows.push_back(support::random_label(rng, n, 3));
      return SubgroupLattice::from_rows(rows, n);
    };
    const auto a = random_group(), b = random_group(), c = random_group();
    CHECK(intersect(a, b) == intersect(b, a));
    CHECK(intersect(intersect(a, b), c) == intersect(a, intersect(b, c)));
    CHECK(intersect(a, a) == a);
    CHECK(intersect(a, SubgroupLattice::trivial(n)) == SubgroupLattice::trivial(n));
    CHECK(contains(a, intersect(a, b)));
  }
}

TEST_CASE("identity component is the saturation") {
  CHECK(identity_component(lat({{0, 1}}, 2)) == lat({{0, 1}}, 2));
  CHECK(identity_component(lat({{2}}, 1)) == SubgroupLattice::trivial(1));
  CHECK(identity_component(lat({{2, 2}}, 2)) == lat({{1, 1}}, 2));
  CHECK_FALSE(lat({{2, 2}}, 2).is_subtorus());
  CHECK(lat({{1, 1}}, 2).is_subtorus());

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    IntMatrix rows;
    for (std::size_t r = 0; r < 1 + rng() % 2; ++r) rows.push_back(support::random_label(rng, n, 4));
    const auto h = SubgroupLattice::from_rows(rows, n);
    const auto h0 = identity_component(h);
    CHECK(h0.is_subtorus());
    CHECK(contains(h, h0));
    CHECK(saturated_in_box(h, h0, n == 3 ? 3 : 5));
  }
}

TEST_CASE("stable subsets") {
  const auto trivial1 = generate_stable({}, 1);
  CHECK(trivial1.right().size() == 2);
  CHECK(trivial1.size() == 3);

  const auto t = SubgroupLattice::full_torus(2), one = SubgroupLattice::trivial(2);
  const auto h1 = lat({{0, 1}}, 2), h2 = lat({{1, -1}}, 2), h3 = lat({{1, 0}}, 2);
  const auto s6 = generate_stable({t, h1, h2, h3, one}, 2);
  CHECK(s6.right().size() == 5);
  CHECK(s6.left().size() == 5);
  // U ⊆ H over {T, H1, H2, H3, 1}: T has 5 subgroups below it, each H_i two, {1} one.
  CHECK(s6.size() == 12);
  for (std::size_t i = 0; i < s6.size(); ++i) {
    CHECK(s6.leq(i, i));
    for (std::size_t j = 0; j < s6.size(); ++j) {
      if (i != j && s6.leq(i, j)) CHECK_FALSE(s6.leq(j, i));
    }
  }

  const auto z2 = lat({{2}}, 1);
  const auto p = generate_stable({z2}, 1);
  CHECK(p.right().size() == 3);
  CHECK(p.left().size() == 2);
  for (const auto& a : p.right()) {
    for (const auto& b : p.right()) CHECK(std::find(p.right().begin(), p.right().end(), intersect(a, b)) != p.right().end());
    CHECK(std::find(p.left().begin(), p.left().end(), identity_component(a)) != p.left().end());
  }
}

TEST_CASE("m_D") {
  const auto t = SubgroupLattice::full_torus(2), one = SubgroupLattice::trivial(2);
  const auto h1 = lat({{0, 1}}, 2), h2 = lat({{1, -1}}, 2), h3 = lat({{1, 0}}, 2);
  const auto s6 = generate_stable({t, h1, h2, h3, one}, 2);
  CHECK(m_D(s6, h1) == h1);
  // Z/3 inside the diagonal circle.
  const auto z3 = lat({{1, -1}, {0, 3}}, 2);
  CHECK(contains(h2, z3));
  CHECK(m_D(s6, z3) == h2);

  const auto p = generate_stable({}, 1);
  CHECK(m_D(p, lat({{2}}, 1)) == SubgroupLattice::full_torus(1));

  for (const auto& h : {z3, lat({{2, 0}, {0, 1}}, 2), lat({{1, 1}}, 2)}) {
    const auto m = m_D(s6, h);
    CHECK(contains(m, h));
    for (const auto& g : s6.right()) {
      if (contains(g, h) && contains(m, g)) CHECK(g == m);
    }
  }
}

TEST_CASE("characters of the quotient torus") {
  CHECK(quotient_char_space(SubgroupLattice::full_torus(2)).empty());
  CHECK(quotient_char_space(SubgroupLattice::trivial(2)).size() == 2);
  const auto diag = quotient_char_space(lat({{1, -1}}, 2));
  REQUIRE(diag.size() == 1);
  CHECK(diag[0] == RatVector{1, -1});
  CHECK_THROWS_AS(quotient_char_space(lat({{2}}, 1)), InvalidInput);
}
