// Runs the eight acceptance checks and prints one line per check.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "support.hpp"
#include "torusfix/circle.hpp"
#include "torusfix/criterion.hpp"
#include "torusfix/fixtures.hpp"
#include "torusfix/io.hpp"
#include "torusfix/system.hpp"
#include "torusfix/tgraph.hpp"

using namespace torusfix;

namespace {

struct Check {
  bool ok = true;
  std::string first_failure;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
};

Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

TGraph graph(const std::string& name) { return parse_graph(fixture_document(name)); }

std::vector<unsigned> sorted(std::vector<unsigned> v) {
  std::sort(v.begin(), v.end());
  return v;
}

void ac_classification(Check& c) {
  for (const Rational& v : {q(1), q(4), q(9), q(1, 4), q(9, 4)}) {
    const auto r = realizable_circle(mk_Ac(v));
    c.expect(r.kind == CircleVerdictKind::Realizable && r.fixed_points == 2, "A_" + v.get_str() + " realizable");
  }
  for (const Rational& v : {q(2), q(3), q(5), q(-1), q(-4)}) {
    const auto r = realizable_circle(mk_Ac(v));
    c.expect(r.kind == CircleVerdictKind::NotRealizable && r.field_polynomial.degree() == 2,
             "A_" + v.get_str() + " field extension");
  }
  const auto zero = realizable_circle(mk_Ac(0));
  c.expect(zero.kind == CircleVerdictKind::HypothesisViolated &&
               zero.violated == CircleHypothesis::NilpotentsInLocalization,
           "A_0 nilpotents");
}

// Coefficients of (1 + u^3) / (1 - u)^2 with u = t^2.
std::vector<std::size_t> s6_series(std::size_t terms) {
  std::vector<std::size_t> out(terms);
  for (std::size_t k = 0; k < terms; ++k) out[k] = (k + 1) + (k >= 3 ? k - 2 : 0);
  return out;
}

void s6_graph(Check& c) {
  const TGraph g = graph("s6-graph");
  const auto h = hilbert_function(g, 4);
  c.expect(h == std::vector<std::size_t>{1, 2, 3, 5, 7}, "hilbert 1,2,3,5,7");
  c.expect(h == s6_series(5), "generating function");
  const auto f = freeness_probe(g, 12);
  c.expect(f.free_up_to_bound && f.degree_bound == 12, "free up to 12");
  c.expect(sorted(f.generator_degrees) == std::vector<unsigned>{0, 6}, "generators in degrees 0 and 6");
}

void s6_system(Check& c) {
  const SystemDiagram s = parse_system(fixture_document("s6-system"));
  c.expect(validate_system(s).empty(), "validate_system");
  const auto h = s.cohomology(*s.find("1.1")).hilbert(6);
  c.expect(h == std::vector<std::size_t>{1, 0, 2, 0, 3, 0, 5}, "node hilbert");
  const auto graph_h = hilbert_function(graph("s6-graph"), 3);
  for (unsigned k = 0; k <= 6; k += 2) c.expect(h[k] == graph_h[k / 2], "node matches graph");
  const auto tc = check_TC(s, 10);
  c.expect(!tc.empty(), "TC pairs exist");
  for (const auto& v : tc) c.expect(v.kind == VerdictKind::VerifiedUpTo && v.degree_bound == 10, "TC " + v.subject);
  const auto lc = check_LC(s, 10);
  c.expect(!lc.empty(), "LC pairs exist");
  for (const auto& v : lc) c.expect(v.kind == VerdictKind::VerifiedUpTo && v.degree_bound == 10, "LC " + v.subject);
}

void forest_criterion(Check& c) {
  const auto tri = realizable(graph("triangle-parallel"));
  c.expect(!tri.realizable, "parallel triangle not realizable");
  bool three_cycle = false;
  for (const auto& w : tri.witnesses) three_cycle = three_cycle || (!w.forest && w.cycle_edges.size() == 3);
  c.expect(three_cycle, "3-cycle witness");

  std::mt19937_64 rng(101);
  int accepted = 0;
  while (accepted < 100) {
    const std::size_t n = 1 + rng() % 4;
    const TGraph g = support::random_graph(rng, n, 8, 2 * n + 2, 3);
    if (g.edges().size() < 2 || !gkm_axiom_check(g).ok) continue;
    ++accepted;
    c.expect(realizable(g).realizable, "GKM graph realizable");
  }
}

void freeness_laws(Check& c) {
  std::mt19937_64 rng(103);
  for (std::size_t n : {1u, 2u}) {
    for (int trial = 0; trial < 200; ++trial) {
      const TGraph g = support::random_graph(rng, n, 5, 6, 3);
      c.expect(freeness_probe(g, 8).free_up_to_bound, "free over rank " + std::to_string(n));
    }
  }
  const TGraph theta = graph("theta3-triangle");
  std::vector<std::size_t> counts;
  for (unsigned d = 0; d <= 4; ++d) counts.push_back(oracle::generator_count(theta, d));
  c.expect(counts == std::vector<std::size_t>{1, 0, 3, 0, 0}, "oracle generator pattern");
  const auto f = freeness_probe(theta, 8);
  c.expect(!f.free_up_to_bound && (f.syzygy || f.rank_excess), "theta3 not free with certificate");
  std::vector<std::size_t> seen(5, 0);
  for (unsigned deg : f.generator_degrees) {
    if (deg / 2 < seen.size()) ++seen[deg / 2];
  }
  c.expect(seen == counts, "probe generators match oracle");
}

FiniteCommAlgebra localized(const Rational& v) { return *localized_degree_zero(mk_Ac(v)).algebra; }

void invariance(Check& c) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const TGraph g = support::random_graph(rng, n, 5, 6, 2);
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
      c.expect(hilbert_function(other, 3) == hilbert_function(g, 3), "hilbert invariant");
      c.expect(realizable(other).realizable == realizable(g).realizable, "realizability invariant");
      c.expect(gkm_axiom_check(other).ok == gkm_axiom_check(g).ok, "GKM invariant");
      const auto a = freeness_probe(g, 6), b = freeness_probe(other, 6);
      c.expect(a.free_up_to_bound == b.free_up_to_bound &&
                   sorted(a.generator_degrees) == sorted(b.generator_degrees),
               "freeness invariant");
    }
  }
  for (const Rational& v : {q(0), q(1), q(2), q(9, 4), q(-1)}) {
    const auto base = localized(v);
    const auto expect = split_semisimple_test(base);
    std::vector<std::size_t> perm(base.dim());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      const auto r = split_semisimple_test(base.permuted(perm));
      c.expect(r.kind == expect.kind && r.idempotents.size() == expect.idempotents.size(), "split invariant");
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    IntMatrix rows(rng() % (n + 1));
    for (auto& r : rows) {
      for (std::size_t k = 0; k < n; ++k) r.push_back(Integer(support::uniform(rng, -6, 6)));
    }
    const auto h = SubgroupLattice::from_rows(rows, n);
    c.expect(canonicalize(h.ann(), n) == h, "canonical form idempotent");
  }
}

HomogeneousPoly random_poly(std::mt19937_64& rng, std::size_t n, unsigned deg) {
  HomogeneousPoly p(n, deg);
  for (const auto& e : monomial_basis(n, deg)) {
    if (rng() % 2) p.add_term(e, Rational(support::uniform(rng, -3, 3)));
  }
  return p;
}

void oracle_equivalence(Check& c) {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const TGraph g = support::random_graph(rng, n, 5, 7, 2);
    const unsigned d = rng() % 5;
    c.expect(graph_cohomology_basis(g, d).size() == oracle::graph_cohomology_dim(g, d), "dimension");
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      const LinearForm alpha = g.label_form(e);
      const unsigned deg = 1 + rng() % 3;
      HomogeneousPoly p = random_poly(rng, n, deg);
      if (rng() % 2) p = poly_mul(HomogeneousPoly::from_form(alpha), random_poly(rng, n, deg - 1));
      const bool restricted = restrict_to_hyperplane(p, alpha).is_zero();
      c.expect(restricted == oracle::vanishes_on_hyperplane(p, alpha.coeffs, rng(), 100), "100-point evaluation");
      c.expect(restricted == oracle::divisible(p, alpha.coeffs), "division");
    }
  }
}

void criterion_consistency(Check& c) {
  const auto one = check_realization_criterion(parse_criterion(fixture_document("criterion-ac", "criterion-ac1.json")), 8);
  for (const auto& item : one.items) c.expect(item.kind == VerdictKind::VerifiedUpTo, "A_1 " + item.subject);
  for (const char* cond : {"i", "ii", "iii"}) c.expect(one.summary(cond) == VerdictKind::VerifiedUpTo, "A_1 summary");

  const auto two = check_realization_criterion(parse_criterion(fixture_document("criterion-ac", "criterion-ac2.json")), 8);
  bool split_fails = false;
  for (const auto& item : two.items) {
    if (item.kind == VerdictKind::Fails) {
      split_fails = split_fails || item.subject.find("spacelike") != std::string::npos;
    }
  }
  c.expect(split_fails && two.summary("ii") == VerdictKind::Fails, "A_2 split check fails");
  c.expect((realizable_circle(mk_Ac(1)).kind == CircleVerdictKind::Realizable) &&
               (realizable_circle(mk_Ac(2)).kind == CircleVerdictKind::NotRealizable),
           "agrees with the circle classifier");
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    double budget_ms;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"A_c classification", 1000, ac_classification},
      {"S6 graph cohomology and freeness", 1000, s6_graph},
      {"S6 system fixture: validation, TC and LC at bound 10", 30000, s6_system},
      {"forest criterion on parallel triangle and 100 GKM graphs", 5000, forest_criterion},
      {"freeness over rank 1 and 2, theta3 certificate", 60000, freeness_laws},
      {"invariance under relabeling, permutation and canonical forms", 30000, invariance},
      {"oracle equivalence for cohomology and divisibility", 60000, oracle_equivalence},
      {"realization criterion agrees with the circle classifier", 5000, criterion_consistency},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    c.expect(ms < criteria[i].budget_ms, "over time budget");
    std::printf("criterion %zu: %s (%.0f ms) %s%s%s\n", i + 1, c.ok ? "PASS" : "FAIL", ms, criteria[i].title,
                c.ok ? "" : ", first failure: ", c.first_failure.c_str());
    failures += !c.ok;
  }
  return failures == 0 ? 0 : 1;
}
