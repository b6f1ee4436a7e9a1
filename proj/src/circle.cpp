#include "torusfix/circle.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "torusfix/errors.hpp"
#include "torusfix/linalg.hpp"

namespace torusfix {

namespace {

std::vector<Integer> positive_divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

RatVector zero_vector(std::size_t n) { return RatVector(n, Rational(0)); }

RatVector axpy(RatVector a, const Rational& s, const RatVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

RatVector scale(RatVector a, const Rational& s) {
  for (auto& q : a) q *= s;
  return a;
}

// Synthetic division by (t - root); the remainder is dropped.
UniPoly divide_linear(const UniPoly& p, const Rational& root) {
  const int deg = p.degree();
  UniPoly q;
  q.coeffs.assign(static_cast<std::size_t>(deg), Rational(0));
  Rational carry = 0;
  for (int k = deg; k >= 1; --k) {
    carry = p.coeffs[static_cast<std::size_t>(k)] + carry * root;
    q.coeffs[static_cast<std::size_t>(k - 1)] = carry;
  }
  return q;
}

RatVector evaluate_at(const FiniteCommAlgebra& b, const UniPoly& p, const RatVector& x,
                      const RatVector& e) {
  RatVector acc = zero_vector(b.dim());
  for (int k = p.degree(); k >= 0; --k) {
    acc = b.multiply(acc, x);
    acc = axpy(acc, p.coeffs[static_cast<std::size_t>(k)], e);
  }
  return acc;
}

std::vector<RatVector> block_basis(const FiniteCommAlgebra& b, const RatVector& e) {
  Echelon ech(b.dim());
  std::vector<RatVector> basis;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    RatVector ei = zero_vector(b.dim());
    ei[i] = 1;
    RatVector v = b.multiply(e, ei);
    if (ech.insert(to_sparse(v))) basis.push_back(std::move(v));
  }
  return basis;
}

Rational trace_of_multiplication(const FiniteCommAlgebra& b, const RatVector& x) {
  Rational tr = 0;
  for (std::size_t k = 0; k < b.dim(); ++k) {
    RatVector ek = zero_vector(b.dim());
    ek[k] = 1;
    tr += b.multiply(x, ek)[k];
  }
  return tr;
}

}  // namespace

Rational UniPoly::evaluate(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::string UniPoly::to_string(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const Rational mag = abs(c);
    if (c < 0) {
      os << (first ? "-" : " - ");
    } else if (!first) {
      os << " + ";
    }
    first = false;
    if (mag != 1 || k == 0) os << mag.get_str();
    if (k > 0) {
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return first ? "0" : os.str();
}

std::vector<Rational> rational_roots(const UniPoly& p) {
  std::vector<Rational> roots;
  if (p.degree() < 1) return roots;
  Integer den = 1;
  for (const auto& c : p.coeffs) den = lcm(den, c.get_den());
  std::vector<Integer> a;
  for (const auto& c : p.coeffs) {
    Rational s = c * den;
    a.push_back(s.get_num());
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  std::size_t low = 0;
  while (low < a.size() && a[low] == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  if (a.size() - low < 2) return roots;

  std::vector<Rational> candidates;
  for (const auto& num : positive_divisors(a[low])) {
    for (const auto& q : positive_divisors(a.back())) {
      Rational r(num, q);
      r.canonicalize();
      candidates.push_back(r);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const auto& r : candidates) {
    for (const Rational& s : {r, Rational(-r)}) {
      if (p.evaluate(s) == 0) roots.push_back(s);
    }
  }
  return roots;
}

FiniteCommAlgebra::FiniteCommAlgebra(std::vector<std::string> names,
                                     std::vector<std::vector<RatVector>> mult, RatVector unit)
    : names_(std::move(names)), mult_(std::move(mult)), unit_(std::move(unit)) {
  const std::size_t r = names_.size();
  if (unit_.size() != r || mult_.size() != r) throw InvalidInput("structure constant size mismatch");
  for (const auto& row : mult_) {
    if (row.size() != r) throw InvalidInput("structure constant size mismatch");
    for (const auto& v : row) {
      if (v.size() != r) throw InvalidInput("structure constant size mismatch");
    }
  }
}

RatVector FiniteCommAlgebra::multiply(const RatVector& a, const RatVector& b) const {
  RatVector out = zero_vector(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (b[j] == 0) continue;
      out = axpy(std::move(out), a[i] * b[j], mult_[i][j]);
    }
  }
  return out;
}

std::vector<std::string> FiniteCommAlgebra::violations() const {
  std::vector<std::string> out;
  const std::size_t r = dim();
  auto basis = [&](std::size_t i) {
    RatVector v = zero_vector(r);
    v[i] = 1;
    return v;
  };
  for (std::size_t i = 0; i < r; ++i) {
    if (multiply(unit_, basis(i)) != basis(i)) out.push_back("unit law fails on " + names_[i]);
    for (std::size_t j = i + 1; j < r; ++j) {
      if (mult_[i][j] != mult_[j][i]) {
        out.push_back("not commutative: " + names_[i] + "*" + names_[j]);
      }
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t k = 0; k < r; ++k) {
        if (multiply(mult_[i][j], basis(k)) != multiply(basis(i), mult_[j][k])) {
          out.push_back("not associative: (" + names_[i] + "," + names_[j] + "," + names_[k] + ")");
        }
      }
    }
  }
  return out;
}

FiniteCommAlgebra FiniteCommAlgebra::permuted(const std::vector<std::size_t>& perm) const {
  const std::size_t r = dim();
  auto to_new = [&](const RatVector& v) {
    RatVector out(r);
    for (std::size_t k = 0; k < r; ++k) out[k] = v[perm[k]];
    return out;
  };
  std::vector<std::string> names(r);
  std::vector<std::vector<RatVector>> mult(r, std::vector<RatVector>(r));
  for (std::size_t i = 0; i < r; ++i) {
    names[i] = names_[perm[i]];
    for (std::size_t j = 0; j < r; ++j) mult[i][j] = to_new(mult_[perm[i]][perm[j]]);
  }
  return FiniteCommAlgebra(std::move(names), std::move(mult), to_new(unit_));
}

std::string FiniteCommAlgebra::element_to_string(const RatVector& v) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (v[i] == 0) continue;
    const Rational mag = abs(v[i]);
    if (v[i] < 0) {
      os << (first ? "-" : " - ");
    } else if (!first) {
      os << " + ";
    }
    first = false;
    if (mag != 1) os << mag.get_str() << "*";
    os << names_[i];
  }
  return first ? "0" : os.str();
}

UniPoly minimal_polynomial(const FiniteCommAlgebra& b, const RatVector& x, const RatVector& e) {
  SpanSolver solver(b.dim());
  RatVector power = e;
  for (std::size_t k = 0; k <= b.dim(); ++k) {
    if (auto rel = solver.add(to_sparse(power))) {
      UniPoly m;
      m.coeffs.assign(k + 1, Rational(0));
      for (const auto& t : *rel) m.coeffs[t.col] = t.value;
      const Rational lead = m.coeffs.back();
      for (auto& c : m.coeffs) c /= lead;
      return m;
    }
    power = b.multiply(power, x);
  }
  throw InvariantBreach("minimal polynomial degree exceeds algebra dimension");
}

SplitResult split_semisimple_test(const FiniteCommAlgebra& b) {
  if (!b.violations().empty()) throw InvalidInput("not a commutative associative unital algebra");
  SplitResult result;
  const std::size_t r = b.dim();
  if (r == 0) return result;

  SparseMatrix gram(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const Rational t = trace_of_multiplication(b, b.product_of_basis(i, j));
      if (t != 0) gram.add(i, j, t);
    }
  }
  const auto radical = kernel_basis(gram);
  if (!radical.empty()) {
    result.kind = SplitKind::Nilpotents;
    result.witness = to_dense(radical.front(), r);
    return result;
  }

  struct Block {
    RatVector unit;
    std::vector<RatVector> basis;
  };
  std::deque<Block> pending{{b.unit(), block_basis(b, b.unit())}};
  while (!pending.empty()) {
    Block blk = std::move(pending.front());
    pending.pop_front();
    if (blk.basis.size() == 1) {
      result.idempotents.push_back(std::move(blk.unit));
      continue;
    }
    std::optional<std::pair<RatVector, UniPoly>> no_root;
    bool split = false;
    for (const auto& x : blk.basis) {
      const UniPoly m = minimal_polynomial(b, x, blk.unit);
      if (m.degree() <= 1) continue;
      const auto roots = rational_roots(m);
      if (roots.empty()) {
        if (!no_root) no_root.emplace(x, m);
        continue;
      }
      const UniPoly q = divide_linear(m, roots.front());
      const RatVector e1 = scale(evaluate_at(b, q, x, blk.unit), 1 / q.evaluate(roots.front()));
      const RatVector e2 = axpy(blk.unit, Rational(-1), e1);
      pending.push_back({e1, block_basis(b, e1)});
      pending.push_back({e2, block_basis(b, e2)});
      split = true;
      break;
    }
    if (split) continue;
    if (!no_root) throw InvariantBreach("block of dimension > 1 has only scalar elements");
    result.kind = SplitKind::FieldExtension;
    result.idempotents.clear();
    result.witness = std::move(no_root->first);
    result.witness_polynomial = std::move(no_root->second);
    return result;
  }
  return result;
}

CircleAlgebra::CircleAlgebra(std::vector<CircleGenerator> gens, std::size_t unit, Table mult)
    : gens_(std::move(gens)), unit_(unit), mult_(std::move(mult)) {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    for (std::size_t j = i + 1; j < gens_.size(); ++j) {
      if (gens_[i].name == gens_[j].name) throw InvalidInput("duplicate generator '" + gens_[i].name + "'");
    }
    if (gens_[i].order && *gens_[i].order == 0) {
      throw InvalidInput("torsion order of '" + gens_[i].name + "' must be at least 1");
    }
  }
  if (!gens_.empty() && unit_ >= gens_.size()) throw InvalidInput("unit is not a generator");
  for (const auto& [key, terms] : mult_) {
    if (key.first >= gens_.size() || key.second >= gens_.size()) {
      throw InvalidInput("multiplication table names an unknown generator");
    }
    for (const auto& t : terms) {
      if (t.gen >= gens_.size()) throw InvalidInput("multiplication term names an unknown generator");
    }
  }
}

std::size_t CircleAlgebra::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name == name) return i;
  }
  throw InvalidInput("unknown generator '" + name + "'");
}

void CircleAlgebra::add_reduced(CircleElement& out, std::size_t gen, unsigned xpow,
                                const Rational& c) const {
  if (c == 0) return;
  const auto& g = gens_[gen];
  if (g.order && xpow >= *g.order) return;
  auto [it, inserted] = out.emplace(CircleMonomial{gen, xpow}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) out.erase(it);
  }
}

CircleElement CircleAlgebra::generator(std::size_t i) const {
  CircleElement e;
  add_reduced(e, i, 0, Rational(1));
  return e;
}

CircleElement CircleAlgebra::product(std::size_t i, std::size_t j) const {
  CircleElement out;
  auto direct = mult_.find({i, j});
  if (direct != mult_.end()) {
    for (const auto& t : direct->second) add_reduced(out, t.gen, t.xpow, t.coef);
    return out;
  }
  if (i == unit_) return generator(j);
  if (j == unit_) return generator(i);
  auto swapped = mult_.find({j, i});
  if (swapped != mult_.end()) {
    const bool odd = (gens_[i].degree % 2 == 1) && (gens_[j].degree % 2 == 1);
    for (const auto& t : swapped->second) add_reduced(out, t.gen, t.xpow, odd ? Rational(-t.coef) : t.coef);
  }
  return out;
}

CircleElement CircleAlgebra::multiply(const CircleElement& a, const CircleElement& b) const {
  CircleElement out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      for (const auto& [mc, cc] : product(ma.first, mb.first)) {
        add_reduced(out, mc.first, ma.second + mb.second + mc.second, ca * cb * cc);
      }
    }
  }
  return out;
}

std::size_t CircleAlgebra::dimension(unsigned m) const {
  std::size_t dim = 0;
  for (const auto& g : gens_) {
    if (g.degree > m || (m - g.degree) % 2 != 0) continue;
    const unsigned xpow = (m - g.degree) / 2;
    if (g.is_free() || xpow < *g.order) ++dim;
  }
  return dim;
}

std::vector<std::string> validate(const CircleAlgebra& a) {
  std::vector<std::string> out;
  const auto& gens = a.generators();
  if (gens.empty()) return out;
  const std::size_t u = a.unit();
  if (gens[u].degree != 0) out.push_back("unit '" + gens[u].name + "' is not in degree 0");

  for (const auto& [key, terms] : a.table()) {
    const auto& l = gens[key.first];
    const auto& r = gens[key.second];
    for (const auto& t : terms) {
      if (l.degree + r.degree != gens[t.gen].degree + 2 * t.xpow) {
        out.push_back("inhomogeneous term in " + l.name + "*" + r.name + ": x^" +
                      std::to_string(t.xpow) + "*" + gens[t.gen].name);
      }
    }
  }

  auto shifted = [&](const CircleElement& e, unsigned k) {
    CircleElement x;
    x.emplace(CircleMonomial{u, k}, Rational(1));
    return a.multiply(x, e);
  };
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (a.product(u, i) != a.generator(i) || a.product(i, u) != a.generator(i)) {
      out.push_back("unit law fails on " + gens[i].name);
    }
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const auto pij = a.product(i, j);
      for (std::size_t side : {i, j}) {
        if (gens[side].order && !shifted(pij, *gens[side].order).empty()) {
          out.push_back("x^" + std::to_string(*gens[side].order) + " does not annihilate " +
                        gens[i].name + "*" + gens[j].name);
        }
      }
      const bool odd = gens[i].degree % 2 == 1 && gens[j].degree % 2 == 1;
      CircleElement pji = a.product(j, i);
      if (odd) {
        for (auto& [m, c] : pji) c = -c;
      }
      if (pij != pji) {
        out.push_back("not graded-commutative: " + gens[i].name + "*" + gens[j].name);
      }
    }
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const auto left = a.multiply(a.product(i, j), a.generator(k));
        const auto right = a.multiply(a.generator(i), a.product(j, k));
        if (left != right) {
          out.push_back("not associative: (" + gens[i].name + "," + gens[j].name + "," +
                        gens[k].name + ")");
        }
      }
    }
  }
  return out;
}

CircleAlgebra mk_Ac(const Rational& c) {
  std::vector<CircleGenerator> gens{{"1", 0, std::nullopt}, {"a", 2, std::nullopt}};
  CircleAlgebra::Table table;
  std::vector<CircleTerm> aa;
  if (c != 0) aa.push_back({0, c, 2});
  table[{1, 1}] = aa;
  return CircleAlgebra(std::move(gens), 0, std::move(table));
}

FiniteCommAlgebra degree_zero_algebra(const CircleAlgebra& a) {
  std::vector<std::size_t> idx;
  std::vector<std::string> names;
  const auto& gens = a.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].degree == 0) {
      idx.push_back(i);
      names.push_back(gens[i].name);
    }
  }
  const std::size_t r = idx.size();
  auto position = [&](std::size_t gen) {
    return static_cast<std::size_t>(std::find(idx.begin(), idx.end(), gen) - idx.begin());
  };
  std::vector<std::vector<RatVector>> mult(r, std::vector<RatVector>(r, zero_vector(r)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      for (const auto& [m, c] : a.product(idx[i], idx[j])) {
        if (m.second == 0 && position(m.first) < r) mult[i][j][position(m.first)] += c;
      }
    }
  }
  RatVector unit = zero_vector(r);
  if (!gens.empty() && position(a.unit()) < r) unit[position(a.unit())] = 1;
  return FiniteCommAlgebra(std::move(names), std::move(mult), std::move(unit));
}

CircleHypotheses hypothesis_check(const CircleAlgebra& a) {
  CircleHypotheses h;
  for (const auto& g : a.generators()) {
    if (g.degree == 1) {
      h.a1_zero = false;
      h.details.push_back("A^1 contains generator '" + g.name + "'");
    }
    if (g.degree == 0 && g.order && *g.order < 2) {
      h.injective_a0_a2 = false;
      h.details.push_back("x annihilates degree-0 generator '" + g.name + "'");
    }
  }
  const FiniteCommAlgebra a0 = degree_zero_algebra(a);
  const SplitResult split = split_semisimple_test(a0);
  if (split.kind != SplitKind::SplitSemisimple) {
    h.spacelike = false;
    h.details.push_back("A^0 is not split semisimple: " + to_string(split.kind) + " witness " +
                        a0.element_to_string(split.witness));
  }
  return h;
}

Localization localized_degree_zero(const CircleAlgebra& a) {
  Localization loc;
  const auto& gens = a.generators();
  std::vector<std::size_t> idx;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!gens[i].is_free()) continue;
    if (gens[i].degree % 2 == 1) {
      loc.odd_free_generator = gens[i].name;
      return loc;
    }
    idx.push_back(i);
    const unsigned half = gens[i].degree / 2;
    std::string name = gens[i].name;
    if (half == 1) name += "/x";
    if (half > 1) name += "/x^" + std::to_string(half);
    names.push_back(std::move(name));
  }
  const std::size_t r = idx.size();
  auto position = [&](std::size_t gen) {
    return static_cast<std::size_t>(std::find(idx.begin(), idx.end(), gen) - idx.begin());
  };
  std::vector<std::vector<RatVector>> mult(r, std::vector<RatVector>(r, zero_vector(r)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      for (const auto& [m, c] : a.product(idx[i], idx[j])) {
        if (position(m.first) < r) mult[i][j][position(m.first)] += c;
      }
    }
  }
  RatVector unit = zero_vector(r);
  if (r > 0) {
    const std::size_t u = position(a.unit());
    if (u >= r) throw InvalidInput("free generators present but the unit is torsion");
    unit[u] = 1;
  }
  loc.algebra.emplace(std::move(names), std::move(mult), std::move(unit));
  return loc;
}

CircleVerdict realizable_circle(const CircleAlgebra& a) {
  const auto problems = validate(a);
  if (!problems.empty()) throw InvalidInput("invalid circle algebra: " + problems.front());
  CircleVerdict v;
  if (a.generators().empty()) return v;

  const CircleHypotheses h = hypothesis_check(a);
  auto violated = [&](CircleHypothesis which, std::string witness) {
    v.kind = CircleVerdictKind::HypothesisViolated;
    v.violated = which;
    v.witness = std::move(witness);
    return v;
  };
  if (!h.a1_zero) return violated(CircleHypothesis::A1Nonzero, h.details.front());
  if (!h.spacelike) return violated(CircleHypothesis::NotSpacelike, h.details.front());
  if (!h.injective_a0_a2) return violated(CircleHypothesis::InjectivityA0A2, h.details.front());

  const Localization loc = localized_degree_zero(a);
  if (loc.odd_free_generator) {
    return violated(CircleHypothesis::NilpotentsInLocalization, *loc.odd_free_generator);
  }
  const FiniteCommAlgebra& b = *loc.algebra;
  const SplitResult split = split_semisimple_test(b);
  switch (split.kind) {
    case SplitKind::Nilpotents:
      return violated(CircleHypothesis::NilpotentsInLocalization, b.element_to_string(split.witness));
    case SplitKind::FieldExtension:
      v.kind = CircleVerdictKind::NotRealizable;
      v.field_polynomial = split.witness_polynomial;
      v.witness = b.element_to_string(split.witness);
      return v;
    case SplitKind::SplitSemisimple:
      v.fixed_points = split.idempotents.size();
      for (const auto& e : split.idempotents) v.idempotents.push_back(b.element_to_string(e));
      return v;
  }
  throw InvariantBreach("unreachable split kind");
}

std::string to_string(CircleVerdictKind k) {
  switch (k) {
    case CircleVerdictKind::Realizable: return "realizable";
    case CircleVerdictKind::NotRealizable: return "not-realizable";
    case CircleVerdictKind::HypothesisViolated: return "hypothesis-violated";
  }
  return "?";
}

std::string to_string(CircleHypothesis h) {
  switch (h) {
    case CircleHypothesis::None: return "none";
    case CircleHypothesis::NotSpacelike: return "not-spacelike";
    case CircleHypothesis::A1Nonzero: return "A1-nonzero";
    case CircleHypothesis::InjectivityA0A2: return "injectivity-A0-A2";
    case CircleHypothesis::NilpotentsInLocalization: return "nilpotents-in-localization";
  }
  return "?";
}

std::string to_string(SplitKind k) {
  switch (k) {
    case SplitKind::SplitSemisimple: return "split-semisimple";
    case SplitKind::Nilpotents: return "nilpotents";
    case SplitKind::FieldExtension: return "field-extension";
  }
  return "?";
}

}  // namespace torusfix
