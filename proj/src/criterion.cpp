#include "torusfix/criterion.hpp"

#include <algorithm>
#include <functional>

#include "torusfix/circle.hpp"
#include "torusfix/errors.hpp"

namespace torusfix {

void mod_add(ModElement& acc, const ModElement& x, const Rational& s) {
  for (const auto& [g, p] : x) {
    auto it = acc.find(g);
    if (it == acc.end()) {
      acc.emplace(g, p * s);
    } else {
      it->second += p * s;
    }
  }
  for (auto it = acc.begin(); it != acc.end();) {
    it = it->second.is_zero() ? acc.erase(it) : std::next(it);
  }
}

ModElement mod_scale(const HomogeneousPoly& p, const ModElement& x) {
  ModElement out;
  for (const auto& [g, q] : x) {
    HomogeneousPoly pq = poly_mul(p, q);
    if (!pq.is_zero()) out.emplace(g, std::move(pq));
  }
  return out;
}

GradedAlgebraPresentation::GradedAlgebraPresentation(std::size_t ring_rank,
                                                     std::vector<ModuleGenerator> gens,
                                                     std::vector<ModElement> relations, Table table,
                                                     ModElement unit)
    : r_(ring_rank), gens_(std::move(gens)), relations_(std::move(relations)), table_(std::move(table)),
      unit_(std::move(unit)) {
  auto check = [&](const ModElement& x) {
    for (const auto& [g, p] : x) {
      if (g >= gens_.size()) throw InvalidInput("term names an unknown generator");
      if (p.n() != r_) throw InvalidInput("coefficient has the wrong number of variables");
    }
  };
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (gens_[i].name == gens_[j].name) throw InvalidInput("duplicate generator '" + gens_[i].name + "'");
    }
  }
  for (const auto& rel : relations_) check(rel);
  for (const auto& [key, x] : table_) {
    if (key.first >= gens_.size() || key.second >= gens_.size()) {
      throw InvalidInput("product of unknown generators");
    }
    check(x);
  }
  check(unit_);
}

std::optional<std::size_t> GradedAlgebraPresentation::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<unsigned> GradedAlgebraPresentation::degree(const ModElement& x) const {
  std::optional<unsigned> deg;
  for (const auto& [g, p] : x) {
    if (p.is_zero()) continue;
    const unsigned d = 2 * p.deg() + gens_[g].degree;
    if (deg && *deg != d) throw InvalidInput("inhomogeneous element " + to_string(x));
    deg = d;
  }
  return deg;
}

ModElement GradedAlgebraPresentation::product(std::size_t a, std::size_t b) const {
  auto it = table_.find({a, b});
  if (it != table_.end()) return it->second;
  it = table_.find({b, a});
  if (it == table_.end()) return {};
  const bool odd = gens_[a].degree % 2 == 1 && gens_[b].degree % 2 == 1;
  ModElement out;
  mod_add(out, it->second, odd ? Rational(-1) : Rational(1));
  return out;
}

ModElement GradedAlgebraPresentation::multiply(const ModElement& a, const ModElement& b) const {
  ModElement out;
  for (const auto& [ga, pa] : a) {
    for (const auto& [gb, pb] : b) mod_add(out, mod_scale(poly_mul(pa, pb), product(ga, gb)));
  }
  return out;
}

SparseVec GradedAlgebraPresentation::free_coordinates(const ModElement& x, const Level& lv) const {
  SparseVec out;
  for (const auto& [g, p] : x) {
    for (const auto& [e, c] : p.terms()) {
      auto it = lv.index.find({g, e});
      if (it == lv.index.end()) throw InvalidInput("element of unexpected degree: " + to_string(x));
      out.push_back({it->second, c});
    }
  }
  std::sort(out.begin(), out.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
  return out;
}

const GradedAlgebraPresentation::Level& GradedAlgebraPresentation::level(unsigned m) const {
  auto found = levels_.find(m);
  if (found != levels_.end()) return found->second;
  Level lv;
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    const unsigned d = gens_[g].degree;
    if (d > m || (m - d) % 2) continue;
    for (const auto& e : monomial_basis(r_, (m - d) / 2)) {
      lv.index.emplace(std::make_pair(g, e), lv.free.size());
      lv.free.emplace_back(g, e);
    }
  }
  lv.relations = Echelon(lv.free.size());
  for (const auto& rel : relations_) {
    const auto deg = degree(rel);
    if (!deg || *deg > m || (m - *deg) % 2) continue;
    for (const auto& e : monomial_basis(r_, (m - *deg) / 2)) {
      lv.relations.insert(free_coordinates(mod_scale(HomogeneousPoly::monomial(e), rel), lv));
    }
  }
  for (std::size_t c = 0; c < lv.free.size(); ++c) {
    if (!lv.relations.is_pivot(c)) lv.quotient_cols.push_back(c);
  }
  return levels_.emplace(m, std::move(lv)).first->second;
}

std::size_t GradedAlgebraPresentation::dim(unsigned m) const { return level(m).quotient_cols.size(); }

SparseVec GradedAlgebraPresentation::normal_form(const ModElement& x, unsigned m) const {
  const Level& lv = level(m);
  return lv.relations.reduce(free_coordinates(x, lv));
}

RatVector GradedAlgebraPresentation::quotient_coords(const ModElement& x, unsigned m) const {
  const Level& lv = level(m);
  RatVector out(lv.quotient_cols.size(), Rational(0));
  for (const auto& e : normal_form(x, m)) {
    const auto it = std::lower_bound(lv.quotient_cols.begin(), lv.quotient_cols.end(), e.col);
    if (it == lv.quotient_cols.end() || *it != e.col) throw InvariantBreach("reduced vector has a pivot entry");
    out[static_cast<std::size_t>(it - lv.quotient_cols.begin())] = e.value;
  }
  return out;
}

std::vector<ModElement> GradedAlgebraPresentation::quotient_basis(unsigned m) const {
  const Level& lv = level(m);
  std::vector<ModElement> out;
  for (std::size_t c : lv.quotient_cols) {
    const auto& [g, e] = lv.free[c];
    out.push_back(ModElement{{g, HomogeneousPoly::monomial(e)}});
  }
  return out;
}

std::vector<std::string> GradedAlgebraPresentation::violations() const {
  std::vector<std::string> out;
  auto gen = [&](std::size_t g) {
    return ModElement{{g, HomogeneousPoly::constant(r_, 1)}};
  };
  auto equal_in = [&](const ModElement& a, const ModElement& b, unsigned m) {
    ModElement diff = a;
    mod_add(diff, b, Rational(-1));
    return is_zero(diff, m);
  };
  try {
    for (const auto& rel : relations_) degree(rel);
    for (const auto& [key, x] : table_) {
      const auto deg = degree(x);
      if (deg && *deg != gens_[key.first].degree + gens_[key.second].degree) {
        out.push_back("product " + gens_[key.first].name + "*" + gens_[key.second].name + " has the wrong degree");
      }
    }
    const auto unit_deg = degree(unit_);
    if (unit_deg && *unit_deg != 0) out.push_back("unit is not in degree 0");
  } catch (const InvalidInput& e) {
    out.push_back(e.what());
  }
  if (!out.empty()) return out;

  for (const auto& rel : relations_) {
    const auto deg = degree(rel);
    if (!deg) continue;
    for (std::size_t c = 0; c < gens_.size(); ++c) {
      if (!is_zero(multiply(rel, gen(c)), *deg + gens_[c].degree)) {
        out.push_back("relation " + to_string(rel) + " times " + gens_[c].name + " is not a relation");
      }
    }
  }
  for (std::size_t a = 0; a < gens_.size(); ++a) {
    const unsigned da = gens_[a].degree;
    if (!equal_in(multiply(unit_, gen(a)), gen(a), da) || !equal_in(multiply(gen(a), unit_), gen(a), da)) {
      out.push_back("unit law fails on " + gens_[a].name);
    }
    for (std::size_t b = 0; b < gens_.size(); ++b) {
      const unsigned db = gens_[b].degree;
      ModElement swapped;
      mod_add(swapped, product(b, a), (da % 2 && db % 2) ? Rational(-1) : Rational(1));
      if (!equal_in(product(a, b), swapped, da + db)) {
        out.push_back("not graded-commutative: " + gens_[a].name + "*" + gens_[b].name);
      }
      for (std::size_t c = 0; c < gens_.size(); ++c) {
        const ModElement left = multiply(product(a, b), gen(c));
        const ModElement right = multiply(gen(a), product(b, c));
        if (!equal_in(left, right, da + db + gens_[c].degree)) {
          out.push_back("not associative: (" + gens_[a].name + "," + gens_[b].name + "," + gens_[c].name + ")");
        }
      }
    }
  }
  return out;
}

std::string GradedAlgebraPresentation::to_string(const ModElement& x) const {
  if (x.empty()) return "0";
  std::string s;
  for (const auto& [g, p] : x) {
    if (!s.empty()) s += " + ";
    s += "(" + p.to_string() + ")*" + gens_[g].name;
  }
  return s;
}

HomogeneousPoly substitute_linear(const HomogeneousPoly& p, const std::vector<RatVector>& m,
                                  std::size_t target_rank) {
  HomogeneousPoly out(target_rank, p.deg());
  for (const auto& [e, c] : p.terms()) {
    HomogeneousPoly term = HomogeneousPoly::constant(target_rank, c);
    for (std::size_t a = 0; a < e.size(); ++a) {
      if (e[a]) term = poly_mul(term, poly_pow(HomogeneousPoly::from_form(LinearForm{m[a]}), e[a]));
    }
    out += term;
  }
  return out;
}

ModElement substitute_linear(const ModElement& x, const std::vector<RatVector>& m, std::size_t target_rank) {
  ModElement out;
  for (const auto& [g, p] : x) {
    HomogeneousPoly q = substitute_linear(p, m, target_rank);
    if (!q.is_zero()) out.emplace(g, std::move(q));
  }
  return out;
}

GradedAlgebraPresentation base_change(const GradedAlgebraPresentation& a, const std::vector<RatVector>& m,
                                      std::size_t target_rank) {
  std::vector<ModElement> rels;
  for (const auto& r : a.relations()) rels.push_back(substitute_linear(r, m, target_rank));
  GradedAlgebraPresentation::Table table;
  for (const auto& [key, x] : a.table()) table.emplace(key, substitute_linear(x, m, target_rank));
  return GradedAlgebraPresentation(target_rank, a.gens(), std::move(rels), std::move(table),
                                   substitute_linear(a.unit(), m, target_rank));
}

std::optional<RatVector> local_coordinates(const RatVector& v, const std::vector<RatVector>& basis) {
  SpanSolver solver(v.size());
  for (const auto& b : basis) solver.add(to_sparse(b));
  const auto coeffs = solver.express(to_sparse(v));
  if (!coeffs) return std::nullopt;
  return to_dense(*coeffs, basis.size());
}

std::optional<HomogeneousPoly> to_local(const HomogeneousPoly& ambient, const std::vector<RatVector>& basis) {
  const std::size_t r = basis.size();
  const unsigned deg = ambient.deg();
  const MonomialIndex idx(ambient.n(), deg);
  const auto local = monomial_basis(r, deg);
  SpanSolver solver(idx.size());
  for (const auto& alpha : local) {
    HomogeneousPoly p = HomogeneousPoly::constant(ambient.n(), 1);
    for (std::size_t a = 0; a < r; ++a) {
      if (alpha[a]) p = poly_mul(p, poly_pow(HomogeneousPoly::from_form(LinearForm{basis[a]}), alpha[a]));
    }
    solver.add(p.coordinates(idx));
  }
  const auto coeffs = solver.express(ambient.coordinates(idx));
  if (!coeffs) return std::nullopt;
  HomogeneousPoly out(r, deg);
  for (const auto& e : *coeffs) out.add_term(local[e.col], e.value);
  return out;
}

VerdictKind CriterionReport::summary(const std::string& condition) const {
  VerdictKind k = VerdictKind::VerifiedUpTo;
  for (const auto& item : items) {
    if (item.condition != condition) continue;
    if (item.kind == VerdictKind::Fails) return VerdictKind::Fails;
    if (item.kind == VerdictKind::Inconclusive) k = VerdictKind::Inconclusive;
  }
  return k;
}

namespace {

bool span_contains(const std::vector<RatVector>& big, const std::vector<RatVector>& small, std::size_t n) {
  Echelon e(n);
  for (const auto& v : big) e.insert(to_sparse(v));
  for (const auto& v : small) {
    if (!e.contains(to_sparse(v))) return false;
  }
  return true;
}

bool same_span(const std::vector<RatVector>& a, const std::vector<RatVector>& b, std::size_t n) {
  return span_contains(a, b, n) && span_contains(b, a, n);
}

CriterionItem item(std::string condition, std::string subject, VerdictKind kind = VerdictKind::VerifiedUpTo,
                   std::string detail = {}) {
  CriterionItem it;
  it.condition = std::move(condition);
  it.subject = std::move(subject);
  it.kind = kind;
  it.detail = std::move(detail);
  return it;
}

class Checker {
 public:
  Checker(const CriterionData& d, unsigned bound, const AnnihilatorPolicy& policy)
      : d_(d), bound_(bound), policy_(policy) {}

  CriterionReport run() {
    validate_shape();
    rep_.degree_bound = bound_;
    condition_i();
    condition_ii();
    condition_iii();
    return std::move(rep_);
  }

 private:
  std::size_t dim(std::size_t i) const { return d_.spaces[i].basis.size(); }
  const std::string& name(std::size_t i) const { return d_.spaces[i].name; }
  bool includes(std::size_t i, std::size_t j) const {
    return span_contains(d_.spaces[i].basis, d_.spaces[j].basis, d_.n);
  }

  void validate_shape() {
    if (d_.algebras.size() != d_.spaces.size()) throw InvalidInput("one algebra per subspace is required");
    for (std::size_t i = 0; i < d_.spaces.size(); ++i) {
      for (const auto& v : d_.spaces[i].basis) {
        if (v.size() != d_.n) throw InvalidInput("subspace " + name(i) + " has vectors of the wrong length");
      }
      Echelon e(d_.n);
      for (const auto& v : d_.spaces[i].basis) {
        if (!e.insert(to_sparse(v))) throw InvalidInput("basis of " + name(i) + " is dependent");
      }
      if (d_.algebras[i].ring_rank() != dim(i)) throw InvalidInput("algebra over " + name(i) + " has the wrong ring");
      for (std::size_t j = 0; j < i; ++j) {
        if (same_span(d_.spaces[i].basis, d_.spaces[j].basis, d_.n)) {
          throw InvalidInput("subspaces " + name(j) + " and " + name(i) + " coincide");
        }
      }
      if (dim(i) == d_.n && !full_) full_ = i;
      if (dim(i) == 0) zero_ = true;
    }
    if (!full_) throw InvalidInput("the full space V_0 = V is missing");
    if (!zero_) throw InvalidInput("the zero subspace is missing");
    for (const auto& m : d_.maps) {
      if (m.from >= d_.spaces.size() || m.to >= d_.spaces.size()) throw InvalidInput("map between unknown subspaces");
      if (m.images.size() != d_.algebras[m.from].gens().size()) {
        throw InvalidInput("map " + name(m.from) + " -> " + name(m.to) + " needs one image per generator");
      }
    }
  }

  void condition_i() {
    bool ok = true;
    for (std::size_t i = 0; i < d_.spaces.size(); ++i) {
      for (std::size_t j = i + 1; j < d_.spaces.size(); ++j) {
        std::vector<RatVector> sum = d_.spaces[i].basis;
        sum.insert(sum.end(), d_.spaces[j].basis.begin(), d_.spaces[j].basis.end());
        bool found = false;
        for (std::size_t l = 0; l < d_.spaces.size() && !found; ++l) {
          found = same_span(sum, d_.spaces[l].basis, d_.n);
        }
        if (!found) {
          ok = false;
          rep_.items.push_back(item("i", name(i) + " + " + name(j), VerdictKind::Fails, "sum is not in the list"));
        }
      }
    }
    if (ok) rep_.items.push_back(item("i", "sum-closure"));
  }

  void condition_ii() {
    for (std::size_t i = 0; i < d_.spaces.size(); ++i) {
      const GradedAlgebraPresentation& a = d_.algebras[i];
      const std::string subject = "A over " + name(i);
      const auto problems = a.violations();
      if (!problems.empty()) {
        rep_.items.push_back(item("ii", subject + ": presentation", VerdictKind::Fails, problems.front()));
        continue;
      }
      rep_.items.push_back(a.dim(1) == 0 ? item("ii", subject + ": A^1 = 0")
                                         : item("ii", subject + ": A^1 = 0", VerdictKind::Fails,
                                                "dimension " + std::to_string(a.dim(1))));

      const auto basis0 = a.quotient_basis(0);
      std::vector<std::string> names;
      std::vector<std::vector<RatVector>> mult(basis0.size(), std::vector<RatVector>(basis0.size()));
      for (std::size_t p = 0; p < basis0.size(); ++p) {
        names.push_back(a.to_string(basis0[p]));
        for (std::size_t q = 0; q < basis0.size(); ++q) mult[p][q] = a.quotient_coords(a.multiply(basis0[p], basis0[q]), 0);
      }
      const FiniteCommAlgebra zero_part(names, mult, a.quotient_coords(a.unit(), 0));
      const SplitResult split = split_semisimple_test(zero_part);
      if (split.kind == SplitKind::SplitSemisimple) {
        rep_.items.push_back(item("ii", subject + ": spacelike"));
      } else {
        std::string detail = to_string(split.kind) + ", witness " + zero_part.element_to_string(split.witness);
        if (split.kind == SplitKind::FieldExtension) detail += ", minimal polynomial " + split.witness_polynomial.to_string();
        rep_.items.push_back(item("ii", subject + ": spacelike", VerdictKind::Fails, detail));
      }

      std::vector<RatVector> images;
      for (std::size_t y = 0; y < dim(i); ++y) {
        for (const auto& e : basis0) images.push_back(a.quotient_coords(mod_scale(HomogeneousPoly::variable(dim(i), y), e), 2));
      }
      Echelon ech(a.dim(2));
      for (const auto& v : images) ech.insert(to_sparse(v));
      rep_.items.push_back(ech.rank() == images.size()
                               ? item("ii", subject + ": V ⊗ A^0 -> A^2 injective")
                               : item("ii", subject + ": V ⊗ A^0 -> A^2 injective", VerdictKind::Fails,
                                      "kernel of dimension " + std::to_string(images.size() - ech.rank())));
    }
  }

  std::vector<RatVector> inclusion(std::size_t i, std::size_t j) const {
    std::vector<RatVector> m;
    for (const auto& v : d_.spaces[j].basis) m.push_back(*local_coordinates(v, d_.spaces[i].basis));
    return m;
  }

  const GradedAlgebraPresentation& target(std::size_t i, std::size_t j) {
    auto key = std::make_pair(i, j);
    auto it = targets_.find(key);
    if (it == targets_.end()) {
      it = targets_.emplace(key, base_change(d_.algebras[j], inclusion(i, j), dim(i))).first;
    }
    return it->second;
  }

  const CriterionMap* find_map(std::size_t i, std::size_t j) const {
    for (const auto& m : d_.maps) {
      if (m.from == i && m.to == j) return &m;
    }
    return nullptr;
  }

  ModElement apply(const CriterionMap& f, const ModElement& x) const {
    ModElement out;
    for (const auto& [g, p] : x) mod_add(out, mod_scale(p, f.images[g]));
    return out;
  }

  void condition_iii() {
    const std::size_t k = d_.spaces.size();
    for (const auto& m : d_.maps) {
      if (m.from == m.to || !includes(m.from, m.to)) {
        rep_.items.push_back(item("iii", "f " + name(m.from) + " -> " + name(m.to), VerdictKind::Fails,
                                  "target subspace is not contained in the source subspace"));
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j || !includes(i, j)) continue;
        const CriterionMap* f = find_map(i, j);
        const std::string subject = "f " + name(i) + " -> " + name(j);
        if (!f) {
          rep_.items.push_back(item("iii", subject, VerdictKind::Fails, "missing map"));
          continue;
        }
        rep_.items.push_back(map_item(*f, subject));
      }
    }
    if (summary_has_failure()) return;

    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t l = 0; l < k; ++l) {
          if (i == j || j == l || i == l || !includes(i, j) || !includes(j, l)) continue;
          rep_.items.push_back(cocycle_item(i, j, l));
        }
      }
    }

    std::vector<std::vector<RatVector>> tests = d_.tests;
    if (tests.empty()) {
      for (const auto& s : d_.spaces) tests.push_back(s.basis);
    }
    for (const auto& w : tests) rep_.items.push_back(localization_item(w));
  }

  bool summary_has_failure() const {
    for (const auto& it : rep_.items) {
      if (it.condition == "iii" && it.kind == VerdictKind::Fails) return true;
    }
    return false;
  }

  CriterionItem map_item(const CriterionMap& f, const std::string& subject) {
    const GradedAlgebraPresentation& src = d_.algebras[f.from];
    const GradedAlgebraPresentation& tgt = target(f.from, f.to);
    auto fail = [&](const std::string& why) { return item("iii", subject, VerdictKind::Fails, why); };
    auto equal_in = [&](const ModElement& a, const ModElement& b, unsigned m) {
      ModElement diff = a;
      mod_add(diff, b, Rational(-1));
      return tgt.is_zero(diff, m);
    };
    try {
      for (std::size_t g = 0; g < src.gens().size(); ++g) {
        const auto deg = tgt.degree(f.images[g]);
        if (deg && *deg != src.gens()[g].degree) return fail("image of " + src.gens()[g].name + " has the wrong degree");
      }
      for (const auto& rel : src.relations()) {
        const auto deg = src.degree(rel);
        if (deg && !tgt.is_zero(apply(f, rel), *deg)) return fail("relation " + src.to_string(rel) + " is not respected");
      }
      if (!equal_in(apply(f, src.unit()), tgt.unit(), 0)) return fail("unit is not preserved");
      for (std::size_t a = 0; a < src.gens().size(); ++a) {
        for (std::size_t b = 0; b < src.gens().size(); ++b) {
          const ModElement lhs = apply(f, src.product(a, b));
          const ModElement rhs = tgt.multiply(f.images[a], f.images[b]);
          if (!equal_in(lhs, rhs, src.gens()[a].degree + src.gens()[b].degree)) {
            return fail("not multiplicative on " + src.gens()[a].name + "*" + src.gens()[b].name);
          }
        }
      }
    } catch (const InvalidInput& e) {
      return fail(e.what());
    }
    return item("iii", subject);
  }

  CriterionItem cocycle_item(std::size_t i, std::size_t j, std::size_t l) {
    const std::string subject = "cocycle " + name(i) + " -> " + name(j) + " -> " + name(l);
    const CriterionMap& fij = *find_map(i, j);
    const CriterionMap& fjl = *find_map(j, l);
    const CriterionMap& fil = *find_map(i, l);
    const auto mij = inclusion(i, j);
    const GradedAlgebraPresentation& bil = target(i, l);
    for (std::size_t g = 0; g < d_.algebras[i].gens().size(); ++g) {
      ModElement composite;
      for (const auto& [h, p] : fij.images[g]) {
        mod_add(composite, mod_scale(p, substitute_linear(fjl.images[h], mij, dim(i))));
      }
      mod_add(composite, fil.images[g], Rational(-1));
      if (!bil.is_zero(composite, d_.algebras[i].gens()[g].degree)) {
        return item("iii", subject, VerdictKind::Fails, "differs on " + d_.algebras[i].gens()[g].name);
      }
    }
    return item("iii", subject);
  }

  class Probe : public AnnihilatorProbe {
   public:
    Probe(const GradedAlgebraPresentation& a, std::vector<HomogeneousPoly> forms, ModElement start,
          unsigned degree, unsigned cap, std::function<bool(const RatVector&, unsigned)> in_image)
        : a_(a), forms_(std::move(forms)), start_(std::move(start)), start_degree_(degree), cap_(cap),
          in_image_(std::move(in_image)) {}

    void reset() override {
      current_ = start_;
      degree_ = start_degree_;
    }
    ProbeStep multiply(const std::vector<std::size_t>& which) override {
      degree_ += 2 * static_cast<unsigned>(which.size());
      if (degree_ > cap_) return ProbeStep::OutOfRange;
      for (std::size_t f : which) current_ = mod_scale(forms_[f], current_);
      if (!in_image_) return a_.is_zero(current_, degree_) ? ProbeStep::Annihilated : ProbeStep::Survives;
      return in_image_(a_.quotient_coords(current_, degree_), degree_) ? ProbeStep::Annihilated : ProbeStep::Survives;
    }

   private:
    const GradedAlgebraPresentation& a_;
    std::vector<HomogeneousPoly> forms_;
    ModElement start_, current_;
    unsigned start_degree_, degree_ = 0, cap_;
    std::function<bool(const RatVector&, unsigned)> in_image_;
  };

  CriterionItem localization_item(const std::vector<RatVector>& w) {
    std::string wname = "W = span{";
    for (std::size_t a = 0; a < w.size(); ++a) {
      wname += (a ? ", " : "") + std::string("(");
      for (std::size_t c = 0; c < w[a].size(); ++c) wname += (c ? "," : "") + to_string(w[a][c]);
      wname += ")";
    }
    wname += "}";
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < d_.spaces.size(); ++j) {
      if (span_contains(w, d_.spaces[j].basis, d_.n) && (!best || dim(j) > dim(*best))) best = j;
    }
    const std::size_t zero_index = *full_;
    if (!best) return item("iii", "localization at " + wname, VerdictKind::Fails, "no subspace inside W");
    const std::size_t j = *best;
    const std::string subject = "localization at " + wname + " via " + name(j);
    if (j == zero_index) return item("iii", subject);

    const CriterionMap& f = *find_map(zero_index, j);
    const GradedAlgebraPresentation& src = d_.algebras[zero_index];
    const GradedAlgebraPresentation& tgt = target(zero_index, j);

    std::vector<RatVector> extra;
    for (const auto& s : d_.spaces) extra.insert(extra.end(), s.basis.begin(), s.basis.end());
    const FormCandidates cands = candidate_forms(d_.spaces[zero_index].basis, w, extra, policy_);
    std::vector<HomogeneousPoly> forms;
    for (const auto& v : cands.forms) {
      forms.push_back(HomogeneousPoly::from_form(LinearForm{*local_coordinates(v, d_.spaces[zero_index].basis)}));
    }
    const unsigned powers = policy_.powers_for(bound_);
    const unsigned cap = policy_.cap_for(bound_);

    std::map<unsigned, Echelon> images;
    auto image_at = [&](unsigned m) -> const Echelon& {
      auto it = images.find(m);
      if (it != images.end()) return it->second;
      Echelon e(tgt.dim(m));
      for (const auto& b : src.quotient_basis(m)) e.insert(to_sparse(tgt.quotient_coords(apply(f, b), m)));
      return images.emplace(m, std::move(e)).first->second;
    };
    auto in_image = [&](const RatVector& v, unsigned m) { return image_at(m).contains(to_sparse(v)); };

    CriterionItem out = item("iii", subject);
    for (unsigned m = 0; m <= bound_; ++m) {
      const auto basis = src.quotient_basis(m);
      SparseMatrix mat(tgt.dim(m), basis.size());
      for (std::size_t c = 0; c < basis.size(); ++c) {
        const RatVector col = tgt.quotient_coords(apply(f, basis[c]), m);
        for (std::size_t r = 0; r < col.size(); ++r) {
          if (col[r] != 0) mat.add(r, c, col[r]);
        }
      }
      for (const auto& kv : kernel_basis(mat)) {
        ModElement z;
        for (const auto& e : kv) mod_add(z, basis[e.col], e.value);
        Probe probe(src, forms, z, m, cap, nullptr);
        if (!search_annihilator(probe, cands, powers)) {
          out.survivors.push_back("kernel, degree " + std::to_string(m) + ": " + src.to_string(z));
        }
      }
      std::vector<SparseVec> units;
      for (std::size_t b = 0; b < tgt.dim(m); ++b) units.push_back({{b, Rational(1)}});
      const auto tbasis = tgt.quotient_basis(m);
      for (std::size_t b : complement_indices(image_at(m), units)) {
        Probe probe(tgt, forms, tbasis[b], m, cap, in_image);
        if (!search_annihilator(probe, cands, powers)) {
          out.survivors.push_back("cokernel, degree " + std::to_string(m) + ": " + tgt.to_string(tbasis[b]));
        }
      }
    }
    if (!out.survivors.empty()) out.kind = VerdictKind::Inconclusive;
    return out;
  }

  const CriterionData& d_;
  unsigned bound_;
  AnnihilatorPolicy policy_;
  CriterionReport rep_;
  std::optional<std::size_t> full_;
  bool zero_ = false;
  std::map<std::pair<std::size_t, std::size_t>, GradedAlgebraPresentation> targets_;
};

}  // namespace

CriterionReport check_realization_criterion(const CriterionData& data, unsigned degree_bound,
                                            const AnnihilatorPolicy& policy) {
  return Checker(data, degree_bound, policy).run();
}

}  // namespace torusfix
