#include "torusfix/system.hpp"

#include <algorithm>

#include "torusfix/circle.hpp"
#include "torusfix/errors.hpp"
#include "torusfix/poly.hpp"

namespace torusfix {

namespace {

std::vector<RatVector> rational_rows(const SubgroupLattice& g) {
  std::vector<RatVector> out;
  for (const auto& r : g.ann()) out.push_back(to_rational(r));
  return out;
}

// Basis of span(a) ∩ span(b) in Q^n.
std::vector<RatVector> span_intersection(const std::vector<RatVector>& a,
                                         const std::vector<RatVector>& b, std::size_t n) {
  if (a.empty() || b.empty()) return {};
  SparseMatrix m(n, a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t r = 0; r < n; ++r) {
      if (a[i][r] != 0) m.add(r, i, a[i][r]);
    }
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (std::size_t r = 0; r < n; ++r) {
      if (b[j][r] != 0) m.add(r, a.size() + j, -b[j][r]);
    }
  }
  Echelon seen(n);
  std::vector<RatVector> out;
  for (const auto& k : kernel_basis(m)) {
    RatVector v(n, Rational(0));
    for (const auto& e : k) {
      if (e.col >= a.size()) continue;
      for (std::size_t r = 0; r < n; ++r) v[r] += e.value * a[e.col][r];
    }
    if (seen.insert(to_sparse(v))) out.push_back(std::move(v));
  }
  return out;
}

void push_unique(std::vector<SubgroupLattice>& list, const SubgroupLattice& g) {
  if (std::find(list.begin(), list.end(), g) == list.end()) list.push_back(g);
}

std::size_t rank_of(const std::vector<RatVector>& vectors, std::size_t dim) {
  Echelon e(dim);
  for (const auto& v : vectors) e.insert(to_sparse(v));
  return e.rank();
}

// Cochain-level coordinates of an element in degree k, factors concatenated.
SparseVec cochain_coordinates(const CdgaCohomology& h, const CdgaElement& x, unsigned k,
                              std::size_t offset) {
  SparseVec out;
  for (std::size_t t = 0; t < h.algebra().factor_count(); ++t) {
    for (const auto& e : h.factor(t).coordinates(x[t], k)) out.push_back({e.col + offset, e.value});
    offset += h.factor(t).cochain_dim(k);
  }
  return out;
}

std::size_t cochain_dim(const CdgaCohomology& h, unsigned k) {
  std::size_t total = 0;
  for (std::size_t t = 0; t < h.algebra().factor_count(); ++t) total += h.factor(t).cochain_dim(k);
  return total;
}

std::vector<CdgaElement> cochain_basis(const Cdga& a, unsigned k) {
  std::vector<CdgaElement> out;
  for (std::size_t t = 0; t < a.factor_count(); ++t) {
    for (const auto& m : a.factor(t).basis(k)) {
      CdgaElement e = a.zero();
      e[t] = GcPoly{{m, Rational(1)}};
      out.push_back(std::move(e));
    }
  }
  return out;
}

ConditionVerdict make_verdict(std::string condition, std::string subject, unsigned degree_bound) {
  ConditionVerdict v;
  v.condition = std::move(condition);
  v.subject = std::move(subject);
  v.degree_bound = degree_bound;
  return v;
}

std::string subject_of(const SystemDiagram& s, std::size_t i, std::size_t j) {
  return s.node(i).name + " -> " + s.node(j).name;
}

}  // namespace

SystemDiagram::SystemDiagram(std::size_t n, std::vector<SystemNode> nodes, std::vector<SystemMap> maps)
    : n_(n), nodes_(std::move(nodes)), maps_(std::move(maps)) {
  for (const auto& node : nodes_) {
    if (node.pair.u.n() != n_ || node.pair.h.n() != n_) {
      throw InvalidInput("node '" + node.name + "' has the wrong torus rank");
    }
    push_unique(right_, node.pair.h);
  }
  std::sort(right_.begin(), right_.end());
  for (const auto& h : right_) push_unique(left_, identity_component(h));
  std::sort(left_.begin(), left_.end());
  for (const auto& m : maps_) {
    if (m.from >= nodes_.size() || m.to >= nodes_.size()) throw InvalidInput("map between unknown nodes");
  }
}

std::optional<std::size_t> SystemDiagram::find(const std::string& name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> SystemDiagram::find(const SubgroupPair& p) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].pair == p) return i;
  }
  return std::nullopt;
}

bool SystemDiagram::less(std::size_t i, std::size_t j) const {
  return i != j && pair_leq(nodes_[i].pair, nodes_[j].pair) && !(nodes_[i].pair == nodes_[j].pair);
}

bool SystemDiagram::covers(std::size_t i, std::size_t j) const {
  if (!less(i, j)) return false;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (less(i, k) && less(k, j)) return false;
  }
  return true;
}

const SystemMap* SystemDiagram::edge(std::size_t i, std::size_t j) const {
  for (const auto& m : maps_) {
    if (m.from == i && m.to == j) return &m;
  }
  return nullptr;
}

const CdgaMorphism& SystemDiagram::composite(std::size_t i, std::size_t j) const {
  auto it = composites_.find({i, j});
  if (it != composites_.end()) return it->second;
  if (i == j) return composites_.emplace(std::make_pair(i, j), identity_morphism(nodes_[i].algebra)).first->second;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (!covers(i, k) || !(k == j || less(k, j))) continue;
    const SystemMap* e = edge(i, k);
    if (!e) continue;
    CdgaMorphism f = compose(e->map, composite(k, j), nodes_[j].algebra);
    return composites_.emplace(std::make_pair(i, j), std::move(f)).first->second;
  }
  throw InvalidInput("no chain of maps from '" + nodes_[i].name + "' to '" + nodes_[j].name + "'");
}

const CdgaCohomology& SystemDiagram::cohomology(std::size_t i) const {
  auto& slot = cohomology_[i];
  if (!slot) slot = std::make_unique<CdgaCohomology>(nodes_[i].algebra);
  return *slot;
}

std::optional<CdgaElement> SystemDiagram::r_image(std::size_t i, const RatVector& w) const {
  const auto basis = quotient_char_space(nodes_[i].pair.u);
  if (basis.size() != nodes_[i].rstructure.size()) {
    throw InvalidInput("R-structure of '" + nodes_[i].name + "' needs " + std::to_string(basis.size()) +
                       " classes");
  }
  SpanSolver solver(n_);
  for (const auto& b : basis) solver.add(to_sparse(b));
  const auto coeffs = solver.express(to_sparse(w));
  if (!coeffs) return std::nullopt;
  CdgaElement out = nodes_[i].algebra.zero();
  for (const auto& e : *coeffs) add_into(out, nodes_[i].rstructure[e.col], e.value);
  return out;
}

std::vector<std::string> validate_system(const SystemDiagram& s) {
  std::vector<std::string> out;
  bool structural = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const SystemNode& node = s.node(i);
    const std::string where = "node " + node.name + ": ";
    if (!node.pair.u.is_subtorus()) out.push_back(where + "U is not connected");
    if (!contains(node.pair.h, node.pair.u)) out.push_back(where + "U is not contained in H");
    for (std::size_t j = 0; j < i; ++j) {
      if (s.node(j).name == node.name) out.push_back(where + "duplicate name");
      if (s.node(j).pair == node.pair) out.push_back(where + "same pair as node " + s.node(j).name);
    }
    for (const auto& v : node.algebra.violations()) out.push_back(where + v);
  }
  if (!out.empty()) return out;

  for (const auto& m : s.maps()) {
    const std::string where = "map " + subject_of(s, m.from, m.to) + ": ";
    if (!s.covers(m.from, m.to)) {
      out.push_back(where + "not a cover relation");
      structural = false;
      continue;
    }
    for (const auto& other : s.maps()) {
      if (&other < &m && other.from == m.from && other.to == m.to) out.push_back(where + "given twice");
    }
    const auto v = morphism_violations(m.map, s.node(m.from).algebra, s.node(m.to).algebra);
    if (!v.empty()) structural = false;
    for (const auto& msg : v) out.push_back(where + msg);
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s.covers(i, j) && !s.edge(i, j)) {
        out.push_back("missing map " + subject_of(s, i, j));
        structural = false;
      }
    }
  }
  if (!structural) return out;

  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (!s.less(i, j)) continue;
      const CdgaMorphism& reference = s.composite(i, j);
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (!s.covers(i, k) || !(k == j || s.less(k, j))) continue;
        const CdgaMorphism via = compose(s.edge(i, k)->map, s.composite(k, j), s.node(j).algebra);
        if (via.routing != reference.routing || via.images != reference.images) {
          out.push_back("square " + s.node(i).name + " -> " + s.node(j).name + " via " + s.node(k).name +
                        " does not commute");
        }
      }
    }
  }

  for (std::size_t i = 0; i < s.size(); ++i) {
    const SystemNode& node = s.node(i);
    const std::string where = "R-structure at " + node.name + ": ";
    const auto basis = quotient_char_space(node.pair.u);
    if (basis.size() != node.rstructure.size()) {
      out.push_back(where + "expected " + std::to_string(basis.size()) + " classes, got " +
                    std::to_string(node.rstructure.size()));
      continue;
    }
    for (std::size_t a = 0; a < basis.size(); ++a) {
      const CdgaElement& r = node.rstructure[a];
      try {
        const auto deg = node.algebra.degree(r);
        if (deg && *deg != 2) out.push_back(where + "class " + std::to_string(a) + " is not in degree 2");
      } catch (const InvalidInput&) {
        out.push_back(where + "class " + std::to_string(a) + " is inhomogeneous");
        continue;
      }
      if (!is_zero(node.algebra.d(r))) out.push_back(where + "class " + std::to_string(a) + " is not closed");
    }
  }
  if (!out.empty()) return out;

  for (const auto& m : s.maps()) {
    const auto basis = quotient_char_space(s.node(m.from).pair.u);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      const CdgaElement pushed = apply(m.map, s.node(m.to).algebra, s.node(m.from).rstructure[a]);
      const auto there = s.r_image(m.to, basis[a]);
      if (!there) {
        out.push_back("R-structure: L(U) of " + s.node(m.from).name + " is not inside L(U) of " +
                      s.node(m.to).name);
        continue;
      }
      CdgaElement diff = pushed;
      add_into(diff, *there, Rational(-1));
      if (!s.cohomology(m.to).is_exact(diff, 2)) {
        out.push_back("R-structure not natural along " + subject_of(s, m.from, m.to) + " on basis vector " +
                      std::to_string(a));
      }
    }
  }
  return out;
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::VerifiedUpTo: return "verified";
    case VerdictKind::Fails: return "fails";
    case VerdictKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<ConditionVerdict> check_TC(const SystemDiagram& s, unsigned degree_bound) {
  std::vector<ConditionVerdict> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      const SubgroupPair& pu = s.node(i).pair;
      const SubgroupPair& pk = s.node(j).pair;
      if (i == j || !(pu.h == pk.h) || pu.u == pk.u || !contains(pu.u, pk.u)) continue;

      ConditionVerdict v = make_verdict("TC", subject_of(s, i, j), degree_bound);
      Echelon span(s.n());
      for (const auto& b : quotient_char_space(pu.u)) span.insert(to_sparse(b));
      std::vector<CdgaElement> w_images;
      for (const auto& b : quotient_char_space(pk.u)) {
        if (span.insert(to_sparse(b))) w_images.push_back(*s.r_image(j, b));
      }
      const Cdga& target = s.node(j).algebra;
      const CdgaCohomology& hu = s.cohomology(i);
      const CdgaCohomology& hk = s.cohomology(j);
      const CdgaMorphism& phi = s.composite(i, j);

      for (unsigned k = 0; k <= degree_bound; ++k) {
        std::vector<RatVector> cols;
        for (unsigned e = 0; 2 * e <= k; ++e) {
          const unsigned rest = k - 2 * e;
          if (hu.dim(rest) == 0) continue;
          if (w_images.empty() && e > 0) break;
          for (const auto& alpha : monomial_basis(w_images.size(), e)) {
            CdgaElement mono = target.one();
            for (std::size_t a = 0; a < alpha.size(); ++a) {
              for (unsigned p = 0; p < alpha[a]; ++p) mono = target.multiply(mono, w_images[a]);
            }
            for (std::size_t c = 0; c < hu.dim(rest); ++c) {
              const CdgaElement img = target.multiply(mono, apply(phi, target, hu.representative(rest, c)));
              auto coords = hk.class_of(img, k);
              if (!coords) throw InvariantBreach("TC image is not closed");
              cols.push_back(std::move(*coords));
            }
          }
        }
        const std::size_t r = rank_of(cols, hk.dim(k));
        const std::size_t ker = cols.size() - r;
        const std::size_t coker = hk.dim(k) - r;
        if (ker || coker) {
          v.kind = VerdictKind::Fails;
          v.degree = k;
          v.kernel_dim = ker;
          v.cokernel_dim = coker;
          v.defect = std::max(ker, coker);
          break;
        }
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<ConditionVerdict> check_SC(const SystemDiagram& s, unsigned degree_bound) {
  std::vector<ConditionVerdict> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    ConditionVerdict v = make_verdict("SC", s.node(i).name, degree_bound);
    std::vector<std::size_t> upper;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s.less(i, j)) upper.push_back(j);
    }
    for (unsigned k = 0; k <= degree_bound && !upper.empty(); ++k) {
      std::vector<std::size_t> offset;
      std::size_t total = 0;
      for (std::size_t j : upper) {
        offset.push_back(total);
        total += cochain_dim(s.cohomology(j), k);
      }
      // Equalizer: tuples with f(y_j) = y_j' along every cover inside the upper set.
      std::vector<SparseVec> equations;
      for (std::size_t a = 0; a < upper.size(); ++a) {
        for (std::size_t b = 0; b < upper.size(); ++b) {
          const std::size_t ja = upper[a], jb = upper[b];
          if (!s.covers(ja, jb)) continue;
          const std::size_t rows = cochain_dim(s.cohomology(jb), k);
          std::vector<SparseVec> by_row(rows);
          std::size_t col = offset[a];
          for (const auto& m : cochain_basis(s.node(ja).algebra, k)) {
            const CdgaElement img = apply(s.edge(ja, jb)->map, s.node(jb).algebra, m);
            for (const auto& e : cochain_coordinates(s.cohomology(jb), img, k, 0)) {
              by_row[e.col].push_back({col, e.value});
            }
            ++col;
          }
          for (std::size_t r = 0; r < rows; ++r) {
            SparseVec eq = by_row[r];
            eq.push_back({offset[b] + r, Rational(-1)});
            equations.push_back(std::move(eq));
          }
        }
      }
      SparseMatrix constraint(equations.size(), total);
      for (std::size_t r = 0; r < equations.size(); ++r) {
        for (const auto& e : equations[r]) constraint.add(r, e.col, e.value);
      }
      const std::size_t limit_dim = total - rank(constraint);

      Echelon image(total);
      for (const auto& m : cochain_basis(s.node(i).algebra, k)) {
        SparseVec tuple;
        for (std::size_t a = 0; a < upper.size(); ++a) {
          const CdgaElement img = apply(s.composite(i, upper[a]), s.node(upper[a]).algebra, m);
          const SparseVec part = cochain_coordinates(s.cohomology(upper[a]), img, k, offset[a]);
          tuple.insert(tuple.end(), part.begin(), part.end());
        }
        image.insert(tuple);
      }
      if (image.rank() < limit_dim) {
        v.kind = VerdictKind::Fails;
        v.degree = k;
        v.cokernel_dim = limit_dim - image.rank();
        v.defect = v.cokernel_dim;
        break;
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

// Multiplies a class by R-structure forms and tests whether it dies in
// cohomology (kernel case) or lands in the image of the source (cokernel case).
class ClassProbe : public AnnihilatorProbe {
 public:
  ClassProbe(const SystemDiagram& s, std::size_t source, std::size_t node, std::vector<CdgaElement> forms,
             CdgaElement start, unsigned degree, unsigned cap, bool cokernel)
      : s_(s), source_(source), node_(node), forms_(std::move(forms)), start_(std::move(start)),
        start_degree_(degree), cap_(cap), cokernel_(cokernel) {}

  void reset() override {
    current_ = start_;
    degree_ = start_degree_;
  }

  ProbeStep multiply(const std::vector<std::size_t>& which) override {
    degree_ += 2 * static_cast<unsigned>(which.size());
    if (degree_ > cap_) return ProbeStep::OutOfRange;
    const Cdga& a = s_.node(node_).algebra;
    for (std::size_t f : which) current_ = a.multiply(current_, forms_[f]);
    const auto coords = s_.cohomology(node_).class_of(current_, degree_);
    if (!coords) throw InvariantBreach("product of cocycles is not closed");
    if (!cokernel_) return is_zero(*coords) ? ProbeStep::Annihilated : ProbeStep::Survives;
    return image(degree_).contains(to_sparse(*coords)) ? ProbeStep::Annihilated : ProbeStep::Survives;
  }

 private:
  const Echelon& image(unsigned k) {
    auto it = images_.find(k);
    if (it != images_.end()) return it->second;
    Echelon e(s_.cohomology(node_).dim(k));
    for (const auto& col : cohomology_map(s_.composite(source_, node_), s_.cohomology(source_),
                                          s_.cohomology(node_), k)) {
      e.insert(to_sparse(col));
    }
    return images_.emplace(k, std::move(e)).first->second;
  }

  const SystemDiagram& s_;
  std::size_t source_, node_;
  std::vector<CdgaElement> forms_;
  CdgaElement start_, current_;
  unsigned start_degree_, degree_ = 0, cap_;
  bool cokernel_;
  std::map<unsigned, Echelon> images_;
};

}  // namespace

std::vector<ConditionVerdict> check_LC(const SystemDiagram& s, unsigned degree_bound,
                                       const LcOptions& options) {
  std::vector<SubgroupLattice> tori = s.left();
  for (const auto& k : options.extra_tori) {
    if (k.n() != s.n()) throw InvalidInput("torus of the wrong rank in the LC list");
    if (!k.is_subtorus()) throw InvalidInput("LC list entry " + k.to_string() + " is not a torus");
    push_unique(tori, k);
  }
  const unsigned powers = options.policy.powers_for(degree_bound);
  const unsigned cap = options.policy.cap_for(degree_bound);

  std::vector<ConditionVerdict> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const SubgroupPair& p = s.node(i).pair;
    for (const auto& k : tori) {
      if (!contains(k, p.h)) continue;
      const auto j = s.find(SubgroupPair{p.u, m_D(s.right(), k)});
      if (!j || *j == i) continue;

      ConditionVerdict v = make_verdict("LC", subject_of(s, i, *j) + " (K = " + k.to_string() + ")", degree_bound);
      const auto space = quotient_char_space(p.u);
      std::vector<RatVector> isotropy;
      for (const auto& g : s.right()) {
        for (auto& w : span_intersection(rational_rows(g), space, s.n())) isotropy.push_back(std::move(w));
      }
      const FormCandidates cands = candidate_forms(space, rational_rows(k), isotropy, options.policy);
      std::vector<CdgaElement> at_source, at_target;
      for (const auto& f : cands.forms) {
        at_source.push_back(*s.r_image(i, f));
        at_target.push_back(*s.r_image(*j, f));
      }

      const CdgaCohomology& hs = s.cohomology(i);
      const CdgaCohomology& ht = s.cohomology(*j);
      for (unsigned deg = 0; deg <= degree_bound; ++deg) {
        const auto cols = cohomology_map(s.composite(i, *j), hs, ht, deg);
        SparseMatrix m(ht.dim(deg), hs.dim(deg));
        Echelon image(ht.dim(deg));
        for (std::size_t c = 0; c < cols.size(); ++c) {
          for (std::size_t r = 0; r < cols[c].size(); ++r) {
            if (cols[c][r] != 0) m.add(r, c, cols[c][r]);
          }
          image.insert(to_sparse(cols[c]));
        }
        for (const auto& kv : kernel_basis(m)) {
          ++v.kernel_dim;
          CdgaElement z = s.node(i).algebra.zero();
          for (const auto& e : kv) add_into(z, hs.representative(deg, e.col), e.value);
          ClassProbe probe(s, i, i, at_source, z, deg, cap, false);
          if (!search_annihilator(probe, cands, powers)) {
            v.survivors.push_back("kernel, degree " + std::to_string(deg) + ": " + s.node(i).algebra.to_string(z));
          }
        }
        std::vector<SparseVec> unit_vectors;
        for (std::size_t b = 0; b < ht.dim(deg); ++b) unit_vectors.push_back({{b, Rational(1)}});
        for (std::size_t b : complement_indices(image, unit_vectors)) {
          ++v.cokernel_dim;
          const CdgaElement z = ht.representative(deg, b);
          ClassProbe probe(s, i, *j, at_target, z, deg, cap, true);
          if (!search_annihilator(probe, cands, powers)) {
            v.survivors.push_back("cokernel, degree " + std::to_string(deg) + ": " +
                                  s.node(*j).algebra.to_string(z));
          }
        }
      }
      if (!v.survivors.empty()) v.kind = VerdictKind::Inconclusive;
      out.push_back(std::move(v));
    }
  }
  return out;
}

RealizationReport realization_hypotheses(const SystemDiagram& s, unsigned degree_bound,
                                         const LcOptions& options) {
  RealizationReport rep;
  rep.degree_bound = degree_bound;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const SystemNode& node = s.node(i);
    const CdgaCohomology& h = s.cohomology(i);
    NodeHypotheses nh;
    nh.node = node.name;

    const std::size_t h0 = h.dim(0);
    std::vector<std::string> names;
    std::vector<std::vector<RatVector>> mult(h0, std::vector<RatVector>(h0));
    for (std::size_t a = 0; a < h0; ++a) {
      names.push_back("e" + std::to_string(a));
      for (std::size_t b = 0; b < h0; ++b) {
        mult[a][b] = *h.class_of(node.algebra.multiply(h.representative(0, a), h.representative(0, b)), 0);
      }
    }
    const FiniteCommAlgebra zero_part(names, mult, *h.class_of(node.algebra.one(), 0));
    const SplitResult split = split_semisimple_test(zero_part);
    if (split.kind != SplitKind::SplitSemisimple) {
      nh.spacelike = false;
      nh.details.push_back("H^0 is not split semisimple (" + to_string(split.kind) + ")");
    }

    if (h.dim(1) != 0) {
      nh.h1_zero = false;
      nh.details.push_back("H^1 has dimension " + std::to_string(h.dim(1)));
    }

    const std::size_t r = node.rstructure.size();
    std::vector<RatVector> products;
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < h0; ++b) {
        products.push_back(*h.class_of(node.algebra.multiply(node.rstructure[a], h.representative(0, b)), 2));
      }
    }
    const std::size_t rk = rank_of(products, h.dim(2));
    if (rk < products.size()) {
      nh.injective = false;
      nh.details.push_back("R^2 ⊗ H^0 -> H^2 has a kernel of dimension " + std::to_string(products.size() - rk));
    }

    for (unsigned k = 0; k <= degree_bound; ++k) {
      std::vector<RatVector> decomposable;
      if (k >= 2) {
        for (std::size_t c = 0; c < h.dim(k - 2); ++c) {
          for (std::size_t a = 0; a < r; ++a) {
            decomposable.push_back(
                *h.class_of(node.algebra.multiply(node.rstructure[a], h.representative(k - 2, c)), k));
          }
        }
      }
      const std::size_t fresh = h.dim(k) - rank_of(decomposable, h.dim(k));
      for (std::size_t g = 0; g < fresh; ++g) nh.generator_degrees.push_back(k);
      if (fresh && 3 * k > 2 * degree_bound) nh.generation_stable = false;
    }
    if (!nh.generation_stable) nh.details.push_back("new module generators near the degree bound");

    rep.infinite_list = rep.infinite_list && nh.spacelike && nh.h1_zero && nh.injective;
    rep.finite_list = rep.finite_list && nh.generation_stable;
    rep.nodes.push_back(std::move(nh));
  }
  rep.tc = check_TC(s, degree_bound);
  rep.lc = check_LC(s, degree_bound, options);
  for (const auto& v : rep.tc) rep.infinite_list = rep.infinite_list && v.kind == VerdictKind::VerifiedUpTo;
  rep.finite_list = rep.finite_list && rep.infinite_list;
  for (const auto& v : rep.lc) rep.finite_list = rep.finite_list && v.kind == VerdictKind::VerifiedUpTo;
  return rep;
}

}  // namespace torusfix
