#include "torusfix/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "torusfix/errors.hpp"

namespace torusfix {

namespace {

void fill_monomials(std::size_t n, unsigned deg, std::size_t pos, Exponent& cur,
                    std::vector<Exponent>& out) {
  if (pos + 1 == n) {
    cur[pos] = deg;
    out.push_back(cur);
    return;
  }
  for (unsigned k = deg + 1; k-- > 0;) {
    cur[pos] = k;
    fill_monomials(n, deg - k, pos + 1, cur, out);
  }
}

unsigned exponent_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

}  // namespace

std::vector<Exponent> monomial_basis(std::size_t n, unsigned deg) {
  std::vector<Exponent> out;
  if (n == 0) {
    if (deg == 0) out.emplace_back();
    return out;
  }
  Exponent cur(n, 0);
  fill_monomials(n, deg, 0, cur, out);
  return out;
}

MonomialIndex::MonomialIndex(std::size_t n, unsigned deg) : basis_(monomial_basis(n, deg)) {
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
}

std::size_t MonomialIndex::index_of(const Exponent& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw InvariantBreach("monomial not in basis");
  return it->second;
}

HomogeneousPoly HomogeneousPoly::constant(std::size_t n, const Rational& c) {
  HomogeneousPoly p(n, 0);
  p.add_term(Exponent(n, 0), c);
  return p;
}

HomogeneousPoly HomogeneousPoly::monomial(const Exponent& e, const Rational& c) {
  HomogeneousPoly p(e.size(), exponent_degree(e));
  p.add_term(e, c);
  return p;
}

HomogeneousPoly HomogeneousPoly::from_form(const LinearForm& f) {
  HomogeneousPoly p(f.n(), 1);
  for (std::size_t i = 0; i < f.n(); ++i) {
    Exponent e(f.n(), 0);
    e[i] = 1;
    p.add_term(e, f.coeffs[i]);
  }
  return p;
}

HomogeneousPoly HomogeneousPoly::variable(std::size_t n, std::size_t i) {
  Exponent e(n, 0);
  e.at(i) = 1;
  return monomial(e);
}

Rational HomogeneousPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void HomogeneousPoly::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != n_) throw InvalidInput("monomial has wrong number of variables");
  if (exponent_degree(e) != deg_) throw InvalidInput("monomial has wrong degree");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

HomogeneousPoly& HomogeneousPoly::operator+=(const HomogeneousPoly& o) {
  if (o.n_ != n_) throw InvalidInput("polynomial rank mismatch");
  if (o.is_zero()) return *this;
  if (is_zero()) deg_ = o.deg_;
  if (o.deg_ != deg_) throw InvalidInput("adding polynomials of different degree");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

HomogeneousPoly& HomogeneousPoly::operator-=(const HomogeneousPoly& o) {
  return *this += o * Rational(-1);
}

HomogeneousPoly& HomogeneousPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Rational HomogeneousPoly::evaluate(const RatVector& point) const {
  if (point.size() != n_) throw InvalidInput("evaluation point has wrong length");
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < n_; ++i) {
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    }
    acc += t;
  }
  return acc;
}

SparseVec HomogeneousPoly::coordinates(const MonomialIndex& idx) const {
  std::vector<SparseEntry> terms;
  for (const auto& [e, c] : terms_) terms.push_back({idx.index_of(e), c});
  std::sort(terms.begin(), terms.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
  return terms;
}

HomogeneousPoly HomogeneousPoly::from_coordinates(const MonomialIndex& idx, std::size_t n,
                                                  unsigned deg, const SparseVec& coords) {
  HomogeneousPoly p(n, deg);
  for (const auto& e : coords) p.add_term(idx.at(e.col), e.value);
  return p;
}

std::string HomogeneousPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    if (c < 0) {
      os << (first ? "-" : " - ");
    } else if (!first) {
      os << " + ";
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || deg_ == 0) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

HomogeneousPoly poly_mul(const HomogeneousPoly& p, const HomogeneousPoly& q) {
  if (p.n() != q.n()) throw InvalidInput("polynomial rank mismatch");
  HomogeneousPoly out(p.n(), p.deg() + q.deg());
  Exponent e(p.n());
  for (const auto& [ea, ca] : p.terms()) {
    for (const auto& [eb, cb] : q.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

HomogeneousPoly poly_pow(const HomogeneousPoly& p, unsigned k) {
  HomogeneousPoly out = HomogeneousPoly::constant(p.n(), 1);
  for (unsigned i = 0; i < k; ++i) out = poly_mul(out, p);
  return out;
}

HomogeneousPoly restrict_to_hyperplane(const HomogeneousPoly& p, const LinearForm& alpha) {
  if (alpha.n() != p.n()) throw InvalidInput("form rank mismatch");
  if (alpha.is_zero()) throw InvalidInput("restriction to the zero form");
  const std::size_t n = p.n();
  std::size_t solved = n;
  while (alpha.coeffs[solved - 1] == 0) --solved;
  --solved;
  // x_solved = sum_{i != solved} (-alpha_i / alpha_solved) x_i
  LinearForm sub{RatVector(n - 1)};
  for (std::size_t i = 0, k = 0; i < n; ++i) {
    if (i == solved) continue;
    sub.coeffs[k++] = -alpha.coeffs[i] / alpha.coeffs[solved];
  }
  const HomogeneousPoly sub_poly = HomogeneousPoly::from_form(sub);
  std::vector<HomogeneousPoly> powers{HomogeneousPoly::constant(n - 1, 1)};

  HomogeneousPoly out(n - 1, p.deg());
  for (const auto& [e, c] : p.terms()) {
    while (powers.size() <= e[solved]) powers.push_back(poly_mul(powers.back(), sub_poly));
    Exponent rest;
    rest.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != solved) rest.push_back(e[i]);
    }
    out += poly_mul(HomogeneousPoly::monomial(rest, c), powers[e[solved]]);
  }
  return out;
}

SparseMatrix restriction_matrix(const LinearForm& alpha, unsigned deg) {
  const std::size_t n = alpha.n();
  const MonomialIndex src(n, deg);
  const MonomialIndex dst(n - 1, deg);
  SparseMatrix m(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    const auto r = restrict_to_hyperplane(HomogeneousPoly::monomial(src.at(j)), alpha);
    for (const auto& [e, c] : r.terms()) m.add(dst.index_of(e), j, c);
  }
  return m;
}

}  // namespace torusfix
