#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "torusfix/linalg.hpp"
#include "torusfix/rational.hpp"

namespace torusfix {

using Exponent = std::vector<unsigned>;

/// Graded-lex order within a fixed degree: lexicographically larger
/// exponent vectors (more weight on x1) come first.
struct GradedLexBefore {
  bool operator()(const Exponent& a, const Exponent& b) const { return a > b; }
};

/// All exponent vectors of length n summing to deg, in graded-lex order.
/// Size is C(n-1+deg, deg); n = 0 yields the empty monomial for deg = 0 only.
std::vector<Exponent> monomial_basis(std::size_t n, unsigned deg);

/// Position lookup for monomial_basis(n, deg).
class MonomialIndex {
 public:
  MonomialIndex(std::size_t n, unsigned deg);
  std::size_t size() const { return basis_.size(); }
  const std::vector<Exponent>& basis() const { return basis_; }
  const Exponent& at(std::size_t i) const { return basis_[i]; }
  std::size_t index_of(const Exponent& e) const;

 private:
  std::vector<Exponent> basis_;
  std::map<Exponent, std::size_t> index_;
};

/// Degree-1 polynomial: a vector in Q^n (cohomological degree 2).
struct LinearForm {
  RatVector coeffs;

  std::size_t n() const { return coeffs.size(); }
  bool is_zero() const { return torusfix::is_zero(coeffs); }
};

/// Exact homogeneous polynomial over Q in n variables.
class HomogeneousPoly {
 public:
  using Terms = std::map<Exponent, Rational, GradedLexBefore>;

  HomogeneousPoly(std::size_t n, unsigned deg) : n_(n), deg_(deg) {}

  static HomogeneousPoly constant(std::size_t n, const Rational& c);
  static HomogeneousPoly monomial(const Exponent& e, const Rational& c = 1);
  static HomogeneousPoly from_form(const LinearForm& f);
  static HomogeneousPoly variable(std::size_t n, std::size_t i);

  std::size_t n() const { return n_; }
  unsigned deg() const { return deg_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Exponent& e) const;

  /// Accumulates c * x^e. Throws if e has the wrong length or degree.
  void add_term(const Exponent& e, const Rational& c);

  HomogeneousPoly& operator+=(const HomogeneousPoly& o);
  HomogeneousPoly& operator-=(const HomogeneousPoly& o);
  HomogeneousPoly& operator*=(const Rational& c);
  friend HomogeneousPoly operator+(HomogeneousPoly a, const HomogeneousPoly& b) { return a += b; }
  friend HomogeneousPoly operator-(HomogeneousPoly a, const HomogeneousPoly& b) { return a -= b; }
  friend HomogeneousPoly operator*(HomogeneousPoly a, const Rational& c) { return a *= c; }
  friend bool operator==(const HomogeneousPoly& a, const HomogeneousPoly& b) {
    return a.n_ == b.n_ && (a.terms_ == b.terms_) && (a.deg_ == b.deg_ || a.is_zero());
  }

  Rational evaluate(const RatVector& point) const;

  /// Coefficients in the monomial_basis(n, deg) ordering.
  SparseVec coordinates(const MonomialIndex& idx) const;
  static HomogeneousPoly from_coordinates(const MonomialIndex& idx, std::size_t n, unsigned deg,
                                          const SparseVec& coords);

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  std::size_t n_;
  unsigned deg_;
  Terms terms_;
};

HomogeneousPoly poly_mul(const HomogeneousPoly& p, const HomogeneousPoly& q);
HomogeneousPoly poly_pow(const HomogeneousPoly& p, unsigned k);

/// Substitutes the parametrization of the hyperplane {alpha = 0} obtained by
/// solving for the variable of the last nonzero coefficient of alpha. The
/// result lives in the remaining n-1 variables (order preserved) and is zero
/// iff alpha divides p.
HomogeneousPoly restrict_to_hyperplane(const HomogeneousPoly& p, const LinearForm& alpha);

/// Matrix of restrict_to_hyperplane on degree-deg polynomials: rows index
/// monomial_basis(n-1, deg), columns monomial_basis(n, deg).
SparseMatrix restriction_matrix(const LinearForm& alpha, unsigned deg);

}  // namespace torusfix
