#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torusfix/rational.hpp"

namespace torusfix {

/// Univariate polynomial over Q, coefficients in ascending degree.
struct UniPoly {
  std::vector<Rational> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Rational evaluate(const Rational& t) const;
  std::string to_string(const std::string& var = "t") const;
};

/// Rational roots by the rational root theorem, ordered by increasing
/// absolute value (positive before negative).
std::vector<Rational> rational_roots(const UniPoly& p);

/// Finite-dimensional commutative Q-algebra given by structure constants.
class FiniteCommAlgebra {
 public:
  /// mult[i][j] is the coordinate vector of e_i * e_j.
  FiniteCommAlgebra(std::vector<std::string> names, std::vector<std::vector<RatVector>> mult,
                    RatVector unit);

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const RatVector& unit() const { return unit_; }
  const RatVector& product_of_basis(std::size_t i, std::size_t j) const { return mult_[i][j]; }

  RatVector multiply(const RatVector& a, const RatVector& b) const;
  /// Commutativity, associativity and unit laws over all basis triples.
  std::vector<std::string> violations() const;

  /// Same algebra in the permuted basis f_k = e_{perm[k]}.
  FiniteCommAlgebra permuted(const std::vector<std::size_t>& perm) const;

  std::string element_to_string(const RatVector& v) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<RatVector>> mult_;
  RatVector unit_;
};

enum class SplitKind { SplitSemisimple, Nilpotents, FieldExtension };

struct SplitResult {
  SplitKind kind = SplitKind::SplitSemisimple;
  /// SplitSemisimple: orthogonal idempotents summing to the unit.
  std::vector<RatVector> idempotents;
  /// Nilpotents: a nonzero nilpotent. FieldExtension: the element whose
  /// minimal polynomial has no rational root.
  RatVector witness;
  UniPoly witness_polynomial;
};

/// Reducedness via the trace form, then splitting along rational roots of
/// minimal polynomials of multiplication maps.
SplitResult split_semisimple_test(const FiniteCommAlgebra& b);

/// Minimal polynomial (monic) of x inside the unital subalgebra with unit e.
UniPoly minimal_polynomial(const FiniteCommAlgebra& b, const RatVector& x, const RatVector& e);

struct CircleGenerator {
  std::string name;
  unsigned degree = 0;
  std::optional<unsigned> order;  ///< torsion: x^order annihilates
  bool is_free() const { return !order.has_value(); }
};

/// c * x^xpow * g
struct CircleTerm {
  std::size_t gen;
  Rational coef;
  unsigned xpow;
};

/// Basis element x^xpow * g of A.
using CircleMonomial = std::pair<std::size_t, unsigned>;
using CircleElement = std::map<CircleMonomial, Rational>;

/// Finitely generated graded Q[x]-algebra (|x| = 2) in PID normal form.
class CircleAlgebra {
 public:
  using Table = std::map<std::pair<std::size_t, std::size_t>, std::vector<CircleTerm>>;

  /// Throws InvalidInput on unknown or duplicate names; the algebraic
  /// identities are reported by validate(), not enforced here.
  CircleAlgebra(std::vector<CircleGenerator> gens, std::size_t unit, Table mult);

  const std::vector<CircleGenerator>& generators() const { return gens_; }
  std::size_t unit() const { return unit_; }
  const Table& table() const { return mult_; }
  std::size_t index_of(const std::string& name) const;

  /// g_i * g_j from the table (graded-commutative fallback, unit implicit).
  CircleElement product(std::size_t i, std::size_t j) const;
  CircleElement multiply(const CircleElement& a, const CircleElement& b) const;
  CircleElement generator(std::size_t i) const;

  /// Q-dimension of A in cohomological degree m.
  std::size_t dimension(unsigned m) const;

 private:
  void add_reduced(CircleElement& out, std::size_t gen, unsigned xpow, const Rational& c) const;

  std::vector<CircleGenerator> gens_;
  std::size_t unit_;
  Table mult_;
};

/// Every violated identity, human readable; empty means valid.
std::vector<std::string> validate(const CircleAlgebra& a);

/// Q[x,a]/(a^2 - c x^2) with |a| = 2.
CircleAlgebra mk_Ac(const Rational& c);

struct CircleHypotheses {
  bool a1_zero = true;
  bool spacelike = true;
  bool injective_a0_a2 = true;
  std::vector<std::string> details;
  bool ok() const { return a1_zero && spacelike && injective_a0_a2; }
};

CircleHypotheses hypothesis_check(const CircleAlgebra& a);

/// A^0 with its induced structure constants.
FiniteCommAlgebra degree_zero_algebra(const CircleAlgebra& a);

struct Localization {
  std::optional<FiniteCommAlgebra> algebra;
  std::optional<std::string> odd_free_generator;
};

/// (S^{-1}A)^0 for S = {x^k}: torsion dies, e_i = g_i / x^{d_i/2}.
Localization localized_degree_zero(const CircleAlgebra& a);

enum class CircleVerdictKind { Realizable, NotRealizable, HypothesisViolated };
enum class CircleHypothesis { None, NotSpacelike, A1Nonzero, InjectivityA0A2, NilpotentsInLocalization };

struct CircleVerdict {
  CircleVerdictKind kind = CircleVerdictKind::Realizable;
  std::size_t fixed_points = 0;
  std::vector<std::string> idempotents;
  UniPoly field_polynomial;
  CircleHypothesis violated = CircleHypothesis::None;
  std::string witness;
};

CircleVerdict realizable_circle(const CircleAlgebra& a);

std::string to_string(CircleVerdictKind k);
std::string to_string(CircleHypothesis h);
std::string to_string(SplitKind k);

}  // namespace torusfix
