#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "torusfix/rational.hpp"

namespace torusfix {

using IntMatrix = std::vector<IntVector>;

/// Row-style Hermite normal form of the Z-span of `rows`: positive pivots,
/// entries above each pivot reduced into [0, pivot), zero rows dropped.
IntMatrix hermite_normal_form(IntMatrix rows, std::size_t n);

/// Basis (in Hermite normal form) of {x in Z^n : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a, std::size_t n);

/// Membership of v in the Z-span of a matrix already in Hermite normal form.
bool in_integer_span(const IntMatrix& hnf, IntVector v);

/// A closed subgroup H of T = (S^1)^n, identified with the lattice L(H) of
/// characters vanishing on it. Rows are kept in Hermite normal form, so
/// equal subgroups compare equal.
class SubgroupLattice {
 public:
  /// Canonicalizes the Z-span of `rows`. Throws InvalidInput on length mismatch.
  static SubgroupLattice from_rows(const IntMatrix& rows, std::size_t n);
  static SubgroupLattice full_torus(std::size_t n);
  static SubgroupLattice trivial(std::size_t n);

  std::size_t n() const { return n_; }
  const IntMatrix& ann() const { return rows_; }
  /// Rank of L(H) = codimension of the identity component.
  std::size_t ann_rank() const { return rows_.size(); }
  std::size_t dimension() const { return n_ - rows_.size(); }

  /// True iff Z^n / L(H) is torsion free, i.e. H is connected.
  bool is_subtorus() const;

  std::string to_string() const;

  friend bool operator==(const SubgroupLattice& a, const SubgroupLattice& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }
  friend bool operator<(const SubgroupLattice& a, const SubgroupLattice& b);

 private:
  SubgroupLattice(std::size_t n, IntMatrix rows) : n_(n), rows_(std::move(rows)) {}
  std::size_t n_;
  IntMatrix rows_;
};

SubgroupLattice canonicalize(const IntMatrix& rows, std::size_t n);

/// K is a subgroup of H, decided by L(H) being contained in L(K).
bool contains(const SubgroupLattice& h, const SubgroupLattice& k);
/// L(H ∩ K) = L(H) + L(K).
SubgroupLattice intersect(const SubgroupLattice& h, const SubgroupLattice& k);
/// L(H_0) = saturation of L(H).
SubgroupLattice identity_component(const SubgroupLattice& h);

/// Rational basis of L(U) ⊗ Q, i.e. the degree-2 generators of R_{T/U}.
/// Throws InvalidInput unless U is a subtorus.
std::vector<RatVector> quotient_char_space(const SubgroupLattice& u);

/// Membership of a rational character in L(H) ⊗ Q.
bool in_rational_span(const SubgroupLattice& h, const RatVector& v);

/// A pair (U, H) with U a subtorus contained in H.
struct SubgroupPair {
  SubgroupLattice u;
  SubgroupLattice h;

  friend bool operator==(const SubgroupPair& a, const SubgroupPair& b) {
    return a.u == b.u && a.h == b.h;
  }
};

/// (U,H) <= (U',H') iff U ⊇ U' and H ⊆ H'.
bool pair_leq(const SubgroupPair& a, const SubgroupPair& b);

/// A finite stable subset of pairs with its order relation.
class PairPoset {
 public:
  PairPoset(std::size_t n, std::vector<SubgroupLattice> right, std::vector<SubgroupLattice> left);

  std::size_t n() const { return n_; }
  /// Intersection-closed subgroups (contains {1} and T).
  const std::vector<SubgroupLattice>& right() const { return right_; }
  /// Identity components of the right groups.
  const std::vector<SubgroupLattice>& left() const { return left_; }
  const std::vector<SubgroupPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

  bool leq(std::size_t i, std::size_t j) const { return order_[i][j]; }
  /// Index of a pair, or size() if absent.
  std::size_t find(const SubgroupPair& p) const;

 private:
  std::size_t n_;
  std::vector<SubgroupLattice> right_;
  std::vector<SubgroupLattice> left_;
  std::vector<SubgroupPair> pairs_;
  std::vector<std::vector<bool>> order_;
};

/// Closure of C ∪ {{1}, T} under intersection, with identity components.
PairPoset generate_stable(const std::vector<SubgroupLattice>& generators, std::size_t n);

/// Intersection of all members of `right` that contain H.
SubgroupLattice m_D(const std::vector<SubgroupLattice>& right, const SubgroupLattice& h);
SubgroupLattice m_D(const PairPoset& poset, const SubgroupLattice& h);

}  // namespace torusfix
