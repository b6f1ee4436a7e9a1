#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torusfix/annihilator.hpp"
#include "torusfix/linalg.hpp"
#include "torusfix/poly.hpp"
#include "torusfix/system.hpp"

namespace torusfix {

// Module element: generator index -> coefficient in Q[y_1..y_r].
using ModElement = std::map<std::size_t, HomogeneousPoly>;

struct ModuleGenerator {
  std::string name;
  unsigned degree;
};

// Graded commutative algebra given as a module over Q[y_1..y_r] (|y| = 2):
// generators, homogeneous relations and products of generator pairs.
// Pairs absent from the table fall back to graded commutativity, else zero.
class GradedAlgebraPresentation {
 public:
  using Table = std::map<std::pair<std::size_t, std::size_t>, ModElement>;

  GradedAlgebraPresentation(std::size_t ring_rank, std::vector<ModuleGenerator> gens,
                            std::vector<ModElement> relations, Table table, ModElement unit);

  std::size_t ring_rank() const { return r_; }
  const std::vector<ModuleGenerator>& gens() const { return gens_; }
  const std::vector<ModElement>& relations() const { return relations_; }
  const Table& table() const { return table_; }
  const ModElement& unit() const { return unit_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  std::optional<unsigned> degree(const ModElement& x) const;
  ModElement product(std::size_t a, std::size_t b) const;
  ModElement multiply(const ModElement& a, const ModElement& b) const;

  std::size_t dim(unsigned m) const;
  // Canonical representative modulo relations, in free coordinates.
  SparseVec normal_form(const ModElement& x, unsigned m) const;
  bool is_zero(const ModElement& x, unsigned m) const { return normal_form(x, m).empty(); }
  // Coordinates in the quotient basis of degree m.
  RatVector quotient_coords(const ModElement& x, unsigned m) const;
  std::vector<ModElement> quotient_basis(unsigned m) const;

  // Well-definedness of the products, unit laws, graded commutativity and
  // associativity on generators.
  std::vector<std::string> violations() const;

  std::string to_string(const ModElement& x) const;

 private:
  struct Level {
    std::vector<std::pair<std::size_t, Exponent>> free;
    std::map<std::pair<std::size_t, Exponent>, std::size_t> index;
    Echelon relations{0};
    std::vector<std::size_t> quotient_cols;
  };
  const Level& level(unsigned m) const;
  SparseVec free_coordinates(const ModElement& x, const Level& lv) const;

  std::size_t r_;
  std::vector<ModuleGenerator> gens_;
  std::vector<ModElement> relations_;
  Table table_;
  ModElement unit_;
  mutable std::map<unsigned, Level> levels_;
};

ModElement mod_scale(const HomogeneousPoly& p, const ModElement& x);
void mod_add(ModElement& acc, const ModElement& x, const Rational& s = 1);

// Substitutes y_a -> sum_b m[a][b] z_b.
HomogeneousPoly substitute_linear(const HomogeneousPoly& p, const std::vector<RatVector>& m,
                                  std::size_t target_rank);
ModElement substitute_linear(const ModElement& x, const std::vector<RatVector>& m,
                             std::size_t target_rank);
// Q[V_i] ⊗_{Q[V_j]} A_j along the coordinate change m (rows: V_j basis in V_i coordinates).
GradedAlgebraPresentation base_change(const GradedAlgebraPresentation& a,
                                      const std::vector<RatVector>& m, std::size_t target_rank);

// Rewrites an ambient polynomial in the coordinates of `basis`; nullopt if
// it does not lie in Q[span(basis)].
std::optional<HomogeneousPoly> to_local(const HomogeneousPoly& ambient,
                                        const std::vector<RatVector>& basis);
// Coordinates of v in `basis`, or nullopt.
std::optional<RatVector> local_coordinates(const RatVector& v, const std::vector<RatVector>& basis);

struct Subspace {
  std::string name;
  std::vector<RatVector> basis;  // linearly independent
};

struct CriterionMap {
  std::size_t from;
  std::size_t to;
  // Images of the generators of A_from in Q[V_from] ⊗ A_to, local coordinates of V_from.
  std::vector<ModElement> images;
};

struct CriterionData {
  std::size_t n = 0;
  std::vector<Subspace> spaces;
  std::vector<GradedAlgebraPresentation> algebras;  // one per space, same order
  std::vector<CriterionMap> maps;
  std::vector<std::vector<RatVector>> tests;  // subspaces W; empty: every V_i
};

struct CriterionItem {
  std::string condition;  // i, ii or iii
  std::string subject;
  VerdictKind kind = VerdictKind::VerifiedUpTo;
  std::string detail;
  std::vector<std::string> survivors;
};

struct CriterionReport {
  unsigned degree_bound = 0;
  std::vector<CriterionItem> items;
  VerdictKind summary(const std::string& condition) const;
};

// Throws InvalidInput when the full space or the zero space is missing.
CriterionReport check_realization_criterion(const CriterionData& data, unsigned degree_bound,
                                            const AnnihilatorPolicy& policy = {});

}  // namespace torusfix
