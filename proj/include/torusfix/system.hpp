#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torusfix/annihilator.hpp"
#include "torusfix/cdga.hpp"
#include "torusfix/lattice.hpp"

namespace torusfix {

struct SystemNode {
  std::string name;
  SubgroupPair pair;
  Cdga algebra;
  // Degree-2 cocycles for the basis quotient_char_space(pair.u).
  std::vector<CdgaElement> rstructure;
};

struct SystemMap {
  std::size_t from;
  std::size_t to;
  CdgaMorphism map;
};

// A finite poset of (U, H) pairs carrying cdga presentations, maps on cover
// relations and a cohomology R-structure.
class SystemDiagram {
 public:
  // Throws InvalidInput on unknown map endpoints or rank mismatches.
  SystemDiagram(std::size_t n, std::vector<SystemNode> nodes, std::vector<SystemMap> maps);

  std::size_t n() const { return n_; }
  std::size_t size() const { return nodes_.size(); }
  const SystemNode& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<SystemNode>& nodes() const { return nodes_; }
  const std::vector<SystemMap>& maps() const { return maps_; }
  std::optional<std::size_t> find(const std::string& name) const;
  std::optional<std::size_t> find(const SubgroupPair& p) const;

  bool less(std::size_t i, std::size_t j) const;
  bool covers(std::size_t i, std::size_t j) const;
  const SystemMap* edge(std::size_t i, std::size_t j) const;

  // Distinct H over the nodes, and their identity components.
  const std::vector<SubgroupLattice>& right() const { return right_; }
  const std::vector<SubgroupLattice>& left() const { return left_; }

  // Along any chain of covers; identity when i == j. Requires i <= j and
  // every cover on the chain to carry a map.
  const CdgaMorphism& composite(std::size_t i, std::size_t j) const;
  const CdgaCohomology& cohomology(std::size_t i) const;

  // Cocycle representing w ∈ L(U) ⊗ Q under the node's R-structure;
  // nullopt if w lies outside that space.
  std::optional<CdgaElement> r_image(std::size_t i, const RatVector& w) const;

 private:
  std::size_t n_;
  std::vector<SystemNode> nodes_;
  std::vector<SystemMap> maps_;
  std::vector<SubgroupLattice> right_, left_;
  mutable std::map<std::pair<std::size_t, std::size_t>, CdgaMorphism> composites_;
  mutable std::map<std::size_t, std::unique_ptr<CdgaCohomology>> cohomology_;
};

std::vector<std::string> validate_system(const SystemDiagram& s);

enum class VerdictKind { VerifiedUpTo, Fails, Inconclusive };
std::string to_string(VerdictKind k);

struct ConditionVerdict {
  std::string condition;  // TC, SC or LC
  std::string subject;
  VerdictKind kind = VerdictKind::VerifiedUpTo;
  unsigned degree_bound = 0;
  unsigned degree = 0;  // first failing degree
  std::size_t kernel_dim = 0;
  std::size_t cokernel_dim = 0;
  std::size_t defect = 0;
  std::vector<std::string> survivors;
};

// Pairs (U,H) <= (K,H) with K a proper subtorus of U.
std::vector<ConditionVerdict> check_TC(const SystemDiagram& s, unsigned degree_bound);

// Surjectivity of every node onto the limit over its strict upper set.
std::vector<ConditionVerdict> check_SC(const SystemDiagram& s, unsigned degree_bound);

struct LcOptions {
  AnnihilatorPolicy policy;
  std::vector<SubgroupLattice> extra_tori;
};

// Never Fails: kernel and cokernel classes are either annihilated by a
// product of forms outside L(K) or listed as survivors.
std::vector<ConditionVerdict> check_LC(const SystemDiagram& s, unsigned degree_bound,
                                       const LcOptions& options = {});

struct NodeHypotheses {
  std::string node;
  bool spacelike = true;
  bool h1_zero = true;
  bool injective = true;
  std::vector<unsigned> generator_degrees;
  bool generation_stable = true;  // heuristic
  std::vector<std::string> details;
};

struct RealizationReport {
  unsigned degree_bound = 0;
  std::vector<NodeHypotheses> nodes;
  std::vector<ConditionVerdict> tc;
  std::vector<ConditionVerdict> lc;
  // TC, spacelike, finite type, H^1 = 0 and injectivity of R^2 ⊗ H^0 -> H^2.
  bool infinite_list = true;
  // LC and finite generation over R_{T/U} (the latter probed heuristically).
  bool finite_list = true;
};

RealizationReport realization_hypotheses(const SystemDiagram& s, unsigned degree_bound,
                                         const LcOptions& options = {});

}  // namespace torusfix
