#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "torusfix/rational.hpp"

namespace torusfix {

struct AnnihilatorPolicy {
  unsigned power_bound = 0;  // 0: twice the degree bound
  std::uint64_t seed = 0;
  std::size_t random_forms = 8;
  // Products are tried only up to this cohomological degree; 0: three times
  // the degree bound.
  unsigned degree_cap = 0;

  unsigned powers_for(unsigned degree_bound) const {
    return power_bound ? power_bound : 2 * degree_bound;
  }
  unsigned cap_for(unsigned degree_bound) const {
    return degree_cap ? degree_cap : 3 * degree_bound;
  }
};

// Linear forms from span(space) outside span(excluded), pairwise distinct
// up to scalars. The first `deterministic` entries do not depend on the seed.
struct FormCandidates {
  std::vector<RatVector> forms;
  std::size_t deterministic = 0;
  std::vector<std::size_t> extra;  // positions of the usable `extra` forms
};

// Complement basis of span(excluded), its pairwise sums and differences,
// the usable `extra` forms, then seeded random integer combinations.
FormCandidates candidate_forms(const std::vector<RatVector>& space,
                               const std::vector<RatVector>& excluded,
                               const std::vector<RatVector>& extra, const AnnihilatorPolicy& policy);

enum class ProbeStep { Annihilated, Survives, OutOfRange };

// A class under test. multiply() replaces the current element by its
// product with the given forms and reports whether it now vanishes.
class AnnihilatorProbe {
 public:
  virtual ~AnnihilatorProbe() = default;
  virtual void reset() = 0;
  virtual ProbeStep multiply(const std::vector<std::size_t>& forms) = 0;
};

struct AnnihilatorHit {
  std::vector<std::size_t> forms;
  unsigned power;
};

// Tries (product of the extra forms)^p, (product of the deterministic
// forms)^p, (product of all forms)^p, then each single form to the p, for
// p = 1..power_bound.
std::optional<AnnihilatorHit> search_annihilator(AnnihilatorProbe& probe,
                                                 const FormCandidates& candidates,
                                                 unsigned power_bound);

}  // namespace torusfix
