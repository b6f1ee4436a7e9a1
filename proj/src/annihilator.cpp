#include "torusfix/annihilator.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "torusfix/linalg.hpp"

namespace torusfix {

namespace {

class FormSet {
 public:
  FormSet(const std::vector<RatVector>& space, const std::vector<RatVector>& excluded,
          std::size_t dim)
      : space_(dim), excluded_(dim) {
    for (const auto& v : space) space_.insert(to_sparse(v));
    for (const auto& v : excluded) excluded_.insert(to_sparse(v));
  }

  // Position of v's direction in `forms`, adding it if new; nullopt when
  // v is not usable.
  std::optional<std::size_t> admit(const RatVector& v) {
    if (is_zero(v)) return std::nullopt;
    const SparseVec s = to_sparse(v);
    if (!space_.contains(s) || excluded_.contains(s)) return std::nullopt;
    const auto [it, fresh] = seen_.emplace(primitive_direction(v), forms.size());
    if (fresh) forms.push_back(v);
    return it->second;
  }

  std::vector<RatVector> forms;

 private:
  Echelon space_;
  Echelon excluded_;
  std::map<IntVector, std::size_t> seen_;
};

RatVector combine(const RatVector& a, const RatVector& b, int sign) {
  RatVector out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += sign * b[i];
  return out;
}

}  // namespace

FormCandidates candidate_forms(const std::vector<RatVector>& space,
                               const std::vector<RatVector>& excluded,
                               const std::vector<RatVector>& extra, const AnnihilatorPolicy& policy) {
  FormCandidates out;
  if (space.empty()) return out;
  const std::size_t dim = space.front().size();
  FormSet set(space, excluded, dim);

  Echelon span(dim);
  for (const auto& v : excluded) span.insert(to_sparse(v));
  std::vector<RatVector> complement;
  for (const auto& v : space) {
    if (span.insert(to_sparse(v))) complement.push_back(v);
  }
  for (const auto& v : complement) set.admit(v);
  for (std::size_t i = 0; i < complement.size(); ++i) {
    for (std::size_t j = i + 1; j < complement.size(); ++j) {
      set.admit(combine(complement[i], complement[j], 1));
      set.admit(combine(complement[i], complement[j], -1));
    }
  }
  for (const auto& v : extra) {
    const auto at = set.admit(v);
    if (at && std::find(out.extra.begin(), out.extra.end(), *at) == out.extra.end()) out.extra.push_back(*at);
  }
  out.deterministic = set.forms.size();

  std::mt19937_64 rng(policy.seed);
  for (std::size_t made = 0, attempts = 0; made < policy.random_forms && attempts < 64 * (policy.random_forms + 1);
       ++attempts) {
    RatVector v(dim, Rational(0));
    for (const auto& s : space) {
      const long c = static_cast<long>(rng() % 7) - 3;
      for (std::size_t i = 0; i < dim; ++i) v[i] += c * s[i];
    }
    const std::size_t before = set.forms.size();
    set.admit(v);
    made += set.forms.size() > before;
  }
  out.forms = std::move(set.forms);
  return out;
}

std::optional<AnnihilatorHit> search_annihilator(AnnihilatorProbe& probe,
                                                 const FormCandidates& candidates,
                                                 unsigned power_bound) {
  std::vector<std::vector<std::size_t>> plan;
  std::vector<std::size_t> det, all;
  for (std::size_t i = 0; i < candidates.forms.size(); ++i) {
    if (i < candidates.deterministic) det.push_back(i);
    all.push_back(i);
  }
  if (!candidates.extra.empty() && candidates.extra.size() != det.size()) plan.push_back(candidates.extra);
  if (!det.empty()) plan.push_back(det);
  if (all.size() != det.size()) plan.push_back(all);
  if (all.size() > 1) {
    for (std::size_t i : all) plan.push_back({i});
  }
  for (const auto& multiplier : plan) {
    probe.reset();
    for (unsigned p = 1; p <= power_bound; ++p) {
      const ProbeStep step = probe.multiply(multiplier);
      if (step == ProbeStep::Annihilated) return AnnihilatorHit{multiplier, p};
      if (step == ProbeStep::OutOfRange) break;
    }
  }
  return std::nullopt;
}

}  // namespace torusfix
