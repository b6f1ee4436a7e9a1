#pragma once

#include <string>

#include "torusfix/io.hpp"

namespace torusfix {

inline constexpr const char* kSchema = "torusfix/1";

// Degree bounds are cohomological: graph degrees 2d <= bound.
Json graph_cohomology_report(const TGraph& g, unsigned degree_bound);
Json graph_realizable_report(const TGraph& g);
Json gkm_report(const TGraph& g);
Json circle_report(const CircleAlgebra& a);

struct SystemCheckOptions {
  unsigned degree_bound = 10;
  LcOptions lc;
};
// Throws InvalidInput listing the violations of an invalid system.
Json system_report(const SystemDiagram& s, const SystemCheckOptions& options);

Json criterion_report(const CriterionData& data, unsigned degree_bound, const AnnihilatorPolicy& policy);

// Human-readable rendering of any report above; carries the same verdicts.
std::string render_text(const Json& report);

}  // namespace torusfix
