#pragma once

#include <string>

#include <json.hpp>

#include "torusfix/circle.hpp"
#include "torusfix/criterion.hpp"
#include "torusfix/lattice.hpp"
#include "torusfix/poly.hpp"
#include "torusfix/system.hpp"
#include "torusfix/tgraph.hpp"

namespace torusfix {

using Json = nlohmann::ordered_json;

// All parsers throw InvalidInput naming the offending field.
Json read_json_file(const std::string& path);

// {"ann": [[...]], "n": k}, or the shorthands "T" and "trivial".
SubgroupLattice parse_subgroup(const Json& j, std::size_t n);
Json subgroup_to_json(const SubgroupLattice& h);

// {"e1,e2,...": "p/q"}; a bare rational string is a constant.
HomogeneousPoly parse_poly(const Json& j, std::size_t n);
Json poly_to_json(const HomogeneousPoly& p);

TGraph parse_graph(const Json& j);
Json graph_to_json(const TGraph& g);

CircleAlgebra parse_circle(const Json& j);
Json circle_to_json(const CircleAlgebra& a);

SystemDiagram parse_system(const Json& j);

CriterionData parse_criterion(const Json& j);

}  // namespace torusfix
