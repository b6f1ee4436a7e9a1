#include "torusfix/report.hpp"

#include <sstream>

#include "torusfix/errors.hpp"

namespace torusfix {

namespace {

Json int_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(std::stoll(x.get_str()));
  return out;
}

Json header(const char* command) { return Json{{"schema", kSchema}, {"command", command}}; }

Json witnesses_json(const TGraph& g, const RealizabilityVerdict& v) {
  Json out = Json::array();
  for (const auto& w : v.witnesses) {
    Json item{{"direction", int_json(w.direction)}, {"forest", w.forest}};
    if (!w.forest) {
      Json vertices = Json::array();
      for (std::size_t i : w.cycle_vertices) vertices.push_back(g.vertices()[i]);
      item["cycle_edges"] = w.cycle_edges;
      item["cycle_vertices"] = vertices;
    }
    out.push_back(item);
  }
  return out;
}

Json freeness_json(const TGraph& g, const FreenessReport& f) {
  Json out{{"degree_bound", f.degree_bound},
           {"generator_degrees", f.generator_degrees},
           {"verdict", f.free_up_to_bound ? "free-up-to" : "not-free"}};
  Json certs = Json::array();
  if (f.syzygy) {
    Json coeffs = Json::array();
    for (const auto& [gen, p] : f.syzygy->coefficients) {
      coeffs.push_back(Json{{"generator", gen}, {"coefficient", p.to_string()}});
    }
    certs.push_back(Json{{"kind", "syzygy"}, {"degree", f.syzygy->degree}, {"coefficients", coeffs}});
  }
  if (f.rank_excess) {
    certs.push_back(Json{{"kind", "rank-excess"},
                         {"generators", f.generator_degrees.size()},
                         {"rank", g.vertex_count()}});
  }
  out["certificates"] = certs;
  return out;
}

Json verdict_json(const ConditionVerdict& v) {
  Json out{{"condition", v.condition}, {"subject", v.subject}, {"verdict", to_string(v.kind)},
           {"degree_bound", v.degree_bound}};
  if (v.kind == VerdictKind::Fails) {
    out["degree"] = v.degree;
    out["kernel_dim"] = v.kernel_dim;
    out["cokernel_dim"] = v.cokernel_dim;
    out["defect"] = v.defect;
  }
  if (v.condition == "LC") {
    out["kernel_classes"] = v.kernel_dim;
    out["cokernel_classes"] = v.cokernel_dim;
  }
  out["survivors"] = v.survivors;
  return out;
}

std::string join(const Json& list, const char* sep = ", ") {
  std::string s;
  for (const auto& x : list) {
    if (!s.empty()) s += sep;
    s += x.is_string() ? x.get<std::string>() : x.dump();
  }
  return s;
}

}  // namespace

Json graph_cohomology_report(const TGraph& g, unsigned degree_bound) {
  Json out = header("graph-cohomology");
  out["degree_bound"] = degree_bound;
  out["hilbert"] = hilbert_function(g, degree_bound / 2);
  const auto verdict = realizable(g);
  out["realizable"] = verdict.realizable;
  out["witnesses"] = witnesses_json(g, verdict);
  out["freeness"] = freeness_json(g, freeness_probe(g, degree_bound));
  return out;
}

Json graph_realizable_report(const TGraph& g) {
  Json out = header("graph-realizable");
  const auto verdict = realizable(g);
  out["realizable"] = verdict.realizable;
  out["witnesses"] = witnesses_json(g, verdict);
  return out;
}

Json gkm_report(const TGraph& g) {
  Json out = header("gkm-validate");
  const GkmCheck c = gkm_axiom_check(g);
  out["gkm"] = c.ok;
  if (!c.ok) {
    out["vertex"] = g.vertices()[c.vertex];
    out["edges"] = Json::array({c.edge_a, c.edge_b});
  }
  return out;
}

Json circle_report(const CircleAlgebra& a) {
  Json out = header("circle-realizable");
  const CircleVerdict v = realizable_circle(a);
  out["verdict"] = to_string(v.kind);
  switch (v.kind) {
    case CircleVerdictKind::Realizable:
      out["fixed_points"] = v.fixed_points;
      out["idempotents"] = v.idempotents;
      break;
    case CircleVerdictKind::NotRealizable:
      out["reason"] = "field-extension";
      out["field_polynomial"] = v.field_polynomial.to_string();
      out["witness"] = v.witness;
      break;
    case CircleVerdictKind::HypothesisViolated:
      out["hypothesis"] = to_string(v.violated);
      out["witness"] = v.witness;
      break;
  }
  return out;
}

Json system_report(const SystemDiagram& s, const SystemCheckOptions& options) {
  const auto violations = validate_system(s);
  if (!violations.empty()) {
    std::string msg = "invalid system:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw InvalidInput(msg);
  }
  const unsigned bound = options.degree_bound;
  Json out = header("system-check");
  out["degree_bound"] = bound;
  Json nodes = Json::array();
  const RealizationReport hyp = realization_hypotheses(s, bound, options.lc);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const NodeHypotheses& nh = hyp.nodes[i];
    nodes.push_back(Json{{"name", s.node(i).name},
                         {"U", subgroup_to_json(s.node(i).pair.u)},
                         {"H", subgroup_to_json(s.node(i).pair.h)},
                         {"hilbert", s.cohomology(i).hilbert(bound)},
                         {"spacelike", nh.spacelike},
                         {"h1_zero", nh.h1_zero},
                         {"injective", nh.injective},
                         {"generator_degrees", nh.generator_degrees},
                         {"generation_stable", nh.generation_stable},
                         {"details", nh.details}});
  }
  out["nodes"] = nodes;
  Json tc = Json::array(), lc = Json::array(), sc = Json::array();
  for (const auto& v : hyp.tc) tc.push_back(verdict_json(v));
  for (const auto& v : hyp.lc) lc.push_back(verdict_json(v));
  for (const auto& v : check_SC(s, bound)) sc.push_back(verdict_json(v));
  out["TC"] = tc;
  out["SC"] = sc;
  out["LC"] = lc;
  out["hypotheses"] = Json{{"infinite", hyp.infinite_list},
                           {"finite", hyp.finite_list},
                           {"finite_generation", "heuristic probe"}};
  return out;
}

Json criterion_report(const CriterionData& data, unsigned degree_bound, const AnnihilatorPolicy& policy) {
  const CriterionReport r = check_realization_criterion(data, degree_bound, policy);
  Json out = header("criterion-check");
  out["degree_bound"] = degree_bound;
  Json items = Json::array();
  for (const auto& it : r.items) {
    items.push_back(Json{{"condition", it.condition},
                         {"subject", it.subject},
                         {"verdict", to_string(it.kind)},
                         {"detail", it.detail},
                         {"survivors", it.survivors}});
  }
  out["items"] = items;
  out["summary"] = Json{{"i", to_string(r.summary("i"))},
                        {"ii", to_string(r.summary("ii"))},
                        {"iii", to_string(r.summary("iii"))}};
  return out;
}

namespace {

void render_witnesses(std::ostream& os, const Json& r) {
  for (const auto& w : r["witnesses"]) {
    if (w["forest"].get<bool>()) continue;
    os << "  cycle in direction " << w["direction"].dump() << ": " << join(w["cycle_vertices"], " - ") << "\n";
  }
}

void render_verdicts(std::ostream& os, const Json& list) {
  for (const auto& v : list) {
    os << "  " << v["condition"].get<std::string>() << " " << v["subject"].get<std::string>() << ": "
       << v["verdict"].get<std::string>();
    if (v["verdict"] == "verified") os << " up to " << v["degree_bound"];
    if (v["verdict"] == "fails") {
      os << " in degree " << v["degree"] << " (kernel " << v["kernel_dim"] << ", cokernel " << v["cokernel_dim"]
         << ", defect " << v["defect"] << ")";
    }
    os << "\n";
    for (const auto& s : v["survivors"]) os << "    survivor " << s.get<std::string>() << "\n";
  }
}

}  // namespace

std::string render_text(const Json& r) {
  std::ostringstream os;
  const std::string command = r.at("command").get<std::string>();
  if (command == "graph-cohomology") {
    os << "hilbert (degrees 0, 2, ..., " << 2 * (r["hilbert"].size() - 1) << "): " << join(r["hilbert"]) << "\n";
    os << "realizable: " << (r["realizable"].get<bool>() ? "true" : "false") << "\n";
    render_witnesses(os, r);
    const Json& f = r["freeness"];
    os << "freeness: " << f["verdict"].get<std::string>() << " " << f["degree_bound"] << ", generator degrees "
       << join(f["generator_degrees"]) << "\n";
    for (const auto& c : f["certificates"]) {
      if (c["kind"] == "syzygy") {
        os << "  syzygy in degree " << c["degree"] << ":";
        for (const auto& t : c["coefficients"]) {
          os << " (" << t["coefficient"].get<std::string>() << ")*g" << t["generator"];
        }
        os << "\n";
      } else {
        os << "  rank excess: " << c["generators"] << " generators, rank " << c["rank"] << "\n";
      }
    }
  } else if (command == "graph-realizable") {
    os << "realizable: " << (r["realizable"].get<bool>() ? "true" : "false") << "\n";
    render_witnesses(os, r);
  } else if (command == "gkm-validate") {
    os << "gkm: " << (r["gkm"].get<bool>() ? "true" : "false") << "\n";
    if (!r["gkm"].get<bool>()) {
      os << "  dependent labels at vertex " << r["vertex"].get<std::string>() << " on edges " << join(r["edges"]) << "\n";
    }
  } else if (command == "circle-realizable") {
    const std::string v = r["verdict"].get<std::string>();
    if (v == "realizable") {
      os << "realizable: " << r["fixed_points"] << " fixed points\n";
      for (const auto& e : r["idempotents"]) os << "  idempotent " << e.get<std::string>() << "\n";
    } else if (v == "not-realizable") {
      os << "not realizable: field extension " << r["field_polynomial"].get<std::string>() << " (witness "
         << r["witness"].get<std::string>() << ")\n";
    } else {
      os << "hypothesis violated: " << r["hypothesis"].get<std::string>();
      if (!r["witness"].get<std::string>().empty()) os << " (witness " << r["witness"].get<std::string>() << ")";
      os << "\n";
    }
  } else if (command == "system-check") {
    os << "degree bound " << r["degree_bound"] << "\n";
    for (const auto& n : r["nodes"]) {
      os << "node " << n["name"].get<std::string>() << ": hilbert " << join(n["hilbert"]) << "\n";
      for (const auto& d : n["details"]) os << "  " << d.get<std::string>() << "\n";
    }
    os << "TC\n";
    render_verdicts(os, r["TC"]);
    os << "SC\n";
    render_verdicts(os, r["SC"]);
    os << "LC\n";
    render_verdicts(os, r["LC"]);
    os << "infinite-complex hypotheses: " << (r["hypotheses"]["infinite"].get<bool>() ? "pass" : "fail") << "\n";
    os << "finite-complex hypotheses: " << (r["hypotheses"]["finite"].get<bool>() ? "pass" : "fail")
       << " (finite generation probed heuristically)\n";
  } else if (command == "criterion-check") {
    for (const auto& it : r["items"]) {
      os << "(" << it["condition"].get<std::string>() << ") " << it["subject"].get<std::string>() << ": "
         << it["verdict"].get<std::string>();
      if (!it["detail"].get<std::string>().empty()) os << ": " << it["detail"].get<std::string>();
      os << "\n";
      for (const auto& s : it["survivors"]) os << "    survivor " << s.get<std::string>() << "\n";
    }
    for (const char* c : {"i", "ii", "iii"}) os << "condition " << c << ": " << r["summary"][c].get<std::string>() << "\n";
  } else {
    throw InvariantBreach("no text rendering for '" + command + "'");
  }
  return os.str();
}

}  // namespace torusfix
