#include "torusfix/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "torusfix/errors.hpp"

namespace torusfix {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(where + ": missing field '" + key + "'");
  return j.at(key);
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InvalidInput(where + ": expected a string");
  return j.get<std::string>();
}

std::size_t count(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InvalidInput(where + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InvalidInput(where + ": expected an array");
  return j;
}

Rational rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InvalidInput(where + ": expected an integer or a \"p/q\" string");
}

Integer integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    const Rational q = parse_rational(j.get<std::string>());
    if (q.get_den() == 1) return q.get_num();
  }
  throw InvalidInput(where + ": expected an integer");
}

IntVector int_vector(const Json& j, std::size_t n, const std::string& where) {
  array(j, where);
  if (j.size() != n) throw InvalidInput(where + ": expected " + std::to_string(n) + " entries");
  IntVector v;
  for (const auto& x : j) v.push_back(integer(x, where));
  return v;
}

RatVector rat_vector(const Json& j, std::size_t n, const std::string& where) {
  array(j, where);
  if (j.size() != n) throw InvalidInput(where + ": expected " + std::to_string(n) + " entries");
  RatVector v;
  for (const auto& x : j) v.push_back(rational(x, where));
  return v;
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

SubgroupLattice parse_subgroup(const Json& j, std::size_t n) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "T") return SubgroupLattice::full_torus(n);
    if (s == "trivial") return SubgroupLattice::trivial(n);
    throw InvalidInput("unknown subgroup shorthand '" + s + "'");
  }
  const std::size_t m = count(field(j, "n", "subgroup"), "subgroup.n");
  if (m != n) throw InvalidInput("subgroup of rank " + std::to_string(m) + " in a rank " + std::to_string(n) + " input");
  IntMatrix rows;
  for (const auto& r : array(field(j, "ann", "subgroup"), "subgroup.ann")) rows.push_back(int_vector(r, n, "subgroup.ann"));
  return SubgroupLattice::from_rows(rows, n);
}

Json subgroup_to_json(const SubgroupLattice& h) {
  Json rows = Json::array();
  for (const auto& r : h.ann()) {
    Json row = Json::array();
    for (const auto& x : r) row.push_back(std::stoll(x.get_str()));
    rows.push_back(row);
  }
  return Json{{"ann", rows}, {"n", h.n()}};
}

HomogeneousPoly parse_poly(const Json& j, std::size_t n) {
  if (j.is_string() || j.is_number_integer()) return HomogeneousPoly::constant(n, rational(j, "polynomial"));
  if (!j.is_object()) throw InvalidInput("polynomial: expected an object of exponent keys");
  HomogeneousPoly out(n, 0);
  for (const auto& [key, value] : j.items()) {
    Exponent e;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
        throw InvalidInput("polynomial: bad exponent key '" + key + "'");
      }
      e.push_back(static_cast<unsigned>(std::stoul(part)));
    }
    if (e.size() != n) throw InvalidInput("polynomial: key '" + key + "' needs " + std::to_string(n) + " exponents");
    unsigned deg = 0;
    for (unsigned x : e) deg += x;
    HomogeneousPoly term(n, deg);
    term.add_term(e, rational(value, "polynomial coefficient"));
    try {
      out += term;
    } catch (const std::exception&) {
      throw InvalidInput("polynomial: inhomogeneous terms");
    }
  }
  return out;
}

Json poly_to_json(const HomogeneousPoly& p) {
  Json out = Json::object();
  for (const auto& [e, c] : p.terms()) {
    std::string key;
    for (std::size_t i = 0; i < e.size(); ++i) key += (i ? "," : "") + std::to_string(e[i]);
    out[key] = to_string(c);
  }
  return out;
}

TGraph parse_graph(const Json& j) {
  return guarded("graph", [&] {
    const std::size_t n = count(field(j, "n", "graph"), "graph.n");
    std::vector<std::string> vertices;
    for (const auto& v : array(field(j, "vertices", "graph"), "graph.vertices")) vertices.push_back(text(v, "graph.vertices"));
    std::vector<TEdge> edges;
    const Json& es = array(field(j, "edges", "graph"), "graph.edges");
    for (std::size_t i = 0; i < es.size(); ++i) {
      const std::string where = "graph.edges[" + std::to_string(i) + "]";
      const std::string u = text(field(es[i], "u", where), where + ".u");
      const std::string v = text(field(es[i], "v", where), where + ".v");
      auto index = [&](const std::string& name) {
        for (std::size_t k = 0; k < vertices.size(); ++k) {
          if (vertices[k] == name) return k;
        }
        throw InvalidInput(where + ": unknown vertex '" + name + "'");
      };
      edges.push_back({index(u), index(v), int_vector(field(es[i], "label", where), n, where + ".label")});
    }
    return TGraph(n, vertices, edges);
  });
}

Json graph_to_json(const TGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    Json label = Json::array();
    for (const auto& x : e.label) label.push_back(std::stoll(x.get_str()));
    edges.push_back(Json{{"u", g.vertices()[e.u]}, {"v", g.vertices()[e.v]}, {"label", label}});
  }
  return Json{{"n", g.n()}, {"vertices", g.vertices()}, {"edges", edges}};
}

CircleAlgebra parse_circle(const Json& j) {
  return guarded("circle algebra", [&] {
    std::vector<CircleGenerator> gens;
    if (j.contains("free")) {
      for (const auto& g : array(j.at("free"), "free")) {
        gens.push_back({text(field(g, "name", "free"), "free.name"),
                        static_cast<unsigned>(count(field(g, "deg", "free"), "free.deg")), std::nullopt});
      }
    }
    if (j.contains("torsion")) {
      for (const auto& g : array(j.at("torsion"), "torsion")) {
        const std::size_t order = count(field(g, "order", "torsion"), "torsion.order");
        if (order == 0) throw InvalidInput("torsion.order must be at least 1");
        gens.push_back({text(field(g, "name", "torsion"), "torsion.name"),
                        static_cast<unsigned>(count(field(g, "deg", "torsion"), "torsion.deg")),
                        static_cast<unsigned>(order)});
      }
    }
    auto index = [&](const std::string& name) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        if (gens[k].name == name) return k;
      }
      throw InvalidInput("unknown generator '" + name + "'");
    };
    if (gens.empty()) {
      return CircleAlgebra({}, 0, {});
    }
    const std::size_t unit = index(text(field(j, "unit", "circle algebra"), "unit"));
    CircleAlgebra::Table table;
    if (j.contains("mult")) {
      for (const auto& m : array(j.at("mult"), "mult")) {
        const std::size_t l = index(text(field(m, "l", "mult"), "mult.l"));
        const std::size_t r = index(text(field(m, "r", "mult"), "mult.r"));
        std::vector<CircleTerm> terms;
        for (const auto& t : array(field(m, "terms", "mult"), "mult.terms")) {
          const unsigned xpow = t.contains("xpow") ? static_cast<unsigned>(count(t.at("xpow"), "xpow")) : 0;
          terms.push_back({index(text(field(t, "g", "term"), "term.g")), rational(field(t, "coef", "term"), "term.coef"), xpow});
        }
        if (!table.emplace(std::make_pair(l, r), terms).second) {
          throw InvalidInput("product " + gens[l].name + "*" + gens[r].name + " given twice");
        }
      }
    }
    return CircleAlgebra(gens, unit, table);
  });
}

Json circle_to_json(const CircleAlgebra& a) {
  Json free = Json::array(), torsion = Json::array(), mult = Json::array();
  for (const auto& g : a.generators()) {
    if (g.is_free()) {
      free.push_back(Json{{"name", g.name}, {"deg", g.degree}});
    } else {
      torsion.push_back(Json{{"name", g.name}, {"deg", g.degree}, {"order", *g.order}});
    }
  }
  for (const auto& [key, terms] : a.table()) {
    Json ts = Json::array();
    for (const auto& t : terms) {
      ts.push_back(Json{{"g", a.generators()[t.gen].name}, {"coef", to_string(t.coef)}, {"xpow", t.xpow}});
    }
    mult.push_back(Json{{"l", a.generators()[key.first].name}, {"r", a.generators()[key.second].name}, {"terms", ts}});
  }
  Json out{{"free", free}, {"torsion", torsion}};
  if (!a.generators().empty()) out["unit"] = a.generators()[a.unit()].name;
  out["mult"] = mult;
  return out;
}

namespace {

FreeFactor parse_factor(const Json& j, const std::string& where) {
  std::vector<CdgaGenerator> gens;
  if (j.contains("gens")) {
    for (const auto& g : array(j.at("gens"), where + ".gens")) {
      const std::size_t deg = count(field(g, "deg", where), where + ".deg");
      gens.push_back({text(field(g, "name", where), where + ".name"), static_cast<unsigned>(deg)});
    }
  }
  FreeFactor bare(gens);
  if (!j.contains("d")) return bare;
  std::vector<GcPoly> d(gens.size());
  for (const auto& [name, expr] : j.at("d").items()) {
    const auto i = bare.index_of(name);
    if (!i) throw InvalidInput(where + ": differential of unknown generator '" + name + "'");
    d[*i] = parse_gc(bare, text(expr, where + ".d"));
  }
  return FreeFactor(gens, d);
}

CdgaElement parse_cdga_element(const Cdga& a, const Json& j, const std::string& where) {
  if (j.is_string()) return parse_element(a, j.get<std::string>());
  array(j, where);
  if (j.size() != a.factor_count()) throw InvalidInput(where + ": expected one expression per factor");
  CdgaElement out = a.zero();
  for (std::size_t t = 0; t < j.size(); ++t) out[t] = parse_gc(a.factor(t), text(j[t], where));
  return out;
}

}  // namespace

SystemDiagram parse_system(const Json& j) {
  return guarded("system", [&] {
    const std::size_t n = count(field(j, "n", "system"), "system.n");
    const Json& algebras = field(j, "algebras", "system");
    const Json* rstructure = j.contains("rstructure") ? &j.at("rstructure") : nullptr;
    std::vector<SystemNode> nodes;
    for (const auto& p : array(field(j, "poset", "system"), "system.poset")) {
      const std::string name = text(field(p, "name", "poset entry"), "poset.name");
      const std::string where = "node '" + name + "'";
      SubgroupPair pair{parse_subgroup(field(p, "U", where), n), parse_subgroup(field(p, "H", where), n)};
      std::vector<FreeFactor> factors;
      for (const auto& f : array(field(field(algebras, name.c_str(), "algebras"), "factors", where), where + ".factors")) {
        factors.push_back(parse_factor(f, where));
      }
      Cdga algebra(std::move(factors));
      std::vector<CdgaElement> r;
      if (rstructure && rstructure->contains(name)) {
        for (const auto& e : array(rstructure->at(name), where + " rstructure")) {
          r.push_back(parse_cdga_element(algebra, e, where + " rstructure"));
        }
      }
      nodes.push_back({name, std::move(pair), std::move(algebra), std::move(r)});
    }
    for (const auto& [name, value] : algebras.items()) {
      bool known = false;
      for (const auto& node : nodes) known = known || node.name == name;
      if (!known) throw InvalidInput("algebra for unknown node '" + name + "'");
    }
    auto node_index = [&](const std::string& name) {
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (nodes[k].name == name) return k;
      }
      throw InvalidInput("unknown node '" + name + "'");
    };

    std::vector<SystemMap> maps;
    if (j.contains("maps")) {
      for (const auto& m : array(j.at("maps"), "system.maps")) {
        const std::size_t from = node_index(text(field(m, "from", "map"), "map.from"));
        const std::size_t to = node_index(text(field(m, "to", "map"), "map.to"));
        const std::string where = "map " + nodes[from].name + " -> " + nodes[to].name;
        const Cdga& src = nodes[from].algebra;
        const Cdga& tgt = nodes[to].algebra;
        CdgaMorphism f;
        if (m.contains("routing")) {
          for (const auto& r : array(m.at("routing"), where + ".routing")) f.routing.push_back(count(r, where + ".routing"));
        } else if (src.factor_count() == tgt.factor_count()) {
          for (std::size_t t = 0; t < tgt.factor_count(); ++t) f.routing.push_back(t);
        } else if (src.factor_count() == 1) {
          f.routing.assign(tgt.factor_count(), 0);
        } else {
          throw InvalidInput(where + ": routing required");
        }
        if (f.routing.size() != tgt.factor_count()) throw InvalidInput(where + ": routing needs one entry per target factor");
        const Json empty = Json::array();
        const Json& images = m.contains("images") ? array(m.at("images"), where + ".images") : empty;
        if (!images.empty() && images.size() != tgt.factor_count()) {
          throw InvalidInput(where + ": images need one table per target factor");
        }
        for (std::size_t t = 0; t < tgt.factor_count(); ++t) {
          if (f.routing[t] >= src.factor_count()) throw InvalidInput(where + ": routing names an unknown source factor");
          const FreeFactor& sf = src.factor(f.routing[t]);
          const FreeFactor& tf = tgt.factor(t);
          std::vector<GcPoly> img(sf.size());
          std::vector<bool> given(sf.size(), false);
          if (!images.empty()) {
            for (const auto& [g, expr] : images[t].items()) {
              const auto i = sf.index_of(g);
              if (!i) throw InvalidInput(where + ": image of unknown generator '" + g + "'");
              img[*i] = parse_gc(tf, text(expr, where));
              given[*i] = true;
            }
          }
          for (std::size_t g = 0; g < sf.size(); ++g) {
            if (given[g]) continue;
            const auto same = tf.index_of(sf.gens()[g].name);
            if (!same) throw InvalidInput(where + ": no image for '" + sf.gens()[g].name + "'");
            img[g] = tf.generator(*same);
          }
          f.images.push_back(std::move(img));
        }
        maps.push_back({from, to, std::move(f)});
      }
    }
    return SystemDiagram(n, std::move(nodes), std::move(maps));
  });
}

namespace {

ModElement parse_terms(const Json& j, const std::vector<ModuleGenerator>& gens, std::size_t rank,
                       const std::string& where) {
  ModElement out;
  for (const auto& t : array(j, where)) {
    const std::string g = text(field(t, "g", where), where + ".g");
    std::size_t index = gens.size();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (gens[k].name == g) index = k;
    }
    if (index == gens.size()) throw InvalidInput(where + ": unknown generator '" + g + "'");
    ModElement term{{index, parse_poly(field(t, "coef", where), rank)}};
    try {
      mod_add(out, term);
    } catch (const std::exception&) {
      throw InvalidInput(where + ": inhomogeneous coefficients");
    }
  }
  return out;
}

}  // namespace

CriterionData parse_criterion(const Json& j) {
  return guarded("criterion data", [&] {
    CriterionData data;
    data.n = count(field(j, "n", "criterion data"), "n");
    for (const auto& s : array(field(j, "spaces", "criterion data"), "spaces")) {
      Subspace sub;
      sub.name = text(field(s, "name", "space"), "space.name");
      for (const auto& v : array(field(s, "basis", "space " + sub.name), "basis")) {
        sub.basis.push_back(rat_vector(v, data.n, "space " + sub.name));
      }
      for (const auto& other : data.spaces) {
        if (other.name == sub.name) throw InvalidInput("duplicate space '" + sub.name + "'");
      }
      data.spaces.push_back(std::move(sub));
    }
    auto space_index = [&](const std::string& name) {
      for (std::size_t k = 0; k < data.spaces.size(); ++k) {
        if (data.spaces[k].name == name) return k;
      }
      throw InvalidInput("unknown space '" + name + "'");
    };

    std::vector<std::optional<GradedAlgebraPresentation>> algebras(data.spaces.size());
    for (const auto& a : array(field(j, "algebras", "criterion data"), "algebras")) {
      const std::size_t i = space_index(text(field(a, "space", "algebra"), "algebra.space"));
      const std::string where = "algebra over " + data.spaces[i].name;
      if (algebras[i]) throw InvalidInput(where + " given twice");
      const std::size_t rank = data.spaces[i].basis.size();
      std::vector<ModuleGenerator> gens;
      for (const auto& g : array(field(a, "gens", where), where + ".gens")) {
        gens.push_back({text(field(g, "name", where), where + ".name"),
                        static_cast<unsigned>(count(field(g, "deg", where), where + ".deg"))});
      }
      std::vector<ModElement> relations;
      if (a.contains("relations")) {
        for (const auto& r : array(a.at("relations"), where + ".relations")) relations.push_back(parse_terms(r, gens, rank, where));
      }
      GradedAlgebraPresentation::Table table;
      if (a.contains("mult")) {
        for (const auto& m : array(a.at("mult"), where + ".mult")) {
          auto index = [&](const Json& name) {
            const std::string s = text(name, where);
            for (std::size_t k = 0; k < gens.size(); ++k) {
              if (gens[k].name == s) return k;
            }
            throw InvalidInput(where + ": unknown generator '" + s + "'");
          };
          const auto key = std::make_pair(index(field(m, "l", where)), index(field(m, "r", where)));
          if (!table.emplace(key, parse_terms(field(m, "terms", where), gens, rank, where)).second) {
            throw InvalidInput(where + ": product given twice");
          }
        }
      }
      ModElement unit = parse_terms(field(a, "unit", where), gens, rank, where);
      algebras[i].emplace(rank, std::move(gens), std::move(relations), std::move(table), std::move(unit));
    }
    for (std::size_t i = 0; i < algebras.size(); ++i) {
      if (!algebras[i]) throw InvalidInput("no algebra over " + data.spaces[i].name);
      data.algebras.push_back(std::move(*algebras[i]));
    }

    if (j.contains("maps")) {
      for (const auto& m : array(j.at("maps"), "maps")) {
        CriterionMap f;
        f.from = space_index(text(field(m, "from", "map"), "map.from"));
        f.to = space_index(text(field(m, "to", "map"), "map.to"));
        const std::string where = "map " + data.spaces[f.from].name + " -> " + data.spaces[f.to].name;
        const auto& src = data.algebras[f.from];
        const auto& tgt = data.algebras[f.to];
        const Json& images = field(m, "images", where);
        f.images.resize(src.gens().size());
        std::set<std::string> seen;
        for (const auto& [g, terms] : images.items()) {
          const auto i = src.index_of(g);
          if (!i) throw InvalidInput(where + ": image of unknown generator '" + g + "'");
          f.images[*i] = parse_terms(terms, tgt.gens(), data.spaces[f.from].basis.size(), where);
          seen.insert(g);
        }
        for (const auto& g : src.gens()) {
          if (!seen.count(g.name)) throw InvalidInput(where + ": no image for '" + g.name + "'");
        }
        data.maps.push_back(std::move(f));
      }
    }
    if (j.contains("tests")) {
      for (const auto& t : array(j.at("tests"), "tests")) {
        std::vector<RatVector> basis;
        for (const auto& v : array(field(t, "basis", "test"), "test.basis")) basis.push_back(rat_vector(v, data.n, "test.basis"));
        data.tests.push_back(std::move(basis));
      }
    }
    return data;
  });
}

}  // namespace torusfix
