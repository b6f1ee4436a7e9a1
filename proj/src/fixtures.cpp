#include "torusfix/fixtures.hpp"

#include "torusfix/errors.hpp"

namespace torusfix {

namespace {

Json s6_graph() {
  return Json::parse(R"({
    "n": 2,
    "vertices": ["N", "S"],
    "edges": [
      {"u": "N", "v": "S", "label": [1, 0]},
      {"u": "N", "v": "S", "label": [0, 1]},
      {"u": "N", "v": "S", "label": [1, -1]}
    ]
  })");
}

Json theta3_triangle() {
  return Json::parse(R"({
    "n": 3,
    "vertices": ["p", "q", "r"],
    "edges": [
      {"u": "p", "v": "q", "label": [1, 0, 0]},
      {"u": "q", "v": "r", "label": [0, 1, 0]},
      {"u": "r", "v": "p", "label": [0, 0, 1]}
    ]
  })");
}

Json double_edge() {
  return Json::parse(R"({
    "n": 2,
    "vertices": ["p", "q"],
    "edges": [
      {"u": "p", "v": "q", "label": [1, 0]},
      {"u": "p", "v": "q", "label": [0, 1]}
    ]
  })");
}

Json triangle_parallel() {
  return Json::parse(R"({
    "n": 2,
    "vertices": ["p", "q", "r"],
    "edges": [
      {"u": "p", "v": "q", "label": [1, 0]},
      {"u": "q", "v": "r", "label": [1, 0]},
      {"u": "r", "v": "p", "label": [1, 0]}
    ]
  })");
}

Json single_edge() {
  return Json::parse(R"({
    "n": 1,
    "vertices": ["N", "S"],
    "edges": [{"u": "N", "v": "S", "label": [1]}]
  })");
}

// T^2 acting on S^6 by (s,t).(v,w,z,h) = (sv, tw, st^-1 z, h). The circles
// H1 = S^1 x 1, H2 = diagonal, H3 = 1 x S^1 carry the characters x1 = (0,1),
// x2 = (-1,1), x3 = (1,0), so x1 = x2 + x3 in R_T.
Json s6_system() {
  Json j = Json::parse(R"({
    "n": 2,
    "poset": [
      {"name": "1.1", "U": "trivial", "H": "trivial"},
      {"name": "1.H1", "U": "trivial", "H": {"ann": [[0, 1]], "n": 2}},
      {"name": "1.H2", "U": "trivial", "H": {"ann": [[1, -1]], "n": 2}},
      {"name": "1.H3", "U": "trivial", "H": {"ann": [[1, 0]], "n": 2}},
      {"name": "1.T", "U": "trivial", "H": "T"},
      {"name": "H1.H1", "U": {"ann": [[0, 1]], "n": 2}, "H": {"ann": [[0, 1]], "n": 2}},
      {"name": "H2.H2", "U": {"ann": [[1, -1]], "n": 2}, "H": {"ann": [[1, -1]], "n": 2}},
      {"name": "H3.H3", "U": {"ann": [[1, 0]], "n": 2}, "H": {"ann": [[1, 0]], "n": 2}},
      {"name": "H1.T", "U": {"ann": [[0, 1]], "n": 2}, "H": "T"},
      {"name": "H2.T", "U": {"ann": [[1, -1]], "n": 2}, "H": "T"},
      {"name": "H3.T", "U": {"ann": [[1, 0]], "n": 2}, "H": "T"},
      {"name": "T.T", "U": "T", "H": "T"}
    ],
    "algebras": {},
    "maps": [],
    "rstructure": {}
  })");

  const Json xv = Json::parse(R"([
    {"name": "x1", "deg": 2}, {"name": "x2", "deg": 2}, {"name": "x3", "deg": 2}, {"name": "v", "deg": 1}
  ])");
  const std::string dv = "x1 - x2 - x3";
  auto with = [](Json gens, std::initializer_list<std::pair<const char*, int>> extra) {
    for (const auto& [name, deg] : extra) gens.push_back(Json{{"name", name}, {"deg", deg}});
    return gens;
  };

  Json& alg = j["algebras"];
  alg["1.1"] = Json{{"factors", Json::array({Json{{"gens", with(xv, {{"b", 6}, {"s", 11}})},
                                                  {"d", Json{{"v", dv}, {"s", "b^2 - x1*x2*x3*b"}}}}})}};
  alg["1.T"] = Json{{"factors", Json::array({Json{{"gens", xv}, {"d", Json{{"v", dv}}}},
                                                 Json{{"gens", xv}, {"d", Json{{"v", dv}}}}})}};
  alg["T.T"] = Json{{"factors", Json::array({Json{{"gens", Json::array()}}, Json{{"gens", Json::array()}}})}};

  const char* b_images[3] = {"x2*x3*a1", "x1*x3*a2", "x1*x2*a3"};
  const char* s_images[3] = {"x2^2*x3^2*t1", "x1^2*x3^2*t2", "x1^2*x2^2*t3"};
  const char* r_forms[3] = {"x1", "-x2", "x3"};
  Json& maps = j["maps"];
  for (int i = 1; i <= 3; ++i) {
    const std::string k = std::to_string(i);
    const std::string x = "x" + k, a = "a" + k, t = "t" + k;
    const std::string b = "1.H" + k, f = "H" + k + ".H" + k, fi = "H" + k + ".T";
    const std::string dt = a + "^2 - " + x + "*" + a;
    alg[b] = Json{{"factors", Json::array({Json{{"gens", with(xv, {{a.c_str(), 2}, {t.c_str(), 3}})},
                                                {"d", Json{{"v", dv}, {t, dt}}}}})}};
    alg[f] = Json{{"factors", Json::array({Json{{"gens", Json::array({Json{{"name", x}, {"deg", 2}},
                                                                      Json{{"name", a}, {"deg", 2}},
                                                                      Json{{"name", t}, {"deg", 3}}})},
                                                {"d", Json{{t, dt}}}}})}};
    const Json xi = Json::array({Json{{"name", x}, {"deg", 2}}});
    alg[fi] = Json{{"factors", Json::array({Json{{"gens", xi}}, Json{{"gens", xi}}})}};

    const Json split = Json::array({Json{{a, "0"}, {t, "0"}}, Json{{a, x}, {t, "0"}}});
    maps.push_back(Json{{"from", "1.1"}, {"to", b}, {"images", Json::array({Json{{"b", b_images[i - 1]}, {"s", s_images[i - 1]}}})}});
    maps.push_back(Json{{"from", b}, {"to", "1.T"}, {"routing", Json::array({0, 0})}, {"images", split}});
    maps.push_back(Json{{"from", f}, {"to", b}});
    maps.push_back(Json{{"from", f}, {"to", fi}, {"routing", Json::array({0, 0})}, {"images", split}});
    maps.push_back(Json{{"from", fi}, {"to", "1.T"}, {"routing", Json::array({0, 1})}});
    maps.push_back(Json{{"from", "T.T"}, {"to", fi}, {"routing", Json::array({0, 1})}});

    const Json r = Json::array({r_forms[i - 1]});
    j["rstructure"][f] = r;
    j["rstructure"][fi] = r;
  }
  // Rows of quotient_char_space({1}) are (1,0) and (0,1).
  const Json r1 = Json::array({"x3", "x1"});
  for (const char* name : {"1.1", "1.H1", "1.H2", "1.H3", "1.T"}) j["rstructure"][name] = r1;
  j["rstructure"]["T.T"] = Json::array();
  return j;
}

Json ac_file(const Rational& c) {
  Json out{{"free", Json::array({Json{{"name", "1"}, {"deg", 0}}, Json{{"name", "a"}, {"deg", 2}}})},
           {"torsion", Json::array()},
           {"unit", "1"},
           {"mult", Json::array({Json{{"l", "a"}, {"r", "a"},
                                      {"terms", Json::array({Json{{"g", "1"}, {"coef", to_string(c)}, {"xpow", 2}}})}}})}};
  return out;
}

// The localization data of A_c over V_0 = <x> and V_1 = 0: A_1 is the
// degree-zero part of the localized algebra.
Json criterion_ac(bool split) {
  Json j = Json::parse(R"({
    "n": 1,
    "spaces": [{"name": "V0", "basis": [[1]]}, {"name": "V1", "basis": []}],
    "algebras": [
      {"space": "V0",
       "gens": [{"name": "1", "deg": 0}, {"name": "a", "deg": 2}],
       "unit": [{"g": "1", "coef": "1"}],
       "mult": [
         {"l": "1", "r": "1", "terms": [{"g": "1", "coef": "1"}]},
         {"l": "1", "r": "a", "terms": [{"g": "a", "coef": "1"}]},
         {"l": "a", "r": "a", "terms": [{"g": "1", "coef": {"2": "C"}}]}
       ]}
    ]
  })");
  j["algebras"][0]["mult"][2]["terms"][0]["coef"]["2"] = split ? "1" : "2";
  if (split) {
    j["algebras"].push_back(Json::parse(R"({
      "space": "V1",
      "gens": [{"name": "p", "deg": 0}, {"name": "q", "deg": 0}],
      "unit": [{"g": "p", "coef": "1"}, {"g": "q", "coef": "1"}],
      "mult": [
        {"l": "p", "r": "p", "terms": [{"g": "p", "coef": "1"}]},
        {"l": "q", "r": "q", "terms": [{"g": "q", "coef": "1"}]}
      ]})"));
    j["maps"] = Json::parse(R"([
      {"from": "V0", "to": "V1", "images": {
        "1": [{"g": "p", "coef": "1"}, {"g": "q", "coef": "1"}],
        "a": [{"g": "p", "coef": {"1": "1"}}, {"g": "q", "coef": {"1": "-1"}}]}}
    ])");
  } else {
    j["algebras"].push_back(Json::parse(R"({
      "space": "V1",
      "gens": [{"name": "1", "deg": 0}, {"name": "t", "deg": 0}],
      "unit": [{"g": "1", "coef": "1"}],
      "mult": [
        {"l": "1", "r": "1", "terms": [{"g": "1", "coef": "1"}]},
        {"l": "1", "r": "t", "terms": [{"g": "t", "coef": "1"}]},
        {"l": "t", "r": "t", "terms": [{"g": "1", "coef": "2"}]}
      ]})"));
    j["maps"] = Json::parse(R"([
      {"from": "V0", "to": "V1", "images": {
        "1": [{"g": "1", "coef": "1"}],
        "a": [{"g": "t", "coef": {"1": "1"}}]}}
    ])");
  }
  return j;
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"s6-graph", "s6-system", "ac-family", "theta3-triangle", "double-edge", "triangle-parallel",
          "single-edge", "criterion-ac"};
}

std::vector<std::pair<std::string, Json>> fixture_files(const std::string& name) {
  if (name == "s6-graph") return {{"s6-graph.json", s6_graph()}};
  if (name == "s6-system") return {{"s6-system.json", s6_system()}};
  if (name == "theta3-triangle") return {{"theta3-triangle.json", theta3_triangle()}};
  if (name == "double-edge") return {{"double-edge.json", double_edge()}};
  if (name == "triangle-parallel") return {{"triangle-parallel.json", triangle_parallel()}};
  if (name == "single-edge") return {{"single-edge.json", single_edge()}};
  if (name == "ac-family") {
    return {{"ac0.json", ac_file(0)},         {"ac1.json", ac_file(1)},   {"ac2.json", ac_file(2)},
            {"ac4.json", ac_file(4)},         {"ac-1.json", ac_file(-1)}, {"ac9_4.json", ac_file(Rational(9, 4))}};
  }
  if (name == "criterion-ac") return {{"criterion-ac1.json", criterion_ac(true)}, {"criterion-ac2.json", criterion_ac(false)}};
  throw InvalidInput("unknown fixture '" + name + "'");
}

Json fixture_document(const std::string& name, const std::string& file) {
  const auto files = fixture_files(name);
  if (file.empty()) {
    if (files.size() != 1) throw InvalidInput("fixture '" + name + "' has several files");
    return files.front().second;
  }
  for (const auto& [f, doc] : files) {
    if (f == file) return doc;
  }
  throw InvalidInput("fixture '" + name + "' has no file '" + file + "'");
}

}  // namespace torusfix
