#include <doctest.h>

#include "torusfix/criterion.hpp"
#include "torusfix/errors.hpp"
#include "torusfix/fixtures.hpp"
#include "torusfix/io.hpp"

using namespace torusfix;

namespace {

CriterionData fixture(const std::string& file) {
  return parse_criterion(fixture_document("criterion-ac", file));
}

// Q[V] as an algebra over itself: one generator "1" with 1 * 1 = 1.
Json polynomial_algebra(const std::string& space) {
  Json j = Json::parse(R"({"gens": [{"name": "1", "deg": 0}],
                         "unit": [{"g": "1", "coef": "1"}],
                         "mult": [{"l": "1", "r": "1", "terms": [{"g": "1", "coef": "1"}]}]})");
  j["space"] = space;
  return j;
}

// Every space carries Q[V]; maps between every nested pair send 1 to 1.
Json trivial_instance(std::size_t n, const std::vector<std::pair<std::string, Json>>& spaces) {
  Json j;
  j["n"] = n;
  j["spaces"] = Json::array();
  j["algebras"] = Json::array();
  j["maps"] = Json::array();
  for (const auto& [name, basis] : spaces) {
    j["spaces"].push_back({{"name", name}, {"basis", basis}});
    j["algebras"].push_back(polynomial_algebra(name));
  }
  return j;
}

void add_map(Json& j, const std::string& from, const std::string& to) {
  j["maps"].push_back({{"from", from}, {"to", to}, {"images", {{"1", Json::array({{{"g", "1"}, {"coef", "1"}}})}}}});
}

std::size_t count(const CriterionReport& r, const std::string& condition, VerdictKind k) {
  std::size_t c = 0;
  for (const auto& item : r.items) c += item.condition == condition && item.kind == k;
  return c;
}

}  // namespace

TEST_CASE("A_1 over the circle satisfies every condition") {
  const auto r = check_realization_criterion(fixture("criterion-ac1.json"), 8);
  for (const auto& item : r.items) {
    INFO(item.condition << " " << item.subject << " " << item.detail);
    CHECK(item.kind == VerdictKind::VerifiedUpTo);
  }
  CHECK(r.summary("i") == VerdictKind::VerifiedUpTo);
  CHECK(r.summary("ii") == VerdictKind::VerifiedUpTo);
  CHECK(r.summary("iii") == VerdictKind::VerifiedUpTo);
}

TEST_CASE("A_2 fails only through the non-split fixed point algebra") {
  const auto r = check_realization_criterion(fixture("criterion-ac2.json"), 8);
  CHECK(r.summary("i") == VerdictKind::VerifiedUpTo);
  CHECK(r.summary("ii") == VerdictKind::Fails);
  CHECK(r.summary("iii") == VerdictKind::VerifiedUpTo);
  REQUIRE(count(r, "ii", VerdictKind::Fails) == 1);
  for (const auto& item : r.items) {
    if (item.kind != VerdictKind::Fails) continue;
    CHECK(item.subject.find("V1") != std::string::npos);
    CHECK(item.detail.find("t^2 - 2") != std::string::npos);
  }
}

TEST_CASE("the zero torus is a trivial instance") {
  const Json j = trivial_instance(0, {{"V", Json::array()}});
  const auto r = check_realization_criterion(parse_criterion(j), 6);
  CHECK(r.summary("i") == VerdictKind::VerifiedUpTo);
  CHECK(r.summary("ii") == VerdictKind::VerifiedUpTo);
  CHECK(r.summary("iii") == VerdictKind::VerifiedUpTo);
}

TEST_CASE("a family missing a sum fails sum-closure") {
  Json j = trivial_instance(3, {{"F", Json::parse("[[1,0,0],[0,1,0],[0,0,1]]")},
                                {"A", Json::parse("[[1,0,0]]")},
                                {"B", Json::parse("[[0,1,0]]")},
                                {"Z", Json::array()}});
  for (auto [from, to] : {std::pair{"F", "A"}, {"F", "B"}, {"F", "Z"}, {"A", "Z"}, {"B", "Z"}}) {
    add_map(j, from, to);
  }
  const auto r = check_realization_criterion(parse_criterion(j), 4);
  CHECK(r.summary("i") == VerdictKind::Fails);
}

TEST_CASE("a closed chain of polynomial rings passes") {
  Json j = trivial_instance(2, {{"F", Json::parse("[[1,0],[0,1]]")},
                                {"L", Json::parse("[[1,1]]")},
                                {"Z", Json::array()}});
  for (auto [from, to] : {std::pair{"F", "L"}, {"F", "Z"}, {"L", "Z"}}) add_map(j, from, to);
  const auto r = check_realization_criterion(parse_criterion(j), 4);
  CHECK(r.summary("i") == VerdictKind::VerifiedUpTo);
  CHECK(r.summary("ii") == VerdictKind::VerifiedUpTo);
  CHECK(r.summary("iii") == VerdictKind::VerifiedUpTo);
}

TEST_CASE("a missing map is reported under condition iii") {
  Json j = trivial_instance(1, {{"F", Json::parse("[[1]]")}, {"Z", Json::array()}});
  const auto r = check_realization_criterion(parse_criterion(j), 4);
  CHECK(r.summary("iii") == VerdictKind::Fails);
}

TEST_CASE("shape errors are rejected") {
  SUBCASE("no full space") {
    const Json j = trivial_instance(2, {{"L", Json::parse("[[1,0]]")}, {"Z", Json::array()}});
    CHECK_THROWS_AS(check_realization_criterion(parse_criterion(j), 4), InvalidInput);
  }
  SUBCASE("no zero space") {
    const Json j = trivial_instance(1, {{"F", Json::parse("[[1]]")}});
    CHECK_THROWS_AS(check_realization_criterion(parse_criterion(j), 4), InvalidInput);
  }
  SUBCASE("dependent basis") {
    const Json j = trivial_instance(1, {{"F", Json::parse("[[1],[2]]")}, {"Z", Json::array()}});
    CHECK_THROWS_AS(check_realization_criterion(parse_criterion(j), 4), InvalidInput);
  }
}

TEST_CASE("coordinate helpers") {
  const std::vector<RatVector> basis = {{Rational(1), Rational(1), Rational(0)},
                                        {Rational(0), Rational(0), Rational(1)}};
  const auto c = local_coordinates({Rational(2), Rational(2), Rational(-1)}, basis);
  REQUIRE(c);
  CHECK(*c == RatVector{Rational(2), Rational(-1)});
  CHECK_FALSE(local_coordinates({Rational(1), Rational(0), Rational(0)}, basis));

  // (y1 + y2) * y3 lies in Q[span(basis)], y1 * y3 does not.
  HomogeneousPoly p(3, 2);
  p.add_term({1, 0, 1}, Rational(1));
  p.add_term({0, 1, 1}, Rational(1));
  const auto local = to_local(p, basis);
  REQUIRE(local);
  CHECK(local->coeff({1, 1}) == 1);
  CHECK(local->terms().size() == 1);
  HomogeneousPoly bad(3, 2);
  bad.add_term({1, 0, 1}, Rational(1));
  CHECK_FALSE(to_local(bad, basis));

  CHECK(substitute_linear(*local, basis, 3) == p);
}

TEST_CASE("presentation violations are detected") {
  const std::size_t r = 1;
  ModElement one{{0, HomogeneousPoly::constant(r, 1)}};
  GradedAlgebraPresentation::Table t;
  t[{0, 0}] = one;
  t[{0, 1}] = ModElement{{1, HomogeneousPoly::constant(r, 1)}};
  const GradedAlgebraPresentation good(r, {{"1", 0}, {"a", 2}}, {}, t, one);
  CHECK(good.violations().empty());
  CHECK(good.dim(0) == 1);
  CHECK(good.dim(2) == 2);
  CHECK(good.dim(4) == 2);

  auto broken = t;
  broken[{0, 1}] = ModElement{{1, HomogeneousPoly::constant(r, 2)}};
  const GradedAlgebraPresentation bad(r, {{"1", 0}, {"a", 2}}, {}, broken, one);
  CHECK_FALSE(bad.violations().empty());

  // The relation a - y * 1 collapses A to Q[y].
  ModElement rel{{1, HomogeneousPoly::constant(r, 1)}, {0, HomogeneousPoly::variable(r, 0) * Rational(-1)}};
  const GradedAlgebraPresentation quotient(r, {{"1", 0}, {"a", 2}}, {rel}, t, one);
  CHECK(quotient.dim(2) == 1);
  CHECK(quotient.dim(6) == 1);
}
