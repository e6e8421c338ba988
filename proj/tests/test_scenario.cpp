#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "normlab/scenario.hpp"
#include "normlab/space.hpp"

using namespace normlab;

#ifndef NORMLAB_SCENARIO_DIR
#define NORMLAB_SCENARIO_DIR "scenarios"
#endif

namespace {
std::string scenario_path(const std::string& name) {
  return std::string(NORMLAB_SCENARIO_DIR) + "/" + name;
}
}  // namespace

TEST_CASE("minimal single-point trivial-group scenario") {
  json j = {{"group", "cyclic:1"},
            {"space", {{"points", 1}, {"weights", {1.0}}, {"action", {{0}}}}}};
  Scenario s = parse_scenario(j);
  CHECK(s.space->points == 1);
  CHECK(s.element.coeffs.empty());
  CHECK(is_topologically_free(*s.space).free);
}

TEST_CASE("the running scenario file loads and is free") {
  Scenario s = load_scenario(scenario_path("running_z2.json"));
  CHECK(s.label == "running-z2");
  CHECK(s.seed == 42);
  CHECK(is_topologically_free(*s.space).free);
  CHECK(s.element.coeffs.at(0).at[0](0, 0) == Complex(1, 0));
  CHECK(s.element.coeffs.at(1).at[1](0, 0) == Complex(1, 0));
}

TEST_CASE("the mu=(1,3) variant keeps exact rational weights") {
  Scenario s = load_scenario(scenario_path("running_z2_mu13.json"));
  REQUIRE(s.space->weight_rationals[1].has_value());
  CHECK(*s.space->weight_rationals[1] == Rational(3));
  CHECK(s.space->weights[1] == 3.0);
}

TEST_CASE("the counterexample file is deliberately non-free") {
  Scenario s = load_scenario(scenario_path("counterexample_trivial_action.json"));
  CHECK_FALSE(is_topologically_free(*s.space).free);
}

TEST_CASE("per-generator action closes under the group law (d=2 file)") {
  Scenario s = load_scenario(scenario_path("cyclic3_translation_d2.json"));
  CHECK(s.element.dim == 2);
  CHECK(s.space->action[2] == std::vector<int>{1, 2, 0});
  CHECK(is_topologically_free(*s.space).free);
  REQUIRE(s.space->weight_rationals[0].has_value());
  CHECK(*s.space->weight_rationals[0] == Rational(1, 2));
}

TEST_CASE("a corrupted action names the violated pair") {
  json j = {{"group", "cyclic:2"},
            {"space", {{"points", 3}, {"weights", {1.0, 1.0, 1.0}}, {"action", {{0, 1, 2}, {1, 2, 0}}}}}};
  try {
    parse_scenario(j);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("(g=1, h=1)") != std::string::npos);
  }
}

TEST_CASE("element validation failures") {
  json base = {{"group", "cyclic:2"},
               {"space", {{"points", 2}, {"weights", {1.0, 1.0}}, {"action", {{0, 1}, {1, 0}}}}}};
  json bad = base;
  bad["element"] = {{{"g", 5}, {"coeff", {1.0, 1.0}}}};
  CHECK_THROWS_AS(parse_scenario(bad), ValidationError);
  bad = base;
  bad["element"] = {{{"g", 0}, {"coeff", {1.0}}}};  // not defined at every point
  CHECK_THROWS_AS(parse_scenario(bad), ValidationError);
  bad = base;
  bad["element"] = {{{"g", 0}, {"coeff", {1.0, 1.0}}}, {{"g", 0}, {"coeff", {2.0, 2.0}}}};
  CHECK_THROWS_AS(parse_scenario(bad), ValidationError);
}

TEST_CASE("io and parse errors") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/nowhere.json"), IoError);
  std::string tmp = "/tmp/normlab_bad_scenario.json";
  {
    std::ofstream f(tmp);
    f << "{ \"group\": ";
  }
  CHECK_THROWS_AS(load_scenario(tmp), ParseError);
}

TEST_CASE("save/load round trip is field-exact, rationals preserved") {
  Scenario s = random_scenario("product:[cyclic:2,cyclic:2]", 8, 2, 3, 909);
  // attach exact rational weights to two points
  auto sp = *s.space;
  auto rats = sp.weight_rationals;
  rats[0] = Rational(1, 3);
  rats[5] = Rational(7, 2);
  auto weights = sp.weights;
  weights[0] = to_double(*rats[0]);
  weights[5] = to_double(*rats[5]);
  s.space = make_space(s.group, weights, sp.action, rats);
  s.element = make_element(s.space, s.element.dim, s.element.coeffs);

  Scenario back = parse_scenario(save_scenario(s));
  CHECK(back.group->table == s.group->table);
  CHECK(back.group->descriptor == s.group->descriptor);
  CHECK(back.space->points == s.space->points);
  CHECK(back.space->weights == s.space->weights);
  CHECK(back.space->action == s.space->action);
  REQUIRE(back.space->weight_rationals[0].has_value());
  CHECK(*back.space->weight_rationals[0] == Rational(1, 3));
  CHECK(*back.space->weight_rationals[5] == Rational(7, 2));
  CHECK(back.seed == s.seed);
  CHECK(back.label == s.label);
  REQUIRE(back.element.support() == s.element.support());
  for (const auto& [g, a] : s.element.coeffs)
    for (int x = 0; x < s.space->points; ++x)
      CHECK(max_abs(CMatrix(back.element.coeffs.at(g).at[x] - a.at[x])) == 0.0);
  // and the serialized form itself is stable
  CHECK(save_scenario(back).dump() == save_scenario(s).dump());
}

TEST_CASE("random_scenario determinism and orbit layout") {
  Scenario a = random_scenario("cyclic:2", 4, 1, 2, 31337);
  Scenario b = random_scenario("cyclic:2", 4, 1, 2, 31337);
  CHECK(save_scenario(a).dump() == save_scenario(b).dump());
  Scenario c = random_scenario("cyclic:2", 4, 1, 2, 31338);
  CHECK(save_scenario(a).dump() != save_scenario(c).dump());

  // two free orbits of size 2
  CHECK(is_topologically_free(*a.space).free);
  std::set<std::vector<int>> orbits;
  for (int x = 0; x < 4; ++x) {
    auto o = orbit(*a.space, x);
    std::sort(o.begin(), o.end());
    orbits.insert(o);
  }
  CHECK(orbits.size() == 2);
  for (const auto& o : orbits) CHECK(o.size() == 2);

  CHECK_THROWS_AS(random_scenario("cyclic:3", 4, 1, 1, 1), InfeasibleFreeActionError);
}

TEST_CASE("weights in [0.5, 2], coefficients in the unit square") {
  Scenario s = random_scenario("cyclic:6", 24, 1, 4, 271828);
  for (double w : s.space->weights) {
    CHECK(w >= 0.5);
    CHECK(w <= 2.0);
  }
  for (const auto& [g, a] : s.element.coeffs)
    for (const auto& m : a.at) {
      CHECK(std::abs(m(0, 0).real()) <= 1.0);
      CHECK(std::abs(m(0, 0).imag()) <= 1.0);
    }
}
