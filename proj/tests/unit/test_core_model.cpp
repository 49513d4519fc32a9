#include <doctest.h>

#include <algorithm>

#include "daml/core_model.hpp"
#include "daml/error.hpp"
#include "daml/scenarios.hpp"

using namespace daml;

namespace {

bool has_violation(const ValidationReport& r, const std::string& property) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const ValidationIssue& v) { return v.property == property; });
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("miners model is S5 with total ignorance") {
  Scenario s = miners();
  CHECK(s.model->frame == FrameClass::S5);
  CHECK(validate_model(*s.model).ok());
  CHECK(s.model->size() == 6);
  CHECK(accessible(*s.model, "i", "A9").size() == 6);
  CHECK(s.model->worlds[s.model->world_index("A9")].value == 9);
}

TEST_CASE("single world without a loop is not reflexive") {
  ModelSpec spec;
  spec.agents = {"i"};
  spec.worlds = {{"w", {}, 0}};
  ValidationReport r = validate_model(*build_model(spec));
  CHECK_FALSE(r.ok());
  CHECK(has_violation(r, "reflexivity"));
}

TEST_CASE("allergy model fails S5 but passes KD45") {
  Scenario s = allergy();
  CHECK(validate_model(*s.model).ok());
  ModelSpec spec = to_spec(*s.model);
  spec.frame = FrameClass::S5;
  ValidationReport r = validate_model(*build_model(spec));
  CHECK(has_violation(r, "reflexivity"));
}

TEST_CASE("allergy accessibility") {
  Scenario s = allergy();
  CHECK(sorted(accessible(*s.model, "b", "v")) == std::vector<std::string>{"v", "w"});
  CHECK(sorted(accessible(*s.model, "a", "v")) == std::vector<std::string>{"x1", "x2", "x3", "x4"});
}

TEST_CASE("S5 accessibility is an equivalence class query") {
  ModelSpec spec;
  spec.agents = {"i"};
  spec.worlds = {{"u", {}, 0}, {"v", {}, 0}, {"w", {}, 0}};
  spec.relations["i"] = {{"u", "u"}, {"v", "v"}, {"w", "w"}, {"u", "v"}, {"v", "u"}};
  ModelPtr m = build_model(spec);
  CHECK(validate_model(*m).ok());
  CHECK(sorted(accessible(*m, "i", "u")) == sorted(accessible(*m, "i", "v")));
  CHECK(accessible(*m, "i", "w") == std::vector<std::string>{"w"});
}

TEST_CASE("KD45 conditions are checked one by one") {
  Relation serial_only{{1}, {0}};
  CHECK(is_serial(serial_only));
  CHECK_FALSE(is_transitive(serial_only));
  CHECK_FALSE(is_reflexive(serial_only));
  Relation kd45{{1}, {1}};
  CHECK(is_serial(kd45));
  CHECK(is_transitive(kd45));
  CHECK(is_euclidean(kd45));
  Relation not_euclid{{0, 1}, {1}};
  CHECK_FALSE(is_euclidean(not_euclid));
}

TEST_CASE("model construction errors") {
  ModelSpec spec;
  spec.agents = {"i"};
  spec.worlds = {{"w", {}, 0}};
  spec.relations["i"] = {{"w", "nowhere"}};
  CHECK_THROWS_AS(build_model(spec), Error);
  spec.relations.clear();
  spec.relations["j"] = {{"w", "w"}};
  CHECK_THROWS_AS(build_model(spec), Error);
  ModelPtr m = build_model(ModelSpec{{"i"}, {}, FrameClass::S5, {{"w", {}, 0}}, {{"i", {{"w", "w"}}}}, {}, ""});
  CHECK_THROWS_AS(m->world_index("x"), Error);
  CHECK_THROWS_AS(m->agent_index("k"), Error);
}

TEST_CASE("checked sum") {
  CHECK(checked_add(40, 60) == 100);
  CHECK_THROWS_AS(checked_add(~0ULL, 1), Error);
}
