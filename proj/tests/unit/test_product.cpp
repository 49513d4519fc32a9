#include <doctest.h>

#include <set>

#include "daml/error.hpp"
#include "daml/product_update.hpp"
#include "daml/scenarios.hpp"
#include "daml/submodel.hpp"
#include "daml/verify_suite.hpp"
#include "helpers.hpp"

using namespace daml;

namespace {

std::set<std::string> ids(const KripkeModel& m, bool skip_retained = true) {
  std::set<std::string> out;
  for (std::size_t k = 0; k < m.size(); ++k)
    if (!skip_retained || m.in_domain(static_cast<int>(k))) out.insert(m.worlds[k].id);
  return out;
}

}  // namespace

TEST_CASE("miners product splits into three components of two worlds") {
  Scenario s = miners();
  ModelPtr pm = apply_sequence(s.model, {"U"}, s.actions);
  REQUIRE(pm->size() == 6);
  std::set<std::set<std::string>> components;
  for (std::size_t k = 0; k < pm->size(); ++k) {
    ModelPtr c = action_component(pm, static_cast<int>(k));
    CHECK(c->size() == 2);
    components.insert(ids(*c));
  }
  CHECK(components.size() == 3);
  int root = *find_by_base(*pm, "A9", {{"U", "gamma"}});
  CHECK(ids(*action_component(pm, root)) == std::set<std::string>{"A9@U.gamma", "B9@U.gamma"});
}

TEST_CASE("trivial preconditions multiply worlds") {
  ModelSpec spec;
  spec.agents = {"i"};
  spec.atoms = {"p"};
  spec.worlds = {{"u", {"p"}, 1}, {"v", {}, 2}};
  spec.relations["i"] = {{"u", "u"}, {"v", "v"}, {"u", "v"}, {"v", "u"}};
  ModelPtr m = build_model(spec);
  ActionRegistry reg;
  reg.add(testing_util::dp("U", "i", {{"x", "true"}, {"y", "true"}, {"z", "true"}}));
  ModelPtr pm = apply_sequence(m, {"U"}, reg);
  CHECK(pm->size() == 6);
  // reflexive-only events: R_i links (u,e) and (v,e) only for equal e
  int ux = *find_by_base(*pm, "u", {{"U", "x"}});
  int vx = *find_by_base(*pm, "v", {{"U", "x"}});
  int vy = *find_by_base(*pm, "v", {{"U", "y"}});
  CHECK(pm->related(0, ux, vx));
  CHECK_FALSE(pm->related(0, ux, vy));
}

TEST_CASE("allergy products") {
  Scenario s = allergy();
  ModelPtr after_u = apply_sequence(s.model, {"U"}, s.actions);
  CHECK(after_u->size() == 10);
  int delta = 0;
  for (const auto& w : after_u->worlds) delta += w.trace.front().event == "delta";
  CHECK(delta == 4);

  ModelPtr iterated = apply_sequence(s.model, {"U", "U2"}, s.actions);
  ModelPtr composed = product(s.model, s.actions.composed({"U", "U2"}), s.actions);
  CHECK(iterated->size() == composed->size());
  CHECK_FALSE(compare_flattened(*iterated, *composed).has_value());
  CHECK(compare_flattened(*after_u, *composed).has_value());

  ActionModel am = s.actions.composed({"U", "U2"});
  CHECK(am.events.size() == 4);
  for (std::size_t k = 0; k < am.events.size(); ++k)
    for (std::size_t l = 0; l < am.events.size(); ++l)
      for (const auto& agent : s.model->agents) CHECK(am.related(agent, (int)k, (int)l) == (k == l));
}

TEST_CASE("composed precondition of delta;alpha holds exactly at A and d worlds") {
  Scenario s = allergy();
  Checker checker(s.actions);
  FormulaPtr pre = s.actions.precondition({{"U", "delta"}, {"U2", "alpha"}});
  for (std::size_t k = 0; k < s.model->size(); ++k) {
    int w = static_cast<int>(k);
    bool expected = s.model->holds_atom(w, "A") && s.model->holds_atom(w, "d");
    CAPTURE(s.model->worlds[k].id);
    CHECK(checker.holds(s.model, w, *pre) == expected);
  }
}

TEST_CASE("empty product") {
  Scenario s = miners();
  ActionRegistry reg;
  reg.add(testing_util::dp("X", "i", {{"a", "A & B"}, {"b", "false"}}));
  CHECK_THROWS_AS(apply_sequence(s.model, {"X"}, reg), EmptyProductError);
  ActionRegistry seq;
  seq.add(testing_util::dp("Y", "i", {{"a", "s9"}, {"b", "s10"}}));
  seq.add(testing_util::dp("Z", "i", {{"a", "s0"}, {"b", "false"}}, &seq));
  try {
    apply_sequence(s.model, {"Y", "Z"}, seq);
    FAIL("no error");
  } catch (const EmptyProductError& e) {
    CHECK(e.step() == 1);
  }
}

TEST_CASE("submodels of the allergy model") {
  Scenario s = allergy();
  ModelPtr m = s.model;
  int v = m->world_index("v");
  CHECK(generated_submodel(m, v)->size() == 6);
  ModelPtr mb = agent_submodel(m, v, m->agent_index("b"));
  CHECK(ids(*mb) == std::set<std::string>{"v", "w"});
  ModelPtr ma = agent_submodel(m, v, m->agent_index("a"));
  CHECK(ids(*ma) == std::set<std::string>{"x1", "x2", "x3", "x4"});
  REQUIRE(ma->retained_root.has_value());
  CHECK(ma->worlds[*ma->retained_root].id == "v");

  ModelPtr pm = apply_sequence(m, {"U", "U2"}, s.actions);
  int db = *find_by_base(*pm, "v", {{"U", "delta"}, {"U2", "beta"}});
  CHECK(ids(*action_component(pm, db, pm->agent_index("b"))) ==
        std::set<std::string>{"v@U.delta;U2.beta"});
  int ga = *find_by_base(*pm, "w", {{"U", "gamma"}, {"U2", "alpha"}});
  CHECK(ids(*action_component(pm, ga, pm->agent_index("a"))) ==
        std::set<std::string>{"x1@U.gamma;U2.alpha", "x3@U.gamma;U2.alpha"});
}

TEST_CASE("chain without loops keeps the root outside the domain") {
  ModelSpec spec;
  spec.agents = {"i"};
  spec.frame = FrameClass::K;
  spec.worlds = {{"v", {}, 3}, {"u", {}, 4}};
  spec.relations["i"] = {{"v", "u"}};
  ModelPtr sub = generated_submodel(build_model(spec), 0);
  CHECK(ids(*sub) == std::set<std::string>{"u"});
  CHECK(strict_reach(*build_model(spec), 1).empty());
}

TEST_CASE("submodel domains are closed") {
  GenParams p;
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    ModelPtr m = gen_model(p, rng);
    for (std::size_t a = 0; a < m->agents.size(); ++a)
      for (std::size_t w = 0; w < m->size(); ++w) {
        ModelPtr sub = agent_submodel(m, (int)w, (int)a);
        for (const auto& rel : sub->relations)
          for (const auto& succ : rel)
            for (int t : succ) REQUIRE(t < (int)sub->size());
        // origin maps back onto worlds with the same id
        for (std::size_t x = 0; x < sub->size(); ++x) REQUIRE(m->worlds[sub->origin[x]].id == sub->worlds[x].id);
      }
  }
}

TEST_CASE("products preserve valuation and desirability") {
  GenParams p;
  Rng rng(11);
  for (int k = 0; k < 300; ++k) {
    ModelPtr m = gen_model(p, rng);
    ActionRegistry reg;
    reg.add(gen_decision_point(p, *m, rng, "U1", m->agents.front()));
    ModelPtr pm = apply_sequence(m, {"U1"}, reg);
    REQUIRE(pm->size() > 0);
    for (const auto& w : pm->worlds) {
      const World& src = m->worlds[w.ancestor];
      REQUIRE(src.id == w.base);
      REQUIRE(w.value == src.value);
      REQUIRE(w.truth == src.truth);
    }
  }
}
