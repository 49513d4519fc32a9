#include <doctest.h>

#include "daml/parser.hpp"
#include "daml/reduction.hpp"
#include "daml/scenarios.hpp"
#include "daml/verify_suite.hpp"
#include "helpers.hpp"

using namespace daml;

TEST_CASE("R1 rewrites an ought over an atom") {
  Scenario s = miners();
  Translation t = translate(parse("O{i}(U.gamma | p)"), s.actions);
  REQUIRE(t.steps.size() == 1);
  CHECK(t.steps[0].rule == "R1");
  CHECK(print(t.formula) == "((s9 & p) & e{i; U.gamma})");
  CHECK(t.steps[0].c_before == 6);
  CHECK(check_inequality(t.steps[0]));
}

TEST_CASE("base formulas are untouched") {
  ActionRegistry none;
  Translation t = translate(parse("K{i} (p & !q)"), none);
  CHECK(t.steps.empty());
  CHECK(print(t.formula) == "K{i} (p & !q)");
}

TEST_CASE("R6 first step composes the traces") {
  ActionRegistry reg;
  reg.add(testing_util::dp("U", "i", {{"a", "p"}, {"b", "q"}}));
  reg.add(testing_util::dp("V", "i", {{"x", "p"}, {"y", "q"}}, &reg));
  Translation t = translate(parse("O{i}(U.a | O{i}(V.x | p))"), reg);
  REQUIRE(!t.steps.empty());
  const RewriteStep& first = t.steps.front();
  CHECK(first.rule == "R6");
  CHECK(print(first.after) == "(O{i}(U.a;V.x | p) & e{i; U.a})");
  CHECK(first.c_before == 36);
  CHECK(first.c_after < first.c_before);
}

TEST_CASE("the K-clause inequality holds for every size") {
  for (std::uint64_t pre = 1; pre < 20; ++pre)
    for (std::uint64_t phi = 1; phi < 20; ++phi) {
      RewriteStep step;
      step.rule = "R4";
      step.c_before = (5 + pre) * (1 + phi);
      step.c_after = 1 + (5 + pre) * phi;
      CHECK(check_inequality(step));
    }
}

TEST_CASE("standard translation agrees on the miners model") {
  Scenario s = miners();
  Checker c(s.actions);
  FormulaPtr phi = parse("O{i}(U.alpha | true)");
  Translation t = translate(phi, s.actions);
  CHECK_FALSE(contains_ought(*t.formula));
  CHECK_FALSE(contains_diamond(*t.formula));
  EquivalenceReport r = equivalence_oracle(phi, t.formula, legal_contexts(s.model), c);
  CHECK(r.ok());
  CHECK(r.contexts >= 6);
  CHECK(equivalence_oracle(phi, phi, legal_contexts(s.model), c).ok());
}

TEST_CASE("the literal K-clause drops the update") {
  // Two worlds the agent cannot tell apart; the action only survives at u.
  ModelSpec spec;
  spec.agents = {"i"};
  spec.atoms = {"p"};
  spec.worlds = {{"u", {"p"}, 0}, {"v", {}, 0}};
  spec.relations["i"] = {{"u", "u"}, {"v", "v"}, {"u", "v"}, {"v", "u"}};
  ModelPtr m = build_model(spec);
  ActionRegistry reg;
  reg.add(testing_util::dp("U", "i", {{"a", "p"}, {"b", "!p"}}));
  Checker c(reg);
  FormulaPtr phi = parse("<U.a> K{i} p");
  std::vector<EvalContext> ctx = legal_contexts(m);
  Translation literal = translate(phi, reg, TranslationMode::PaperLiteral);
  Translation standard = translate(phi, reg, TranslationMode::Standard);
  CHECK_FALSE(equivalence_oracle(phi, literal.formula, ctx, c).ok());
  CHECK(equivalence_oracle(phi, standard.formula, ctx, c).ok());
}

TEST_CASE("translation is a fixed point on its output and terminates") {
  Scenario s = allergy();
  FormulaEnv env;
  env.agents = {"a", "b"};
  env.atoms = {"A", "d"};
  env.actions = &s.actions;
  Rng rng(31);
  for (int k = 0; k < 300; ++k) {
    FormulaPtr f = gen_formula(env, 1 + k % 10, rng);
    Translation t = translate(f, s.actions);
    CHECK_FALSE(contains_ought(*t.formula));
    Translation again = translate(t.formula, s.actions);
    CHECK(equal(again.formula, t.formula));
    CHECK(again.steps.empty());
    for (const auto& step : t.steps)
      if (step.is_ought_rule()) CHECK(check_inequality(step));
  }
}

TEST_CASE("translation modes by name") {
  CHECK(translation_mode_from_string("standard") == TranslationMode::Standard);
  CHECK(translation_mode_from_string("paper-literal") == TranslationMode::PaperLiteral);
  CHECK_THROWS(translation_mode_from_string("loose"));
}
