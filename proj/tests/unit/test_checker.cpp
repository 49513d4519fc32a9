#include <doctest.h>

#include "daml/checker.hpp"
#include "daml/error.hpp"
#include "daml/parser.hpp"
#include "daml/product_update.hpp"
#include "daml/scenarios.hpp"
#include "daml/submodel.hpp"
#include "daml/verify_suite.hpp"

using namespace daml;

namespace {

bool eval(Checker& c, const Scenario& s, const std::string& text, const std::string& at = "") {
  int w = at.empty() ? *s.model->point : s.model->world_index(at);
  return c.holds(s.model, w, parse(text));
}

// Each node's verdict must follow from its children.
void check_tree(const Verdict& v) {
  if (v.kind == "not") {
    REQUIRE(v.children.size() == 1);
    CHECK(v.holds == !v.children[0].holds);
  } else if (v.kind == "and" || v.kind == "diamond" || v.kind == "ought") {
    bool all = true;
    for (const auto& c : v.children) all = all && c.holds;
    CHECK(v.holds == all);
  }
  for (const auto& c : v.children) check_tree(c);
}

}  // namespace

TEST_CASE("miners verdicts") {
  Scenario s = miners();
  Checker c(s.actions);
  CHECK_FALSE(eval(c, s, "O{i}(U.alpha | true)"));
  CHECK_FALSE(eval(c, s, "O{i}(U.beta | true)"));
  CHECK(eval(c, s, "O{i}(U.gamma | true)"));
  CHECK(eval(c, s, "true"));
  CHECK_FALSE(eval(c, s, "false"));
  CHECK(eval(c, s, "<U.gamma> e{i; U.gamma}"));
  CHECK_FALSE(eval(c, s, "<U.gamma> K{i} A"));
}

TEST_CASE("expectation atoms hold globally in the gamma component") {
  Scenario s = miners();
  Checker c(s.actions);
  ModelPtr pm = c.update(s.model, {"U"});
  ModelPtr comp = action_component(pm, *find_by_base(*pm, "A9", {{"U", "gamma"}}));
  CHECK(c.holds_globally(comp, parse("e{i; U.gamma}")).holds);
  CHECK_FALSE(c.holds_globally(s.model, bottom()).holds);
}

TEST_CASE("allergy headline trail") {
  Scenario s = allergy();
  Checker c(s.actions);
  int v = s.model->world_index("v");
  Verdict verdict = c.explain(s.model, v, parse("O{b}(U.delta | O{a}(U2.beta | K{a} A))"));
  CHECK(verdict.holds);
  check_tree(verdict);
  auto ls = leaves(verdict);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0]->clause == "pre(U.delta) = A");
  CHECK(ls[0]->world == "v");
  CHECK(ls[1]->clause == "pre(U2.beta) = d'");
  CHECK(ls[1]->world == "v@U.delta");
  CHECK(ls[2]->clause == "K{a} A");
  CHECK(ls[2]->world == "v@U.delta;U2.beta");
  CHECK(ls[3]->kind == "expect");
  CHECK(*ls[3]->value == Rational(40));
  CHECK(*ls[3]->rival == Rational(0));
  CHECK(ls[4]->kind == "expect");
  CHECK(*ls[4]->value >= *ls[4]->rival);
  for (const auto* l : ls) CHECK(l->holds);
  CHECK(first_failing_leaf(verdict) == nullptr);
}

TEST_CASE("gamma does not enforce A") {
  Scenario s = allergy();
  Checker c(s.actions);
  Verdict verdict = c.explain(s.model, s.model->world_index("v"), parse("O{b}(U.gamma | O{a}(U2.beta | K{a} A))"));
  CHECK_FALSE(verdict.holds);
  check_tree(verdict);
  const Verdict* leaf = first_failing_leaf(verdict);
  REQUIRE(leaf != nullptr);
  CHECK(leaf->clause == "K{a} A");
  CHECK(leaf->world == "v@U.gamma;U2.beta");
}

TEST_CASE("first conjunct note annotates without changing verdicts") {
  Scenario s = miners();
  Checker plain(s.actions);
  Checker noted(s.actions, CheckerOptions{true});
  FormulaPtr f = parse("O{i}(U.alpha | true)");
  int v = *s.model->point;
  Verdict a = plain.explain(s.model, v, f);
  Verdict b = noted.explain(s.model, v, f);
  CHECK(a.holds == b.holds);
  CHECK(b.str().find("(") != std::string::npos);
}

TEST_CASE("verdict trees agree with holds on random formulas") {
  Scenario s = allergy();
  FormulaEnv env;
  env.agents = {"a", "b"};
  env.atoms = {"A", "d", "d'"};
  env.actions = &s.actions;
  Rng rng(17);
  Checker c(s.actions);
  int evaluated = 0;
  for (int k = 0; k < 400; ++k) {
    FormulaPtr f = gen_formula(env, 1 + k % 4, rng);
    for (std::size_t w = 0; w < s.model->size(); ++w) {
      try {
        bool h = c.holds(s.model, (int)w, f);
        Verdict v = c.explain(s.model, (int)w, f);
        REQUIRE(v.holds == h);
        check_tree(v);
        const Verdict* leaf = first_failing_leaf(v);
        if (!h) {
          REQUIRE(leaf != nullptr);
          if (leaf->holds) CHECK(print(f).find('!') != std::string::npos);
        } else {
          CHECK(leaf == nullptr);
        }
        ++evaluated;
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoSuccessors);
      }
    }
  }
  CHECK(evaluated > 1000);
}

TEST_CASE("knowledge of expectation atoms inside a component") {
  GenParams p;
  Rng rng(23);
  for (int k = 0; k < 100; ++k) {
    ModelPtr m = gen_model(p, rng);
    ActionRegistry reg;
    reg.add(gen_decision_point(p, *m, rng, "U1", m->agents.front()));
    Checker c(reg);
    ModelPtr pm = c.update(m, {"U1"});
    const std::string& i = m->agents.front();
    for (std::size_t w = 0; w < pm->size(); ++w) {
      ModelPtr comp = action_component(pm, (int)w, pm->agent_index(i));
      FormulaPtr e = expect(i, pm->worlds[w].trace);
      REQUIRE(c.holds_globally(comp, iff(e, know(i, e))).holds);
    }
  }
}

TEST_CASE("unknown world and agent are input errors") {
  Scenario s = miners();
  Checker c(s.actions);
  CHECK_THROWS_AS(c.holds(s.model, 0, parse("K{zz} A")), Error);
  CHECK_THROWS_AS(s.model->world_index("nowhere"), Error);
}
