// Acceptance checks, one line per criterion. Exit status is the number of
// failing criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "daml/checker.hpp"
#include "daml/error.hpp"
#include "daml/parser.hpp"
#include "daml/product_update.hpp"
#include "daml/reduction.hpp"
#include "daml/scenarios.hpp"
#include "daml/verify_suite.hpp"

using namespace daml;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << ". " << title << ": " << detail << std::endl;
}

template <typename F>
void criterion(int id, const std::string& title, F body) {
  try {
    std::string detail;
    bool ok = body(detail);
    report(id, title, ok, detail);
  } catch (const std::exception& e) {
    report(id, title, false, std::string("exception: ") + e.what());
  }
}

const char* tf(bool b) { return b ? "true" : "false"; }

bool miners_verdicts(std::string& detail) {
  Scenario s = miners();
  Checker c(s.actions);
  int v = *s.model->point;
  bool a = c.holds(s.model, v, parse("O{i}(U.alpha | true)"));
  bool b = c.holds(s.model, v, parse("O{i}(U.beta | true)"));
  bool g = c.holds(s.model, v, parse("O{i}(U.gamma | true)"));
  ScenarioReport r = run_scenario(s);
  detail = std::string("alpha=") + tf(a) + " beta=" + tf(b) + " gamma=" + tf(g) + ", scenario " +
           std::to_string(r.passed()) + "/" + std::to_string(r.passed() + r.failed());
  return !a && !b && g && r.failed() == 0;
}

bool miners_expectations(std::string& detail) {
  Scenario s = miners();
  Checker c(s.actions);
  auto value = [&](const char* root, const char* event) {
    return *c.component_value(s.model, s.model->world_index(root), "i", {{"U", event}});
  };
  Rational g = value("A9", "gamma"), a = value("A10", "alpha"), b = value("A0", "beta");
  detail = "E(gamma)=" + g.str() + " E(alpha)=" + a.str() + " E(beta)=" + b.str();
  return g == Rational(9) && a == Rational(5) && b == Rational(5) && g > a && a == b;
}

bool allergy_expectations(std::string& detail) {
  Scenario s = allergy();
  Checker c(s.actions);
  struct Row {
    const char* root;
    const char* b_event;
    const char* a_event;
  };
  const Row rows[] = {{"w", "delta", "alpha"}, {"v", "delta", "beta"}, {"w", "gamma", "alpha"}, {"v", "gamma", "beta"}};
  const Rational want_a[] = {Rational(0), Rational(40), Rational(50), Rational(40)};
  const Rational want_b[] = {Rational(0), Rational(40), Rational(0), Rational(40)};
  bool ok = true;
  std::string la = "a:", lb = " b:";
  for (int k = 0; k < 4; ++k) {
    Trace t{{"U", rows[k].b_event}, {"U2", rows[k].a_event}};
    int w = s.model->world_index(rows[k].root);
    Rational va = *c.component_value(s.model, w, "a", t);
    Rational vb = *c.component_value(s.model, w, "b", t);
    ok = ok && va == want_a[k] && vb == want_b[k];
    la += " " + va.str();
    lb += " " + vb.str();
  }
  detail = la + lb;
  return ok;
}

bool allergy_obligations(std::string& detail) {
  Scenario s = allergy();
  Checker c(s.actions);
  int v = s.model->world_index("v");
  Verdict good = c.explain(s.model, v, parse("O{b}(U.delta | O{a}(U2.beta | K{a} A))"));
  auto ls = leaves(good);
  bool trail = ls.size() == 5 && ls[0]->clause == "pre(U.delta) = A" && ls[0]->world == "v" &&
               ls[1]->clause == "pre(U2.beta) = d'" && ls[1]->world == "v@U.delta" && ls[2]->clause == "K{a} A" &&
               ls[2]->world == "v@U.delta;U2.beta" && ls[3]->kind == "expect" && ls[3]->value == Rational(40) &&
               ls[3]->rival == Rational(0) && ls[4]->kind == "expect" && ls[4]->value && ls[4]->rival &&
               *ls[4]->value >= *ls[4]->rival;
  for (const auto* l : ls) trail = trail && l->holds;
  Verdict bad = c.explain(s.model, v, parse("O{b}(U.gamma | O{a}(U2.beta | K{a} A))"));
  const Verdict* leaf = first_failing_leaf(bad);
  bool blame = leaf && leaf->clause == "K{a} A" && leaf->world == "v@U.gamma;U2.beta";
  std::ostringstream out;
  out << "delta=" << tf(good.holds) << " (" << ls.size() << " leaves" << (trail ? ", trail matches" : ", trail differs")
      << ") gamma=" << tf(bad.holds) << " failing leaf " << (leaf ? leaf->clause + " @ " + leaf->world : "none");
  detail = out.str();
  return good.holds && trail && !bad.holds && blame;
}

bool axiom_suite(std::string& detail) {
  GenParams p;
  p.seed = 7;
  p.frame = FrameClass::S5;
  AxiomReport r = run_axiom_suite(p, 500);
  std::string failing, info;
  for (const auto& a : r.axioms)
    if (!a.counterexamples.empty()) failing += " " + a.id + "=" + std::to_string(a.counterexamples.size());
  for (const auto& a : r.ambiguities) info += " " + a.id + "=" + std::to_string(a.counterexamples.size());
  detail = std::to_string(r.trials) + " S5 trials, " + std::to_string(r.axioms.size()) + " axioms checked";
  detail += failing.empty() ? ", no counterexamples" : ", counterexamples:" + failing;
  detail += "; known ambiguities (informational):" + info;
  std::string corrected;
  for (const auto& a : r.informational) corrected += " " + a.id + "=" + std::to_string(a.counterexamples.size());
  detail += "; corrected forms:" + corrected;
  if (!r.generation_errors.empty()) detail += "; generation errors " + std::to_string(r.generation_errors.size());
  return r.trials >= 500 && failing.empty();
}

bool translation_suite(std::string& detail) {
  GenParams p;
  p.seed = 11;
  TranslationReport r = run_translation_suite(p, 500, TranslationMode::Standard);
  std::ostringstream out;
  out << r.pairs << " pairs over " << r.contexts << " contexts, " << r.disagreements << " disagreements, "
      << r.fixed_point_failures << " fixed-point failures, " << r.certified_steps << "/" << r.ought_steps
      << " ought steps certified, " << r.errors << " errors";
  detail = out.str();
  return r.pairs >= 500 && r.disagreements == 0 && r.fixed_point_failures == 0 && r.errors == 0 &&
         r.ought_steps > 0 && r.certified_steps == r.ought_steps;
}

FormulaEnv allergy_env(const ActionRegistry& reg) {
  FormulaEnv env;
  env.agents = {"a", "b"};
  env.atoms = {"A", "d", "p"};
  env.actions = &reg;
  return env;
}

bool complexity_property(std::string& detail) {
  Scenario s = allergy();
  FormulaEnv env = allergy_env(s.actions);
  Rng rng(1234);
  std::size_t pairs = 0, violations = 0;
  std::function<void(const FormulaPtr&, std::uint64_t)> walk = [&](const FormulaPtr& g, std::uint64_t bound) {
    for (const FormulaPtr& child : {g->lhs, g->rhs}) {
      if (!child) continue;
      std::uint64_t c = complexity(child, s.actions);
      ++pairs;
      if (c >= bound) ++violations;
      walk(child, c);
    }
  };
  const int n = 1000;
  for (int k = 0; k < n; ++k) {
    FormulaPtr f = gen_formula(env, 1 + k % 8, rng);
    walk(f, complexity(f, s.actions));
  }
  detail = std::to_string(n) + " formulas, " + std::to_string(pairs) + " parent/child pairs, " +
           std::to_string(violations) + " violations";
  return violations == 0;
}

bool parser_roundtrip(std::string& detail) {
  Scenario s = allergy();
  FormulaEnv env = allergy_env(s.actions);
  Rng rng(4321);
  const int n = 1000;
  int bad = 0;
  std::size_t max_depth = 0;
  for (int k = 0; k < n; ++k) {
    FormulaPtr f = gen_formula(env, 1 + k % 8, rng);
    std::string text = print(f);
    FormulaPtr back = parse(text);
    if (!equal(back, f) || print(back) != text) ++bad;
    max_depth = std::max(max_depth, depth(*f));
  }
  FormulaPtr golden = parse("O{b}(U.delta | O{a}(U2.beta | K{a} A))");
  bool golden_ok =
      equal(golden, ought("b", {{"U", "delta"}}, ought("a", {{"U2", "beta"}}, know("a", atom("A")))));
  detail = std::to_string(n) + " formulas (max depth " + std::to_string(max_depth) + "), " + std::to_string(bad) +
           " mismatches, golden parse " + (golden_ok ? "ok" : "wrong");
  return bad == 0 && golden_ok && max_depth <= 8;
}

// Propositional preconditions over literals, evaluated without the checker.
struct Literal {
  int atom;
  bool positive;
};
using Clause = std::vector<Literal>;  // conjunction; empty is true

bool clause_holds(const Clause& c, const World& w) {
  for (const auto& l : c)
    if (w.truth[l.atom] != l.positive) return false;
  return true;
}

FormulaPtr clause_formula(const Clause& c, const KripkeModel& m) {
  FormulaPtr f;
  for (const auto& l : c) {
    FormulaPtr a = atom(m.atoms[l.atom]);
    if (!l.positive) a = neg(a);
    f = f ? conj(f, a) : a;
  }
  return f ? f : top();
}

bool product_checks(std::string& detail) {
  GenParams p;
  Rng rng(99);
  int instances = 0, preserved = 0, iso = 0, empty_agree = 0, empty_cases = 0, both_steps = 0;
  std::string first_problem;
  for (int k = 0; k < 400; ++k) {
    ModelPtr m = gen_model(p, rng);
    // arbitrary literal preconditions so that empty products occur
    auto random_dp = [&](const std::string& id) {
      DecisionPoint dp;
      dp.id = id;
      dp.owner = m->agents[uniform(rng, 0, static_cast<int>(m->agents.size()) - 1)];
      std::vector<Clause> clauses;
      int n = uniform(rng, 2, 4);
      for (int e = 0; e < n; ++e) {
        Clause c;
        int lits = uniform(rng, 0, 2);
        for (int l = 0; l < lits; ++l)
          c.push_back({uniform(rng, 0, static_cast<int>(m->atoms.size()) - 1), uniform(rng, 0, 1) == 1});
        dp.events.push_back("e" + std::to_string(e));
        dp.pre.push_back(clause_formula(c, *m));
        clauses.push_back(c);
      }
      return std::make_pair(dp, clauses);
    };
    ActionRegistry reg;
    auto [u1, c1] = random_dp("U1");
    reg.add(u1);
    auto [u2, c2] = random_dp("U2");
    reg.add(u2);
    ++instances;

    // empty product exactly when no world satisfies any precondition
    bool any = false;
    for (const auto& w : m->worlds)
      for (const auto& c : c1) any = any || clause_holds(c, w);
    bool raised = false;
    ModelPtr first;
    try {
      first = product(m, to_action_model(u1), reg);
    } catch (const EmptyProductError&) {
      raised = true;
    }
    if (!any) ++empty_cases;
    if (raised == !any) ++empty_agree;
    else if (first_problem.empty()) first_problem = "empty-product mismatch in instance " + std::to_string(k);
    if (raised) continue;

    bool ok = true;
    for (const auto& w : first->worlds) {
      const World& src = m->worlds[w.ancestor];
      ok = ok && w.truth == src.truth && w.value == src.value && w.base == src.id;
    }
    if (ok) ++preserved;
    else if (first_problem.empty()) first_problem = "valuation not preserved in instance " + std::to_string(k);

    ModelPtr iterated, composed;
    bool it_empty = false, co_empty = false;
    try {
      iterated = apply_sequence(m, {"U1", "U2"}, reg);
    } catch (const EmptyProductError&) {
      it_empty = true;
    }
    try {
      composed = product(m, reg.composed({"U1", "U2"}), reg);
    } catch (const EmptyProductError&) {
      co_empty = true;
    }
    if (it_empty || co_empty) {
      if (it_empty == co_empty) ++iso;
      else if (first_problem.empty()) first_problem = "emptiness differs under composition";
      continue;
    }
    ++both_steps;
    auto mismatch = compare_flattened(*iterated, *composed);
    if (!mismatch) ++iso;
    else if (first_problem.empty()) first_problem = *mismatch;
  }
  int survived = instances - empty_cases;
  std::ostringstream out;
  out << instances << " instances: " << preserved << "/" << survived << " preserve valuation and value, " << iso << "/"
      << survived << " iterated = composed (" << both_steps << " non-empty), empty product " << empty_agree << "/"
      << instances << " as predicted (" << empty_cases << " empty)";
  if (!first_problem.empty()) out << "; " << first_problem;
  detail = out.str();
  return preserved == survived && iso == survived && empty_agree == instances && both_steps >= 200 &&
         empty_cases > 0;
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();
  criterion(1, "miners verdicts", miners_verdicts);
  criterion(2, "miners expectations", miners_expectations);
  criterion(3, "allergy expectations", allergy_expectations);
  criterion(4, "allergy obligations", allergy_obligations);
  criterion(5, "axiom suite", axiom_suite);
  criterion(6, "translation", translation_suite);
  criterion(7, "complexity measure", complexity_property);
  criterion(8, "parser", parser_roundtrip);
  criterion(9, "product update", product_checks);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (9 - failures) << "/9 criteria passed in " << secs << "s" << std::endl;
  return failures;
}
