#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "daml/action_model.hpp"
#include "daml/core_model.hpp"
#include "daml/expectation.hpp"
#include "daml/formula.hpp"
#include "daml/rational.hpp"

namespace daml {

struct Verdict {
  bool holds = false;
  std::string kind;    // atom, const, not, and, know, diamond, pre, ought, expect, global
  std::string clause;  // printed sub-formula or label
  std::string world;   // evaluation world id
  std::optional<Rational> value;
  std::optional<Rational> rival;
  std::string note;
  std::vector<Verdict> children;

  bool is_leaf() const { return children.empty(); }
  // Indented tree, one node per line.
  std::string str(int indent = 0) const;
};

// Leaves of `v` in left-to-right order.
std::vector<const Verdict*> leaves(const Verdict& v);
// For a false verdict, the first leaf responsible for it, following
// negations (under an odd number of them the leaf itself holds). nullptr
// when v holds.
const Verdict* first_failing_leaf(const Verdict& v);

struct CheckerOptions {
  // Annotate diamonds whose precondition fails at the evaluation point.
  bool first_conjunct_note = false;
};

// Result of resolving e_i^trace at a world.
struct ExpectationResolution {
  bool holds = false;
  bool instantiated = false;  // false when pre(sigma) fails at the decision world
  std::string decision_world;  // world z where the decision was taken
  std::string instance;        // product world (z, sigma)
  AtomVerdict atom;
};

// Model checker for the full language. Keeps caches of composed action
// models, products and resolved expectation atoms; cached entries hold the
// source model alive so pointer keys stay unique.
class Checker {
 public:
  explicit Checker(const ActionRegistry& actions, CheckerOptions options = {});

  bool holds(const ModelPtr& m, int w, const Formula& f);
  bool holds(const ModelPtr& m, int w, const FormulaPtr& f) { return holds(m, w, *f); }
  Verdict explain(const ModelPtr& m, int w, const FormulaPtr& f);

  // Conjunction over every world of m (retained root included).
  Verdict holds_globally(const ModelPtr& m, const FormulaPtr& f, bool explain = false);

  // Product of m with the left-nested composition of `decision_points`.
  ModelPtr update(const ModelPtr& m, const std::vector<std::string>& decision_points);
  const ActionModel& action_model(const std::vector<std::string>& decision_points);

  ExpectationResolution resolve_expectation(const ModelPtr& m, int w, const std::string& agent, const Trace& trace);

  // E_agent of the action component rooted at (w, trace) in the product of
  // m with the trace's decision points; nullopt when pre(trace) fails at w.
  std::optional<Rational> component_value(const ModelPtr& m, int w, const std::string& agent, const Trace& trace);

  const ActionRegistry& actions() const { return actions_; }
  bool reflexive_only() const { return reflexive_only_; }

 private:
  Verdict eval(const ModelPtr& m, int w, const FormulaPtr& f);
  bool pre_holds(const ModelPtr& m, int w, const Trace& t);

  const ActionRegistry& actions_;
  CheckerOptions options_;
  bool reflexive_only_ = true;
  std::map<std::string, ActionModel> composed_;
  std::map<std::pair<const KripkeModel*, std::string>, std::pair<ModelPtr, ModelPtr>> products_;
  std::map<std::tuple<const KripkeModel*, int, std::string>, std::pair<ModelPtr, ExpectationResolution>> atoms_;
};

}  // namespace daml
