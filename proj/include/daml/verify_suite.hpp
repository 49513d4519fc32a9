#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "daml/action_model.hpp"
#include "daml/checker.hpp"
#include "daml/core_model.hpp"
#include "daml/formula.hpp"
#include "daml/io.hpp"
#include "daml/reduction.hpp"

namespace daml {

struct GenParams {
  std::uint64_t seed = 1;
  int min_worlds = 1, max_worlds = 6;
  int min_agents = 1, max_agents = 3;
  int min_atoms = 1, max_atoms = 3;
  std::uint64_t max_value = 20;
  FrameClass frame = FrameClass::S5;
  int min_events = 2, max_events = 4;
  int depth = 4;
};

using Rng = std::mt19937_64;

// Uniform integer in [lo, hi].
int uniform(Rng& rng, int lo, int hi);

// S5: one random partition per agent. KD45: a random partition into
// clusters, each cluster pointing at a non-empty core of its own worlds.
// Always passes validate_model for its frame.
ModelPtr gen_model(const GenParams& p, Rng& rng);

// Reflexive-only decision point whose events each have a precondition (a
// literal or conjunction of literals) true at some world of m. Throws
// Error(Unsatisfiable) if none can be built.
DecisionPoint gen_decision_point(const GenParams& p, const KripkeModel& m, Rng& rng, const std::string& id,
                                 const std::string& owner);

struct FormulaEnv {
  std::vector<std::string> agents;
  std::vector<std::string> atoms;
  const ActionRegistry* actions = nullptr;  // traces drawn from here; none means no dynamic operators
  bool allow_ought = true;
  bool allow_expect = true;
};

// Random trace: one step, or two steps over distinct decision points in
// declaration order.
Trace gen_trace(const ActionRegistry& actions, Rng& rng);

FormulaPtr gen_formula(const FormulaEnv& env, int depth, Rng& rng);

// Base worlds plus every world of every agent submodel M_i^v.
std::vector<EvalContext> legal_contexts(const ModelPtr& m);

struct Counterexample {
  std::uint64_t trial_seed = 0;
  std::string kind;  // pointwise, global (whole submodel), component
  std::string context;
  std::string world;      // evaluation world id
  std::string sub_agent;  // agent submodel M_i^v, when not the base model
  std::string sub_root;
  std::string lhs_formula;
  std::string rhs_formula;
  std::string lhs_value;
  std::string rhs_value;
  json model;
  json decision_points;
};

struct AxiomResult {
  std::string id;
  std::size_t trials = 0;
  std::size_t passes = 0;
  std::vector<Counterexample> counterexamples;  // one per failing trial
};

struct AxiomReport {
  std::uint64_t seed = 0;
  FrameClass frame = FrameClass::S5;
  std::size_t trials = 0;
  std::vector<AxiomResult> axioms;        // zero counterexamples expected
  std::vector<AxiomResult> ambiguities;   // reported, never failures
  std::vector<AxiomResult> informational; // corrected forms of unsound axioms
  std::vector<std::string> generation_errors;

  const AxiomResult* find(const std::string& id) const;
  std::string str() const;
  json to_json() const;
};

AxiomReport run_axiom_suite(const GenParams& p, std::size_t trials);

// Replays a counterexample: reloads the serialized model and decision
// points, re-evaluates both sides at the recorded context and reports
// whether the disagreement reproduces.
bool reproduces(const Counterexample& c);

struct TranslationReport {
  std::size_t pairs = 0;
  std::size_t contexts = 0;
  std::size_t disagreements = 0;
  std::size_t fixed_point_failures = 0;
  std::size_t ought_steps = 0;
  std::size_t certified_steps = 0;
  std::size_t aml_steps = 0;
  std::size_t errors = 0;
  std::map<std::string, std::size_t> steps_per_rule;
  std::vector<std::string> examples;  // first few failures

  std::string str() const;
};

TranslationReport run_translation_suite(const GenParams& p, std::size_t pairs,
                                        TranslationMode mode = TranslationMode::Standard);

}  // namespace daml
