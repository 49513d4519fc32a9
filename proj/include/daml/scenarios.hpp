#pragma once

#include <optional>
#include <string>
#include <vector>

#include "daml/action_model.hpp"
#include "daml/checker.hpp"
#include "daml/core_model.hpp"
#include "daml/io.hpp"
#include "daml/rational.hpp"

namespace daml {

struct ScenarioClaim {
  std::string label;
  std::string formula;
  bool expected = true;
  std::string at;               // world id; empty means the model's point
  bool informational = false;   // reported, never counted
  std::string ambient = "M";    // "M" or "M_i^v" for agent submodel readings
  std::string ambient_agent;    // agent for the submodel reading
};

struct ScenarioExpectation {
  std::string agent;
  Trace trace;
  std::string root;  // base world where the trace starts
  Rational expected;
};

struct Scenario {
  std::string name;
  ModelPtr model;
  ActionRegistry actions;
  std::vector<ScenarioClaim> claims;
  std::vector<ScenarioExpectation> expectations;
};

Scenario miners();
Scenario allergy();
// Throws Error(UsageError) for an unknown name.
Scenario scenario_by_name(const std::string& name);

struct ScenarioItem {
  std::string kind;  // claim, expectation, informational
  std::string label;
  bool passed = false;
  std::string detail;
  std::optional<Verdict> verdict;
};

struct ScenarioReport {
  std::string name;
  std::vector<ScenarioItem> items;

  int passed() const;
  int failed() const;
  std::string str(bool explain = false) const;
  json to_json() const;
};

ScenarioReport run_scenario(const Scenario& s, CheckerOptions options = {});

// DOT files for the initial model, each product along the scenario's
// decision points, and each action component. Returns the paths written.
std::vector<std::string> write_scenario_dot(const Scenario& s, const std::string& dir, const DotOptions& options = {});

}  // namespace daml
