#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "daml/action_model.hpp"
#include "daml/core_model.hpp"

namespace daml {

using json = nlohmann::ordered_json;

// Model documents:
//   {"agents":[..], "atoms":[..], "frame":"S5"|"KD45"|"K",
//    "worlds":[{"id":"w1","true_atoms":["A"],"value":10}, ..],
//    "relations":{"i":[["w1","w2"], ..]}, "point":"w1"}
// Submodels add "root" and "agent_filter". Relations are explicit pairs.
ModelPtr model_from_json(const json& doc);
json model_to_json(const KripkeModel& m);

// Action-model documents:
//   {"id":"U","owner":"i","events":[{"name":"alpha","pre":"p & q"}, ..],
//    "relations":{"i":[["alpha","alpha"], ..]}}
// Preconditions are parsed against `known` (earlier decision points) and may
// not contain the ought operator.
DecisionPoint decision_point_from_json(const json& doc, const ActionRegistry& known);
json decision_point_to_json(const DecisionPoint& dp);

// Reads and parses a JSON file; malformed input throws Error(ParseError)
// naming the file and byte position.
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

struct Workspace {
  ModelPtr model;
  ActionRegistry actions;
};

// Loads and validates a model plus decision points in application order.
// Owners and relation agents must be agents of the model.
Workspace load_workspace(const std::string& model_path, const std::vector<std::string>& action_paths);

// Checks a decision point against a model's agent set.
void check_agents(const DecisionPoint& dp, const KripkeModel& m);

struct DotOptions {
  bool loops = true;
};

// Deterministic DOT digraph: nodes "id\natoms\nf=value", one edge per
// related pair labeled with the comma-joined agents, root double-circled.
std::string export_dot(const KripkeModel& m, const DotOptions& options = {});

}  // namespace daml
