#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "daml/trace.hpp"

namespace daml {

enum class FrameClass { K, KD45, S5 };

const char* to_string(FrameClass frame);
FrameClass frame_from_string(std::string_view text);

struct World {
  std::string id;
  std::vector<bool> truth;  // aligned with KripkeModel::atoms
  std::uint64_t value = 0;  // desirability f(w)

  // Provenance. Base worlds have base == id and an empty trace.
  std::string base;
  Trace trace;
  // Index of the world in KripkeModel::ancestor from which the last update
  // produced this one; -1 for base worlds.
  int ancestor = -1;
};

// Successor lists per world, sorted and duplicate-free.
using Relation = std::vector<std::vector<int>>;

// A graded Kripke model <W, R_i, V, f>. Instances are built once and then
// shared as ModelPtr; nothing mutates a model after construction.
struct KripkeModel {
  std::string name;
  std::vector<std::string> agents;
  std::vector<std::string> atoms;
  std::vector<World> worlds;
  std::vector<Relation> relations;  // indexed like agents
  FrameClass frame = FrameClass::S5;
  std::optional<int> point;

  // Model this one was obtained from by product update (products, and
  // submodels cut from products).
  std::shared_ptr<const KripkeModel> ancestor;

  // Rooted submodel bookkeeping.
  std::optional<int> root;
  std::optional<int> agent_filter;
  // Root kept only as an evaluation point: it is not self-reachable and so
  // contributes nothing to expectation sums.
  std::optional<int> retained_root;
  // For submodels: index of each world in the model it was cut from.
  std::vector<int> origin;

  int agent_index(std::string_view agent) const;  // throws UnknownAgent
  std::optional<int> find_agent(std::string_view agent) const;
  int world_index(std::string_view id) const;  // throws UnknownWorld
  std::optional<int> find_world(std::string_view id) const;
  std::optional<int> find_atom(std::string_view atom) const;

  bool holds_atom(int world, std::string_view atom) const;
  const std::vector<int>& successors(int agent, int world) const { return relations[agent][world]; }
  bool related(int agent, int from, int to) const;

  std::size_t size() const noexcept { return worlds.size(); }
  bool in_domain(int world) const { return !retained_root || *retained_root != world; }
  std::vector<std::string> true_atoms(int world) const;
};

using ModelPtr = std::shared_ptr<const KripkeModel>;

struct ValidationIssue {
  std::string property;  // "reflexivity", "seriality", ...
  std::string agent;     // empty for model-wide issues
  std::vector<std::string> witnesses;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> violations;
  std::vector<ValidationIssue> notes;  // allowed but flagged

  bool ok() const noexcept { return violations.empty(); }
  std::string str() const;
};

ValidationReport validate_model(const KripkeModel& m);

// Frame conditions checked for one relation; used by validate_model and by
// tests on extracted components.
bool is_reflexive(const Relation& r);
bool is_serial(const Relation& r);
bool is_transitive(const Relation& r);
bool is_euclidean(const Relation& r);

// R_i(w) as world ids.
std::vector<std::string> accessible(const KripkeModel& m, std::string_view agent, std::string_view world);

// Builds a base model from plain parts. Pairs reference world ids; unknown
// ids throw. The result is not validated.
struct ModelSpec {
  std::vector<std::string> agents;
  std::vector<std::string> atoms;
  FrameClass frame = FrameClass::S5;
  struct WorldSpec {
    std::string id;
    std::vector<std::string> true_atoms;
    std::uint64_t value = 0;
  };
  std::vector<WorldSpec> worlds;
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> relations;
  std::optional<std::string> point;
  std::string name;
};

ModelPtr build_model(const ModelSpec& spec);

// Reverse of build_model (relations as explicit pairs, canonical order).
ModelSpec to_spec(const KripkeModel& m);

// Checked sum of desirability values; throws Error(Overflow).
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);

}  // namespace daml
