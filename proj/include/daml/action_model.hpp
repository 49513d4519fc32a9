#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "daml/core_model.hpp"
#include "daml/formula.hpp"

namespace daml {

// One agent's menu of alternatives at one choice moment: <E, Q_i, pre>.
struct DecisionPoint {
  std::string id;
  std::string owner;
  std::vector<std::string> events;
  std::vector<FormulaPtr> pre;  // aligned with events
  // Explicit event relations per agent. Agents without an entry have the
  // reflexive-only relation (actions distinguishable from each other).
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> relations;

  std::optional<int> find_event(std::string_view name) const;
};

struct ActionEvent {
  Trace trace;  // single step for a decision point, one step per component when composed
  FormulaPtr pre;
  std::string owner;  // owner of the final step
};

// A decision point or a composition of decision points, in the form the
// product update consumes.
struct ActionModel {
  std::string id;                       // "U", or "U*U2" when composed
  std::vector<std::string> components;  // decision point ids in application order
  std::vector<ActionEvent> events;
  // Explicit relations as adjacency over event indices; absent agents are
  // reflexive-only.
  std::map<std::string, std::vector<std::vector<int>>> relations;

  bool related(const std::string& agent, int from, int to) const;
  std::optional<int> find_event(const Trace& trace) const;
};

ActionModel to_action_model(const DecisionPoint& dp);

// Events are pairwise traces (a;b) in lexicographic order; relations are
// the componentwise product; pre(a;b) = <U,a> pre'(b).
ActionModel compose(const ActionModel& first, const ActionModel& second);

ValidationReport validate_decision_point(const DecisionPoint& dp);

// Declared decision points in declaration order. Preconditions may only
// mention decision points declared earlier.
class ActionRegistry {
 public:
  // Validates the decision point and its references; throws on failure.
  void add(DecisionPoint dp);

  const DecisionPoint& get(std::string_view id) const;  // throws UnknownReference
  const DecisionPoint* find(std::string_view id) const;
  const std::vector<DecisionPoint>& decision_points() const { return dps_; }
  bool empty() const { return dps_.empty(); }

  // Owner of the final event of `trace`; throws UnknownReference / UnknownEvent.
  const std::string& owner_of(const Trace& trace) const;
  void check_trace(const Trace& trace) const;

  // pre(trace): the event precondition for one step, otherwise
  // <prefix> pre(last) following left-nested composition.
  FormulaPtr precondition(const Trace& trace) const;

  // Left-nested composition of the named decision points.
  ActionModel composed(const std::vector<std::string>& ids) const;

  // Decision point ids touched by a trace, in order.
  static std::vector<std::string> components_of(const Trace& trace);

 private:
  std::vector<DecisionPoint> dps_;
};

}  // namespace daml
