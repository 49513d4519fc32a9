#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "daml/action_model.hpp"
#include "daml/core_model.hpp"
#include "daml/rational.hpp"

namespace daml {

// E_i over a rooted submodel: the sum of f over its domain divided by the
// number of i-successors of the root. Throws NoSuccessors when the root has
// none.
Rational expected_value(const KripkeModel& sub, int agent);

// Traces competing with `atom_trace`: the same prefix, with the final step
// replaced by every other event of the same decision point. The final steps
// of `atom_trace` must name an event of `am` (UnknownEvent otherwise).
std::vector<Trace> rival_events(const Trace& atom_trace, const ActionModel& am);

struct RivalValue {
  std::string world;
  Trace trace;
  Rational value;
};

struct AtomVerdict {
  bool holds = false;
  Rational value;
  std::vector<RivalValue> rivals;
  std::optional<Rational> best_rival() const;
};

// e_i^trace evaluated directly in a product model at world `at`, whose trace
// must equal `trace`. Rivals are product worlds whose trace differs only in
// the final event (same decision point); `admit`, when given, filters them
// by index. No rivals means the atom holds.
AtomVerdict atom_holds(const ModelPtr& pm, int at, int agent, const Trace& trace,
                       const std::function<bool(int)>& admit = nullptr, bool reflexive_only_update = true);

}  // namespace daml
