#pragma once

#include <compare>
#include <string>
#include <vector>

namespace daml {

// One choice at one decision point: `U.alpha`.
struct Step {
  std::string decision_point;
  std::string event;

  auto operator<=>(const Step&) const = default;
};

// A sequence of choices, `U.delta;U2.beta`. The empty trace labels base worlds.
using Trace = std::vector<Step>;

std::string trace_to_string(const Trace& trace);

bool is_prefix(const Trace& prefix, const Trace& trace);

Trace concat(const Trace& a, const Trace& b);

// All steps but the last; requires a non-empty trace.
Trace trace_prefix(const Trace& trace);

}  // namespace daml
