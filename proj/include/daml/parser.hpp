#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "daml/action_model.hpp"
#include "daml/formula.hpp"

namespace daml {

// Resolution environment for parsing. Null members skip the corresponding
// checks, which lets tools parse free-standing formulas.
struct ParseEnv {
  const ActionRegistry* actions = nullptr;
  const std::vector<std::string>* agents = nullptr;
  bool forbid_ought = false;  // set when loading preconditions
};

// Grammar, loosest to tightest binding:
//   phi  := imp
//   imp  := or ("->" imp)?
//   or   := and ("|" and)*
//   and  := un ("&" un)*
//   un   := "!" un | "K{" AGENT "}" un | "<" TRACE ">" un | "[" TRACE "]" un
//         | "O{" AGENT "}(" TRACE "|" phi ")" | "e{" AGENT ";" TRACE "}"
//         | "true" | "false" | IDENT | "(" phi ")"
//   TRACE := DP "." EVENT (";" DP "." EVENT)*
FormulaPtr parse(std::string_view text, const ParseEnv& env = {});

Trace parse_trace(std::string_view text);

// c(phi): atoms and constants 1, negation and K add one, conjunction is one
// more than the larger side, <a>phi = (4 + c(pre a)) c(phi),
// O(a|phi) = (5 + c(pre a)) c(phi). Throws Error(Overflow).
std::uint64_t complexity(const Formula& f, const ActionRegistry& actions);
inline std::uint64_t complexity(const FormulaPtr& f, const ActionRegistry& actions) {
  return complexity(*f, actions);
}

}  // namespace daml
