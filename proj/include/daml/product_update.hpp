#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "daml/action_model.hpp"
#include "daml/core_model.hpp"

namespace daml {

using PreconditionOracle = std::function<bool(const ModelPtr&, int, const Formula&)>;

// Restricted modal product M (x) U. Worlds are ordered by source world, then
// by event; ids render as "base@trace". Valuation and desirability are
// copied from the source world. Throws EmptyProductError when no pair
// survives.
ModelPtr product(const ModelPtr& m, const ActionModel& u, const PreconditionOracle& pre_holds);

// Same, evaluating preconditions with a fresh checker over `actions`.
ModelPtr product(const ModelPtr& m, const ActionModel& u, const ActionRegistry& actions);

// Iterated products M (x) U1 (x) U2 ... ; EmptyProductError::step() names
// the failing update.
ModelPtr apply_sequence(const ModelPtr& m, const std::vector<std::string>& decision_points,
                        const ActionRegistry& actions);

std::string product_world_id(std::string_view base, const Trace& trace);

// World of `pm` produced from `ancestor` of pm.ancestor with full trace `trace`.
std::optional<int> find_product_world(const KripkeModel& pm, int ancestor, const Trace& trace);

// World of `pm` with the given base id and full trace.
std::optional<int> find_by_base(const KripkeModel& pm, std::string_view base, const Trace& trace);

// Checks that `iterated` and `composed` have the same (base, trace) worlds,
// valuations, values and relations. Returns a description of the first
// mismatch, or nullopt when isomorphic under trace flattening.
std::optional<std::string> compare_flattened(const KripkeModel& iterated, const KripkeModel& composed);

}  // namespace daml
