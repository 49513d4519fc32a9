#pragma once

#include <optional>
#include <vector>

#include "daml/core_model.hpp"

namespace daml {

// Worlds reachable from `root` by paths of length >= 1, over one agent's
// relation or over the union of all relations. Sorted.
std::vector<int> strict_reach(const KripkeModel& m, int root, std::optional<int> agent = std::nullopt);

// M^v: the part of M reachable from v over all agents. A root that cannot
// reach itself is kept as retained_root with only its edges into the domain.
ModelPtr generated_submodel(const ModelPtr& m, int v);

// M_i^v: as above, reachability over R_i only; every agent's relation is
// restricted to the domain.
ModelPtr agent_submodel(const ModelPtr& m, int v, int agent);

// Component of a product model rooted at `root`. With an agent, the
// agent-generated submodel; otherwise the generated one. Throws
// UnknownProductWorld if the root is not a world of `pm`, IsolatedRoot if
// the root has no outgoing edge to follow. With `reflexive_only_update`,
// every domain world must carry the root's trace; a world from another
// branch raises TraceLeak.
ModelPtr action_component(const ModelPtr& pm, int root, std::optional<int> agent = std::nullopt,
                          bool reflexive_only_update = true);

}  // namespace daml
