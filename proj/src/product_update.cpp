#include "daml/product_update.hpp"

#include <map>

#include "daml/checker.hpp"
#include "daml/error.hpp"

namespace daml {

std::string product_world_id(std::string_view base, const Trace& trace) {
  if (trace.empty()) return std::string(base);
  return std::string(base) + "@" + trace_to_string(trace);
}

ModelPtr product(const ModelPtr& m, const ActionModel& u, const PreconditionOracle& pre_holds) {
  auto pm = std::make_shared<KripkeModel>();
  pm->name = (m->name.empty() ? std::string("M") : m->name) + "x" + u.id;
  pm->agents = m->agents;
  pm->atoms = m->atoms;
  pm->ancestor = m;

  // Pairs (source world, event index) in output order.
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t v = 0; v < m->worlds.size(); ++v) {
    for (std::size_t e = 0; e < u.events.size(); ++e) {
      if (!pre_holds(m, static_cast<int>(v), *u.events[e].pre)) continue;
      const World& src = m->worlds[v];
      World w;
      w.base = src.base;
      w.trace = concat(src.trace, u.events[e].trace);
      w.id = product_world_id(w.base, w.trace);
      w.truth = src.truth;
      w.value = src.value;
      w.ancestor = static_cast<int>(v);
      pm->worlds.push_back(std::move(w));
      pairs.emplace_back(static_cast<int>(v), static_cast<int>(e));
    }
  }
  if (pm->worlds.empty()) throw EmptyProductError("no world satisfies a precondition of " + u.id);

  pm->relations.assign(pm->agents.size(), Relation(pm->worlds.size()));
  for (std::size_t a = 0; a < pm->agents.size(); ++a) {
    const std::string& agent = pm->agents[a];
    for (std::size_t x = 0; x < pairs.size(); ++x)
      for (std::size_t y = 0; y < pairs.size(); ++y)
        if (m->related(static_cast<int>(a), pairs[x].first, pairs[y].first) &&
            u.related(agent, pairs[x].second, pairs[y].second))
          pm->relations[a][x].push_back(static_cast<int>(y));
  }
  if (m->point) {
    for (std::size_t x = 0; x < pairs.size(); ++x)
      if (pairs[x].first == *m->point) {
        pm->point = static_cast<int>(x);
        break;
      }
  }
  // The frame class is whatever the product still satisfies; reflexive-only
  // updates keep S5, but KD45 seriality can be lost.
  pm->frame = m->frame;
  if (!validate_model(*pm).ok()) pm->frame = FrameClass::K;
  return pm;
}

ModelPtr product(const ModelPtr& m, const ActionModel& u, const ActionRegistry& actions) {
  Checker checker(actions);
  return product(m, u, [&](const ModelPtr& model, int w, const Formula& f) { return checker.holds(model, w, f); });
}

ModelPtr apply_sequence(const ModelPtr& m, const std::vector<std::string>& decision_points,
                        const ActionRegistry& actions) {
  Checker checker(actions);
  ModelPtr current = m;
  for (std::size_t k = 0; k < decision_points.size(); ++k) {
    try {
      current = checker.update(current, {decision_points[k]});
    } catch (const EmptyProductError& e) {
      throw EmptyProductError("step " + std::to_string(k) + " (" + decision_points[k] + "): " + e.what(),
                              static_cast<int>(k));
    }
  }
  return current;
}

std::optional<int> find_product_world(const KripkeModel& pm, int ancestor, const Trace& trace) {
  for (std::size_t x = 0; x < pm.worlds.size(); ++x)
    if (pm.worlds[x].ancestor == ancestor && pm.worlds[x].trace == trace) return static_cast<int>(x);
  return std::nullopt;
}

std::optional<int> find_by_base(const KripkeModel& pm, std::string_view base, const Trace& trace) {
  for (std::size_t x = 0; x < pm.worlds.size(); ++x)
    if (pm.worlds[x].base == base && pm.worlds[x].trace == trace) return static_cast<int>(x);
  return std::nullopt;
}

std::optional<std::string> compare_flattened(const KripkeModel& iterated, const KripkeModel& composed) {
  if (iterated.worlds.size() != composed.worlds.size())
    return "world count " + std::to_string(iterated.worlds.size()) + " vs " + std::to_string(composed.worlds.size());
  if (iterated.agents != composed.agents) return std::string("agent sets differ");
  std::vector<int> map(iterated.worlds.size());
  for (std::size_t x = 0; x < iterated.worlds.size(); ++x) {
    const World& w = iterated.worlds[x];
    auto y = find_by_base(composed, w.base, w.trace);
    if (!y) return "no counterpart for " + w.id;
    const World& c = composed.worlds[*y];
    if (c.truth != w.truth) return "valuation differs at " + w.id;
    if (c.value != w.value) return "desirability differs at " + w.id;
    map[x] = *y;
  }
  for (std::size_t a = 0; a < iterated.agents.size(); ++a)
    for (std::size_t x = 0; x < iterated.worlds.size(); ++x)
      for (std::size_t y = 0; y < iterated.worlds.size(); ++y) {
        bool l = iterated.related(static_cast<int>(a), static_cast<int>(x), static_cast<int>(y));
        bool r = composed.related(static_cast<int>(a), map[x], map[y]);
        if (l != r)
          return "relation of " + iterated.agents[a] + " differs on " + iterated.worlds[x].id + " -> " +
                 iterated.worlds[y].id;
      }
  return std::nullopt;
}

}  // namespace daml
