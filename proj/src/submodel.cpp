#include "daml/submodel.hpp"

#include <algorithm>

#include "daml/error.hpp"

namespace daml {

std::vector<int> strict_reach(const KripkeModel& m, int root, std::optional<int> agent) {
  std::vector<char> seen(m.size(), 0);
  std::vector<int> stack;
  auto push_successors = [&](int w) {
    auto visit = [&](int a) {
      for (int s : m.successors(a, w))
        if (!seen[s]) {
          seen[s] = 1;
          stack.push_back(s);
        }
    };
    if (agent) {
      visit(*agent);
    } else {
      for (std::size_t a = 0; a < m.agents.size(); ++a) visit(static_cast<int>(a));
    }
  };
  push_successors(root);
  while (!stack.empty()) {
    int w = stack.back();
    stack.pop_back();
    push_successors(w);
  }
  std::vector<int> out;
  for (std::size_t w = 0; w < seen.size(); ++w)
    if (seen[w]) out.push_back(static_cast<int>(w));
  return out;
}

namespace {

ModelPtr cut(const ModelPtr& m, int root, std::optional<int> agent) {
  if (root < 0 || static_cast<std::size_t>(root) >= m->size())
    throw Error(ErrorKind::UnknownWorld, "world index " + std::to_string(root));
  std::vector<int> domain = strict_reach(*m, root, agent);
  bool retained = !std::binary_search(domain.begin(), domain.end(), root);
  std::vector<int> keep = domain;
  if (retained) keep.insert(std::lower_bound(keep.begin(), keep.end(), root), root);

  std::vector<int> index(m->size(), -1);
  for (std::size_t k = 0; k < keep.size(); ++k) index[keep[k]] = static_cast<int>(k);

  auto sub = std::make_shared<KripkeModel>();
  sub->name = m->name + "^" + m->worlds[root].id + (agent ? "/" + m->agents[*agent] : std::string());
  sub->agents = m->agents;
  sub->atoms = m->atoms;
  sub->ancestor = m->ancestor;
  sub->origin = keep;
  for (int w : keep) sub->worlds.push_back(m->worlds[w]);
  sub->relations.assign(m->agents.size(), Relation(keep.size()));
  for (std::size_t a = 0; a < m->agents.size(); ++a)
    for (std::size_t k = 0; k < keep.size(); ++k)
      for (int s : m->successors(static_cast<int>(a), keep[k]))
        if (index[s] >= 0 && !(retained && s == root)) sub->relations[a][k].push_back(index[s]);
  sub->root = index[root];
  sub->point = index[root];
  sub->agent_filter = agent;
  if (retained) sub->retained_root = index[root];
  sub->frame = m->frame;
  if (!validate_model(*sub).ok()) sub->frame = FrameClass::K;
  return sub;
}

}  // namespace

ModelPtr generated_submodel(const ModelPtr& m, int v) { return cut(m, v, std::nullopt); }

ModelPtr agent_submodel(const ModelPtr& m, int v, int agent) {
  if (agent < 0 || static_cast<std::size_t>(agent) >= m->agents.size())
    throw Error(ErrorKind::UnknownAgent, "agent index " + std::to_string(agent));
  return cut(m, v, agent);
}

ModelPtr action_component(const ModelPtr& pm, int root, std::optional<int> agent, bool reflexive_only_update) {
  if (root < 0 || static_cast<std::size_t>(root) >= pm->size())
    throw Error(ErrorKind::UnknownProductWorld, "product world index " + std::to_string(root));
  bool has_edge = false;
  if (agent) {
    has_edge = !pm->successors(*agent, root).empty();
  } else {
    for (std::size_t a = 0; a < pm->agents.size(); ++a)
      has_edge = has_edge || !pm->successors(static_cast<int>(a), root).empty();
  }
  if (!has_edge) throw Error(ErrorKind::IsolatedRoot, "no outgoing edge at " + pm->worlds[root].id);
  ModelPtr sub = cut(pm, root, agent);
  if (reflexive_only_update) {
    const Trace& t = pm->worlds[root].trace;
    for (const auto& w : sub->worlds)
      if (w.trace != t)
        throw Error(ErrorKind::TraceLeak, w.id + " reached from " + pm->worlds[root].id);
  }
  return sub;
}

}  // namespace daml
