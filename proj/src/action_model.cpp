#include "daml/action_model.hpp"

#include <algorithm>
#include <set>

#include "daml/error.hpp"

namespace daml {

std::optional<int> DecisionPoint::find_event(std::string_view name) const {
  auto it = std::find(events.begin(), events.end(), name);
  if (it == events.end()) return std::nullopt;
  return static_cast<int>(it - events.begin());
}

bool ActionModel::related(const std::string& agent, int from, int to) const {
  auto it = relations.find(agent);
  if (it == relations.end()) return from == to;
  const auto& succ = it->second[from];
  return std::binary_search(succ.begin(), succ.end(), to);
}

std::optional<int> ActionModel::find_event(const Trace& trace) const {
  for (std::size_t k = 0; k < events.size(); ++k)
    if (events[k].trace == trace) return static_cast<int>(k);
  return std::nullopt;
}

ActionModel to_action_model(const DecisionPoint& dp) {
  ActionModel am;
  am.id = dp.id;
  am.components = {dp.id};
  for (std::size_t k = 0; k < dp.events.size(); ++k)
    am.events.push_back({Trace{{dp.id, dp.events[k]}}, dp.pre[k], dp.owner});
  for (const auto& [agent, pairs] : dp.relations) {
    auto& adj = am.relations[agent];
    adj.assign(dp.events.size(), {});
    for (const auto& [from, to] : pairs) {
      auto f = dp.find_event(from);
      auto t = dp.find_event(to);
      if (!f || !t) throw Error(ErrorKind::UnknownEvent, "relation of " + dp.id + " mentions unknown event");
      adj[*f].push_back(*t);
    }
    for (auto& succ : adj) {
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    }
  }
  return am;
}

ActionModel compose(const ActionModel& first, const ActionModel& second) {
  ActionModel out;
  out.id = first.id + "*" + second.id;
  out.components = first.components;
  out.components.insert(out.components.end(), second.components.begin(), second.components.end());
  const int n2 = static_cast<int>(second.events.size());
  for (const auto& a : first.events)
    for (const auto& b : second.events)
      out.events.push_back({concat(a.trace, b.trace), diamond(a.trace, b.pre), b.owner});

  std::set<std::string> agents;
  for (const auto& [agent, _] : first.relations) agents.insert(agent);
  for (const auto& [agent, _] : second.relations) agents.insert(agent);
  for (const auto& agent : agents) {
    auto& adj = out.relations[agent];
    adj.assign(out.events.size(), {});
    for (std::size_t x = 0; x < out.events.size(); ++x)
      for (std::size_t y = 0; y < out.events.size(); ++y) {
        int xa = static_cast<int>(x) / n2, xb = static_cast<int>(x) % n2;
        int ya = static_cast<int>(y) / n2, yb = static_cast<int>(y) % n2;
        if (first.related(agent, xa, ya) && second.related(agent, xb, yb)) adj[x].push_back(static_cast<int>(y));
      }
  }
  return out;
}

ValidationReport validate_decision_point(const DecisionPoint& dp) {
  ValidationReport report;
  auto violation = [&](const std::string& property, const std::string& message) {
    report.violations.push_back({property, "", {}, message});
  };
  if (dp.id.empty()) violation("id", "decision point has no id");
  if (dp.owner.empty()) violation("owner", "decision point " + dp.id + " has no owner");
  if (dp.events.size() < 2) violation("events", "fewer than two actions in " + dp.id);
  if (dp.pre.size() != dp.events.size()) violation("pre", "precondition map is not total in " + dp.id);
  std::set<std::string> names;
  for (const auto& e : dp.events)
    if (!names.insert(e).second) violation("events", "duplicate event " + e + " in " + dp.id);
  for (std::size_t k = 0; k < dp.pre.size(); ++k) {
    if (!dp.pre[k]) {
      violation("pre", "missing precondition for " + dp.events[k]);
    } else if (contains_ought(*dp.pre[k])) {
      violation("pre", "precondition outside AML fragment: " + dp.id + "." + dp.events[k]);
    }
  }
  for (const auto& [agent, pairs] : dp.relations) {
    std::set<std::pair<std::string, std::string>> edges(pairs.begin(), pairs.end());
    for (const auto& [from, to] : pairs)
      if (!names.count(from) || !names.count(to))
        violation("relations", "relation of " + agent + " mentions unknown event");
    for (const auto& e : dp.events)
      if (!edges.count({e, e}))
        report.violations.push_back({"reflexivity", agent, {e}, "event relation of " + agent + " not reflexive at " + e});
    for (const auto& [from, to] : edges)
      if (from != to)
        report.notes.push_back({"distinguishability", agent, {from, to},
                                "non-reflexive event edge " + from + "->" + to + " for " + agent});
  }
  return report;
}

namespace {

void collect_references(const Formula& f, std::set<std::string>& out) {
  if (f.op == Op::Diamond || f.op == Op::Ought || f.op == Op::Expect)
    for (const auto& s : f.trace) out.insert(s.decision_point);
  if (f.lhs) collect_references(*f.lhs, out);
  if (f.rhs) collect_references(*f.rhs, out);
}

}  // namespace

void ActionRegistry::add(DecisionPoint dp) {
  if (find(dp.id)) throw Error(ErrorKind::ValidationError, "duplicate decision point id " + dp.id);
  auto report = validate_decision_point(dp);
  if (!report.ok()) {
    for (const auto& v : report.violations)
      if (v.property == "pre" && v.message.rfind("precondition outside", 0) == 0)
        throw Error(ErrorKind::OughtInPrecondition, v.message);
    throw Error(ErrorKind::ValidationError, report.str());
  }
  for (const auto& pre : dp.pre) {
    std::set<std::string> refs;
    collect_references(*pre, refs);
    for (const auto& r : refs) {
      if (r == dp.id) throw Error(ErrorKind::CyclicPrecondition, dp.id + " refers to itself in a precondition");
      if (!find(r)) throw Error(ErrorKind::UnknownReference, dp.id + " refers to undeclared decision point " + r);
    }
  }
  dps_.push_back(std::move(dp));
}

const DecisionPoint* ActionRegistry::find(std::string_view id) const {
  for (const auto& dp : dps_)
    if (dp.id == id) return &dp;
  return nullptr;
}

const DecisionPoint& ActionRegistry::get(std::string_view id) const {
  if (const auto* dp = find(id)) return *dp;
  throw Error(ErrorKind::UnknownReference, "undeclared decision point " + std::string(id));
}

void ActionRegistry::check_trace(const Trace& trace) const {
  if (trace.empty()) throw Error(ErrorKind::UnknownEvent, "empty trace");
  for (const auto& s : trace) {
    const auto& dp = get(s.decision_point);
    if (!dp.find_event(s.event)) throw Error(ErrorKind::UnknownEvent, s.decision_point + "." + s.event);
  }
}

const std::string& ActionRegistry::owner_of(const Trace& trace) const {
  check_trace(trace);
  return get(trace.back().decision_point).owner;
}

FormulaPtr ActionRegistry::precondition(const Trace& trace) const {
  check_trace(trace);
  const auto& last = trace.back();
  const auto& dp = get(last.decision_point);
  FormulaPtr pre = dp.pre[*dp.find_event(last.event)];
  if (trace.size() == 1) return pre;
  return diamond(trace_prefix(trace), pre);
}

ActionModel ActionRegistry::composed(const std::vector<std::string>& ids) const {
  if (ids.empty()) throw Error(ErrorKind::UnknownReference, "empty composition");
  ActionModel am = to_action_model(get(ids.front()));
  for (std::size_t k = 1; k < ids.size(); ++k) am = compose(am, to_action_model(get(ids[k])));
  return am;
}

std::vector<std::string> ActionRegistry::components_of(const Trace& trace) {
  std::vector<std::string> out;
  for (const auto& s : trace) out.push_back(s.decision_point);
  return out;
}

}  // namespace daml
