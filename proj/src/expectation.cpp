#include "daml/expectation.hpp"

#include "daml/error.hpp"
#include "daml/submodel.hpp"

namespace daml {

Rational expected_value(const KripkeModel& sub, int agent) {
  if (!sub.root) throw Error(ErrorKind::ValidationError, "expectation needs a rooted submodel");
  std::size_t n = sub.successors(agent, *sub.root).size();
  if (n == 0)
    throw Error(ErrorKind::NoSuccessors, sub.agents[agent] + " has no successor at " + sub.worlds[*sub.root].id);
  std::uint64_t total = 0;
  for (std::size_t w = 0; w < sub.size(); ++w)
    if (sub.in_domain(static_cast<int>(w))) total = checked_add(total, sub.worlds[w].value);
  if (total > static_cast<std::uint64_t>(INT64_MAX)) throw Error(ErrorKind::Overflow, "desirability sum too large");
  return Rational(static_cast<std::int64_t>(total), static_cast<std::int64_t>(n));
}

std::vector<Trace> rival_events(const Trace& atom_trace, const ActionModel& am) {
  for (const auto& ev : am.events) {
    const Trace& t = ev.trace;
    if (t.size() > atom_trace.size() || !std::equal(t.rbegin(), t.rend(), atom_trace.rbegin())) continue;
    Trace outer(atom_trace.begin(), atom_trace.end() - static_cast<std::ptrdiff_t>(t.size()));
    Trace prefix = trace_prefix(t);
    std::vector<Trace> out;
    for (const auto& other : am.events) {
      if (other.trace == t || trace_prefix(other.trace) != prefix) continue;
      if (other.trace.back().decision_point != t.back().decision_point) continue;
      out.push_back(concat(outer, other.trace));
    }
    return out;
  }
  throw Error(ErrorKind::UnknownEvent, trace_to_string(atom_trace) + " is not an event of " + am.id);
}

std::optional<Rational> AtomVerdict::best_rival() const {
  std::optional<Rational> best;
  for (const auto& r : rivals)
    if (!best || r.value > *best) best = r.value;
  return best;
}

AtomVerdict atom_holds(const ModelPtr& pm, int at, int agent, const Trace& trace,
                       const std::function<bool(int)>& admit, bool reflexive_only_update) {
  if (at < 0 || static_cast<std::size_t>(at) >= pm->size())
    throw Error(ErrorKind::UnknownProductWorld, "product world index " + std::to_string(at));
  if (pm->worlds[at].trace != trace)
    throw Error(ErrorKind::UnknownProductWorld,
                pm->worlds[at].id + " does not carry trace " + trace_to_string(trace));
  auto value_at = [&](int x) {
    if (pm->successors(agent, x).empty())
      throw Error(ErrorKind::NoSuccessors, pm->agents[agent] + " has no successor at " + pm->worlds[x].id);
    return expected_value(*action_component(pm, x, agent, reflexive_only_update), agent);
  };

  AtomVerdict out;
  out.value = value_at(at);
  Trace prefix = trace_prefix(trace);
  const Step& last = trace.back();
  for (std::size_t y = 0; y < pm->size(); ++y) {
    const Trace& t = pm->worlds[y].trace;
    if (t.size() != trace.size() || t.back() == last || t.back().decision_point != last.decision_point) continue;
    if (!std::equal(prefix.begin(), prefix.end(), t.begin())) continue;
    if (admit && !admit(static_cast<int>(y))) continue;
    out.rivals.push_back({pm->worlds[y].id, t, value_at(static_cast<int>(y))});
  }
  out.holds = true;
  for (const auto& r : out.rivals)
    if (out.value < r.value) out.holds = false;
  return out;
}

}  // namespace daml
