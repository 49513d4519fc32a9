#include "daml/checker.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "daml/error.hpp"
#include "daml/product_update.hpp"
#include "daml/submodel.hpp"

namespace daml {

std::string Verdict::str(int indent) const {
  std::ostringstream os;
  os << std::string(static_cast<std::size_t>(indent) * 2, ' ') << (holds ? "[T] " : "[F] ") << clause;
  if (!world.empty()) os << " @ " << world;
  if (value) os << "  value=" << value->str();
  if (rival) os << " rival=" << rival->str();
  if (!note.empty()) os << "  (" << note << ")";
  os << "\n";
  for (const auto& c : children) os << c.str(indent + 1);
  return os.str();
}

namespace {

void collect_leaves(const Verdict& v, std::vector<const Verdict*>& out) {
  if (v.is_leaf()) {
    out.push_back(&v);
    return;
  }
  for (const auto& c : v.children) collect_leaves(c, out);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
  return out;
}

bool atomic(const Formula& f) { return f.op == Op::Atom || f.op == Op::Const || f.op == Op::Expect; }

}  // namespace

std::vector<const Verdict*> leaves(const Verdict& v) {
  std::vector<const Verdict*> out;
  collect_leaves(v, out);
  return out;
}

namespace {

// Leaf that explains why v has value `want`. Conjunctive nodes are blamed on
// their first child with the wrong value; negation flips what is sought.
const Verdict* blame(const Verdict& v, bool want) {
  if (v.is_leaf()) return &v;
  if (v.kind == "not") return blame(v.children[0], !want);
  for (const auto& c : v.children)
    if (c.holds == want) return blame(c, want);
  return &v;
}

}  // namespace

const Verdict* first_failing_leaf(const Verdict& v) {
  if (v.holds) return nullptr;
  return blame(v, false);
}

Checker::Checker(const ActionRegistry& actions, CheckerOptions options) : actions_(actions), options_(options) {
  for (const auto& dp : actions_.decision_points())
    for (const auto& [agent, pairs] : dp.relations)
      for (const auto& [from, to] : pairs)
        if (from != to) reflexive_only_ = false;
}

const ActionModel& Checker::action_model(const std::vector<std::string>& decision_points) {
  std::string key = join(decision_points, "*");
  auto it = composed_.find(key);
  if (it == composed_.end()) it = composed_.emplace(key, actions_.composed(decision_points)).first;
  return it->second;
}

ModelPtr Checker::update(const ModelPtr& m, const std::vector<std::string>& decision_points) {
  std::pair<const KripkeModel*, std::string> key{m.get(), join(decision_points, "*")};
  auto it = products_.find(key);
  if (it != products_.end()) return it->second.second;
  const ActionModel& am = action_model(decision_points);
  ModelPtr pm = product(m, am, [this](const ModelPtr& model, int w, const Formula& f) { return holds(model, w, f); });
  products_.emplace(key, std::make_pair(m, pm));
  return pm;
}

bool Checker::pre_holds(const ModelPtr& m, int w, const Trace& t) { return holds(m, w, *actions_.precondition(t)); }

ExpectationResolution Checker::resolve_expectation(const ModelPtr& m, int w, const std::string& agent,
                                                   const Trace& trace) {
  const std::string& owner = actions_.owner_of(trace);
  if (owner != agent)
    throw Error(ErrorKind::OwnerMismatch, agent + " does not own " + trace_to_string(trace) + " (owner " + owner + ")");
  auto key = std::make_tuple(m.get(), w, agent + "|" + trace_to_string(trace));
  if (auto it = atoms_.find(key); it != atoms_.end()) return it->second.second;

  // Walk back to the world where the final choice was taken.
  Trace prefix = trace_prefix(trace);
  ModelPtr cur = m;
  int z = w;
  while (!is_prefix(cur->worlds[z].trace, prefix)) {
    int up = cur->worlds[z].ancestor;
    if (!cur->ancestor || up < 0)
      throw Error(ErrorKind::NoDecisionContext,
                  "no decision context for e{" + agent + "; " + trace_to_string(trace) + "} at " + m->worlds[w].id);
    cur = cur->ancestor;
    z = up;
  }
  const Trace& zt = cur->worlds[z].trace;
  Trace sigma(trace.begin() + static_cast<std::ptrdiff_t>(zt.size()), trace.end());

  ExpectationResolution out;
  out.decision_world = cur->worlds[z].id;
  if (pre_holds(cur, z, sigma)) {
    int a = cur->agent_index(agent);
    ModelPtr pm = update(cur, ActionRegistry::components_of(sigma));
    auto at = find_product_world(*pm, z, trace);
    if (!at) throw Error(ErrorKind::TraceLeak, "lost instance of " + trace_to_string(trace));
    std::vector<int> horizon = strict_reach(*cur, z, a);
    horizon.push_back(z);
    std::sort(horizon.begin(), horizon.end());
    auto admit = [&](int y) { return std::binary_search(horizon.begin(), horizon.end(), pm->worlds[y].ancestor); };
    out.instantiated = true;
    out.instance = pm->worlds[*at].id;
    out.atom = atom_holds(pm, *at, a, trace, admit, reflexive_only_);
    out.holds = out.atom.holds;
  }
  atoms_.emplace(key, std::make_pair(m, out));
  return out;
}

std::optional<Rational> Checker::component_value(const ModelPtr& m, int w, const std::string& agent,
                                                 const Trace& trace) {
  if (!pre_holds(m, w, trace)) return std::nullopt;
  ModelPtr pm = update(m, ActionRegistry::components_of(trace));
  auto x = find_product_world(*pm, w, concat(m->worlds[w].trace, trace));
  if (!x) throw Error(ErrorKind::TraceLeak, "lost instance of " + trace_to_string(trace));
  int a = pm->agent_index(agent);
  if (pm->successors(a, *x).empty())
    throw Error(ErrorKind::NoSuccessors, agent + " has no successor at " + pm->worlds[*x].id);
  return expected_value(*action_component(pm, *x, a, reflexive_only_), a);
}

bool Checker::holds(const ModelPtr& m, int w, const Formula& f) {
  switch (f.op) {
    case Op::Const:
      return f.value;
    case Op::Atom:
      return m->holds_atom(w, f.name);
    case Op::Expect:
      return resolve_expectation(m, w, f.name, f.trace).holds;
    case Op::Not:
      return !holds(m, w, *f.lhs);
    case Op::And:
      return holds(m, w, *f.lhs) && holds(m, w, *f.rhs);
    case Op::Know: {
      int a = m->agent_index(f.name);
      for (int s : m->successors(a, w))
        if (!holds(m, s, *f.lhs)) return false;
      return true;
    }
    case Op::Diamond:
    case Op::Ought: {
      if (f.op == Op::Ought) {
        const std::string& owner = actions_.owner_of(f.trace);
        if (owner != f.name)
          throw Error(ErrorKind::OwnerMismatch, f.name + " does not own " + trace_to_string(f.trace));
      }
      if (!pre_holds(m, w, f.trace)) return false;
      ModelPtr pm = update(m, ActionRegistry::components_of(f.trace));
      Trace full = concat(m->worlds[w].trace, f.trace);
      auto x = find_product_world(*pm, w, full);
      if (!x) throw Error(ErrorKind::TraceLeak, "lost instance of " + trace_to_string(full));
      if (!holds(pm, *x, *f.lhs)) return false;
      if (f.op == Op::Diamond) return true;
      return resolve_expectation(m, w, f.name, full).holds;
    }
  }
  return false;
}

Verdict Checker::eval(const ModelPtr& m, int w, const FormulaPtr& fp) {
  const Formula& f = *fp;
  Verdict v;
  v.world = m->worlds[w].id;
  v.clause = print(f);
  switch (f.op) {
    case Op::Const:
      v.kind = "const";
      v.holds = f.value;
      return v;
    case Op::Atom:
      v.kind = "atom";
      v.holds = m->holds_atom(w, f.name);
      return v;
    case Op::Expect: {
      v.kind = "expect";
      auto r = resolve_expectation(m, w, f.name, f.trace);
      v.holds = r.holds;
      if (r.instantiated) {
        v.value = r.atom.value;
        v.rival = r.atom.best_rival();
        v.note = "decided at " + r.decision_world + ", instance " + r.instance;
        if (!v.rival) v.note += ", no rivals";
      } else {
        v.note = "no instance: precondition fails at " + r.decision_world;
      }
      return v;
    }
    case Op::Not:
      v.kind = "not";
      v.children.push_back(eval(m, w, f.lhs));
      v.holds = !v.children[0].holds;
      return v;
    case Op::And:
      v.kind = "and";
      v.children.push_back(eval(m, w, f.lhs));
      v.children.push_back(eval(m, w, f.rhs));
      v.holds = v.children[0].holds && v.children[1].holds;
      return v;
    case Op::Know: {
      v.kind = "know";
      int a = m->agent_index(f.name);
      v.holds = true;
      std::vector<std::string> failing;
      for (int s : m->successors(a, w)) {
        Verdict c = eval(m, s, f.lhs);
        if (!c.holds) {
          v.holds = false;
          failing.push_back(m->worlds[s].id);
        }
        if (!atomic(*f.lhs)) v.children.push_back(std::move(c));
      }
      if (!failing.empty()) v.note = "fails at " + join(failing, ", ");
      return v;
    }
    case Op::Diamond:
    case Op::Ought: {
      if (f.op == Op::Ought) {
        const std::string& owner = actions_.owner_of(f.trace);
        if (owner != f.name)
          throw Error(ErrorKind::OwnerMismatch, f.name + " does not own " + trace_to_string(f.trace));
      }
      Verdict d;
      d.kind = "diamond";
      d.world = v.world;
      d.clause = print(*diamond(f.trace, f.lhs));
      Verdict pre;
      pre.kind = "pre";
      pre.world = v.world;
      FormulaPtr pf = actions_.precondition(f.trace);
      pre.clause = "pre(" + trace_to_string(f.trace) + ") = " + print(*pf);
      pre.holds = holds(m, w, *pf);
      if (!pre.holds && options_.first_conjunct_note)
        pre.note = "strict reading: the action is not executable here; a non-strict reading would take the diamond as vacuous";
      d.children.push_back(pre);
      d.holds = pre.holds;
      Trace full = concat(m->worlds[w].trace, f.trace);
      if (pre.holds) {
        ModelPtr pm = update(m, ActionRegistry::components_of(f.trace));
        auto x = find_product_world(*pm, w, full);
        if (!x) throw Error(ErrorKind::TraceLeak, "lost instance of " + trace_to_string(full));
        d.children.push_back(eval(pm, *x, f.lhs));
        d.holds = d.children.back().holds;
      }
      if (f.op == Op::Diamond) {
        d.clause = v.clause;
        return d;
      }
      v.kind = "ought";
      v.children.push_back(std::move(d));
      Verdict e = eval(m, w, daml::expect(f.name, full));
      v.children.push_back(std::move(e));
      v.holds = v.children[0].holds && v.children[1].holds;
      return v;
    }
  }
  return v;
}

Verdict Checker::explain(const ModelPtr& m, int w, const FormulaPtr& f) {
  if (w < 0 || static_cast<std::size_t>(w) >= m->size())
    throw Error(ErrorKind::UnknownWorld, "world index " + std::to_string(w));
  return eval(m, w, f);
}

Verdict Checker::holds_globally(const ModelPtr& m, const FormulaPtr& f, bool explain) {
  Verdict g;
  g.kind = "global";
  g.clause = print(*f);
  g.holds = true;
  std::vector<std::string> failing;
  for (std::size_t w = 0; w < m->size(); ++w) {
    try {
      if (explain) {
        Verdict c = eval(m, static_cast<int>(w), f);
        if (!c.holds) failing.push_back(m->worlds[w].id);
        g.holds = g.holds && c.holds;
        g.children.push_back(std::move(c));
      } else if (!holds(m, static_cast<int>(w), *f)) {
        g.holds = false;
        failing.push_back(m->worlds[w].id);
      }
    } catch (const EmptyProductError& e) {
      throw EmptyProductError(std::string(e.what()) + " (at world " + m->worlds[w].id + ")", e.step());
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " (at world " + m->worlds[w].id + ")");
    }
  }
  if (!failing.empty()) g.note = "fails at " + join(failing, ", ");
  return g;
}

}  // namespace daml
