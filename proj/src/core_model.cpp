#include "daml/core_model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "daml/error.hpp"

namespace daml {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownAgent: return "UnknownAgent";
    case ErrorKind::UnknownWorld: return "UnknownWorld";
    case ErrorKind::UnknownEvent: return "UnknownEvent";
    case ErrorKind::UnknownProductWorld: return "UnknownProductWorld";
    case ErrorKind::UnknownReference: return "UnknownReference";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::OughtInPrecondition: return "OughtInPrecondition";
    case ErrorKind::OwnerMismatch: return "OwnerMismatch";
    case ErrorKind::CyclicPrecondition: return "CyclicPrecondition";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyProduct: return "EmptyProduct";
    case ErrorKind::IsolatedRoot: return "IsolatedRoot";
    case ErrorKind::NoSuccessors: return "NoSuccessors";
    case ErrorKind::NoDecisionContext: return "NoDecisionContext";
    case ErrorKind::TraceLeak: return "TraceLeak";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NonTermination: return "NonTermination";
    case ErrorKind::Unsatisfiable: return "Unsatisfiable";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Error";
}

std::string trace_to_string(const Trace& trace) {
  std::string out;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    if (k) out += ';';
    out += trace[k].decision_point;
    out += '.';
    out += trace[k].event;
  }
  return out;
}

bool is_prefix(const Trace& prefix, const Trace& trace) {
  return prefix.size() <= trace.size() && std::equal(prefix.begin(), prefix.end(), trace.begin());
}

Trace concat(const Trace& a, const Trace& b) {
  Trace out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Trace trace_prefix(const Trace& trace) {
  if (trace.empty()) return {};
  return Trace(trace.begin(), trace.end() - 1);
}

const char* to_string(FrameClass frame) {
  switch (frame) {
    case FrameClass::K: return "K";
    case FrameClass::KD45: return "KD45";
    case FrameClass::S5: return "S5";
  }
  return "K";
}

FrameClass frame_from_string(std::string_view text) {
  if (text == "S5") return FrameClass::S5;
  if (text == "KD45") return FrameClass::KD45;
  if (text == "K") return FrameClass::K;
  throw Error(ErrorKind::ValidationError, "unknown frame class '" + std::string(text) + "'");
}

int KripkeModel::agent_index(std::string_view agent) const {
  if (auto idx = find_agent(agent)) return *idx;
  throw Error(ErrorKind::UnknownAgent, std::string(agent));
}

std::optional<int> KripkeModel::find_agent(std::string_view agent) const {
  auto it = std::find(agents.begin(), agents.end(), agent);
  if (it == agents.end()) return std::nullopt;
  return static_cast<int>(it - agents.begin());
}

int KripkeModel::world_index(std::string_view id) const {
  if (auto idx = find_world(id)) return *idx;
  throw Error(ErrorKind::UnknownWorld, std::string(id));
}

std::optional<int> KripkeModel::find_world(std::string_view id) const {
  for (std::size_t k = 0; k < worlds.size(); ++k)
    if (worlds[k].id == id) return static_cast<int>(k);
  return std::nullopt;
}

std::optional<int> KripkeModel::find_atom(std::string_view atom) const {
  auto it = std::find(atoms.begin(), atoms.end(), atom);
  if (it == atoms.end()) return std::nullopt;
  return static_cast<int>(it - atoms.begin());
}

bool KripkeModel::holds_atom(int world, std::string_view atom) const {
  auto idx = find_atom(atom);
  // Atoms outside the model's vocabulary are false everywhere.
  return idx && worlds[world].truth[*idx];
}

bool KripkeModel::related(int agent, int from, int to) const {
  const auto& succ = relations[agent][from];
  return std::binary_search(succ.begin(), succ.end(), to);
}

std::vector<std::string> KripkeModel::true_atoms(int world) const {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < atoms.size(); ++k)
    if (worlds[world].truth[k]) out.push_back(atoms[k]);
  return out;
}

bool is_reflexive(const Relation& r) {
  for (std::size_t w = 0; w < r.size(); ++w)
    if (!std::binary_search(r[w].begin(), r[w].end(), static_cast<int>(w))) return false;
  return true;
}

bool is_serial(const Relation& r) {
  return std::all_of(r.begin(), r.end(), [](const auto& succ) { return !succ.empty(); });
}

bool is_transitive(const Relation& r) {
  for (const auto& succ : r)
    for (int u : succ)
      for (int x : r[u])
        if (!std::binary_search(succ.begin(), succ.end(), x)) return false;
  return true;
}

bool is_euclidean(const Relation& r) {
  for (const auto& succ : r)
    for (int u : succ)
      for (int x : succ)
        if (!std::binary_search(r[u].begin(), r[u].end(), x)) return false;
  return true;
}

namespace {

void check_frame(const KripkeModel& m, int agent, ValidationReport& report) {
  const Relation& r = m.relations[agent];
  const std::string& name = m.agents[agent];
  auto add = [&](const char* property, std::vector<int> witnesses, const std::string& message) {
    ValidationIssue issue{property, name, {}, message};
    for (int w : witnesses) issue.witnesses.push_back(m.worlds[w].id);
    report.violations.push_back(std::move(issue));
  };
  bool need_reflexive = m.frame == FrameClass::S5;
  bool need_serial = m.frame == FrameClass::KD45;
  bool need_closure = m.frame != FrameClass::K;

  for (std::size_t w = 0; w < r.size(); ++w) {
    int wi = static_cast<int>(w);
    if (need_reflexive && !m.related(agent, wi, wi))
      add("reflexivity", {wi}, "reflexivity fails at " + m.worlds[w].id);
    if (need_serial && r[w].empty()) add("seriality", {wi}, "seriality fails at " + m.worlds[w].id);
    if (!need_closure) continue;
    for (int u : r[w]) {
      for (int x : r[u]) {
        if (!m.related(agent, wi, x))
          add("transitivity", {wi, u, x},
              "transitivity fails: " + m.worlds[w].id + "->" + m.worlds[u].id + "->" + m.worlds[x].id);
      }
      for (int x : r[w]) {
        if (!m.related(agent, u, x))
          add("euclideanness", {wi, u, x},
              "euclideanness fails: " + m.worlds[w].id + "->" + m.worlds[u].id + ", " + m.worlds[w].id +
                  "->" + m.worlds[x].id + " but not " + m.worlds[u].id + "->" + m.worlds[x].id);
      }
    }
  }
}

}  // namespace

ValidationReport validate_model(const KripkeModel& m) {
  ValidationReport report;
  auto model_issue = [&](const std::string& property, const std::string& message) {
    report.violations.push_back({property, "", {}, message});
  };
  if (m.worlds.empty()) model_issue("domain", "model has no worlds");
  if (m.agents.empty()) model_issue("agents", "model has no agents");

  std::set<std::string> seen;
  for (const auto& w : m.worlds) {
    if (w.id.empty()) model_issue("world-id", "empty world id");
    if (!seen.insert(w.id).second) model_issue("world-id", "duplicate world id " + w.id);
    if (w.truth.size() != m.atoms.size()) model_issue("valuation", "valuation not total at " + w.id);
  }
  std::set<std::string> agent_names(m.agents.begin(), m.agents.end());
  if (agent_names.size() != m.agents.size()) model_issue("agents", "duplicate agent name");
  std::set<std::string> atom_names(m.atoms.begin(), m.atoms.end());
  if (atom_names.size() != m.atoms.size()) model_issue("atoms", "duplicate atom name");

  if (m.relations.size() != m.agents.size()) {
    model_issue("relations", "relation count does not match agent count");
    return report;
  }
  for (std::size_t a = 0; a < m.agents.size(); ++a) {
    if (m.relations[a].size() != m.worlds.size()) {
      model_issue("relations", "relation of " + m.agents[a] + " is not total over worlds");
      continue;
    }
    bool bad_ref = false;
    for (const auto& succ : m.relations[a])
      for (int u : succ)
        if (u < 0 || static_cast<std::size_t>(u) >= m.worlds.size()) bad_ref = true;
    if (bad_ref) {
      model_issue("relations", "relation of " + m.agents[a] + " references an undeclared world");
      continue;
    }
    check_frame(m, static_cast<int>(a), report);
  }
  if (m.point && (*m.point < 0 || static_cast<std::size_t>(*m.point) >= m.worlds.size()))
    model_issue("point", "point is not a world of the model");
  return report;
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << "violation";
    if (!v.agent.empty()) os << " [" << v.agent << "]";
    os << ": " << v.message << '\n';
  }
  for (const auto& n : notes) os << "note: " << n.message << '\n';
  return os.str();
}

std::vector<std::string> accessible(const KripkeModel& m, std::string_view agent, std::string_view world) {
  int a = m.agent_index(agent);
  int w = m.world_index(world);
  std::vector<std::string> out;
  for (int u : m.successors(a, w)) out.push_back(m.worlds[u].id);
  return out;
}

ModelPtr build_model(const ModelSpec& spec) {
  auto m = std::make_shared<KripkeModel>();
  m->name = spec.name;
  m->agents = spec.agents;
  m->atoms = spec.atoms;
  m->frame = spec.frame;
  for (const auto& ws : spec.worlds) {
    World w;
    w.id = ws.id;
    w.base = ws.id;
    w.value = ws.value;
    w.truth.assign(spec.atoms.size(), false);
    for (const auto& p : ws.true_atoms) {
      auto idx = m->find_atom(p);
      if (!idx) throw Error(ErrorKind::ValidationError, "world " + ws.id + " lists undeclared atom " + p);
      w.truth[*idx] = true;
    }
    m->worlds.push_back(std::move(w));
  }
  m->relations.assign(spec.agents.size(), Relation(m->worlds.size()));
  for (const auto& [agent, pairs] : spec.relations) {
    int a = m->agent_index(agent);
    for (const auto& [from, to] : pairs) m->relations[a][m->world_index(from)].push_back(m->world_index(to));
  }
  for (auto& r : m->relations)
    for (auto& succ : r) {
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    }
  if (spec.point) m->point = m->world_index(*spec.point);
  return m;
}

ModelSpec to_spec(const KripkeModel& m) {
  ModelSpec spec;
  spec.name = m.name;
  spec.agents = m.agents;
  spec.atoms = m.atoms;
  spec.frame = m.frame;
  for (std::size_t w = 0; w < m.worlds.size(); ++w)
    spec.worlds.push_back({m.worlds[w].id, m.true_atoms(static_cast<int>(w)), m.worlds[w].value});
  for (std::size_t a = 0; a < m.agents.size(); ++a) {
    auto& pairs = spec.relations[m.agents[a]];
    for (std::size_t w = 0; w < m.worlds.size(); ++w)
      for (int u : m.relations[a][w]) pairs.emplace_back(m.worlds[w].id, m.worlds[u].id);
  }
  if (m.point) spec.point = m.worlds[*m.point].id;
  return spec;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorKind::Overflow, "desirability sum overflow");
  return out;
}

}  // namespace daml
