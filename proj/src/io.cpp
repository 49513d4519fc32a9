#include "daml/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "daml/error.hpp"
#include "daml/parser.hpp"

namespace daml {

namespace {

template <class F>
auto guarded(const std::string& what, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, what + ": " + e.what());
  }
}

std::vector<std::pair<std::string, std::string>> pairs_from_json(const json& list) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : list) {
    if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::ParseError, "relation entries must be [from, to] pairs");
    out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return out;
}

}  // namespace

ModelPtr model_from_json(const json& doc) {
  return guarded("model document", [&]() -> ModelPtr {
    ModelSpec spec;
    spec.name = doc.value("name", std::string());
    spec.agents = doc.at("agents").get<std::vector<std::string>>();
    spec.atoms = doc.at("atoms").get<std::vector<std::string>>();
    spec.frame = frame_from_string(doc.value("frame", std::string("S5")));
    for (const auto& w : doc.at("worlds")) {
      ModelSpec::WorldSpec ws;
      ws.id = w.at("id").get<std::string>();
      ws.true_atoms = w.value("true_atoms", std::vector<std::string>{});
      const auto& v = w.value("value", json(0));
      if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
        throw Error(ErrorKind::ValidationError, "world " + ws.id + " needs a non-negative integer value");
      ws.value = v.get<std::uint64_t>();
      spec.worlds.push_back(std::move(ws));
    }
    if (doc.contains("relations"))
      for (const auto& [agent, list] : doc.at("relations").items()) spec.relations[agent] = pairs_from_json(list);
    if (doc.contains("point") && !doc.at("point").is_null()) spec.point = doc.at("point").get<std::string>();
    ModelPtr base = build_model(spec);
    if (!doc.contains("root") && !doc.contains("agent_filter")) return base;
    auto m = std::make_shared<KripkeModel>(*base);
    if (doc.contains("root")) m->root = m->world_index(doc.at("root").get<std::string>());
    if (doc.contains("agent_filter") && !doc.at("agent_filter").is_null())
      m->agent_filter = m->agent_index(doc.at("agent_filter").get<std::string>());
    return m;
  });
}

json model_to_json(const KripkeModel& m) {
  json doc;
  if (!m.name.empty()) doc["name"] = m.name;
  doc["agents"] = m.agents;
  doc["atoms"] = m.atoms;
  doc["frame"] = to_string(m.frame);
  doc["worlds"] = json::array();
  for (std::size_t w = 0; w < m.worlds.size(); ++w)
    doc["worlds"].push_back(
        {{"id", m.worlds[w].id}, {"true_atoms", m.true_atoms(static_cast<int>(w))}, {"value", m.worlds[w].value}});
  json rel = json::object();
  for (std::size_t a = 0; a < m.agents.size(); ++a) {
    json pairs = json::array();
    for (std::size_t w = 0; w < m.worlds.size(); ++w)
      for (int u : m.relations[a][w]) pairs.push_back({m.worlds[w].id, m.worlds[u].id});
    rel[m.agents[a]] = std::move(pairs);
  }
  doc["relations"] = std::move(rel);
  if (m.point) doc["point"] = m.worlds[*m.point].id;
  if (m.root) doc["root"] = m.worlds[*m.root].id;
  if (m.agent_filter) doc["agent_filter"] = m.agents[*m.agent_filter];
  return doc;
}

DecisionPoint decision_point_from_json(const json& doc, const ActionRegistry& known) {
  return guarded("action-model document", [&] {
    DecisionPoint dp;
    dp.id = doc.at("id").get<std::string>();
    dp.owner = doc.at("owner").get<std::string>();
    ParseEnv env;
    env.actions = &known;
    env.forbid_ought = true;
    for (const auto& e : doc.at("events")) {
      dp.events.push_back(e.at("name").get<std::string>());
      auto text = e.value("pre", std::string("true"));
      try {
        dp.pre.push_back(parse(text, env));
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::UnknownReference) throw;
        std::string msg = err.what();
        std::string self = "decision point " + dp.id;
        if (msg.size() >= self.size() && msg.compare(msg.size() - self.size(), self.size(), self) == 0)
          throw Error(ErrorKind::CyclicPrecondition, dp.id + "." + dp.events.back() + " refers to " + dp.id);
        throw Error(ErrorKind::UnknownReference, dp.id + "." + dp.events.back() + ": " + msg);
      }
    }
    if (doc.contains("relations"))
      for (const auto& [agent, list] : doc.at("relations").items()) dp.relations[agent] = pairs_from_json(list);
    return dp;
  });
}

json decision_point_to_json(const DecisionPoint& dp) {
  json doc;
  doc["id"] = dp.id;
  doc["owner"] = dp.owner;
  doc["events"] = json::array();
  for (std::size_t k = 0; k < dp.events.size(); ++k) doc["events"].push_back({{"name", dp.events[k]}, {"pre", print(*dp.pre[k])}});
  if (!dp.relations.empty()) {
    json rel = json::object();
    for (const auto& [agent, pairs] : dp.relations) {
      auto sorted = pairs;
      std::sort(sorted.begin(), sorted.end());
      json list = json::array();
      for (const auto& [from, to] : sorted) list.push_back({from, to});
      rel[agent] = std::move(list);
    }
    doc["relations"] = std::move(rel);
  }
  return doc;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + " at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
  out << text;
}

void check_agents(const DecisionPoint& dp, const KripkeModel& m) {
  if (!m.find_agent(dp.owner)) throw Error(ErrorKind::UnknownAgent, dp.owner + " (owner of " + dp.id + ")");
  for (const auto& [agent, _] : dp.relations)
    if (!m.find_agent(agent)) throw Error(ErrorKind::UnknownAgent, agent + " (relation of " + dp.id + ")");
}

Workspace load_workspace(const std::string& model_path, const std::vector<std::string>& action_paths) {
  Workspace ws;
  ws.model = model_from_json(read_json_file(model_path));
  auto report = validate_model(*ws.model);
  if (!report.ok()) throw Error(ErrorKind::ValidationError, model_path + ": " + report.str());
  for (const auto& path : action_paths) {
    DecisionPoint dp = decision_point_from_json(read_json_file(path), ws.actions);
    check_agents(dp, *ws.model);
    ws.actions.add(std::move(dp));
  }
  return ws;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const KripkeModel& m, const DotOptions& options) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(m.name.empty() ? "M" : m.name) << "\" {\n";
  std::optional<int> root = m.root ? m.root : m.point;
  for (std::size_t w = 0; w < m.worlds.size(); ++w) {
    std::string atoms;
    for (const auto& p : m.true_atoms(static_cast<int>(w))) atoms += (atoms.empty() ? "" : ",") + p;
    os << "  n" << w << " [label=\"" << dot_escape(m.worlds[w].id) << "\\n" << dot_escape(atoms) << "\\nf="
       << m.worlds[w].value << "\"";
    if (root && *root == static_cast<int>(w)) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (std::size_t x = 0; x < m.worlds.size(); ++x)
    for (std::size_t y = 0; y < m.worlds.size(); ++y) {
      if (x == y && !options.loops) continue;
      std::string label;
      for (std::size_t a = 0; a < m.agents.size(); ++a)
        if (m.related(static_cast<int>(a), static_cast<int>(x), static_cast<int>(y)))
          label += (label.empty() ? "" : ",") + m.agents[a];
      if (!label.empty()) os << "  n" << x << " -> n" << y << " [label=\"" << dot_escape(label) << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace daml
