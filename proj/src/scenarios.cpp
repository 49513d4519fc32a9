#include "daml/scenarios.hpp"

#include <filesystem>
#include <sstream>

#include "daml/error.hpp"
#include "daml/parser.hpp"
#include "daml/submodel.hpp"

namespace daml {

namespace {

DecisionPoint make_dp(const std::string& id, const std::string& owner,
                      const std::vector<std::pair<std::string, std::string>>& events, const ActionRegistry& known) {
  DecisionPoint dp;
  dp.id = id;
  dp.owner = owner;
  ParseEnv env;
  env.actions = &known;
  env.forbid_ought = true;
  for (const auto& [name, pre] : events) {
    dp.events.push_back(name);
    dp.pre.push_back(parse(pre, env));
  }
  return dp;
}

void add_equivalence(ModelSpec& spec, const std::string& agent, const std::vector<std::string>& cls) {
  for (const auto& x : cls)
    for (const auto& y : cls) spec.relations[agent].emplace_back(x, y);
}

}  // namespace

Scenario miners() {
  Scenario s;
  s.name = "miners";
  ModelSpec spec;
  spec.name = "miners";
  spec.agents = {"i"};
  spec.atoms = {"A", "B", "s10", "s9", "s0"};
  spec.frame = FrameClass::S5;
  spec.worlds = {{"A10", {"A", "s10"}, 10}, {"A9", {"A", "s9"}, 9}, {"A0", {"A", "s0"}, 0},
                 {"B10", {"B", "s10"}, 10}, {"B9", {"B", "s9"}, 9}, {"B0", {"B", "s0"}, 0}};
  add_equivalence(spec, "i", {"A10", "A9", "A0", "B10", "B9", "B0"});
  spec.point = "A9";
  s.model = build_model(spec);
  s.actions.add(make_dp("U", "i",
                        {{"alpha", "(A & s10) | (B & s0)"}, {"beta", "(A & s0) | (B & s10)"}, {"gamma", "s9"}},
                        s.actions));
  s.claims = {
      {"O_i(U,alpha|true)", "O{i}(U.alpha | true)", false},
      {"O_i(U,beta|true)", "O{i}(U.beta | true)", false},
      {"O_i(U,gamma|true)", "O{i}(U.gamma | true)", true},
  };
  s.expectations = {
      {"i", parse_trace("U.gamma"), "A9", Rational(9)},
      {"i", parse_trace("U.alpha"), "A10", Rational(5)},
      {"i", parse_trace("U.beta"), "A0", Rational(5)},
  };
  return s;
}

Scenario allergy() {
  Scenario s;
  s.name = "allergy";
  ModelSpec spec;
  spec.name = "allergy";
  spec.agents = {"a", "b"};
  spec.atoms = {"A", "d", "d'"};
  spec.frame = FrameClass::KD45;
  spec.worlds = {{"w", {"A", "d"}, 0},   {"v", {"A", "d'"}, 40}, {"x1", {"A", "d"}, 0},
                 {"x2", {"A", "d'"}, 40}, {"x3", {"d"}, 100},     {"x4", {"d'"}, 40}};
  // b cannot tell the two top worlds apart; a only sees the lower cluster.
  add_equivalence(spec, "b", {"w", "v"});
  add_equivalence(spec, "b", {"x1", "x2", "x3", "x4"});
  add_equivalence(spec, "a", {"x1", "x2", "x3", "x4"});
  for (const char* top : {"w", "v"})
    for (const char* low : {"x1", "x2", "x3", "x4"}) spec.relations["a"].emplace_back(top, low);
  spec.point = "v";
  s.model = build_model(spec);
  s.actions.add(make_dp("U", "b", {{"delta", "A"}, {"gamma", "true"}}, s.actions));
  s.actions.add(make_dp("U2", "a", {{"alpha", "d"}, {"beta", "d'"}}, s.actions));

  const std::string headline = "O{b}(U.delta | O{a}(U2.beta | K{a} A))";
  const std::string gamma = "O{b}(U.gamma | O{a}(U2.beta | K{a} A))";
  s.claims = {
      {"O_b(U,delta | O_a(U2,beta | K_a A))", headline, true},
      {"O_b(U,gamma | O_a(U2,beta | K_a A))", gamma, false},
      {"headline, ambient M_b^v", headline, true, "", true, "M_i^v", "b"},
      {"K_b O_a(U2,beta|A), ambient M", "K{b} O{a}(U2.beta | A)", true, "", true},
      {"K_b O_a(U2,beta|A), ambient M_b^v", "K{b} O{a}(U2.beta | A)", true, "", true, "M_i^v", "b"},
      {"K_b O_a(U2,alpha|true), ambient M", "K{b} O{a}(U2.alpha | true)", true, "", true},
      {"K_b O_a(U2,alpha|true), ambient M_b^v", "K{b} O{a}(U2.alpha | true)", true, "", true, "M_i^v", "b"},
  };
  auto t = [](const char* text) { return parse_trace(text); };
  s.expectations = {
      {"a", t("U.delta;U2.alpha"), "w", Rational(0)},  {"a", t("U.delta;U2.beta"), "v", Rational(40)},
      {"a", t("U.gamma;U2.alpha"), "w", Rational(50)}, {"a", t("U.gamma;U2.beta"), "v", Rational(40)},
      {"b", t("U.delta;U2.alpha"), "w", Rational(0)},  {"b", t("U.delta;U2.beta"), "v", Rational(40)},
      {"b", t("U.gamma;U2.alpha"), "w", Rational(0)},  {"b", t("U.gamma;U2.beta"), "v", Rational(40)},
  };
  return s;
}

Scenario scenario_by_name(const std::string& name) {
  if (name == "miners") return miners();
  if (name == "allergy") return allergy();
  throw Error(ErrorKind::UsageError, "unknown scenario " + name + " (expected miners or allergy)");
}

int ScenarioReport::passed() const {
  int n = 0;
  for (const auto& it : items) n += it.kind != "informational" && it.passed;
  return n;
}

int ScenarioReport::failed() const {
  int n = 0;
  for (const auto& it : items) n += it.kind != "informational" && !it.passed;
  return n;
}

std::string ScenarioReport::str(bool explain) const {
  std::ostringstream os;
  os << "scenario " << name << "\n";
  for (const auto& it : items) {
    const char* tag = it.kind == "informational" ? "INFO" : (it.passed ? "PASS" : "FAIL");
    os << "  " << tag << "  " << it.kind << "  " << it.label << "  " << it.detail << "\n";
    if (explain && it.verdict) os << it.verdict->str(3);
  }
  os << passed() << "/" << (passed() + failed()) << " passed\n";
  return os.str();
}

json ScenarioReport::to_json() const {
  json doc;
  doc["scenario"] = name;
  doc["passed"] = passed();
  doc["failed"] = failed();
  doc["items"] = json::array();
  for (const auto& it : items) doc["items"].push_back({{"kind", it.kind}, {"label", it.label}, {"passed", it.passed}, {"detail", it.detail}});
  return doc;
}

ScenarioReport run_scenario(const Scenario& s, CheckerOptions options) {
  ScenarioReport report;
  report.name = s.name;
  Checker checker(s.actions, options);
  ParseEnv env;
  env.actions = &s.actions;
  env.agents = &s.model->agents;

  for (const auto& c : s.claims) {
    ScenarioItem item;
    item.kind = c.informational ? "informational" : "claim";
    item.label = c.label;
    try {
      FormulaPtr f = parse(c.formula, env);
      int w = c.at.empty() ? s.model->point.value_or(0) : s.model->world_index(c.at);
      ModelPtr ambient = s.model;
      if (c.ambient == "M_i^v") {
        ambient = agent_submodel(s.model, w, s.model->agent_index(c.ambient_agent));
        w = *ambient->root;
      }
      Verdict v = checker.explain(ambient, w, f);
      item.passed = v.holds == c.expected;
      item.detail = std::string("verdict=") + (v.holds ? "true" : "false");
      if (!c.informational) item.detail += std::string(" expected=") + (c.expected ? "true" : "false");
      item.verdict = std::move(v);
    } catch (const Error& e) {
      item.passed = false;
      item.detail = std::string("error: ") + e.what();
    }
    report.items.push_back(std::move(item));
  }

  for (const auto& e : s.expectations) {
    ScenarioItem item;
    item.kind = "expectation";
    item.label = "E_" + e.agent + "(" + e.root + "@" + trace_to_string(e.trace) + ")";
    try {
      auto value = checker.component_value(s.model, s.model->world_index(e.root), e.agent, e.trace);
      item.passed = value && *value == e.expected;
      item.detail = (value ? "value=" + value->str() : std::string("not executable")) + " expected=" + e.expected.str();
    } catch (const Error& err) {
      item.detail = std::string("error: ") + err.what();
    }
    report.items.push_back(std::move(item));
  }
  return report;
}

std::vector<std::string> write_scenario_dot(const Scenario& s, const std::string& dir, const DotOptions& options) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto emit = [&](const std::string& file, const KripkeModel& m) {
    std::string path = (fs::path(dir) / file).string();
    write_text_file(path, export_dot(m, options));
    written.push_back(path);
  };
  auto sanitize = [](std::string id) {
    for (char& c : id)
      if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
    return id;
  };
  emit(s.name + "_initial.dot", *s.model);
  Checker checker(s.actions);
  ModelPtr current = s.model;
  const auto& dps = s.actions.decision_points();
  for (std::size_t k = 0; k < dps.size(); ++k) {
    current = checker.update(current, {dps[k].id});
    emit(s.name + "_product" + std::to_string(k + 1) + ".dot", *current);
    int owner = current->agent_index(dps[k].owner);
    for (std::size_t x = 0; x < current->size(); ++x) {
      if (current->successors(owner, static_cast<int>(x)).empty()) continue;
      auto comp = action_component(current, static_cast<int>(x), owner, checker.reflexive_only());
      emit(s.name + "_component_" + sanitize(current->worlds[x].id) + ".dot", *comp);
    }
  }
  return written;
}

}  // namespace daml
