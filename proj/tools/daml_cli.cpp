// daml: command-line front end for the model checker.
//
// Exit codes: 0 holds / success, 1 formula fails (or a suite reports
// failures), 2 input error, 3 internal invariant breach.

#include <CLI11.hpp>

#include <deque>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "daml/checker.hpp"
#include "daml/error.hpp"
#include "daml/io.hpp"
#include "daml/parser.hpp"
#include "daml/product_update.hpp"
#include "daml/reduction.hpp"
#include "daml/scenarios.hpp"
#include "daml/submodel.hpp"
#include "daml/verify_suite.hpp"

using namespace daml;

namespace {

struct Common {
  std::string model;
  std::string actions;
  std::string at;
  bool json_out = false;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

Workspace load(const Common& c) {
  if (c.model.empty()) throw Error(ErrorKind::UsageError, "--model is required");
  return load_workspace(c.model, split_commas(c.actions));
}

int point_of(const KripkeModel& m, const std::string& at) {
  if (!at.empty()) return m.world_index(at);
  if (m.point) return *m.point;
  throw Error(ErrorKind::UsageError, "model has no point; pass --at");
}

ParseEnv env_for(const Workspace& ws) { return ParseEnv{&ws.actions, &ws.model->agents, false}; }

std::vector<std::string> dp_ids(const ActionRegistry& actions) {
  std::vector<std::string> ids;
  for (const auto& dp : actions.decision_points()) ids.push_back(dp.id);
  return ids;
}

int cmd_check(const Common& c, const std::string& formula, bool global, bool explain, bool note) {
  Workspace ws = load(c);
  FormulaPtr f = parse(formula, env_for(ws));
  Checker checker(ws.actions, CheckerOptions{note});
  Verdict v = global ? checker.holds_globally(ws.model, f, explain)
                     : checker.explain(ws.model, point_of(*ws.model, c.at), f);
  if (c.json_out) {
    json doc{{"formula", print(*f)}, {"holds", v.holds}};
    if (!global) doc["at"] = v.world;
    if (explain) doc["explanation"] = v.str();
    std::cout << doc.dump(2) << "\n";
  } else if (explain) {
    std::cout << v.str();
  } else {
    std::cout << (v.holds ? "true" : "false") << "\n";
  }
  return v.holds ? 0 : 1;
}

int cmd_update(const Common& c, const std::string& dot_out) {
  Workspace ws = load(c);
  if (ws.actions.empty()) throw Error(ErrorKind::UsageError, "--actions is required");
  ModelPtr pm = apply_sequence(ws.model, dp_ids(ws.actions), ws.actions);
  if (!dot_out.empty()) write_text_file(dot_out, export_dot(*pm));
  std::cout << model_to_json(*pm).dump(2) << "\n";
  return 0;
}

// Root for an expectation query: the instance at the point if it survives,
// otherwise the first surviving world in breadth-first order from the point.
std::optional<int> expectation_root(Checker& checker, const ModelPtr& m, int point, const Trace& t) {
  FormulaPtr pre = checker.actions().precondition(t);
  std::vector<char> seen(m->size(), 0);
  std::deque<int> queue{point};
  seen[point] = 1;
  while (!queue.empty()) {
    int w = queue.front();
    queue.pop_front();
    if (checker.holds(m, w, *pre)) return w;
    std::vector<int> next;
    for (std::size_t a = 0; a < m->agents.size(); ++a)
      for (int s : m->successors(static_cast<int>(a), w))
        if (!seen[s]) next.push_back(s);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    for (int s : next) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  return std::nullopt;
}

int cmd_expect(const Common& c, const std::string& agent, const std::string& trace_text) {
  Workspace ws = load(c);
  if (ws.actions.empty()) throw Error(ErrorKind::UsageError, "--actions is required");
  Checker checker(ws.actions);
  int point = point_of(*ws.model, c.at);
  std::vector<Trace> traces;
  if (!trace_text.empty()) {
    Trace t = parse_trace(trace_text);
    ws.actions.check_trace(t);
    traces.push_back(t);
  } else {
    for (const auto& ev : checker.action_model(dp_ids(ws.actions)).events) traces.push_back(ev.trace);
  }
  std::vector<std::string> agents = agent.empty() ? ws.model->agents : std::vector<std::string>{agent};
  json out = json::array();
  for (const auto& a : agents) {
    ws.model->agent_index(a);
    for (const auto& t : traces) {
      auto root = expectation_root(checker, ws.model, point, t);
      std::string label = "E[" + a + "; " + trace_to_string(t) + "]";
      if (!root) {
        if (c.json_out) out.push_back({{"agent", a}, {"trace", trace_to_string(t)}, {"value", nullptr}});
        else std::cout << label << " = undefined (no surviving instance)\n";
        continue;
      }
      auto value = checker.component_value(ws.model, *root, a, t);
      if (c.json_out)
        out.push_back({{"agent", a}, {"trace", trace_to_string(t)}, {"root", ws.model->worlds[*root].id},
                       {"value", value->str()}});
      else
        std::cout << label << " = " << value->str() << "\n";
    }
  }
  if (c.json_out) std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_translate(const Common& c, const std::string& formula, const std::string& mode_text, bool trace) {
  ActionRegistry empty;
  Workspace ws;
  const ActionRegistry* actions = &empty;
  ParseEnv env;
  if (!c.model.empty()) {
    ws = load(c);
    actions = &ws.actions;
    env = env_for(ws);
  } else if (!c.actions.empty()) {
    for (const auto& path : split_commas(c.actions))
      empty.add(decision_point_from_json(read_json_file(path), empty));
    env.actions = &empty;
  }
  FormulaPtr f = parse(formula, env);
  TranslationMode mode = translation_mode_from_string(mode_text);
  Translation tr = translate(f, *actions, mode);
  bool certified = true;
  for (const auto& s : tr.steps)
    if (s.is_ought_rule() && !check_inequality(s)) certified = false;
  if (c.json_out) {
    json steps = json::array();
    for (const auto& s : tr.steps)
      steps.push_back({{"rule", s.rule}, {"before", print(*s.before)}, {"after", print(*s.after)},
                       {"c_before", s.c_before}, {"c_after", s.c_after}});
    std::cout << json{{"input", print(*f)}, {"mode", to_string(mode)}, {"output", print(*tr.formula)},
                      {"certified", certified}, {"steps", steps}}
                     .dump(2)
              << "\n";
  } else {
    if (trace)
      for (const auto& s : tr.steps)
        std::cout << s.rule << "  c " << s.c_before << " -> " << s.c_after
                  << (s.is_ought_rule() ? (check_inequality(s) ? "  ok" : "  NOT DECREASING") : "") << "\n    "
                  << print(*s.before) << "\n    => " << print(*s.after) << "\n";
    std::cout << print(*tr.formula) << "\n";
  }
  return certified ? 0 : 3;
}

int cmd_axioms(const Common& c, std::size_t trials, std::uint64_t seed, const std::string& frame) {
  GenParams p;
  p.seed = seed;
  p.frame = frame_from_string(frame);
  AxiomReport r = run_axiom_suite(p, trials);
  if (c.json_out) std::cout << r.to_json().dump(2) << "\n";
  else std::cout << r.str();
  for (const auto& a : r.axioms)
    if (!a.counterexamples.empty()) return 1;
  return 0;
}

void save_scenario(const Scenario& s, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::string path = dir + "/" + s.name + ".json";
  write_text_file(path, model_to_json(*s.model).dump(2) + "\n");
  std::cerr << "wrote " << path << "\n";
  for (const auto& dp : s.actions.decision_points()) {
    path = dir + "/" + s.name + "_" + dp.id + ".json";
    write_text_file(path, decision_point_to_json(dp).dump(2) + "\n");
    std::cerr << "wrote " << path << "\n";
  }
}

int cmd_scenario(const Common& c, const std::string& name, const std::string& dot_dir, bool explain, bool note,
                 bool no_loops, const std::string& save_dir) {
  Scenario s = scenario_by_name(name);
  if (!save_dir.empty()) save_scenario(s, save_dir);
  ScenarioReport r = run_scenario(s, CheckerOptions{note});
  if (c.json_out) std::cout << r.to_json().dump(2) << "\n";
  else std::cout << r.str(explain);
  if (!dot_dir.empty())
    for (const auto& path : write_scenario_dot(s, dot_dir, DotOptions{!no_loops})) std::cerr << "wrote " << path << "\n";
  return r.failed() == 0 ? 0 : 1;
}

int cmd_export_dot(const Common& c, const std::string& out, bool no_loops, const std::string& component_agent) {
  Workspace ws = load(c);
  ModelPtr m = ws.model;
  if (!ws.actions.empty()) m = apply_sequence(m, dp_ids(ws.actions), ws.actions);
  if (!c.at.empty()) {
    int w = m->world_index(c.at);
    m = component_agent.empty() ? generated_submodel(m, w) : agent_submodel(m, w, m->agent_index(component_agent));
  }
  std::string text = export_dot(*m, DotOptions{!no_loops});
  if (out.empty()) std::cout << text;
  else write_text_file(out, text);
  return 0;
}

int cmd_validate(const Common& c) {
  if (c.model.empty()) throw Error(ErrorKind::UsageError, "--model is required");
  ModelPtr m = model_from_json(read_json_file(c.model));
  ValidationReport report = validate_model(*m);
  ActionRegistry actions;
  std::vector<std::string> dp_lines;
  for (const auto& path : split_commas(c.actions)) {
    DecisionPoint dp = decision_point_from_json(read_json_file(path), actions);
    check_agents(dp, *m);
    ValidationReport dr = validate_decision_point(dp);
    for (auto& v : dr.violations) report.violations.push_back(v);
    for (auto& n : dr.notes) report.notes.push_back(n);
    if (dr.ok()) actions.add(std::move(dp));
  }
  if (c.json_out) {
    auto issues = [](const std::vector<ValidationIssue>& list) {
      json a = json::array();
      for (const auto& v : list)
        a.push_back({{"property", v.property}, {"agent", v.agent}, {"witnesses", v.witnesses}, {"message", v.message}});
      return a;
    };
    std::cout << json{{"ok", report.ok()}, {"frame", to_string(m->frame)}, {"violations", issues(report.violations)},
                      {"notes", issues(report.notes)}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << (report.ok() ? "valid " : "invalid ") << to_string(m->frame) << " model\n" << report.str();
  }
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for deontic action-model logic"};
  app.require_subcommand(1);
  Common common;
  std::string semantics = "strict";
  auto add_common = [&](CLI::App* sub, bool model_flags) {
    if (model_flags) {
      sub->add_option("--model", common.model, "model document (JSON)");
      sub->add_option("--actions", common.actions, "decision point documents, comma-separated, in application order");
      sub->add_option("--at", common.at, "evaluation world (default: the model's point)");
    }
    sub->add_flag("--json", common.json_out, "machine-readable output");
    sub->add_option("--semantics", semantics, "truth semantics")->check(CLI::IsMember({"strict"}));
  };

  std::string formula, mode = "standard", agent, trace_text, frame = "S5", dot, out, first_conjunct, component;
  bool global = false, explain = false, trace = false, no_loops = false;
  std::size_t trials = 500;
  std::uint64_t seed = 1;

  auto* check = app.add_subcommand("check", "evaluate a formula");
  add_common(check, true);
  check->add_option("--formula", formula, "formula text")->required();
  check->add_flag("--global", global, "evaluate at every world");
  check->add_flag("--explain", explain, "print the verdict tree");
  check->add_option("--first-conjunct", first_conjunct, "annotate failed preconditions")
      ->check(CLI::IsMember({"note"}));

  auto* update = app.add_subcommand("update", "print the product model");
  add_common(update, true);
  update->add_option("--dot", dot, "also write the product as DOT to this file");

  auto* expect_cmd = app.add_subcommand("expect", "expected deontic values");
  add_common(expect_cmd, true);
  expect_cmd->add_option("--agent", agent, "agent (default: all)");
  expect_cmd->add_option("--trace", trace_text, "trace such as U.delta;U2.beta (default: all)");

  auto* translate_cmd = app.add_subcommand("translate", "reduce to the ought-free fragment");
  add_common(translate_cmd, true);
  translate_cmd->add_option("--formula", formula, "formula text")->required();
  translate_cmd->add_option("--mode", mode, "standard | paper-literal")
      ->check(CLI::IsMember({"standard", "paper-literal"}));
  translate_cmd->add_flag("--trace", trace, "print each rewrite step with complexities");

  auto* axioms = app.add_subcommand("axioms", "randomized axiom validity suite");
  add_common(axioms, false);
  axioms->add_option("--trials", trials, "number of generated instances");
  axioms->add_option("--seed", seed, "random seed");
  axioms->add_option("--frame", frame, "S5 | KD45")->check(CLI::IsMember({"S5", "KD45"}));

  auto* scenario = app.add_subcommand("scenario", "run a built-in worked example");
  add_common(scenario, false);
  std::string scenario_name;
  scenario->add_option("name", scenario_name, "miners | allergy")->required();
  scenario->add_option("--dot", dot, "write DOT files into this directory");
  scenario->add_flag("--explain", explain, "print verdict trees");
  std::string save_dir;
  scenario->add_option("--save", save_dir, "write the model and decision points as JSON into this directory");
  scenario->add_flag("--no-loops", no_loops, "omit reflexive edges in DOT output");
  scenario->add_option("--first-conjunct", first_conjunct, "annotate failed preconditions")
      ->check(CLI::IsMember({"note"}));

  auto* export_dot_cmd = app.add_subcommand("export-dot", "render a model as DOT");
  add_common(export_dot_cmd, true);
  export_dot_cmd->add_option("--out", out, "output file (default: stdout)");
  export_dot_cmd->add_flag("--no-loops", no_loops, "omit reflexive edges");
  export_dot_cmd->add_option("--component", component, "with --at: agent whose submodel to render");

  auto* validate = app.add_subcommand("validate", "check frame conditions and decision points");
  add_common(validate, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    bool note = first_conjunct == "note";
    if (*check) return cmd_check(common, formula, global, explain, note);
    if (*update) return cmd_update(common, dot);
    if (*expect_cmd) return cmd_expect(common, agent, trace_text);
    if (*translate_cmd) return cmd_translate(common, formula, mode, trace);
    if (*axioms) return cmd_axioms(common, trials, seed, frame);
    if (*scenario) return cmd_scenario(common, scenario_name, dot, explain, note, no_loops, save_dir);
    if (*export_dot_cmd) return cmd_export_dot(common, out, no_loops, component);
    if (*validate) return cmd_validate(common);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_internal() ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
