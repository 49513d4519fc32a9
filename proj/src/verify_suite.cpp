#include "daml/verify_suite.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "daml/error.hpp"
#include "daml/parser.hpp"
#include "daml/product_update.hpp"
#include "daml/submodel.hpp"

namespace daml {

int uniform(Rng& rng, int lo, int hi) {
  if (hi <= lo) return lo;
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

namespace {

bool coin(Rng& rng, int percent) { return uniform(rng, 0, 99) < percent; }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

// splitmix64, to derive independent per-trial seeds.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

const char* const kAgents[] = {"a", "b", "c", "d"};
const char* const kAtoms[] = {"p", "q", "r", "s", "t"};

}  // namespace

ModelPtr gen_model(const GenParams& p, Rng& rng) {
  ModelSpec spec;
  spec.frame = p.frame;
  spec.name = "gen";
  int n = uniform(rng, p.min_worlds, p.max_worlds);
  int k = std::clamp(uniform(rng, p.min_agents, p.max_agents), 1, 4);
  int na = std::clamp(uniform(rng, p.min_atoms, p.max_atoms), 1, 5);
  for (int a = 0; a < k; ++a) spec.agents.push_back(kAgents[a]);
  for (int a = 0; a < na; ++a) spec.atoms.push_back(kAtoms[a]);
  for (int w = 0; w < n; ++w) {
    ModelSpec::WorldSpec ws;
    ws.id = "w" + std::to_string(w);
    for (const auto& atom : spec.atoms)
      if (coin(rng, 50)) ws.true_atoms.push_back(atom);
    ws.value = static_cast<std::uint64_t>(uniform(rng, 0, static_cast<int>(p.max_value)));
    spec.worlds.push_back(std::move(ws));
  }
  for (const auto& agent : spec.agents) {
    std::vector<int> cluster(n);
    for (int w = 0; w < n; ++w) cluster[w] = uniform(rng, 0, n - 1);
    auto& pairs = spec.relations[agent];
    for (int c = 0; c < n; ++c) {
      std::vector<int> members;
      for (int w = 0; w < n; ++w)
        if (cluster[w] == c) members.push_back(w);
      if (members.empty()) continue;
      std::vector<int> core = members;
      if (p.frame != FrameClass::S5) {
        core.clear();
        for (int w : members)
          if (coin(rng, 50)) core.push_back(w);
        if (core.empty()) core.push_back(pick(rng, members));
      }
      for (int x : members)
        for (int y : core) pairs.emplace_back(spec.worlds[x].id, spec.worlds[y].id);
    }
  }
  spec.point = spec.worlds[uniform(rng, 0, n - 1)].id;
  return build_model(spec);
}

DecisionPoint gen_decision_point(const GenParams& p, const KripkeModel& m, Rng& rng, const std::string& id,
                                 const std::string& owner) {
  if (m.worlds.empty()) throw Error(ErrorKind::Unsatisfiable, "model has no worlds");
  DecisionPoint dp;
  dp.id = id;
  dp.owner = owner;
  int count = uniform(rng, std::max(2, p.min_events), std::max(2, p.max_events));
  for (int e = 0; e < count; ++e) {
    dp.events.push_back("e" + std::to_string(e));
    int u = uniform(rng, 0, static_cast<int>(m.size()) - 1);
    if (coin(rng, 20)) {
      dp.pre.push_back(top());
      continue;
    }
    // Literals true at u, so the event survives there.
    FormulaPtr pre;
    int lits = uniform(rng, 1, std::min<int>(2, static_cast<int>(m.atoms.size())));
    std::vector<std::string> atoms = m.atoms;
    std::shuffle(atoms.begin(), atoms.end(), rng);
    for (int l = 0; l < lits; ++l) {
      FormulaPtr lit = atom(atoms[l]);
      if (!m.holds_atom(u, atoms[l])) lit = neg(lit);
      pre = pre ? conj(pre, lit) : lit;
    }
    dp.pre.push_back(pre);
  }
  return dp;
}

Trace gen_trace(const ActionRegistry& actions, Rng& rng) {
  const auto& dps = actions.decision_points();
  auto step = [&](const DecisionPoint& dp) { return Step{dp.id, pick(rng, dp.events)}; };
  if (dps.size() >= 2 && coin(rng, 35)) {
    int i = uniform(rng, 0, static_cast<int>(dps.size()) - 2);
    int j = uniform(rng, i + 1, static_cast<int>(dps.size()) - 1);
    return {step(dps[i]), step(dps[j])};
  }
  return {step(pick(rng, dps))};
}

FormulaPtr gen_formula(const FormulaEnv& env, int depth, Rng& rng) {
  bool dynamic = env.actions && !env.actions->empty();
  auto leaf = [&]() -> FormulaPtr {
    int r = uniform(rng, 0, 99);
    if (r < 8) return coin(rng, 50) ? top() : bottom();
    if (r < 25 && dynamic && env.allow_expect) {
      Trace t = gen_trace(*env.actions, rng);
      return expect(env.actions->owner_of(t), t);
    }
    return atom(pick(rng, env.atoms));
  };
  if (depth <= 0) return leaf();
  int r = uniform(rng, 0, 99);
  if (r < 12) return leaf();
  if (r < 30) return neg(gen_formula(env, depth - 1, rng));
  if (r < 50) return conj(gen_formula(env, depth - 1, rng), gen_formula(env, depth - 1, rng));
  if (r < 64 || !dynamic) return know(pick(rng, env.agents), gen_formula(env, depth - 1, rng));
  Trace t = gen_trace(*env.actions, rng);
  if (r < 82 || !env.allow_ought) return diamond(t, gen_formula(env, depth - 1, rng));
  return ought(env.actions->owner_of(t), t, gen_formula(env, depth - 1, rng));
}

std::vector<EvalContext> legal_contexts(const ModelPtr& m) {
  std::vector<EvalContext> out;
  for (std::size_t w = 0; w < m->size(); ++w) out.push_back({m, static_cast<int>(w), m->worlds[w].id, "", ""});
  std::set<std::tuple<int, std::vector<int>, int>> seen;
  for (std::size_t a = 0; a < m->agents.size(); ++a)
    for (std::size_t v = 0; v < m->size(); ++v) {
      ModelPtr sub = agent_submodel(m, static_cast<int>(v), static_cast<int>(a));
      int retained = sub->retained_root ? static_cast<int>(v) : -1;
      if (!seen.insert({static_cast<int>(a), sub->origin, retained}).second) continue;
      for (std::size_t x = 0; x < sub->size(); ++x)
        out.push_back({sub, static_cast<int>(x),
                       "M_" + m->agents[a] + "^" + m->worlds[v].id + ":" + sub->worlds[x].id, m->agents[a],
                       m->worlds[v].id});
    }
  return out;
}

const AxiomResult* AxiomReport::find(const std::string& id) const {
  for (const auto* group : {&axioms, &ambiguities, &informational})
    for (const auto& r : *group)
      if (r.id == id) return &r;
  return nullptr;
}

namespace {

std::string value_of(Checker& checker, const ModelPtr& m, int w, const FormulaPtr& f) {
  try {
    return checker.holds(m, w, *f) ? "true" : "false";
  } catch (const Error& e) {
    return std::string("error: ") + to_string(e.kind());
  }
}

std::string global_value_of(Checker& checker, const ModelPtr& m, const FormulaPtr& f) {
  try {
    return checker.holds_globally(m, f).holds ? "true" : "false";
  } catch (const Error& e) {
    return std::string("error: ") + to_string(e.kind());
  }
}

struct Instance {
  std::uint64_t seed;
  ModelPtr model;
  json model_json;
  json dps_json;
  std::vector<EvalContext> contexts;
};

Counterexample make_cex(const Instance& in, const std::string& kind, const EvalContext* ctx, const FormulaPtr& lhs,
                        const FormulaPtr& rhs, std::string lv, std::string rv) {
  Counterexample c;
  c.trial_seed = in.seed;
  c.kind = kind;
  if (ctx) {
    c.context = ctx->label;
    c.world = ctx->model->worlds[ctx->world].id;
    c.sub_agent = ctx->sub_agent;
    c.sub_root = ctx->sub_root;
  }
  c.lhs_formula = print(*lhs);
  c.rhs_formula = print(*rhs);
  c.lhs_value = std::move(lv);
  c.rhs_value = std::move(rv);
  c.model = in.model_json;
  c.decision_points = in.dps_json;
  return c;
}

void check_pointwise(AxiomResult& r, Checker& checker, const Instance& in, const FormulaPtr& lhs,
                     const FormulaPtr& rhs) {
  ++r.trials;
  for (const auto& ctx : in.contexts) {
    std::string l = value_of(checker, ctx.model, ctx.world, lhs);
    std::string v = value_of(checker, ctx.model, ctx.world, rhs);
    if (l != v) {
      r.counterexamples.push_back(make_cex(in, "pointwise", &ctx, lhs, rhs, l, v));
      return;
    }
  }
  ++r.passes;
}

AxiomResult& slot(std::vector<AxiomResult>& group, const std::string& id) {
  for (auto& r : group)
    if (r.id == id) return r;
  group.push_back({id, 0, 0, {}});
  return group.back();
}

}  // namespace

AxiomReport run_axiom_suite(const GenParams& p, std::size_t trials) {
  AxiomReport report;
  report.seed = p.seed;
  report.frame = p.frame;
  report.trials = trials;
  for (const char* id : {"E1", "E2", "R1", "R2", "R3", "R5", "R6", "AM1", "AM2", "AM3", "AM5", "Lemma1(i)", "Lemma1(ii)"})
    slot(report.axioms, id);
  for (const char* id : {"R4", "AM4(paper)", "AM4(standard)"}) slot(report.ambiguities, id);
  for (const char* id : {"R3-corrected", "R4-corrected"}) slot(report.informational, id);

  for (std::size_t t = 0; t < trials; ++t) {
    Instance in;
    in.seed = mix(p.seed * 1000003ULL + t);
    Rng rng(in.seed);
    ActionRegistry actions;
    try {
      in.model = gen_model(p, rng);
      const auto& agents = in.model->agents;
      std::string i = pick(rng, agents);
      actions.add(gen_decision_point(p, *in.model, rng, "U1", i));
      actions.add(gen_decision_point(p, *in.model, rng, "U2", i));
      if (agents.size() > 1 && coin(rng, 50)) {
        std::string j;
        do j = pick(rng, agents);
        while (j == i);
        actions.add(gen_decision_point(p, *in.model, rng, "U3", j));
      }
    } catch (const Error& e) {
      report.generation_errors.push_back("trial " + std::to_string(t) + ": " + e.what());
      continue;
    }
    in.model_json = model_to_json(*in.model);
    in.dps_json = json::array();
    for (const auto& dp : actions.decision_points()) in.dps_json.push_back(decision_point_to_json(dp));
    in.contexts = legal_contexts(in.model);

    Checker checker(actions);
    const DecisionPoint& u1 = actions.get("U1");
    const DecisionPoint& u2 = actions.get("U2");
    const std::string& i = u1.owner;
    Trace ta{{"U1", pick(rng, u1.events)}};
    Trace tb{{"U2", pick(rng, u2.events)}};
    Trace tab = concat(ta, tb);
    FormulaEnv env{in.model->agents, in.model->atoms, &actions, true, true};
    int sub = std::max(0, p.depth - 2);
    FormulaPtr phi = gen_formula(env, sub, rng);
    FormulaPtr psi = gen_formula(env, sub, rng);
    FormulaPtr pa = atom(pick(rng, in.model->atoms));
    std::string j = pick(rng, in.model->agents);
    FormulaPtr pre = actions.precondition(ta);
    FormulaPtr e = expect(i, ta);

    // E1: when some alternative is open to i, some alternative is best.
    FormulaPtr open, best;
    for (const auto& ev : u1.events) {
      Trace tx{{"U1", ev}};
      FormulaPtr o = possible(i, actions.precondition(tx));
      FormulaPtr b = possible(i, diamond(tx, expect(i, tx)));
      open = open ? disj(open, o) : o;
      best = best ? disj(best, b) : b;
    }
    check_pointwise(slot(report.axioms, "E1"), checker, in, implies(open, best), top());
    check_pointwise(slot(report.axioms, "E2"), checker, in, box(ta, implies(e, know(i, e))), top());

    check_pointwise(slot(report.axioms, "R1"), checker, in, ought(i, ta, pa), conj(conj(pre, pa), e));
    check_pointwise(slot(report.axioms, "R2"), checker, in, ought(i, ta, conj(phi, psi)),
                    conj(ought(i, ta, phi), ought(i, ta, psi)));
    check_pointwise(slot(report.axioms, "R3"), checker, in, ought(i, ta, neg(phi)), conj(pre, neg(ought(i, ta, phi))));
    check_pointwise(slot(report.informational, "R3-corrected"), checker, in, ought(i, ta, neg(phi)),
                    conj(conj(pre, e), neg(ought(i, ta, phi))));
    check_pointwise(slot(report.ambiguities, "R4"), checker, in, ought(i, ta, know(i, phi)),
                    know(i, ought(i, ta, phi)));
    check_pointwise(slot(report.informational, "R4-corrected"), checker, in, ought(i, ta, know(i, phi)),
                    conj(diamond(ta, know(i, phi)), e));
    check_pointwise(slot(report.axioms, "R5"), checker, in, ought(i, ta, diamond(tb, phi)),
                    conj(diamond(tab, phi), e));
    check_pointwise(slot(report.axioms, "R6"), checker, in, ought(i, ta, ought(i, tb, phi)),
                    conj(ought(i, tab, phi), e));

    check_pointwise(slot(report.axioms, "AM1"), checker, in, box(ta, pa), implies(pre, pa));
    check_pointwise(slot(report.axioms, "AM2"), checker, in, box(ta, neg(phi)), implies(pre, neg(box(ta, phi))));
    check_pointwise(slot(report.axioms, "AM3"), checker, in, box(ta, conj(phi, psi)),
                    conj(box(ta, phi), box(ta, psi)));
    {
      // Generated decision points are reflexive-only, so alpha Q beta
      // holds exactly for beta = alpha and both readings coincide.
      const ActionModel& am = checker.action_model({"U1"});
      int from = *am.find_event(ta);
      FormulaPtr lit, stdf;
      for (std::size_t k = 0; k < am.events.size(); ++k) {
        if (!am.related(j, from, static_cast<int>(k))) continue;
        FormulaPtr l = know(j, box(ta, phi));
        FormulaPtr s = know(j, box(am.events[k].trace, phi));
        lit = lit ? conj(lit, l) : l;
        stdf = stdf ? conj(stdf, s) : s;
      }
      check_pointwise(slot(report.ambiguities, "AM4(paper)"), checker, in, box(ta, know(j, phi)), implies(pre, lit));
      check_pointwise(slot(report.ambiguities, "AM4(standard)"), checker, in, box(ta, know(j, phi)),
                      implies(pre, stdf));
    }
    check_pointwise(slot(report.axioms, "AM5"), checker, in, box(ta, box(tb, phi)), box(tab, phi));

    // e_i^alpha has one truth value across each action component.
    {
      AxiomResult& r = slot(report.axioms, "Lemma1(i)");
      ++r.trials;
      bool ok = true;
      try {
        ModelPtr pm;
        for (std::size_t u = 0; u < in.model->size() && ok; ++u) {
          if (!checker.holds(in.model, static_cast<int>(u), *pre)) continue;
          if (!pm) pm = checker.update(in.model, {"U1"});
          int x = *find_product_world(*pm, static_cast<int>(u), ta);
          ModelPtr comp = action_component(pm, x, pm->agent_index(i), checker.reflexive_only());
          std::string first = value_of(checker, comp, 0, e);
          for (std::size_t y = 1; y < comp->size(); ++y) {
            std::string val = value_of(checker, comp, static_cast<int>(y), e);
            if (val != first) {
              EvalContext ctx{comp, static_cast<int>(y), "component of " + pm->worlds[x].id, "", ""};
              auto c = make_cex(in, "component", &ctx, e, e, first, val);
              c.world = pm->worlds[x].id;
              r.counterexamples.push_back(std::move(c));
              ok = false;
              break;
            }
          }
        }
      } catch (const Error& err) {
        r.counterexamples.push_back(make_cex(in, "component", nullptr, e, e, std::string("error: ") + err.what(), ""));
        ok = false;
      }
      if (ok) ++r.passes;
    }

    // e <-> K e, read globally over each agent submodel of the owner.
    {
      AxiomResult& r = slot(report.axioms, "Lemma1(ii)");
      ++r.trials;
      FormulaPtr o = ought(i, ta, phi);
      FormulaPtr ko = know(i, o);
      bool ok = true;
      std::set<std::vector<int>> seen;
      int ai = in.model->agent_index(i);
      for (std::size_t v = 0; v < in.model->size() && ok; ++v) {
        ModelPtr s = agent_submodel(in.model, static_cast<int>(v), ai);
        if (!seen.insert(s->origin).second) continue;
        std::string l = global_value_of(checker, s, o);
        std::string g = global_value_of(checker, s, ko);
        if (l != g) {
          EvalContext ctx{s, *s->root, "M_" + i + "^" + in.model->worlds[v].id, i, in.model->worlds[v].id};
          r.counterexamples.push_back(make_cex(in, "global", &ctx, o, ko, l, g));
          ok = false;
        }
      }
      if (ok) ++r.passes;
    }
  }
  return report;
}

namespace {

std::string result_line(const AxiomResult& r) {
  std::ostringstream os;
  os << "  " << r.id << std::string(r.id.size() < 15 ? 15 - r.id.size() : 1, ' ') << "trials=" << r.trials
     << " passes=" << r.passes << " counterexamples=" << r.counterexamples.size() << "\n";
  return os.str();
}

json result_json(const AxiomResult& r) {
  json doc;
  doc["id"] = r.id;
  doc["trials"] = r.trials;
  doc["passes"] = r.passes;
  doc["counterexamples"] = json::array();
  for (const auto& c : r.counterexamples)
    doc["counterexamples"].push_back({{"trial_seed", c.trial_seed}, {"kind", c.kind}, {"context", c.context},
                                      {"world", c.world}, {"sub_agent", c.sub_agent}, {"sub_root", c.sub_root},
                                      {"lhs", c.lhs_formula}, {"rhs", c.rhs_formula}, {"lhs_value", c.lhs_value},
                                      {"rhs_value", c.rhs_value}, {"model", c.model},
                                      {"decision_points", c.decision_points}});
  return doc;
}

}  // namespace

std::string AxiomReport::str() const {
  std::ostringstream os;
  os << "axiom suite: frame=" << to_string(frame) << " seed=" << seed << " trials=" << trials << "\n";
  os << "checked:\n";
  for (const auto& r : axioms) os << result_line(r);
  os << "known ambiguities (informational):\n";
  for (const auto& r : ambiguities) os << result_line(r);
  os << "corrected forms (informational):\n";
  for (const auto& r : informational) os << result_line(r);
  for (const auto& group : {&axioms, &ambiguities})
    for (const auto& r : *group)
      if (!r.counterexamples.empty()) {
        const auto& c = r.counterexamples.front();
        os << "first counterexample for " << r.id << " (seed " << c.trial_seed << ", " << c.context << "):\n    "
           << c.lhs_formula << " = " << c.lhs_value << "\n    " << c.rhs_formula << " = " << c.rhs_value << "\n";
      }
  if (!generation_errors.empty()) os << generation_errors.size() << " generation errors\n";
  return os.str();
}

json AxiomReport::to_json() const {
  json doc;
  doc["seed"] = seed;
  doc["frame"] = to_string(frame);
  doc["trials"] = trials;
  doc["axioms"] = json::array();
  for (const auto& r : axioms) doc["axioms"].push_back(result_json(r));
  doc["known_ambiguities"] = json::array();
  for (const auto& r : ambiguities) doc["known_ambiguities"].push_back(result_json(r));
  doc["informational"] = json::array();
  for (const auto& r : informational) doc["informational"].push_back(result_json(r));
  doc["generation_errors"] = generation_errors;
  return doc;
}

bool reproduces(const Counterexample& c) {
  ModelPtr m = model_from_json(c.model);
  ActionRegistry actions;
  for (const auto& d : c.decision_points) actions.add(decision_point_from_json(d, actions));
  ParseEnv env{&actions, &m->agents, false};
  FormulaPtr lhs = parse(c.lhs_formula, env);
  FormulaPtr rhs = parse(c.rhs_formula, env);
  Checker checker(actions);
  ModelPtr ambient = m;
  if (!c.sub_agent.empty())
    ambient = agent_submodel(m, m->world_index(c.sub_root), m->agent_index(c.sub_agent));
  std::string l, r;
  if (c.kind == "global") {
    l = global_value_of(checker, ambient, lhs);
    r = global_value_of(checker, ambient, rhs);
  } else if (c.kind == "pointwise") {
    int w = ambient->world_index(c.world);
    l = value_of(checker, ambient, w, lhs);
    r = value_of(checker, ambient, w, rhs);
  } else {
    return false;
  }
  return l == c.lhs_value && r == c.rhs_value && l != r;
}

std::string TranslationReport::str() const {
  std::ostringstream os;
  os << "translation suite: pairs=" << pairs << " contexts=" << contexts << " disagreements=" << disagreements
     << " fixed_point_failures=" << fixed_point_failures << " errors=" << errors << "\n";
  os << "  ought steps=" << ought_steps << " certified=" << certified_steps << " aml steps=" << aml_steps << "\n";
  for (const auto& [rule, n] : steps_per_rule) os << "  " << rule << ": " << n << "\n";
  for (const auto& ex : examples) os << "  " << ex << "\n";
  return os.str();
}

TranslationReport run_translation_suite(const GenParams& p, std::size_t pairs, TranslationMode mode) {
  TranslationReport report;
  for (std::size_t t = 0; t < pairs; ++t) {
    Rng rng(mix(p.seed * 7919ULL + t + 0x5eedULL));
    ModelPtr m = gen_model(p, rng);
    ActionRegistry actions;
    const auto& agents = m->agents;
    std::string i = pick(rng, agents);
    actions.add(gen_decision_point(p, *m, rng, "U1", i));
    actions.add(gen_decision_point(p, *m, rng, "U2", coin(rng, 60) ? i : pick(rng, agents)));
    if (coin(rng, 30)) actions.add(gen_decision_point(p, *m, rng, "U3", pick(rng, agents)));
    FormulaEnv env{m->agents, m->atoms, &actions, true, true};
    FormulaPtr phi = gen_formula(env, p.depth, rng);
    if (!contains_ought(*phi)) {
      Trace tr = gen_trace(actions, rng);
      phi = ought(actions.owner_of(tr), tr, gen_formula(env, std::max(0, p.depth - 1), rng));
    }
    ++report.pairs;
    Translation tr = translate(phi, actions, mode);
    for (const auto& s : tr.steps) {
      ++report.steps_per_rule[s.rule];
      if (s.is_ought_rule()) {
        ++report.ought_steps;
        if (check_inequality(s)) {
          ++report.certified_steps;
        } else if (report.examples.size() < 5) {
          report.examples.push_back("uncertified " + s.rule + ": " + std::to_string(s.c_before) + " -> " +
                                    std::to_string(s.c_after) + " on " + print(*s.before));
        }
      } else {
        ++report.aml_steps;
      }
    }
    if (contains_ought(*tr.formula) || (mode == TranslationMode::Standard && contains_diamond(*tr.formula)))
      ++report.fixed_point_failures;
    Translation again = translate(tr.formula, actions, mode);
    if (!equal(again.formula, tr.formula)) ++report.fixed_point_failures;

    Checker checker(actions);
    auto contexts = legal_contexts(m);
    auto eq = equivalence_oracle(phi, tr.formula, contexts, checker);
    report.contexts += eq.contexts;
    report.disagreements += eq.disagreements.size();
    for (const auto& d : eq.disagreements) {
      if (d.lhs.rfind("error", 0) == 0 || d.rhs.rfind("error", 0) == 0) ++report.errors;
      if (report.examples.size() < 5)
        report.examples.push_back("pair " + std::to_string(t) + " at " + d.context + ": " + print(*phi) + " = " +
                                  d.lhs + ", translation = " + d.rhs);
    }
  }
  return report;
}

}  // namespace daml
