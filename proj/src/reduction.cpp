#include "daml/reduction.hpp"

#include "daml/error.hpp"
#include "daml/parser.hpp"

namespace daml {

const char* to_string(TranslationMode mode) {
  return mode == TranslationMode::Standard ? "standard" : "paper-literal";
}

TranslationMode translation_mode_from_string(std::string_view text) {
  if (text == "standard") return TranslationMode::Standard;
  if (text == "paper-literal" || text == "paper_literal") return TranslationMode::PaperLiteral;
  throw Error(ErrorKind::UsageError, "unknown translation mode " + std::string(text));
}

bool check_inequality(const RewriteStep& step) { return step.c_after < step.c_before; }

namespace {

class Translator {
 public:
  Translator(const ActionRegistry& actions, TranslationMode mode, std::size_t budget)
      : actions_(actions), mode_(mode), budget_(budget) {}

  FormulaPtr run(const FormulaPtr& f, const Trace& prefix) {
    switch (f->op) {
      case Op::Const:
      case Op::Atom:
      case Op::Expect:
        return f;
      case Op::Not:
        return neg(run(f->lhs, prefix));
      case Op::And:
        return conj(run(f->lhs, prefix), run(f->rhs, prefix));
      case Op::Know:
        return know(f->name, run(f->lhs, prefix));
      case Op::Diamond:
        return run(rewrite_diamond(f, prefix), prefix);
      case Op::Ought:
        return run(rewrite_ought(f, prefix), prefix);
    }
    return f;
  }

  std::vector<RewriteStep> steps;

 private:
  FormulaPtr log(const char* rule, const FormulaPtr& before, FormulaPtr after) {
    if (steps.size() >= budget_) throw Error(ErrorKind::NonTermination, "step budget exhausted");
    steps.push_back({rule, before, after, complexity(*before, actions_), complexity(*after, actions_)});
    return after;
  }

  FormulaPtr rewrite_diamond(const FormulaPtr& f, const Trace& prefix) {
    const Trace& t = f->trace;
    const FormulaPtr& body = f->lhs;
    FormulaPtr pre = actions_.precondition(t);
    switch (body->op) {
      case Op::Const:
      case Op::Atom:
      case Op::Expect:
        return log("AM-atom", f, conj(pre, body));
      case Op::Not:
        return log("AM-neg", f, conj(pre, neg(diamond(t, body->lhs))));
      case Op::And:
        return log("AM-and", f, conj(diamond(t, body->lhs), diamond(t, body->rhs)));
      case Op::Know: {
        if (mode_ == TranslationMode::PaperLiteral) return log("AM-K", f, conj(pre, body));
        const ActionModel am = actions_.composed(ActionRegistry::components_of(t));
        int from = *am.find_event(t);
        FormulaPtr all;
        for (std::size_t k = 0; k < am.events.size(); ++k) {
          if (!am.related(body->name, from, static_cast<int>(k))) continue;
          FormulaPtr part = know(body->name, box(am.events[k].trace, body->lhs));
          all = all ? conj(all, part) : part;
        }
        return log("AM-K", f, all ? conj(pre, all) : pre);
      }
      case Op::Diamond:
        return log("AM-seq", f, diamond(concat(t, body->trace), body->lhs));
      case Op::Ought:
        // The inner ought is evaluated after the update, so it sees the
        // extended trace.
        return log("AM-O", f, diamond(t, run(body, concat(prefix, t))));
    }
    return f;
  }

  FormulaPtr rewrite_ought(const FormulaPtr& f, const Trace& prefix) {
    const std::string& i = f->name;
    const Trace& t = f->trace;
    const FormulaPtr& body = f->lhs;
    FormulaPtr pre = actions_.precondition(t);
    FormulaPtr e = expect(i, concat(prefix, t));
    const bool literal = mode_ == TranslationMode::PaperLiteral;
    switch (body->op) {
      case Op::Const:
      case Op::Atom:
      case Op::Expect:
        return log("R1", f, conj(conj(pre, body), e));
      case Op::And:
        return log("R2", f, conj(ought(i, t, body->lhs), ought(i, t, body->rhs)));
      case Op::Not:
        if (literal) return log("R3", f, conj(pre, neg(ought(i, t, body->lhs))));
        return log("R3-std", f, conj(conj(pre, e), neg(ought(i, t, body->lhs))));
      case Op::Know:
        if (literal && body->name == i) return log("R4", f, know(i, ought(i, t, body->lhs)));
        return log("R4-std", f, conj(diamond(t, body), e));
      case Op::Diamond:
        return log("R5", f, conj(diamond(concat(t, body->trace), body->lhs), e));
      case Op::Ought:
        return log("R6", f, conj(ought(body->name, concat(t, body->trace), body->lhs), e));
    }
    return f;
  }

  const ActionRegistry& actions_;
  TranslationMode mode_;
  std::size_t budget_;
};

}  // namespace

Translation translate(const FormulaPtr& phi, const ActionRegistry& actions, TranslationMode mode, const Trace& prefix,
                      std::size_t step_budget) {
  Translator tr(actions, mode, step_budget);
  Translation out;
  out.formula = tr.run(phi, prefix);
  out.steps = std::move(tr.steps);
  return out;
}

EquivalenceReport equivalence_oracle(const FormulaPtr& phi, const FormulaPtr& psi,
                                     const std::vector<EvalContext>& contexts, Checker& checker) {
  EquivalenceReport report;
  auto value = [&](const FormulaPtr& f, const EvalContext& c) -> std::string {
    try {
      return checker.holds(c.model, c.world, *f) ? "true" : "false";
    } catch (const Error& e) {
      return std::string("error: ") + to_string(e.kind());
    }
  };
  for (const auto& c : contexts) {
    ++report.contexts;
    std::string l = value(phi, c);
    std::string r = value(psi, c);
    if (l == r) {
      ++report.agreements;
    } else {
      std::string label = c.label.empty() ? c.model->worlds[c.world].id : c.label;
      report.disagreements.push_back({label, l, r});
    }
  }
  return report;
}

}  // namespace daml
