#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "daml/action_model.hpp"
#include "daml/checker.hpp"
#include "daml/formula.hpp"

namespace daml {

enum class TranslationMode {
  Standard,      // textbook action-model reduction, corrected negation and K rules
  PaperLiteral,  // rules as originally stated, including the update-free K clause
};

const char* to_string(TranslationMode mode);
TranslationMode translation_mode_from_string(std::string_view text);  // "standard" | "paper-literal"

struct RewriteStep {
  std::string rule;  // R1..R6, R3-std, R4-std, AM-atom, AM-neg, AM-and, AM-K, AM-seq, AM-O
  FormulaPtr before;
  FormulaPtr after;
  std::uint64_t c_before = 0;
  std::uint64_t c_after = 0;

  // O-rules must strictly decrease c; AML steps are logged but not certified.
  bool is_ought_rule() const { return !rule.empty() && rule[0] == 'R'; }
};

struct Translation {
  FormulaPtr formula;
  std::vector<RewriteStep> steps;
};

// Rewrites phi into the ought-free, diamond-free fragment, outermost redex
// first. `prefix` is the trace of the worlds phi will be evaluated at; it is
// folded into emitted expectation atoms. Throws Error(NonTermination) if the
// step budget is exhausted.
Translation translate(const FormulaPtr& phi, const ActionRegistry& actions,
                      TranslationMode mode = TranslationMode::Standard, const Trace& prefix = {},
                      std::size_t step_budget = 200000);

// c_after < c_before.
bool check_inequality(const RewriteStep& step);

struct EvalContext {
  ModelPtr model;
  int world = 0;
  std::string label;
  // For agent submodel contexts: the agent and the source world of M_i^v.
  std::string sub_agent;
  std::string sub_root;
};

struct Disagreement {
  std::string context;
  std::string lhs;  // "true", "false" or an error
  std::string rhs;
};

struct EquivalenceReport {
  std::size_t contexts = 0;
  std::size_t agreements = 0;
  std::vector<Disagreement> disagreements;
  bool ok() const { return disagreements.empty(); }
};

// Evaluates both formulas at every context; errors are recorded as values,
// so an error on one side only counts as a disagreement.
EquivalenceReport equivalence_oracle(const FormulaPtr& phi, const FormulaPtr& psi,
                                     const std::vector<EvalContext>& contexts, Checker& checker);

}  // namespace daml
