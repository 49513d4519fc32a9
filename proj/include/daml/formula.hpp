#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "daml/trace.hpp"

namespace daml {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class Op {
  Const,    // true / false
  Atom,     // p
  Expect,   // e_i^{trace}
  Not,
  And,
  Know,     // K_i phi
  Diamond,  // <trace> phi, a multi-step trace denotes the composed action model
  Ought,    // O_i(trace | phi)
};

// Immutable AST node. Disjunction, implication, boxes and dual knowledge
// are built from these by the constructor helpers below.
struct Formula {
  Op op = Op::Const;
  bool value = true;  // Const
  std::string name;   // atom name, or agent for Expect / Know / Ought
  Trace trace;        // Expect / Diamond / Ought
  FormulaPtr lhs;     // operand of unary nodes, left of And
  FormulaPtr rhs;     // right of And
};

bool operator==(const Formula& a, const Formula& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

FormulaPtr top();
FormulaPtr bottom();
FormulaPtr atom(std::string name);
FormulaPtr expect(std::string agent, Trace trace);
FormulaPtr neg(FormulaPtr f);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);
FormulaPtr know(std::string agent, FormulaPtr f);
FormulaPtr possible(std::string agent, FormulaPtr f);  // dual of K
FormulaPtr diamond(Trace trace, FormulaPtr f);
FormulaPtr box(Trace trace, FormulaPtr f);
FormulaPtr ought(std::string agent, Trace trace, FormulaPtr f);

// Canonical text: binary nodes fully parenthesized, unary prefixes
// followed by a space (except `!`). Round-trips through parse().
std::string print(const Formula& f);
inline std::string print(const FormulaPtr& f) { return print(*f); }

bool contains_ought(const Formula& f);
bool contains_diamond(const Formula& f);
std::size_t depth(const Formula& f);

}  // namespace daml
