#include "daml/formula.hpp"

#include <algorithm>

namespace daml {

namespace {

FormulaPtr node(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

void print_to(const Formula& f, std::string& out) {
  switch (f.op) {
    case Op::Const:
      out += f.value ? "true" : "false";
      return;
    case Op::Atom:
      out += f.name;
      return;
    case Op::Expect:
      out += "e{" + f.name + "; " + trace_to_string(f.trace) + "}";
      return;
    case Op::Not: {
      // Render the derived connectives the parser builds.
      const Formula& g = *f.lhs;
      if (g.op == Op::And && g.rhs->op == Op::Not) {
        bool is_or = g.lhs->op == Op::Not;
        out += '(';
        print_to(is_or ? *g.lhs->lhs : *g.lhs, out);
        out += is_or ? " | " : " -> ";
        print_to(*g.rhs->lhs, out);
        out += ')';
        return;
      }
      out += '!';
      print_to(g, out);
      return;
    }
    case Op::And:
      out += '(';
      print_to(*f.lhs, out);
      out += " & ";
      print_to(*f.rhs, out);
      out += ')';
      return;
    case Op::Know:
      out += "K{" + f.name + "} ";
      print_to(*f.lhs, out);
      return;
    case Op::Diamond:
      out += "<" + trace_to_string(f.trace) + "> ";
      print_to(*f.lhs, out);
      return;
    case Op::Ought:
      out += "O{" + f.name + "}(" + trace_to_string(f.trace) + " | ";
      print_to(*f.lhs, out);
      out += ')';
      return;
  }
}

}  // namespace

bool operator==(const Formula& a, const Formula& b) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case Op::Const: return a.value == b.value;
    case Op::Atom: return a.name == b.name;
    case Op::Expect: return a.name == b.name && a.trace == b.trace;
    case Op::Not: return *a.lhs == *b.lhs;
    case Op::And: return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
    case Op::Know: return a.name == b.name && *a.lhs == *b.lhs;
    case Op::Diamond: return a.trace == b.trace && *a.lhs == *b.lhs;
    case Op::Ought: return a.name == b.name && a.trace == b.trace && *a.lhs == *b.lhs;
  }
  return false;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) { return a == b || (a && b && *a == *b); }

FormulaPtr top() {
  static const FormulaPtr t = node({Op::Const, true, {}, {}, {}, {}});
  return t;
}

FormulaPtr bottom() {
  static const FormulaPtr f = node({Op::Const, false, {}, {}, {}, {}});
  return f;
}

FormulaPtr atom(std::string name) { return node({Op::Atom, true, std::move(name), {}, {}, {}}); }

FormulaPtr expect(std::string agent, Trace trace) {
  return node({Op::Expect, true, std::move(agent), std::move(trace), {}, {}});
}

FormulaPtr neg(FormulaPtr f) { return node({Op::Not, true, {}, {}, std::move(f), {}}); }

FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return node({Op::And, true, {}, {}, std::move(a), std::move(b)}); }

FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return neg(conj(neg(std::move(a)), neg(std::move(b)))); }

FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return neg(conj(std::move(a), neg(std::move(b)))); }

FormulaPtr iff(FormulaPtr a, FormulaPtr b) { return conj(implies(a, b), implies(b, a)); }

FormulaPtr know(std::string agent, FormulaPtr f) {
  return node({Op::Know, true, std::move(agent), {}, std::move(f), {}});
}

FormulaPtr possible(std::string agent, FormulaPtr f) { return neg(know(std::move(agent), neg(std::move(f)))); }

FormulaPtr diamond(Trace trace, FormulaPtr f) {
  return node({Op::Diamond, true, {}, std::move(trace), std::move(f), {}});
}

FormulaPtr box(Trace trace, FormulaPtr f) { return neg(diamond(std::move(trace), neg(std::move(f)))); }

FormulaPtr ought(std::string agent, Trace trace, FormulaPtr f) {
  return node({Op::Ought, true, std::move(agent), std::move(trace), std::move(f), {}});
}

std::string print(const Formula& f) {
  std::string out;
  print_to(f, out);
  return out;
}

bool contains_ought(const Formula& f) {
  if (f.op == Op::Ought) return true;
  return (f.lhs && contains_ought(*f.lhs)) || (f.rhs && contains_ought(*f.rhs));
}

bool contains_diamond(const Formula& f) {
  if (f.op == Op::Diamond) return true;
  return (f.lhs && contains_diamond(*f.lhs)) || (f.rhs && contains_diamond(*f.rhs));
}

std::size_t depth(const Formula& f) {
  std::size_t d = 0;
  if (f.lhs) d = std::max(d, depth(*f.lhs));
  if (f.rhs) d = std::max(d, depth(*f.rhs));
  return f.lhs ? d + 1 : 0;
}

}  // namespace daml
