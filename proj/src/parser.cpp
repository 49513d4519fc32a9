#include <algorithm>
#include <cctype>

#include "daml/error.hpp"
#include "daml/parser.hpp"

namespace daml {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Parser {
 public:
  Parser(std::string_view text, const ParseEnv& env) : text_(text), env_(env) {}

  FormulaPtr parse_all() {
    auto f = implication();
    skip_ws();
    if (pos_ != text_.size()) fail("end of input");
    return f;
  }

  Trace trace_all() {
    auto t = trace();
    skip_ws();
    if (pos_ != text_.size()) fail("end of trace");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    throw SyntaxError(pos_, "expected " + expected + ", found " + found);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(std::string_view token) {
    skip_ws();
    return text_.substr(pos_, token.size()) == token;
  }

  bool accept(std::string_view token) {
    if (!peek(token)) return false;
    pos_ += token.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("'" + std::string(token) + "'");
  }

  std::string identifier(const char* what) {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail(what);
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // A modality keyword is the letter immediately followed by '{'.
  bool keyword(char letter) {
    skip_ws();
    if (pos_ + 1 < text_.size() && text_[pos_] == letter && text_[pos_ + 1] == '{') {
      pos_ += 2;
      return true;
    }
    return false;
  }

  std::string agent() {
    std::size_t at = pos_;
    std::string a = identifier("agent name");
    if (env_.agents && std::find(env_.agents->begin(), env_.agents->end(), a) == env_.agents->end())
      throw Error(ErrorKind::UnknownAgent, a + " (at " + std::to_string(at) + ")");
    return a;
  }

  Trace trace() {
    Trace t;
    do {
      std::string dp = identifier("decision point");
      expect(".");
      std::string ev = identifier("event name");
      t.push_back({dp, ev});
    } while (accept(";"));
    if (env_.actions) env_.actions->check_trace(t);
    return t;
  }

  void check_owner(const std::string& agent, const Trace& t) {
    if (!env_.actions) return;
    const auto& owner = env_.actions->owner_of(t);
    if (owner != agent)
      throw Error(ErrorKind::OwnerMismatch, agent + " does not own " + trace_to_string(t) + " (owner " + owner + ")");
  }

  FormulaPtr implication() {
    auto lhs = disjunction();
    if (accept("->")) return implies(lhs, implication());
    return lhs;
  }

  FormulaPtr disjunction() {
    auto lhs = conjunction();
    while (accept("|")) lhs = disj(lhs, conjunction());
    return lhs;
  }

  FormulaPtr conjunction() {
    auto lhs = unary();
    while (accept("&")) lhs = conj(lhs, unary());
    return lhs;
  }

  FormulaPtr unary() {
    if (accept("!")) return neg(unary());
    if (keyword('K')) {
      auto a = agent();
      expect("}");
      return know(a, unary());
    }
    if (keyword('O')) {
      if (env_.forbid_ought) throw Error(ErrorKind::OughtInPrecondition, "ought operator at " + std::to_string(pos_));
      auto a = agent();
      expect("}");
      expect("(");
      auto t = trace();
      check_owner(a, t);
      expect("|");
      auto body = implication();
      expect(")");
      return ought(a, t, body);
    }
    if (keyword('e')) {
      auto a = agent();
      expect(";");
      auto t = trace();
      check_owner(a, t);
      expect("}");
      return daml::expect(a, t);
    }
    if (accept("<")) {
      auto t = trace();
      expect(">");
      return diamond(t, unary());
    }
    if (accept("[")) {
      auto t = trace();
      expect("]");
      return box(t, unary());
    }
    if (accept("(")) {
      auto f = implication();
      expect(")");
      return f;
    }
    std::string id = identifier("formula");
    if (id == "true") return top();
    if (id == "false") return bottom();
    return atom(id);
  }

  std::string_view text_;
  const ParseEnv& env_;
  std::size_t pos_ = 0;
};

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorKind::Overflow, "complexity overflow");
  return out;
}

}  // namespace

FormulaPtr parse(std::string_view text, const ParseEnv& env) { return Parser(text, env).parse_all(); }

Trace parse_trace(std::string_view text) { return Parser(text, ParseEnv{}).trace_all(); }

std::uint64_t complexity(const Formula& f, const ActionRegistry& actions) {
  switch (f.op) {
    case Op::Const:
    case Op::Atom:
    case Op::Expect:
      return 1;
    case Op::Not:
    case Op::Know:
      return checked_add(1, complexity(*f.lhs, actions));
    case Op::And:
      return checked_add(1, std::max(complexity(*f.lhs, actions), complexity(*f.rhs, actions)));
    case Op::Diamond:
      return mul(checked_add(4, complexity(*actions.precondition(f.trace), actions)), complexity(*f.lhs, actions));
    case Op::Ought:
      return mul(checked_add(5, complexity(*actions.precondition(f.trace), actions)), complexity(*f.lhs, actions));
  }
  return 1;
}

}  // namespace daml
