// cdmc :: formula language — AST, parser, printer

#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cdmc {

using PredicateSymbol = std::string;
using Variable = std::string;

// First-order formulas over unary predicates. Negation is not a node:
// ~p is always Implies(p, Bottom).
class Formula {
 public:
  enum class Kind : std::uint8_t { Atom, Bottom, And, Or, Implies, Exists, Forall };

  Formula() : node_(bottom_node()) {}

  static Formula atom(PredicateSymbol pred, Variable var) {
    return Formula(std::make_shared<const Node>(
        Node{Kind::Atom, std::move(pred), std::move(var), nullptr, nullptr}));
  }
  static Formula bottom() { return Formula(bottom_node()); }
  static Formula conj(Formula l, Formula r) { return binary(Kind::And, std::move(l), std::move(r)); }
  static Formula disj(Formula l, Formula r) { return binary(Kind::Or, std::move(l), std::move(r)); }
  static Formula implies(Formula l, Formula r) { return binary(Kind::Implies, std::move(l), std::move(r)); }
  static Formula negation(Formula f) { return implies(std::move(f), bottom()); }
  static Formula exists(Variable var, Formula body) { return quantifier(Kind::Exists, std::move(var), std::move(body)); }
  static Formula forall(Variable var, Formula body) { return quantifier(Kind::Forall, std::move(var), std::move(body)); }

  Kind kind() const { return node_->kind; }

  // Atom accessors.
  const PredicateSymbol& pred() const { return node_->name; }
  const Variable& atom_var() const { return node_->arg; }

  // Binder accessors (Exists/Forall).
  const Variable& bound_var() const { return node_->name; }
  Formula body() const { return Formula(node_->rhs); }

  // Binary accessors (And/Or/Implies).
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }

  bool is_negation() const {
    return node_->kind == Kind::Implies && node_->rhs->kind == Kind::Bottom;
  }

  friend bool operator==(const Formula& a, const Formula& b) { return equal(a.node_.get(), b.node_.get()); }
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::string name;                  // predicate (Atom) or bound variable (quantifiers)
    std::string arg;                   // argument variable (Atom)
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;   // body for quantifiers
  };
  using NodePtr = std::shared_ptr<const Node>;

  explicit Formula(NodePtr n) : node_(std::move(n)) {}

  static Formula binary(Kind k, Formula l, Formula r) {
    return Formula(std::make_shared<const Node>(Node{k, {}, {}, l.node_, r.node_}));
  }
  static Formula quantifier(Kind k, Variable var, Formula body) {
    return Formula(std::make_shared<const Node>(Node{k, std::move(var), {}, nullptr, body.node_}));
  }
  static const NodePtr& bottom_node() {
    static const NodePtr n = std::make_shared<const Node>(Node{Kind::Bottom, {}, {}, nullptr, nullptr});
    return n;
  }

  static bool equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case Kind::Bottom: return true;
      case Kind::Atom: return a->name == b->name && a->arg == b->arg;
      case Kind::Exists:
      case Kind::Forall: return a->name == b->name && equal(a->rhs.get(), b->rhs.get());
      default: return equal(a->lhs.get(), b->lhs.get()) && equal(a->rhs.get(), b->rhs.get());
    }
  }

  NodePtr node_;
};

struct ParseError : std::runtime_error {
  ParseError(int line, int column, std::vector<std::string> expected, const std::string& got)
      : std::runtime_error(describe(line, column, expected, got)),
        line(line), column(column), expected(std::move(expected)) {}

  int line;
  int column;
  std::vector<std::string> expected;

 private:
  static std::string describe(int line, int column, const std::vector<std::string>& expected,
                              const std::string& got) {
    std::ostringstream os;
    os << line << ":" << column << ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) os << (i + 1 == expected.size() ? " or " : ", ");
      os << expected[i];
    }
    os << ", got " << got;
    return os.str();
  }
};

namespace detail {

struct Token {
  enum class Type { Ident, Forall, Exists, False, Tilde, Amp, Pipe, Arrow, LParen, RParen, Dot, End };
  Type type;
  std::string text;
  int line;
  int column;

  std::string show() const { return type == Type::End ? "end of input" : "'" + text + "'"; }
};

inline bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
inline bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r')) {
      if (text_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
      ++pos_;
    }
    const int line = line_, col = col_;
    if (pos_ >= text_.size()) {
      current_ = {Token::Type::End, "", line, col};
      return;
    }
    const char c = text_[pos_];
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) { ++pos_; ++col_; }
      std::string word(text_.substr(start, pos_ - start));
      Token::Type type = word == "forall"   ? Token::Type::Forall
                         : word == "exists" ? Token::Type::Exists
                         : word == "false"  ? Token::Type::False
                                            : Token::Type::Ident;
      current_ = {type, std::move(word), line, col};
      return;
    }
    auto symbol = [&](Token::Type type, std::string text, std::size_t len) {
      pos_ += len;
      col_ += static_cast<int>(len);
      current_ = {type, std::move(text), line, col};
    };
    switch (c) {
      case '~': symbol(Token::Type::Tilde, "~", 1); return;
      case '&': symbol(Token::Type::Amp, "&", 1); return;
      case '|': symbol(Token::Type::Pipe, "|", 1); return;
      case '(': symbol(Token::Type::LParen, "(", 1); return;
      case ')': symbol(Token::Type::RParen, ")", 1); return;
      case '.': symbol(Token::Type::Dot, ".", 1); return;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') { symbol(Token::Type::Arrow, "->", 2); return; }
        break;
      default: break;
    }
    throw ParseError(line, col, {"a formula token"}, "'" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_{Token::Type::End, "", 1, 1};
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Formula run() {
    Formula f = formula();
    if (lex_.peek().type != Token::Type::End)
      fail({"'->'", "'&'", "'|'", "end of input"});
    return f;
  }

 private:
  using T = Token::Type;

  [[noreturn]] void fail(std::vector<std::string> expected) {
    const Token& t = lex_.peek();
    throw ParseError(t.line, t.column, std::move(expected), t.show());
  }

  Token expect(T type, const std::string& what) {
    if (lex_.peek().type != type) fail({what});
    return lex_.take();
  }

  bool at_quantifier() const {
    return lex_.peek().type == T::Forall || lex_.peek().type == T::Exists;
  }

  // Quantifier scope extends as far right as possible after the dot.
  Formula quantified() {
    Token kw = lex_.take();
    Token var = expect(T::Ident, "a variable name");
    expect(T::Dot, "'.'");
    Formula body = formula();
    return kw.type == T::Forall ? Formula::forall(var.text, std::move(body))
                                : Formula::exists(var.text, std::move(body));
  }

  Formula formula() {
    if (at_quantifier()) return quantified();
    return implication();
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (lex_.peek().type == T::Arrow) {
      lex_.take();
      return Formula::implies(std::move(lhs), formula());  // right-associative
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (lex_.peek().type == T::Pipe) {
      lex_.take();
      f = Formula::disj(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (lex_.peek().type == T::Amp) {
      lex_.take();
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    if (lex_.peek().type == T::Tilde) {
      lex_.take();
      return Formula::negation(unary());
    }
    if (at_quantifier()) return quantified();
    return atom();
  }

  Formula atom() {
    switch (lex_.peek().type) {
      case T::False:
        lex_.take();
        return Formula::bottom();
      case T::Ident: {
        Token pred = lex_.take();
        expect(T::LParen, "'('");
        Token var = expect(T::Ident, "a variable name");
        expect(T::RParen, "')'");
        return Formula::atom(pred.text, var.text);
      }
      case T::LParen: {
        lex_.take();
        Formula f = formula();
        expect(T::RParen, "')'");
        return f;
      }
      default:
        fail({"'false'", "a predicate atom", "'('", "'~'", "'forall'", "'exists'"});
    }
  }

  Lexer lex_;
};

// Printer precedence levels; higher binds tighter.
inline int print_level(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return 0;
    case Formula::Kind::Implies: return f.is_negation() ? 4 : 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    default: return 5;  // Atom, Bottom
  }
}

inline bool is_quantifier(const Formula& f) {
  return f.kind() == Formula::Kind::Forall || f.kind() == Formula::Kind::Exists;
}

struct Printed {
  std::string text;
  bool open_tail;  // printed form ends in a bare quantifier body that would absorb further tokens
};

// min_level: precedence the surrounding grammar slot requires.
// allow_bare_quant: slot accepts an unparenthesized quantifier (scope runs to the slot's end).
// must_close: something follows in the same scope, so an open tail must be parenthesized.
inline Printed print(const Formula& f, int min_level, bool allow_bare_quant, bool must_close) {
  const int level = print_level(f);
  const bool parens_for_level = level < min_level && !(is_quantifier(f) && allow_bare_quant);
  Printed out;
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out = {f.pred() + "(" + f.atom_var() + ")", false};
      break;
    case Formula::Kind::Bottom:
      out = {"false", false};
      break;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      Printed body = print(f.body(), 0, true, false);
      const char* kw = f.kind() == Formula::Kind::Forall ? "forall " : "exists ";
      out = {kw + f.bound_var() + ". " + body.text, true};
      break;
    }
    case Formula::Kind::And: {
      Printed l = print(f.lhs(), 3, false, true);
      Printed r = print(f.rhs(), 4, true, false);
      out = {l.text + " & " + r.text, r.open_tail};
      break;
    }
    case Formula::Kind::Or: {
      Printed l = print(f.lhs(), 2, false, true);
      Printed r = print(f.rhs(), 3, true, false);
      out = {l.text + " | " + r.text, r.open_tail};
      break;
    }
    case Formula::Kind::Implies: {
      if (f.is_negation()) {
        Printed arg = print(f.lhs(), 4, true, false);
        out = {"~" + arg.text, arg.open_tail};
      } else {
        Printed l = print(f.lhs(), 2, false, true);
        Printed r = print(f.rhs(), 0, true, false);
        out = {l.text + " -> " + r.text, r.open_tail};
      }
      break;
    }
  }
  if (parens_for_level || (must_close && out.open_tail)) {
    if (parens_for_level) out = print(f, 0, true, false);  // reprint without level pressure
    out = {"(" + out.text + ")", false};
  }
  return out;
}

}  // namespace detail

// Parses the concrete syntax (precedence ~ > & > | > ->, right-associative ->,
// quantifier scope as far right as possible). Throws ParseError.
inline Formula parse(std::string_view text) { return detail::Parser(text).run(); }

// Minimal-parenthesis rendering; parse(format(f)) == f.
inline std::string format(const Formula& f) { return detail::print(f, 0, true, false).text; }

inline void collect_free_variables(const Formula& f, std::vector<Variable>& bound,
                                   std::set<Variable>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      for (auto it = bound.rbegin(); it != bound.rend(); ++it)
        if (*it == f.atom_var()) return;
      out.insert(f.atom_var());
      return;
    }
    case Formula::Kind::Bottom:
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      bound.push_back(f.bound_var());
      collect_free_variables(f.body(), bound, out);
      bound.pop_back();
      return;
    default:
      collect_free_variables(f.lhs(), bound, out);
      collect_free_variables(f.rhs(), bound, out);
      return;
  }
}

inline std::set<Variable> free_variables(const Formula& f) {
  std::set<Variable> out;
  std::vector<Variable> bound;
  collect_free_variables(f, bound, out);
  return out;
}

inline void collect_predicate_symbols(const Formula& f, std::set<PredicateSymbol>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out.insert(f.pred());
      return;
    case Formula::Kind::Bottom:
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      collect_predicate_symbols(f.body(), out);
      return;
    default:
      collect_predicate_symbols(f.lhs(), out);
      collect_predicate_symbols(f.rhs(), out);
      return;
  }
}

inline std::set<PredicateSymbol> predicate_symbols(const Formula& f) {
  std::set<PredicateSymbol> out;
  collect_predicate_symbols(f, out);
  return out;
}

inline bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

}  // namespace cdmc
