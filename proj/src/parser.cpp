#include "qelim/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>

namespace qelim::parser {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
      position_(position),
      detail_(message) {}

UnboundNameError::UnboundNameError(std::size_t position, std::string name)
    : ParseError(position, "unbound variable '" + name + "'"), name_(std::move(name)) {}

namespace {

using sn::Nat;

enum class Tok { Name, Nat, LParen, RParen, Dot, Eq, Neq, Plus, Not, And, Or, Arrow, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
  Nat number = 0;
};

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

bool is_keyword(std::string_view s) { return s == "forall" || s == "exists" || s == "false" || s == "true"; }

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_name_start(c)) {
      while (i < src.size() && is_name_char(src[i])) ++i;
      out.push_back({Tok::Name, start, std::string(src.substr(start, i - start))});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      Nat value = 0;
      auto [ptr, ec] = std::from_chars(src.data() + start, src.data() + i, value);
      if (ec != std::errc{}) throw ParseError(start, "numeral out of range");
      out.push_back({Tok::Nat, start, std::string(src.substr(start, i - start)), value});
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "!=") {
      out.push_back({Tok::Neq, start, "!="});
      i += 2;
      continue;
    }
    if (two == "->") {
      out.push_back({Tok::Arrow, start, "->"});
      i += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '.': k = Tok::Dot; break;
      case '=': k = Tok::Eq; break;
      case '+': k = Tok::Plus; break;
      case '~': k = Tok::Not; break;
      case '&': k = Tok::And; break;
      case '|': k = Tok::Or; break;
      default: throw ParseError(start, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, start, std::string(1, c)});
    ++i;
  }
  out.push_back({Tok::End, src.size(), "end of input"});
  return out;
}

// Named syntax tree, before de Bruijn conversion.
std::string describe(const Token& t) { return t.kind == Tok::End ? t.text : "'" + t.text + "'"; }

struct STerm {
  std::optional<std::string> name;
  Nat shift = 0;
  std::size_t pos = 0;
};

struct Expr {
  enum class Kind { Atom, False, True, Not, Or, And, Implies, Exists, Forall };
  Kind kind;
  std::size_t pos = 0;
  STerm lhs, rhs;
  bool negated = false;  // atom written with !=
  std::string binder;
  std::unique_ptr<Expr> l, r;
};

using ExprPtr = std::unique_ptr<Expr>;

ExprPtr make(Expr::Kind k, std::size_t pos, ExprPtr l = nullptr, ExprPtr r = nullptr) {
  auto e = std::make_unique<Expr>();
  e->kind = k;
  e->pos = pos;
  e->l = std::move(l);
  e->r = std::move(r);
  return e;
}

class Parser {
public:
  explicit Parser(std::string_view src): toks_(tokenize(src)) {}

  ExprPtr parse_all() {
    ExprPtr e = formula();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  bool at_keyword(std::string_view kw) const { return peek().kind == Tok::Name && peek().text == kw; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++i_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().pos, msg); }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }

  bool at_quantifier() const { return at_keyword("forall") || at_keyword("exists"); }

  ExprPtr formula() {
    if (at_quantifier()) return quantifier();
    ExprPtr lhs = disjunction();
    const std::size_t pos = peek().pos;
    if (accept(Tok::Arrow)) return make(Expr::Kind::Implies, pos, std::move(lhs), formula());
    return lhs;
  }

  ExprPtr quantifier() {
    const Token& kw = next();
    const auto kind = kw.text == "forall" ? Expr::Kind::Forall : Expr::Kind::Exists;
    const std::size_t pos = kw.pos;
    const Token& name = expect(Tok::Name, "a variable name");
    if (is_keyword(name.text)) throw ParseError(name.pos, "'" + name.text + "' is a keyword, not a variable name");
    std::string binder = name.text;
    expect(Tok::Dot, "'.'");
    ExprPtr e = make(kind, pos, formula());
    e->binder = std::move(binder);
    return e;
  }

  ExprPtr disjunction() {
    ExprPtr l = conjunction();
    while (peek().kind == Tok::Or) {
      const std::size_t pos = next().pos;
      l = make(Expr::Kind::Or, pos, std::move(l), conjunction());
    }
    return l;
  }

  ExprPtr conjunction() {
    ExprPtr l = unary();
    while (peek().kind == Tok::And) {
      const std::size_t pos = next().pos;
      l = make(Expr::Kind::And, pos, std::move(l), unary());
    }
    return l;
  }

  ExprPtr unary() {
    const std::size_t pos = peek().pos;
    if (accept(Tok::Not)) return make(Expr::Kind::Not, pos, unary());
    if (at_quantifier()) return quantifier();
    if (at_keyword("false")) {
      next();
      return make(Expr::Kind::False, pos);
    }
    if (at_keyword("true")) {
      next();
      return make(Expr::Kind::True, pos);
    }
    if (accept(Tok::LParen)) {
      ExprPtr e = formula();
      expect(Tok::RParen, "')'");
      return e;
    }
    return atom();
  }

  ExprPtr atom() {
    const std::size_t pos = peek().pos;
    STerm lhs = term();
    bool negated = false;
    if (accept(Tok::Neq)) {
      negated = true;
    } else {
      expect(Tok::Eq, "'=' or '!='");
    }
    STerm rhs = term();
    ExprPtr e = make(Expr::Kind::Atom, pos);
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    e->negated = negated;
    return e;
  }

  STerm term() {
    const Token& t = peek();
    if (t.kind == Tok::Name) {
      if (is_keyword(t.text)) fail("expected a term, found keyword '" + t.text + "'");
      next();
      STerm out{t.text, 0, t.pos};
      if (accept(Tok::Plus)) out.shift = expect(Tok::Nat, "a numeral").number;
      return out;
    }
    if (t.kind == Tok::Nat) {
      next();
      if (accept(Tok::Plus)) {
        const Token& n = expect(Tok::Name, "a variable name");
        if (is_keyword(n.text)) throw ParseError(n.pos, "expected a variable name, found keyword '" + n.text + "'");
        return STerm{n.text, t.number, n.pos};
      }
      return STerm{std::nullopt, t.number, t.pos};
    }
    fail("expected a term, found " + describe(t));
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// Binder names, innermost last.
using Scope = std::vector<std::string>;

std::optional<std::size_t> bound_index(const Scope& scope, const std::string& name) {
  for (std::size_t k = 0; k < scope.size(); ++k) {
    if (scope[scope.size() - 1 - k] == name) return k;
  }
  return std::nullopt;
}

void collect_free(const Expr& e, Scope& scope, std::vector<std::string>& out) {
  auto note = [&](const STerm& t) {
    if (t.name && !bound_index(scope, *t.name) && std::find(out.begin(), out.end(), *t.name) == out.end())
      out.push_back(*t.name);
  };
  switch (e.kind) {
    case Expr::Kind::Atom:
      note(e.lhs);
      note(e.rhs);
      return;
    case Expr::Kind::False:
    case Expr::Kind::True: return;
    case Expr::Kind::Exists:
    case Expr::Kind::Forall:
      scope.push_back(e.binder);
      collect_free(*e.l, scope, out);
      scope.pop_back();
      return;
    default:
      if (e.l) collect_free(*e.l, scope, out);
      if (e.r) collect_free(*e.r, scope, out);
  }
}

class Compiler {
public:
  explicit Compiler(std::span<const std::string> free_vars): free_(free_vars) {
    for (std::size_t i = 0; i < free_.size(); ++i) {
      if (std::find(free_.begin(), free_.begin() + i, free_[i]) != free_.begin() + i)
        throw std::invalid_argument("duplicate free variable name '" + free_[i] + "'");
    }
  }

  sn::Formula compile(const Expr& e) {
    using F = sn::Formula;
    const std::size_t arity = scope_.size() + free_.size();
    switch (e.kind) {
      case Expr::Kind::Atom: {
        F a = F::make_atom(sn::Atom{term(e.lhs), term(e.rhs)}, arity);
        return e.negated ? mk_not(a) : a;
      }
      case Expr::Kind::False: return F::make_false(arity);
      case Expr::Kind::True: return mk_true<sn::Theory>(arity);
      case Expr::Kind::Not: return mk_not(compile(*e.l));
      case Expr::Kind::Or: return F::make_or(compile(*e.l), compile(*e.r));
      case Expr::Kind::And: return F::make_and(compile(*e.l), compile(*e.r));
      case Expr::Kind::Implies: return F::make_implies(compile(*e.l), compile(*e.r));
      case Expr::Kind::Exists:
      case Expr::Kind::Forall: {
        scope_.push_back(e.binder);
        F body = compile(*e.l);
        scope_.pop_back();
        return e.kind == Expr::Kind::Exists ? F::make_exists(body) : F::make_forall(body);
      }
    }
    throw std::logic_error("unknown syntax node");
  }

private:
  sn::Term term(const STerm& t) const {
    if (!t.name) return sn::Term::zero(t.shift);
    if (auto k = bound_index(scope_, *t.name)) return sn::Term::variable(*k, t.shift);
    auto it = std::find(free_.begin(), free_.end(), *t.name);
    if (it == free_.end()) throw UnboundNameError(t.pos, *t.name);
    return sn::Term::variable(scope_.size() + static_cast<std::size_t>(it - free_.begin()), t.shift);
  }

  std::span<const std::string> free_;
  Scope scope_;
};

class Printer {
public:
  explicit Printer(std::span<const std::string> free_names): free_(free_names) {}

  std::string render(const sn::Formula& f) {
    using K = sn::Formula::Kind;
    switch (f.kind()) {
      case K::Atom: return term(f.atom().lhs) + " = " + term(f.atom().rhs);
      case K::False: return "false";
      case K::Or: return operand(f.lhs()) + " | " + operand(f.rhs());
      case K::And: return operand(f.lhs()) + " & " + operand(f.rhs());
      case K::Implies:
        if (is_true(f)) return "true";
        if (f.rhs().is(K::False)) return "~" + operand(f.lhs());
        return operand(f.lhs()) + " -> " + operand(f.rhs());
      case K::Exists:
      case K::Forall: {
        std::string name = fresh(scope_.size());
        std::string head = (f.is(K::Exists) ? "exists " : "forall ") + name + ". ";
        scope_.push_back(std::move(name));
        std::string body = render(f.body());
        scope_.pop_back();
        return head + body;
      }
    }
    throw std::logic_error("unknown formula kind");
  }

private:
  static bool is_true(const sn::Formula& f) {
    using K = sn::Formula::Kind;
    return f.is(K::Implies) && f.lhs().is(K::False) && f.rhs().is(K::False);
  }

  std::string operand(const sn::Formula& f) {
    if (f.is(sn::Formula::Kind::False) || is_true(f)) return render(f);
    return "(" + render(f) + ")";
  }

  // Name for the binder at depth d (0 = outermost).
  std::string fresh(std::size_t depth) const {
    std::size_t seen = 0;
    for (std::size_t k = 0;; ++k) {
      std::string candidate = "x" + std::to_string(k);
      if (std::find(free_.begin(), free_.end(), candidate) != free_.end()) continue;
      if (seen++ == depth) return candidate;
    }
  }

  std::string term(const sn::Term& t) const {
    if (t.is_zero()) return std::to_string(t.shift);
    const std::size_t i = *t.var;
    if (i >= scope_.size() + free_.size()) throw std::invalid_argument("pretty: no name for variable " + std::to_string(i));
    const std::string& name = i < scope_.size() ? scope_[scope_.size() - 1 - i] : free_[i - scope_.size()];
    return t.shift == 0 ? name : name + "+" + std::to_string(t.shift);
  }

  std::span<const std::string> free_;
  Scope scope_;
};

}  // namespace

std::vector<std::string> free_names(std::string_view text) {
  ExprPtr e = Parser(text).parse_all();
  Scope scope;
  std::vector<std::string> out;
  collect_free(*e, scope, out);
  return out;
}

sn::Formula parse(std::string_view text, std::span<const std::string> free_vars) {
  ExprPtr e = Parser(text).parse_all();
  return Compiler(free_vars).compile(*e);
}

std::string pretty(const sn::Formula& f, std::span<const std::string> free_names) {
  if (free_names.size() != f.arity())
    throw std::invalid_argument("pretty: " + std::to_string(free_names.size()) + " names for a formula of arity " +
                                std::to_string(f.arity()));
  return Printer(free_names).render(f);
}

}  // namespace qelim::parser
