// qelim :: Formula, evaluation of quantifier-free formulas

#ifndef QELIM_FORMULA_HPP_
#define QELIM_FORMULA_HPP_

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qelim {

// A theory of atoms with decidable semantics. Atoms refer to variables by
// de Bruijn index; `min_arity` is one more than the largest index an atom uses.
template <class T>
concept AtomTheory = requires(const typename T::Atom& a, std::span<const typename T::Value> env) {
  typename T::Atom;
  typename T::Value;
  { T::eval(a, env) } -> std::same_as<bool>;
  { T::min_arity(a) } -> std::convertible_to<std::size_t>;
  requires std::equality_comparable<typename T::Atom>;
  requires std::copyable<typename T::Value>;
};

// Thrown when an engine-internal invariant fails at runtime.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Values for free variables; index 0 is the innermost (most recently bound) variable.
template <class Value>
using Environment = std::vector<Value>;

template <class Value>
Environment<Value> extend(const Value& v, std::span<const Value> env) {
  Environment<Value> out;
  out.reserve(env.size() + 1);
  out.push_back(v);
  out.insert(out.end(), env.begin(), env.end());
  return out;
}

// Immutable proposition tree over theory atoms, with de Bruijn binders.
// Every node knows its arity; constructors reject ill-formed combinations.
template <AtomTheory T>
class Formula {
public:
  using Atom = typename T::Atom;
  using Value = typename T::Value;

  enum class Kind : unsigned char { Atom, False, Or, And, Implies, Exists, Forall };

  static Formula make_atom(Atom a, std::size_t arity) {
    if (T::min_arity(a) > arity) throw std::invalid_argument("atom uses a variable index outside the formula arity");
    return Formula(std::make_shared<const Node>(Node{Kind::Atom, arity, std::move(a), nullptr, nullptr}));
  }
  static Formula make_false(std::size_t arity) {
    return Formula(std::make_shared<const Node>(Node{Kind::False, arity, std::nullopt, nullptr, nullptr}));
  }
  static Formula make_or(const Formula& l, const Formula& r) { return binary(Kind::Or, l, r); }
  static Formula make_and(const Formula& l, const Formula& r) { return binary(Kind::And, l, r); }
  static Formula make_implies(const Formula& l, const Formula& r) { return binary(Kind::Implies, l, r); }
  static Formula make_exists(const Formula& body) { return binder(Kind::Exists, body); }
  static Formula make_forall(const Formula& body) { return binder(Kind::Forall, body); }

  Kind kind() const { return node_->kind; }
  std::size_t arity() const { return node_->arity; }
  bool is(Kind k) const { return node_->kind == k; }

  const Atom& atom() const {
    if (!node_->atom) throw std::logic_error("Formula::atom() on non-atom");
    return *node_->atom;
  }
  // Left operand of a connective, or the body of a quantifier.
  Formula lhs() const { return child(node_->lhs); }
  Formula rhs() const { return child(node_->rhs); }
  Formula body() const { return child(node_->lhs); }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    if (x.kind != y.kind || x.arity != y.arity) return false;
    switch (x.kind) {
      case Kind::Atom: return *x.atom == *y.atom;
      case Kind::False: return true;
      case Kind::Exists:
      case Kind::Forall: return a.body() == b.body();
      default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
  }

private:
  struct Node {
    Kind kind;
    std::size_t arity;
    std::optional<Atom> atom;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  explicit Formula(std::shared_ptr<const Node> n): node_(std::move(n)) {}

  Formula child(const std::shared_ptr<const Node>& n) const {
    if (!n) throw std::logic_error("Formula: no such child");
    return Formula(n);
  }

  static Formula binary(Kind k, const Formula& l, const Formula& r) {
    if (l.arity() != r.arity()) throw std::invalid_argument("connective operands have different arities");
    return Formula(std::make_shared<const Node>(Node{k, l.arity(), std::nullopt, l.node_, r.node_}));
  }
  static Formula binder(Kind k, const Formula& body) {
    if (body.arity() == 0) throw std::invalid_argument("quantifier body must have arity at least 1");
    return Formula(std::make_shared<const Node>(Node{k, body.arity() - 1, std::nullopt, body.node_, nullptr}));
  }

  std::shared_ptr<const Node> node_;
};

// ~φ is φ ⇒ ⊥
template <AtomTheory T>
Formula<T> mk_not(const Formula<T>& f) {
  return Formula<T>::make_implies(f, Formula<T>::make_false(f.arity()));
}

template <AtomTheory T>
Formula<T> mk_true(std::size_t arity) {
  return mk_not(Formula<T>::make_false(arity));
}

template <AtomTheory T>
bool is_qfree(const Formula<T>& f) {
  using K = typename Formula<T>::Kind;
  switch (f.kind()) {
    case K::Atom:
    case K::False: return true;
    case K::Exists:
    case K::Forall: return false;
    default: return is_qfree(f.lhs()) && is_qfree(f.rhs());
  }
}

// Number of quantifiers on the longest binder chain.
template <AtomTheory T>
std::size_t quantifier_depth(const Formula<T>& f) {
  using K = typename Formula<T>::Kind;
  switch (f.kind()) {
    case K::Atom:
    case K::False: return 0;
    case K::Exists:
    case K::Forall: return 1 + quantifier_depth(f.body());
    default: return std::max(quantifier_depth(f.lhs()), quantifier_depth(f.rhs()));
  }
}

template <AtomTheory T, class F>
void for_each_atom(const Formula<T>& f, F&& visit, std::size_t depth = 0) {
  using K = typename Formula<T>::Kind;
  switch (f.kind()) {
    case K::Atom: visit(f.atom(), depth); return;
    case K::False: return;
    case K::Exists:
    case K::Forall: for_each_atom(f.body(), visit, depth + 1); return;
    default:
      for_each_atom(f.lhs(), visit, depth);
      for_each_atom(f.rhs(), visit, depth);
  }
}

namespace detail {

template <AtomTheory T>
bool eval_qfree_unchecked(const Formula<T>& f, std::span<const typename T::Value> env) {
  using K = typename Formula<T>::Kind;
  switch (f.kind()) {
    case K::Atom: return T::eval(f.atom(), env);
    case K::False: return false;
    case K::Or: return eval_qfree_unchecked(f.lhs(), env) || eval_qfree_unchecked(f.rhs(), env);
    case K::And: return eval_qfree_unchecked(f.lhs(), env) && eval_qfree_unchecked(f.rhs(), env);
    case K::Implies: return !eval_qfree_unchecked(f.lhs(), env) || eval_qfree_unchecked(f.rhs(), env);
    case K::Exists:
    case K::Forall: break;
  }
  throw std::invalid_argument("eval_qfree: formula contains a quantifier");
}

}  // namespace detail

inline void require_env_size(std::size_t arity, std::size_t env_size, const char* what) {
  if (arity != env_size)
    throw std::invalid_argument(std::string(what) + ": environment has " + std::to_string(env_size) +
                                " values, formula arity is " + std::to_string(arity));
}

template <AtomTheory T>
bool eval_qfree(const Formula<T>& f, std::span<const typename T::Value> env) {
  require_env_size(f.arity(), env.size(), "eval_qfree");
  if (!is_qfree(f)) throw std::invalid_argument("eval_qfree: formula contains a quantifier");
  return detail::eval_qfree_unchecked(f, env);
}

}  // namespace qelim

#endif  // QELIM_FORMULA_HPP_
