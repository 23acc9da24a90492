// qelim :: theory of successor on the natural numbers
//
// Atoms are equations S^a(u) = S^b(v), where u and v are each a variable
// (de Bruijn index) or zero. Variables can't be added together, so every
// atom fixes at most one value for any variable it mentions.

#ifndef QELIM_SUCCESSOR_HPP_
#define QELIM_SUCCESSOR_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qelim/dnf.hpp"
#include "qelim/engine.hpp"
#include "qelim/evidence.hpp"
#include "qelim/formula.hpp"

namespace qelim::sn {

using Nat = std::uint64_t;
using Index = std::size_t;

// S^shift applied to a variable or to zero.
struct Term {
  std::optional<Index> var;  // nullopt: zero
  Nat shift = 0;

  static Term zero(Nat shift = 0) { return Term{std::nullopt, shift}; }
  static Term variable(Index i, Nat shift = 0) { return Term{i, shift}; }

  bool is_zero() const { return !var.has_value(); }
  bool is_var(Index i) const { return var == i; }
  bool same_base(const Term& o) const { return var == o.var; }

  friend auto operator<=>(const Term&, const Term&) = default;
};

struct Atom {
  Term lhs;
  Term rhs;

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

struct Theory {
  using Atom = sn::Atom;
  using Value = Nat;

  static bool eval(const Atom& a, std::span<const Nat> env);
  static std::size_t min_arity(const Atom& a);
};

using Formula = qelim::Formula<Theory>;
using Literal = qelim::Literal<Theory>;
using Product = qelim::Product<Theory>;
using Dnf = qelim::Dnf<Theory>;
using Evidence = qelim::Evidence<Theory>;
using Refutation = qelim::Refutation<Theory>;
using Decision = qelim::Decision<Theory>;
using Env = std::vector<Nat>;

Nat term_value(const Term& t, std::span<const Nat> env);

// min shift is zero; a lone variable goes left; of two variables the smaller
// index goes left.
Atom canonicalize(const Atom& a);

// Same-base atoms (x = x, 0 = 0 up to shifts) are decided by their shifts.
LiteralTruth literal_truth(const Literal& l);

struct PivotSubstitution {
  Product remaining;                   // Var 0 removed, arity unchanged
  std::vector<Literal> side_conditions;  // t != 0, ..., t != d-1
};

// Substitutes the solution of `pivot` (a positive equation between Var 0 and
// another term t) for Var 0 throughout `p`, dropping the pivot itself.
// Throws std::invalid_argument if the pivot doesn't relate Var 0 to another base.
PivotSubstitution subst_pivot(const Product& p, const Literal& pivot);

// Quantifier-free formula of arity n equivalent to "exists x0. p" (p of arity n+1).
Formula eliminate_product(const Product& p);

// A value for Var 0 making p true under env; requires eliminate_product(p) to
// hold under env, otherwise throws InternalError.
Nat prod_witness(const Product& p, std::span<const Nat> env);

// Single-step eliminator plugged into the generic engine.
struct Step {
  using Theory = sn::Theory;

  Formula eliminate_product(const Product& p) const { return sn::eliminate_product(p); }
  Nat prod_witness(const Product& p, std::span<const Nat> env) const { return sn::prod_witness(p, env); }
  LiteralTruth literal_truth(const Literal& l) const { return sn::literal_truth(l); }
  Atom canonicalize(const Atom& a) const { return sn::canonicalize(a); }
};

using Engine = qelim::Engine<Step>;

// Values of the variable bound around `body` (under outer environment env)
// that the body can tell apart, plus one value standing for all the others.
// Sorted, without duplicates.
std::vector<Nat> candidates(const Formula& body, std::span<const Nat> env);

// Brute-force decision by enumerating each quantifier over its candidates.
// Independent of the elimination procedure.
bool oracle_decide(const Formula& f, std::span<const Nat> env);

// check_evidence with providers sampled at 0, 1 and every candidate value.
bool check_evidence(const Decision& d, const Formula& f, std::span<const Nat> env);

}  // namespace qelim::sn

#endif  // QELIM_SUCCESSOR_HPP_
