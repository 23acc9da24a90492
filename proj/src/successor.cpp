#include "qelim/successor.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace qelim::sn {

namespace {

using Lits = std::vector<Literal>;

bool mentions(const Atom& a, Index i) { return a.lhs.is_var(i) || a.rhs.is_var(i); }

std::optional<Lits> simplify(const Lits& in) {
  Step step;
  return ProductBuilder<Theory, Step>(step).simplify(in);
}

// x + k = s + m  =>  x = s + m - k, when that is a natural number.
std::optional<Nat> solve(Nat k, Nat base_value, Nat m) {
  if (base_value + m < k) return std::nullopt;
  return base_value + m - k;
}

// Value of a term of the arity n+1 context, other than Var 0, under the
// outer environment of length n.
Nat outer_value(const Term& t, std::span<const Nat> env) {
  if (t.is_zero()) return t.shift;
  if (*t.var == 0) throw InternalError("outer_value: term refers to the eliminated variable");
  const Index j = *t.var - 1;
  if (j >= env.size()) throw std::out_of_range("variable index outside the environment");
  return env[j] + t.shift;
}

Term lower(const Term& t) {
  if (t.is_zero()) return t;
  if (*t.var == 0) throw InternalError("strengthening a term that still mentions Var 0");
  return Term::variable(*t.var - 1, t.shift);
}

Lits substitute_constant(const Lits& ls, Nat c) {
  Lits out;
  out.reserve(ls.size());
  auto sub = [c](Term t) { return t.is_var(0) ? Term::zero(t.shift + c) : t; };
  for (const Literal& l : ls) out.push_back(Literal{l.positive, Atom{sub(l.atom.lhs), sub(l.atom.rhs)}});
  return out;
}

std::optional<std::size_t> find_pivot(const Lits& ls) {
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (ls[i].positive && mentions(ls[i].atom, 0)) return i;
  }
  return std::nullopt;
}

Nat saturating_add(Nat a, Nat b) {
  return a > std::numeric_limits<Nat>::max() - b ? std::numeric_limits<Nat>::max() : a + b;
}

}  // namespace

Nat term_value(const Term& t, std::span<const Nat> env) {
  if (t.is_zero()) return t.shift;
  if (*t.var >= env.size()) throw std::out_of_range("variable index " + std::to_string(*t.var) + " outside the environment");
  return env[*t.var] + t.shift;
}

bool Theory::eval(const Atom& a, std::span<const Nat> env) { return term_value(a.lhs, env) == term_value(a.rhs, env); }

std::size_t Theory::min_arity(const Atom& a) {
  std::size_t n = 0;
  if (a.lhs.var) n = std::max(n, *a.lhs.var + 1);
  if (a.rhs.var) n = std::max(n, *a.rhs.var + 1);
  return n;
}

Atom canonicalize(const Atom& in) {
  Atom a = in;
  const Nat m = std::min(a.lhs.shift, a.rhs.shift);
  a.lhs.shift -= m;
  a.rhs.shift -= m;
  const bool swap = (a.lhs.is_zero() && !a.rhs.is_zero()) ||
                    (!a.lhs.is_zero() && !a.rhs.is_zero() && *a.rhs.var < *a.lhs.var);
  if (swap) std::swap(a.lhs, a.rhs);
  return a;
}

LiteralTruth literal_truth(const Literal& l) {
  if (!l.atom.lhs.same_base(l.atom.rhs)) return LiteralTruth::Unknown;
  const bool equal = l.atom.lhs.shift == l.atom.rhs.shift;
  return equal == l.positive ? LiteralTruth::True : LiteralTruth::False;
}

PivotSubstitution subst_pivot(const Product& p, const Literal& pivot) {
  if (!pivot.positive) throw std::invalid_argument("subst_pivot: pivot must be a positive literal");
  Atom pa = pivot.atom;
  if (pa.rhs.is_var(0)) std::swap(pa.lhs, pa.rhs);
  if (!pa.lhs.is_var(0)) throw std::invalid_argument("subst_pivot: pivot does not mention Var 0");
  if (pa.rhs.is_var(0)) throw std::invalid_argument("subst_pivot: pivot relates Var 0 to itself");

  // x + a = t + b
  const Nat a = pa.lhs.shift;
  const Nat b = pa.rhs.shift;
  const std::optional<Index> t = pa.rhs.var;
  const Nat lift = b >= a ? b - a : 0;  // x = t + lift
  const Nat d = a > b ? a - b : 0;      // x = t - d, needs t >= d

  Lits rest = p.literals();
  auto it = std::find(rest.begin(), rest.end(), pivot);
  if (it == rest.end()) {
    const Atom canon = canonicalize(pivot.atom);
    it = std::find_if(rest.begin(), rest.end(),
                      [&](const Literal& l) { return l.positive && canonicalize(l.atom) == canon; });
  }
  if (it != rest.end()) rest.erase(it);

  for (Literal& l : rest) {
    Term& L = l.atom.lhs;
    Term& R = l.atom.rhs;
    const bool in_l = L.is_var(0);
    const bool in_r = R.is_var(0);
    if (in_l && in_r) {
      L = Term{t, L.shift + lift};
      R = Term{t, R.shift + lift};
    } else if (in_l) {
      L = Term{t, L.shift + lift};
      R.shift += d;
    } else if (in_r) {
      R = Term{t, R.shift + lift};
      L.shift += d;
    }
  }

  std::vector<Literal> side;
  for (Nat i = 0; i < d; ++i) side.push_back(Literal::neg(Atom{Term{t, 0}, Term::zero(i)}));
  return PivotSubstitution{Product(p.arity(), std::move(rest)), std::move(side)};
}

Formula eliminate_product(const Product& p) {
  if (p.arity() == 0) throw std::invalid_argument("eliminate_product: product has no variable to eliminate");
  const std::size_t n = p.arity() - 1;

  std::optional<Lits> lits = simplify(p.literals());
  if (!lits) return Formula::make_false(n);

  if (std::optional<std::size_t> idx = find_pivot(*lits)) {
    // canonical, so Var 0 is on the left
    const Atom pa = (*lits)[*idx].atom;
    if (pa.rhs.is_zero()) {
      if (pa.lhs.shift > pa.rhs.shift) return Formula::make_false(n);
      lits = simplify(substitute_constant(*lits, pa.rhs.shift - pa.lhs.shift));
    } else {
      PivotSubstitution sub = subst_pivot(Product(p.arity(), *lits), (*lits)[*idx]);
      Lits combined = sub.remaining.literals();
      combined.insert(combined.end(), sub.side_conditions.begin(), sub.side_conditions.end());
      lits = simplify(combined);
    }
    if (!lits) return Formula::make_false(n);
  } else {
    // Each inequation in Var 0 excludes at most one value; some value avoids them all.
    std::erase_if(*lits, [](const Literal& l) { return mentions(l.atom, 0); });
  }

  Lits strengthened;
  strengthened.reserve(lits->size());
  for (const Literal& l : *lits) {
    strengthened.push_back(Literal{l.positive, Atom{lower(l.atom.lhs), lower(l.atom.rhs)}});
  }
  return interpret_product(Product(n, std::move(strengthened)));
}

Nat prod_witness(const Product& p, std::span<const Nat> env) {
  if (p.arity() == 0) throw std::invalid_argument("prod_witness: product has no variable to eliminate");
  require_env_size(p.arity() - 1, env.size(), "prod_witness");

  std::optional<Lits> lits = simplify(p.literals());
  if (!lits) throw InternalError("prod_witness: product is unsatisfiable");

  Nat w = 0;
  if (std::optional<std::size_t> idx = find_pivot(*lits)) {
    const Atom& pa = (*lits)[*idx].atom;
    const Nat base = outer_value(Term{pa.rhs.var, 0}, env);
    std::optional<Nat> x = solve(pa.lhs.shift, base, pa.rhs.shift);
    if (!x) throw InternalError("prod_witness: pivot has no natural solution under the environment");
    w = *x;
  } else {
    std::set<Nat> excluded;
    for (const Literal& l : *lits) {
      if (l.positive || !l.atom.lhs.is_var(0) || l.atom.rhs.is_var(0)) continue;
      const Nat base = outer_value(Term{l.atom.rhs.var, 0}, env);
      if (std::optional<Nat> x = solve(l.atom.lhs.shift, base, l.atom.rhs.shift)) excluded.insert(*x);
    }
    while (excluded.contains(w)) ++w;
  }

  if (!eval_qfree(interpret_product(p), extend<Nat>(w, env)))
    throw InternalError("prod_witness: product is unsatisfiable under the environment");
  return w;
}

std::vector<Nat> candidates(const Formula& body, std::span<const Nat> env) {
  require_env_size(body.arity(), env.size() + 1, "candidates");

  std::set<Nat> found;
  Nat top = 0;
  Nat max_shift = 0;
  for (Nat v : env) top = std::max(top, v);

  for_each_atom<Theory>(body, [&](const Atom& a, std::size_t depth) {
    max_shift = std::max({max_shift, a.lhs.shift, a.rhs.shift});
    // Under `depth` inner binders the quantified variable is index `depth`
    // and outer variable j is index depth + 1 + j.
    const Index self = depth;
    Term x = a.lhs, other = a.rhs;
    if (other.is_var(self)) std::swap(x, other);
    if (!x.is_var(self) || other.is_var(self)) return;
    Nat base = 0;
    if (!other.is_zero()) {
      if (*other.var < self) return;  // bound inside the body
      base = env[*other.var - self - 1];
    }
    if (std::optional<Nat> sol = solve(x.shift, base, other.shift)) found.insert(*sol);
  });
  for (Nat v : found) top = std::max(top, v);
  top = std::max(top, max_shift);

  const std::size_t depth = quantifier_depth(body);
  if (depth > 0) {
    // Eliminating one inner quantifier can at most double the offsets by which
    // atoms relate two bases, so after `depth` of them the variable is only
    // ever compared with points within `reach` of 0 or of an outer value.
    Nat reach = max_shift;
    for (std::size_t i = 0; i < depth; ++i) reach = saturating_add(reach, reach);
    std::vector<Nat> bases{0};
    bases.insert(bases.end(), env.begin(), env.end());
    for (Nat b : bases) {
      const Nat lo = b > reach ? b - reach : 0;
      const Nat hi = saturating_add(b, reach);
      for (Nat v = lo; v <= hi; ++v) found.insert(v);
      top = std::max(top, hi);
    }
  }

  found.insert(saturating_add(top, 1));
  return {found.begin(), found.end()};
}

bool oracle_decide(const Formula& f, std::span<const Nat> env) {
  require_env_size(f.arity(), env.size(), "oracle_decide");
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom: return Theory::eval(f.atom(), env);
    case K::False: return false;
    case K::Or: return oracle_decide(f.lhs(), env) || oracle_decide(f.rhs(), env);
    case K::And: return oracle_decide(f.lhs(), env) && oracle_decide(f.rhs(), env);
    case K::Implies: return !oracle_decide(f.lhs(), env) || oracle_decide(f.rhs(), env);
    case K::Exists:
      for (Nat v : candidates(f.body(), env)) {
        if (oracle_decide(f.body(), extend<Nat>(v, env))) return true;
      }
      return false;
    case K::Forall:
      for (Nat v : candidates(f.body(), env)) {
        if (!oracle_decide(f.body(), extend<Nat>(v, env))) return false;
      }
      return true;
  }
  throw InternalError("oracle_decide: unknown formula kind");
}

bool check_evidence(const Decision& d, const Formula& f, std::span<const Nat> env) {
  return qelim::check_evidence<Theory>(d, f, env, [](const Formula& body, std::span<const Nat> outer) {
    return candidates(body, outer);
  });
}

}  // namespace qelim::sn
