// qelim :: engine: full quantifier elimination and evidence-producing
// decisions, lifted from a theory's single-step elimination on products.

#ifndef QELIM_ENGINE_HPP_
#define QELIM_ENGINE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <variant>

#include "qelim/dnf.hpp"
#include "qelim/evidence.hpp"
#include "qelim/formula.hpp"

namespace qelim {

// What a theory supplies to get quantifier elimination:
//  - eliminate_product(p): a quantifier-free formula of arity n equivalent to
//    "exists x0. p" for a product p of arity n+1;
//  - prod_witness(p, e): some x0 satisfying p under e, whenever
//    eliminate_product(p) holds under e;
//  - literal_truth / canonicalize: product simplification hooks.
template <class S>
concept ProdQEStep =
    AtomTheory<typename S::Theory> && LiteralSimplifier<S, typename S::Theory> &&
    requires(const S& s, const Product<typename S::Theory>& p, std::span<const typename S::Theory::Value> env) {
      { s.eliminate_product(p) } -> std::same_as<Formula<typename S::Theory>>;
      { s.prod_witness(p, env) } -> std::same_as<typename S::Theory::Value>;
    };

template <AtomTheory T>
struct Counterexample {
  typename T::Value value;
  Refutation<T> refutation;  // of the body at `value`
};

template <AtomTheory T>
struct Witnessed {
  typename T::Value value;
  Evidence<T> evidence;  // for the body at `value`
};

// Left: universal evidence for the body. Right: a value where it fails.
template <AtomTheory T>
using ForallOrCounterexample = std::variant<Evidence<T>, Counterexample<T>>;

// Left: a witness for the body. Right: per-value refutation provider.
template <AtomTheory T>
using ExistsOrRefutation = std::variant<Witnessed<T>, Refutation<T>>;

template <AtomTheory T>
using Lem = std::variant<Evidence<T>, Refutation<T>>;

template <ProdQEStep S>
class Engine {
public:
  using Theory = typename S::Theory;
  using Value = typename Theory::Value;
  using F = Formula<Theory>;
  using K = typename F::Kind;
  using Env = std::span<const Value>;

  explicit Engine(S step = S{}, std::size_t max_products = kNoDnfLimit)
      : step_(std::move(step)), max_products_(max_products) {}

  const S& step() const { return step_; }
  std::size_t max_products() const { return max_products_; }

  Dnf<Theory> to_dnf(const F& f) const { return qelim::to_dnf(f, step_, max_products_); }

  // exists x0. (p1 | ... | pk)  ==  (exists x0. p1) | ... | (exists x0. pk)
  F eliminate_dnf(const Dnf<Theory>& d) const {
    if (d.arity() == 0) throw std::invalid_argument("eliminate_dnf: DNF has no variable to eliminate");
    const auto& ps = d.products();
    if (ps.empty()) return F::make_false(d.arity() - 1);
    F acc = step_.eliminate_product(ps.back());
    for (auto it = ps.rbegin() + 1; it != ps.rend(); ++it) acc = F::make_or(step_.eliminate_product(*it), acc);
    return acc;
  }

  // Equivalent quantifier-free formula, eliminating from the inside out.
  // forall x. φ is handled as ~exists x. ~φ', which is sound here because φ'
  // (the already-eliminated body) is decidable.
  F lift_qe(const F& f) const {
    switch (f.kind()) {
      case K::Atom:
      case K::False: return f;
      case K::Or: return F::make_or(lift_qe(f.lhs()), lift_qe(f.rhs()));
      case K::And: return F::make_and(lift_qe(f.lhs()), lift_qe(f.rhs()));
      case K::Implies: return F::make_implies(lift_qe(f.lhs()), lift_qe(f.rhs()));
      case K::Exists: return eliminate_dnf(to_dnf(lift_qe(f.body())));
      case K::Forall: return mk_not(eliminate_dnf(to_dnf(mk_not(lift_qe(f.body())))));
    }
    throw InternalError("lift_qe: unknown formula kind");
  }

  Decision<Theory> decide(const F& f, Env env) const {
    require_env_size(f.arity(), env.size(), "decide");
    const bool truth = eval_qfree(lift_qe(f), env);
    Decision<Theory> d = build(f, env);
    if (d.is_yes() != truth) throw InternalError("decide: evidence disagrees with the eliminated formula");
    return d;
  }

  Lem<Theory> lem(const F& f, Env env) const {
    Decision<Theory> d = decide(f, env);
    if (d.is_yes()) return d.evidence();
    return d.refutation();
  }

  ForallOrCounterexample<Theory> forall_or_counterexample(const F& body, Env env) const {
    require_env_size(body.arity(), env.size() + 1, "forall_or_counterexample");
    if (std::optional<Value> v = first_witness(mk_not(lift_qe(body)), env)) {
      return Counterexample<Theory>{*v, body_refutation(body, *v, env)};
    }
    return universal_evidence(body, env);
  }

  ExistsOrRefutation<Theory> exists_or_refutation(const F& body, Env env) const {
    require_env_size(body.arity(), env.size() + 1, "exists_or_refutation");
    if (std::optional<Value> v = first_witness(lift_qe(body), env)) {
      return Witnessed<Theory>{*v, body_evidence(body, *v, env)};
    }
    return no_witness(body, env);
  }

private:
  // Witness from the first product of qf's DNF whose elimination holds under env.
  // qf is quantifier-free with arity env.size() + 1.
  std::optional<Value> first_witness(const F& qf, Env env) const {
    const Dnf<Theory> d = to_dnf(qf);
    for (const Product<Theory>& p : d.products()) {
      if (eval_qfree(step_.eliminate_product(p), env)) return step_.prod_witness(p, env);
    }
    return std::nullopt;
  }

  Evidence<Theory> body_evidence(const F& body, const Value& v, Env env) const {
    Environment<Value> ext = extend(v, env);
    Decision<Theory> d = build(body, ext);
    if (!d.is_yes()) throw InternalError("witness does not satisfy the quantifier body");
    return d.evidence();
  }

  Refutation<Theory> body_refutation(const F& body, const Value& v, Env env) const {
    Environment<Value> ext = extend(v, env);
    Decision<Theory> d = build(body, ext);
    if (d.is_yes()) throw InternalError("counterexample satisfies the quantifier body");
    return d.refutation();
  }

  // Providers capture copies of everything they use, so they stay valid and
  // can be called concurrently.
  Evidence<Theory> universal_evidence(const F& body, Env env) const {
    return Evidence<Theory>::universal(
        [self = *this, body, outer = Environment<Value>(env.begin(), env.end())](const Value& v) {
          return self.body_evidence(body, v, outer);
        });
  }

  Refutation<Theory> no_witness(const F& body, Env env) const {
    return Refutation<Theory>::no_witness(
        [self = *this, body, outer = Environment<Value>(env.begin(), env.end())](const Value& v) {
          return self.body_refutation(body, v, outer);
        });
  }

  Decision<Theory> build(const F& f, Env env) const {
    using E = Evidence<Theory>;
    using R = Refutation<Theory>;
    using D = Decision<Theory>;
    switch (f.kind()) {
      case K::Atom: return Theory::eval(f.atom(), env) ? D(E::atom_holds()) : D(R::atom_fails());
      case K::False: return D(R::absurd());
      case K::Or: {
        D l = build(f.lhs(), env);
        if (l.is_yes()) return D(E::left(l.evidence()));
        D r = build(f.rhs(), env);
        if (r.is_yes()) return D(E::right(r.evidence()));
        return D(R::both_fail(l.refutation(), r.refutation()));
      }
      case K::And: {
        D l = build(f.lhs(), env);
        if (!l.is_yes()) return D(R::left_fails(l.refutation()));
        D r = build(f.rhs(), env);
        if (!r.is_yes()) return D(R::right_fails(r.refutation()));
        return D(E::pair(l.evidence(), r.evidence()));
      }
      case K::Implies: {
        D l = build(f.lhs(), env);
        if (!l.is_yes()) return D(E::refuted_antecedent(l.refutation()));
        D r = build(f.rhs(), env);
        if (r.is_yes()) return D(E::consequent(r.evidence()));
        return D(R::implies_fails(l.evidence(), r.refutation()));
      }
      case K::Exists: {
        ExistsOrRefutation<Theory> res = exists_or_refutation(f.body(), env);
        if (auto* w = std::get_if<Witnessed<Theory>>(&res)) return D(E::witness(w->value, w->evidence));
        return D(std::get<R>(res));
      }
      case K::Forall: {
        ForallOrCounterexample<Theory> res = forall_or_counterexample(f.body(), env);
        if (auto* c = std::get_if<Counterexample<Theory>>(&res)) return D(R::counterexample(c->value, c->refutation));
        return D(std::get<E>(res));
      }
    }
    throw InternalError("decide: unknown formula kind");
  }

  S step_;
  std::size_t max_products_;
};

// Evidence for the body of a true universal at `v`.
template <AtomTheory T>
Evidence<T> instantiate_universal(const Evidence<T>& ev, const typename T::Value& v) {
  return ev.instantiate(v);
}

}  // namespace qelim

#endif  // QELIM_ENGINE_HPP_
