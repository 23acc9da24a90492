// qelim :: Evidence, Refutation, Decision, check_evidence

#ifndef QELIM_EVIDENCE_HPP_
#define QELIM_EVIDENCE_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "qelim/formula.hpp"

namespace qelim {

template <AtomTheory T>
class Refutation;

// Constructive justification that a formula holds under an environment.
// The shape follows the formula: a Witness for each existential, a Pair for
// each conjunction, and so on. Universal evidence is a provider that yields
// body evidence for any requested value; it is never materialized.
template <AtomTheory T>
class Evidence {
public:
  using Value = typename T::Value;
  using Provider = std::function<Evidence(const Value&)>;

  enum class Kind : unsigned char {
    AtomHolds,
    Left,               // Or, left disjunct holds
    Right,              // Or, right disjunct holds
    Pair,               // And
    RefutedAntecedent,  // Implies, antecedent is false
    Consequent,         // Implies, consequent is true
    Witness,            // Exists
    Universal           // Forall
  };

  static Evidence atom_holds() { return Evidence(Kind::AtomHolds); }
  static Evidence left(Evidence sub) { return Evidence(Kind::Left, {std::move(sub)}); }
  static Evidence right(Evidence sub) { return Evidence(Kind::Right, {std::move(sub)}); }
  static Evidence pair(Evidence l, Evidence r) { return Evidence(Kind::Pair, {std::move(l), std::move(r)}); }
  static Evidence refuted_antecedent(Refutation<T> r);
  static Evidence consequent(Evidence sub) { return Evidence(Kind::Consequent, {std::move(sub)}); }
  static Evidence witness(Value v, Evidence sub);
  static Evidence universal(Provider p);

  Kind kind() const { return node_->kind; }

  // Sub-evidence of Left, Right, Consequent, Witness; first component of Pair.
  const Evidence& sub() const { return at(0); }
  const Evidence& first() const { return at(0); }
  const Evidence& second() const { return at(1); }
  const Refutation<T>& refutation() const;
  const Value& value() const;

  // Evidence for the body of a universal at `v`.
  Evidence instantiate(const Value& v) const;

private:
  struct Node;
  explicit Evidence(Kind k, std::vector<Evidence> subs = {});
  explicit Evidence(std::shared_ptr<const Node> n): node_(std::move(n)) {}
  const Evidence& at(std::size_t i) const;

  std::shared_ptr<const Node> node_;
};

// Constructive justification that a formula fails under an environment.
template <AtomTheory T>
class Refutation {
public:
  using Value = typename T::Value;
  using Provider = std::function<Refutation(const Value&)>;

  enum class Kind : unsigned char {
    AtomFails,
    Absurd,          // False
    BothFail,        // Or
    LeftFails,       // And
    RightFails,      // And
    Counterexample,  // Forall: a value where the body fails
    NoWitness,       // Exists: per-value refutation provider
    ImpliesFails     // Implies: antecedent holds, consequent fails
  };

  static Refutation atom_fails() { return Refutation(Kind::AtomFails); }
  static Refutation absurd() { return Refutation(Kind::Absurd); }
  static Refutation both_fail(Refutation l, Refutation r) {
    return Refutation(Kind::BothFail, {std::move(l), std::move(r)});
  }
  static Refutation left_fails(Refutation sub) { return Refutation(Kind::LeftFails, {std::move(sub)}); }
  static Refutation right_fails(Refutation sub) { return Refutation(Kind::RightFails, {std::move(sub)}); }
  static Refutation counterexample(Value v, Refutation sub);
  static Refutation no_witness(Provider p);
  static Refutation implies_fails(Evidence<T> antecedent, Refutation consequent);

  Kind kind() const { return node_->kind; }

  const Refutation& sub() const { return at(0); }
  const Refutation& first() const { return at(0); }
  const Refutation& second() const { return at(1); }
  // ImpliesFails: evidence for the antecedent; refutation of the consequent is sub().
  const Evidence<T>& antecedent() const;
  const Value& value() const;

  // Refutation of the body of an existential at `v`.
  Refutation instantiate(const Value& v) const;

private:
  struct Node;
  explicit Refutation(Kind k, std::vector<Refutation> subs = {});
  explicit Refutation(std::shared_ptr<const Node> n): node_(std::move(n)) {}
  const Refutation& at(std::size_t i) const;

  std::shared_ptr<const Node> node_;
};

template <AtomTheory T>
struct Evidence<T>::Node {
  Kind kind;
  std::vector<Evidence> subs;
  std::vector<Refutation<T>> refutations;
  std::optional<Value> value;
  Provider provider;
};

template <AtomTheory T>
struct Refutation<T>::Node {
  Kind kind;
  std::vector<Refutation> subs;
  std::vector<Evidence<T>> evidence;
  std::optional<Value> value;
  Provider provider;
};

template <AtomTheory T>
Evidence<T>::Evidence(Kind k, std::vector<Evidence> subs)
    : node_(std::make_shared<const Node>(Node{k, std::move(subs), {}, std::nullopt, {}})) {}

template <AtomTheory T>
Evidence<T> Evidence<T>::refuted_antecedent(Refutation<T> r) {
  return Evidence(std::make_shared<const Node>(Node{Kind::RefutedAntecedent, {}, {std::move(r)}, std::nullopt, {}}));
}

template <AtomTheory T>
Evidence<T> Evidence<T>::witness(Value v, Evidence sub) {
  return Evidence(std::make_shared<const Node>(Node{Kind::Witness, {std::move(sub)}, {}, std::move(v), {}}));
}

template <AtomTheory T>
Evidence<T> Evidence<T>::universal(Provider p) {
  if (!p) throw std::invalid_argument("universal evidence needs a provider");
  return Evidence(std::make_shared<const Node>(Node{Kind::Universal, {}, {}, std::nullopt, std::move(p)}));
}

template <AtomTheory T>
const Evidence<T>& Evidence<T>::at(std::size_t i) const {
  if (i >= node_->subs.size()) throw std::logic_error("Evidence: no such component");
  return node_->subs[i];
}

template <AtomTheory T>
const Refutation<T>& Evidence<T>::refutation() const {
  if (node_->refutations.empty()) throw std::logic_error("Evidence: no refutation component");
  return node_->refutations.front();
}

template <AtomTheory T>
const typename Evidence<T>::Value& Evidence<T>::value() const {
  if (!node_->value) throw std::logic_error("Evidence: not a witness");
  return *node_->value;
}

template <AtomTheory T>
Evidence<T> Evidence<T>::instantiate(const Value& v) const {
  if (kind() != Kind::Universal) throw std::logic_error("Evidence: not universal");
  return node_->provider(v);
}

template <AtomTheory T>
Refutation<T>::Refutation(Kind k, std::vector<Refutation> subs)
    : node_(std::make_shared<const Node>(Node{k, std::move(subs), {}, std::nullopt, {}})) {}

template <AtomTheory T>
Refutation<T> Refutation<T>::counterexample(Value v, Refutation sub) {
  return Refutation(std::make_shared<const Node>(Node{Kind::Counterexample, {std::move(sub)}, {}, std::move(v), {}}));
}

template <AtomTheory T>
Refutation<T> Refutation<T>::no_witness(Provider p) {
  if (!p) throw std::invalid_argument("existential refutation needs a provider");
  return Refutation(std::make_shared<const Node>(Node{Kind::NoWitness, {}, {}, std::nullopt, std::move(p)}));
}

template <AtomTheory T>
Refutation<T> Refutation<T>::implies_fails(Evidence<T> antecedent, Refutation consequent) {
  return Refutation(std::make_shared<const Node>(
      Node{Kind::ImpliesFails, {std::move(consequent)}, {std::move(antecedent)}, std::nullopt, {}}));
}

template <AtomTheory T>
const Refutation<T>& Refutation<T>::at(std::size_t i) const {
  if (i >= node_->subs.size()) throw std::logic_error("Refutation: no such component");
  return node_->subs[i];
}

template <AtomTheory T>
const Evidence<T>& Refutation<T>::antecedent() const {
  if (node_->evidence.empty()) throw std::logic_error("Refutation: no antecedent evidence");
  return node_->evidence.front();
}

template <AtomTheory T>
const typename Refutation<T>::Value& Refutation<T>::value() const {
  if (!node_->value) throw std::logic_error("Refutation: not a counterexample");
  return *node_->value;
}

template <AtomTheory T>
Refutation<T> Refutation<T>::instantiate(const Value& v) const {
  if (kind() != Kind::NoWitness) throw std::logic_error("Refutation: not an existential refutation");
  return node_->provider(v);
}

// Outcome of deciding a formula: evidence if it holds, refutation otherwise.
template <AtomTheory T>
class Decision {
public:
  explicit Decision(Evidence<T> e): outcome_(std::move(e)) {}
  explicit Decision(Refutation<T> r): outcome_(std::move(r)) {}

  bool is_yes() const { return std::holds_alternative<Evidence<T>>(outcome_); }
  const Evidence<T>& evidence() const { return std::get<Evidence<T>>(outcome_); }
  const Refutation<T>& refutation() const { return std::get<Refutation<T>>(outcome_); }

private:
  std::variant<Evidence<T>, Refutation<T>> outcome_;
};

// Values at which deferred providers are spot-checked, given the quantifier
// body and the environment outside the quantifier.
template <AtomTheory T>
using SampleFn = std::function<std::vector<typename T::Value>(const Formula<T>&, std::span<const typename T::Value>)>;

template <AtomTheory T>
std::vector<typename T::Value> default_samples(const Formula<T>&, std::span<const typename T::Value>) {
  using Value = typename T::Value;
  if constexpr (std::is_constructible_v<Value, int>) {
    return {Value(0), Value(1)};
  } else {
    return {};
  }
}

namespace detail {

template <AtomTheory T>
class EvidenceChecker {
public:
  using Value = typename T::Value;
  using K = typename Formula<T>::Kind;
  using EK = typename Evidence<T>::Kind;
  using RK = typename Refutation<T>::Kind;

  explicit EvidenceChecker(SampleFn<T> samples): samples_(std::move(samples)) {}

  bool holds(const Evidence<T>& ev, const Formula<T>& f, std::span<const Value> env) const {
    switch (f.kind()) {
      case K::Atom: return ev.kind() == EK::AtomHolds && T::eval(f.atom(), env);
      case K::False: return false;
      case K::Or:
        if (ev.kind() == EK::Left) return holds(ev.sub(), f.lhs(), env);
        if (ev.kind() == EK::Right) return holds(ev.sub(), f.rhs(), env);
        return false;
      case K::And:
        return ev.kind() == EK::Pair && holds(ev.first(), f.lhs(), env) && holds(ev.second(), f.rhs(), env);
      case K::Implies:
        if (ev.kind() == EK::RefutedAntecedent) return fails(ev.refutation(), f.lhs(), env);
        if (ev.kind() == EK::Consequent) return holds(ev.sub(), f.rhs(), env);
        return false;
      case K::Exists:
        if (ev.kind() != EK::Witness) return false;
        return holds(ev.sub(), f.body(), extend(ev.value(), env));
      case K::Forall:
        if (ev.kind() != EK::Universal) return false;
        for (const Value& v : sample_values(f.body(), env)) {
          std::optional<Evidence<T>> inst = guarded([&] { return ev.instantiate(v); });
          if (!inst || !holds(*inst, f.body(), extend(v, env))) return false;
        }
        return true;
    }
    return false;
  }

  bool fails(const Refutation<T>& ref, const Formula<T>& f, std::span<const Value> env) const {
    switch (f.kind()) {
      case K::Atom: return ref.kind() == RK::AtomFails && !T::eval(f.atom(), env);
      case K::False: return ref.kind() == RK::Absurd;
      case K::Or:
        return ref.kind() == RK::BothFail && fails(ref.first(), f.lhs(), env) && fails(ref.second(), f.rhs(), env);
      case K::And:
        if (ref.kind() == RK::LeftFails) return fails(ref.sub(), f.lhs(), env);
        if (ref.kind() == RK::RightFails) return fails(ref.sub(), f.rhs(), env);
        return false;
      case K::Implies:
        return ref.kind() == RK::ImpliesFails && holds(ref.antecedent(), f.lhs(), env) &&
               fails(ref.sub(), f.rhs(), env);
      case K::Exists:
        if (ref.kind() != RK::NoWitness) return false;
        for (const Value& v : sample_values(f.body(), env)) {
          std::optional<Refutation<T>> inst = guarded([&] { return ref.instantiate(v); });
          if (!inst || !fails(*inst, f.body(), extend(v, env))) return false;
        }
        return true;
      case K::Forall:
        if (ref.kind() != RK::Counterexample) return false;
        return fails(ref.sub(), f.body(), extend(ref.value(), env));
    }
    return false;
  }

private:
  // A provider that throws has failed to produce evidence.
  template <class F>
  static auto guarded(F&& produce) -> std::optional<decltype(produce())> {
    try {
      return produce();
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  std::vector<Value> sample_values(const Formula<T>& body, std::span<const Value> env) const {
    std::vector<Value> vs = default_samples<T>(body, env);
    if (samples_) {
      for (Value& v : samples_(body, env)) vs.push_back(std::move(v));
    }
    return vs;
  }

  SampleFn<T> samples_;
};

}  // namespace detail

// Structural validation of a decision against a formula. Deferred providers
// are queried at 0, 1 and whatever `samples` adds. A shape mismatch, or a
// provider that throws, yields false.
template <AtomTheory T>
bool check_evidence(const Decision<T>& d, const Formula<T>& f, std::span<const typename T::Value> env,
                    SampleFn<T> samples = {}) {
  require_env_size(f.arity(), env.size(), "check_evidence");
  detail::EvidenceChecker<T> checker(std::move(samples));
  return d.is_yes() ? checker.holds(d.evidence(), f, env) : checker.fails(d.refutation(), f, env);
}

template <AtomTheory T>
bool check_evidence(const Evidence<T>& ev, const Formula<T>& f, std::span<const typename T::Value> env,
                    SampleFn<T> samples = {}) {
  return check_evidence(Decision<T>(ev), f, env, std::move(samples));
}

template <AtomTheory T>
bool check_refutation(const Refutation<T>& ref, const Formula<T>& f, std::span<const typename T::Value> env,
                      SampleFn<T> samples = {}) {
  return check_evidence(Decision<T>(ref), f, env, std::move(samples));
}

}  // namespace qelim

#endif  // QELIM_EVIDENCE_HPP_
