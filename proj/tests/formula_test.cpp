#include "doctest.h"
#include "qelim/evidence.hpp"
#include "qelim/formula.hpp"
#include "support/testing.hpp"

using namespace qelim;
using namespace qelim::testing;
using K = sn::Formula::Kind;

TEST_CASE("mk_not unfolds to implication of false") {
  const sn::Formula f = falsum(0);
  CHECK(mk_not(f) == Implies(falsum(0), falsum(0)));

  const sn::Formula a = atom(eq(Z(1), Z(2)), 0);
  CHECK(mk_not(a) == Implies(a, falsum(0)));

  CHECK(mk_not(mk_not(f)) == Implies(Implies(falsum(0), falsum(0)), falsum(0)));
}

TEST_CASE("is_qfree") {
  const sn::Formula a = atom(eq(V(0), Z(1)), 1);
  const sn::Formula b = atom(eq(V(0), Z(2)), 1);
  CHECK(is_qfree(a));
  CHECK_FALSE(is_qfree(Exists(atom(eq(V(0), Z(1)), 1))));
  CHECK(is_qfree(Implies(a, Or(falsum(1), b))));
  CHECK_FALSE(is_qfree(And(a, Forall(atom(eq(V(0), V(1)), 2)))));
}

TEST_CASE("arity is validated at construction") {
  CHECK_THROWS_AS(atom(eq(V(2), Z(0)), 2), std::invalid_argument);
  CHECK_THROWS_AS(Or(falsum(1), falsum(2)), std::invalid_argument);
  CHECK_THROWS_AS(Exists(falsum(0)), std::invalid_argument);

  const sn::Formula body = atom(eq(V(0), V(3)), 4);
  CHECK(Exists(body).arity() == 3);
  CHECK(Forall(Exists(body)).arity() == 2);
}

TEST_CASE("eval_qfree") {
  CHECK(eval_qfree(atom(eq(Z(3), Z(3)), 0), sn::Env{}));
  CHECK(eval_qfree(atom(eq(Z(8), V(0, 4)), 1), sn::Env{4}));
  CHECK(eval_qfree(Implies(falsum(1), atom(eq(V(0), Z(5)), 1)), sn::Env{0}));
  CHECK_FALSE(eval_qfree(falsum(0), sn::Env{}));

  SUBCASE("rejects quantified input") {
    CHECK_THROWS_AS(eval_qfree(Exists(atom(eq(V(0), Z(1)), 1)), sn::Env{}), std::invalid_argument);
    // even when the quantifier sits behind a short-circuit
    const sn::Formula f = Or(mk_true<sn::Theory>(0), Exists(atom(eq(V(0), Z(1)), 1)));
    CHECK_THROWS_AS(eval_qfree(f, sn::Env{}), std::invalid_argument);
  }
  SUBCASE("rejects environment length mismatch") {
    CHECK_THROWS_AS(eval_qfree(atom(eq(V(0), Z(1)), 1), sn::Env{}), std::invalid_argument);
    CHECK_THROWS_AS(eval_qfree(falsum(0), sn::Env{1}), std::invalid_argument);
  }
}

TEST_CASE("negation flips evaluation and preserves quantifier-freeness") {
  Generator gen(11);
  for (int i = 0; i < 500; ++i) {
    const std::size_t arity = gen.below(3);
    const sn::Formula f = gen.qfree(arity, 5, 6);
    const sn::Env e = gen.env(arity, 8);
    CHECK(eval_qfree(mk_not(f), e) == !eval_qfree(f, e));
    CHECK(is_qfree(mk_not(f)) == is_qfree(f));
  }
  const sn::Formula q = Exists(atom(eq(V(0), Z(1)), 1));
  CHECK(is_qfree(mk_not(q)) == is_qfree(q));
}

TEST_CASE("check_evidence validates shape and content") {
  using E = sn::Evidence;
  using R = sn::Refutation;
  const sn::Formula t0 = test0();

  CHECK(check_evidence(sn::Decision(E::witness(2, E::witness(4, E::pair(E::atom_holds(), E::atom_holds())))), t0,
                       sn::Env{}));

  SUBCASE("no y works with x = 3") {
    // body of test0 at x = 3 fails for every y in 0..20, so any Witness(3, ...) is rejected
    const sn::Formula inner = t0.body().body();
    for (Nat y = 0; y <= 20; ++y) CHECK_FALSE(eval_qfree(inner, sn::Env{y, 3}));
    for (Nat y = 0; y <= 20; ++y) {
      CHECK_FALSE(check_evidence(
          sn::Decision(E::witness(3, E::witness(y, E::pair(E::atom_holds(), E::atom_holds())))), t0, sn::Env{}));
    }
  }

  CHECK(check_evidence(sn::Decision(R::absurd()), falsum(0), sn::Env{}));
  // shape mismatches are invalid, not errors
  CHECK_FALSE(check_evidence(sn::Decision(E::atom_holds()), falsum(0), sn::Env{}));
  CHECK_FALSE(check_evidence(sn::Decision(E::left(E::atom_holds())), t0, sn::Env{}));
  CHECK_FALSE(check_evidence(sn::Decision(R::atom_fails()), atom(eq(Z(1), Z(1)), 0), sn::Env{}));

  SUBCASE("implication evidence") {
    const sn::Formula a = atom(eq(V(0), Z(2)), 1);
    const sn::Formula f = mk_not(a);
    CHECK(check_evidence(sn::Decision(E::refuted_antecedent(R::atom_fails())), f, sn::Env{3}));
    CHECK_FALSE(check_evidence(sn::Decision(E::refuted_antecedent(R::atom_fails())), f, sn::Env{2}));
    CHECK(check_evidence(sn::Decision(R::implies_fails(E::atom_holds(), R::absurd())), f, sn::Env{2}));
  }

  SUBCASE("providers are sampled") {
    const sn::Formula refl = Forall(atom(eq(V(0), V(0)), 1));
    CHECK(check_evidence(sn::Decision(E::universal([](const Nat&) { return E::atom_holds(); })), refl, sn::Env{}));

    const sn::Formula zero = Forall(atom(eq(V(0), Z(0)), 1));
    const auto bogus = E::universal([](const Nat&) { return E::atom_holds(); });
    CHECK_FALSE(check_evidence(sn::Decision(bogus), zero, sn::Env{}));

    const auto throwing = E::universal([](const Nat&) -> E { throw InternalError("no"); });
    CHECK_FALSE(check_evidence(sn::Decision(throwing), refl, sn::Env{}));

    const sn::Formula none = Exists(atom(eq(V(0, 1), Z(0)), 1));
    CHECK(check_evidence(sn::Decision(R::no_witness([](const Nat&) { return R::atom_fails(); })), none, sn::Env{}));
  }
}
