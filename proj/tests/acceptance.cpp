// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "qelim/successor.hpp"
#include "support/testing.hpp"

using namespace qelim;
using namespace qelim::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Result {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

const sn::Engine engine;

// decisions from criteria 1-5, rechecked by criterion 8
struct Recorded {
  sn::Decision decision;
  sn::Formula formula;
  sn::Env env;
};
std::vector<Recorded> recorded;

void record(const sn::Decision& d, const sn::Formula& f, const sn::Env& e) { recorded.push_back({d, f, e}); }

struct Case {
  sn::Formula formula;
  sn::Env env;
};

std::vector<Case> corpus() {
  Generator gen(20240917);
  GenParams p;
  p.max_depth = 5;
  p.max_quantifiers = 3;
  p.max_shift = 6;
  std::vector<Case> cs;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t arity = gen.below(3);
    sn::Formula f = gen.formula(arity, p);
    cs.push_back({f, gen.env(arity, 8)});
  }
  return cs;
}

Result test0_witnesses() {
  Result r;
  const sn::Decision d = engine.decide(test0(), sn::Env{});
  record(d, test0(), {});
  using K = sn::Evidence::Kind;
  if (!d.is_yes()) return r.fail("decided no"), r;
  const sn::Evidence& ev = d.evidence();
  if (ev.kind() != K::Witness || ev.value() != 2) r.fail("x witness is not 2");
  else if (ev.sub().kind() != K::Witness || ev.sub().value() != 4) r.fail("y witness is not 4");
  else if (ev.sub().sub().kind() != K::Pair) r.fail("body evidence is not a pair");
  return r;
}

Result test1_universal() {
  Result r;
  const sn::Decision d = engine.decide(test1(), sn::Env{});
  record(d, test1(), {});
  using K = sn::Evidence::Kind;
  if (!d.is_yes()) return r.fail("decided no"), r;
  const sn::Formula body = test1().body();
  for (Nat v = 0; v <= 20; ++v) {
    const sn::Evidence inst = instantiate_universal(d.evidence(), v);
    if (!sn::check_evidence(sn::Decision(inst), body, sn::Env{v})) r.fail("instance " + std::to_string(v) + " does not check");
    if (v == 0 && inst.kind() != K::Left) r.fail("instance 0 is not the left branch");
    if (v > 0 && (inst.kind() != K::Right || inst.sub().kind() != K::Witness || inst.sub().value() != v - 1))
      r.fail("instance " + std::to_string(v) + " does not witness v-1");
  }
  return r;
}

Result test2_counterexample() {
  Result r;
  const auto res = engine.forall_or_counterexample(test2(), sn::Env{});
  const auto* c = std::get_if<Counterexample<sn::Theory>>(&res);
  if (!c) return r.fail("no counterexample"), r;
  if (c->value != 1) r.fail("counterexample is " + std::to_string(c->value));
  record(sn::Decision(c->refutation), test2(), sn::Env{c->value});
  const sn::Decision whole = engine.decide(Forall(test2()), sn::Env{});
  record(whole, Forall(test2()), {});
  return r;
}

Result worked_example() {
  Result r;
  // x is Var 0, y is Var 1: x + 5 = y + 3
  const sn::Formula f = sn::eliminate_product(sn::Product(2, {pos(eq(V(0, 5), V(1, 3)))}));
  if (!is_qfree(f)) r.fail("result has quantifiers");
  for (Nat y = 0; y <= 10; ++y) {
    if (eval_qfree(f, sn::Env{y}) != (y != 0 && y != 1)) r.fail("mismatch at y = " + std::to_string(y));
  }
  return r;
}

Result oracle_equivalence(const std::vector<Case>& cs) {
  Result r;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const bool expected = sn::oracle_decide(cs[i].formula, cs[i].env);
    const sn::Formula qf = engine.lift_qe(cs[i].formula);
    if (eval_qfree(qf, cs[i].env) != expected) r.fail("formula " + std::to_string(i) + " disagrees");
    const sn::Decision d = engine.decide(cs[i].formula, cs[i].env);
    if (d.is_yes() != expected) r.fail("decide disagrees on formula " + std::to_string(i));
    record(d, cs[i].formula, cs[i].env);
  }
  return r;
}

Result quantifier_free(const std::vector<Case>& cs) {
  Result r;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!is_qfree(engine.lift_qe(cs[i].formula))) r.fail("formula " + std::to_string(i));
  }
  return r;
}

Result dnf_equivalence() {
  Result r;
  Generator gen(99991);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t arity = gen.below(4);
    const sn::Formula f = gen.qfree(arity, 5, 6);
    const sn::Formula plain = interpret_dnf(to_dnf(f));
    const sn::Formula simplified = interpret_dnf(to_dnf(f, sn::Step{}));
    for (int j = 0; j < 8; ++j) {
      const sn::Env e = gen.env(arity, 8);
      const bool v = eval_qfree(f, e);
      if (eval_qfree(plain, e) != v || eval_qfree(simplified, e) != v) r.fail("formula " + std::to_string(i));
    }
  }
  return r;
}

Result evidence_soundness() {
  Result r;
  for (std::size_t i = 0; i < recorded.size(); ++i) {
    if (!sn::check_evidence(recorded[i].decision, recorded[i].formula, recorded[i].env))
      r.fail("decision " + std::to_string(i) + " of " + std::to_string(recorded.size()));
  }
  if (recorded.size() < 1000) r.fail("only " + std::to_string(recorded.size()) + " decisions recorded");
  return r;
}

Result lem_exclusivity(const std::vector<Case>& cs) {
  Result r;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto l = engine.lem(cs[i].formula, cs[i].env);
    const bool left = std::holds_alternative<sn::Evidence>(l);
    const bool right = std::holds_alternative<sn::Refutation>(l);
    if (left == right) r.fail("formula " + std::to_string(i) + " has no single branch");
    if (left != engine.decide(cs[i].formula, cs[i].env).is_yes()) r.fail("formula " + std::to_string(i));
  }
  return r;
}

Result double_oracle() {
  Result r;
  Generator gen(5150);
  GenParams p;
  p.max_depth = 4;
  p.max_quantifiers = 2;
  p.max_shift = 4;
  for (int i = 0; i < 500; ++i) {
    const sn::Formula f = gen.formula(0, p);
    if (sn::oracle_decide(f, sn::Env{}) != naive_decide(f, sn::Env{})) r.fail("formula " + std::to_string(i));
  }
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no limit
    std::function<Result()> run;
  };
  std::vector<Case> cs;
  const std::vector<Criterion> criteria{
      {1, "test0 decides yes with witnesses x=2, y=4", 1, test0_witnesses},
      {2, "test1 decides yes; instances 0..20 check", 1, test1_universal},
      {3, "test2 counterexample is 1", 1, test2_counterexample},
      {4, "x+5 = y+3 eliminates to y!=0 & y!=1 on 0..10", 0, worked_example},
      {5, "lift_qe agrees with the oracle on 1000 formulas", 60,
       [&] {
         cs = corpus();
         return oracle_equivalence(cs);
       }},
      {6, "lift_qe output is quantifier-free", 0, [&] { return quantifier_free(cs); }},
      {7, "to_dnf preserves evaluation on 1000 formulas", 0, dnf_equivalence},
      {8, "check_evidence accepts every decision of 1-5", 0, evidence_soundness},
      {9, "lem has exactly one branch, agreeing with decide", 0, [&] { return lem_exclusivity(cs); }},
      {10, "candidate oracle agrees with naive enumeration on 500 formulas", 30, double_oracle},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.limit_s > 0 && secs >= c.limit_s) r.fail("took " + std::to_string(secs) + " s");
    if (!r.ok) ++failures;
    std::printf("[%s] criterion %d: %s (%.3f s)%s%s\n", r.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                r.ok ? "" : " - ", r.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
