#include <string>
#include <vector>

#include "doctest.h"
#include "qelim/parser.hpp"
#include "support/testing.hpp"

using namespace qelim;
using namespace qelim::testing;
using parser::parse;
using parser::pretty;

namespace {

const std::vector<std::string> none;
const std::vector<std::string> just_x{"x"};

}  // namespace

TEST_CASE("parse") {
  CHECK(parse("exists x. exists y. x+3 = y+1 & 8 = y+4", none) == test0());
  CHECK(parse("false", none) == falsum(0));
  CHECK(parse("forall x. x = 0 | exists y. x = y+1", none) == test1());
  CHECK(parse("x = 0 | exists y. x = y+2", just_x) == test2());
  CHECK(parse("true", none) == mk_true<sn::Theory>(0));
  CHECK(parse("x != 3", just_x) == Not(atom(eq(V(0), Z(3)), 1)));
  CHECK(parse("3 + x = x", just_x) == atom(eq(V(0, 3), V(0)), 1));
  CHECK(parse("  ( x = 0 )  ", just_x) == atom(eq(V(0), Z(0)), 1));
}

TEST_CASE("free variables follow binders") {
  // x is free at position 1, y at position 0; under one binder they shift by one
  const std::vector<std::string> ns{"y", "x"};
  CHECK(parse("exists z. z = x & y = 2", ns) ==
        Exists(And(atom(eq(V(0), V(2)), 3), atom(eq(V(1), Z(2)), 3))));
  CHECK(parser::free_names("x = 0 | exists y. x = y+2 & z = y") == std::vector<std::string>{"x", "z"});
  CHECK(parser::free_names("exists y. y = 1").empty());
}

TEST_CASE("precedence and associativity") {
  const std::vector<std::string> ns{"a", "b", "c"};
  const sn::Formula a = atom(eq(V(0), Z(0)), 3);
  const sn::Formula b = atom(eq(V(1), Z(0)), 3);
  const sn::Formula c = atom(eq(V(2), Z(0)), 3);
  CHECK(parse("a = 0 & b = 0 | c = 0", ns) == Or(And(a, b), c));
  CHECK(parse("a = 0 | b = 0 & c = 0", ns) == Or(a, And(b, c)));
  CHECK(parse("a = 0 -> b = 0 -> c = 0", ns) == Implies(a, Implies(b, c)));
  CHECK(parse("~a = 0 & b = 0", ns) == And(Not(a), b));
  CHECK(parse("(a = 0 -> b = 0) -> c = 0", ns) == Implies(Implies(a, b), c));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse("x = 0", none), parser::UnboundNameError);
  CHECK_THROWS_AS(parse("exists x. y = x", none), parser::UnboundNameError);
  try {
    parse("x = 0 & y = 1", just_x);
    FAIL("expected an error");
  } catch (const parser::UnboundNameError& e) {
    CHECK(e.name() == "y");
    CHECK(e.position() == 8);
  }
  try {
    parse("x = = 1", just_x);
    FAIL("expected an error");
  } catch (const parser::ParseError& e) {
    CHECK(e.position() == 4);
    CHECK(std::string(e.what()).find("position 4") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("", none), parser::ParseError);
  CHECK_THROWS_AS(parse("x = 1 )", just_x), parser::ParseError);
  CHECK_THROWS_AS(parse("exists . x = 1", just_x), parser::ParseError);
  CHECK_THROWS_AS(parse("x = 99999999999999999999999", just_x), parser::ParseError);
  CHECK_THROWS_AS(parse("x + y = 1", std::vector<std::string>{"x", "y"}), parser::ParseError);
}

TEST_CASE("pretty") {
  CHECK(pretty(falsum(0), none) == "false");
  CHECK(pretty(test2(), just_x) == "(x = 0) | (exists x0. x = x0+2)");
  CHECK(pretty(Not(atom(eq(V(0), Z(0)), 1)), just_x) == "~(x = 0)");
  CHECK(pretty(mk_true<sn::Theory>(0), none) == "true");
  // bound names avoid free ones
  CHECK(pretty(Exists(atom(eq(V(0), V(1)), 2)), std::vector<std::string>{"x0"}) == "exists x1. x1 = x0");
}

TEST_CASE("pretty then parse is the identity") {
  Generator gen(77);
  GenParams params;
  params.max_depth = 6;
  const std::vector<std::string> ns{"u", "v"};
  for (int i = 0; i < 1000; ++i) {
    const std::size_t arity = gen.below(3);
    const std::span<const std::string> names(ns.data(), arity);
    const sn::Formula f = gen.formula(arity, params);
    const std::string text = pretty(f, names);
    CHECK_MESSAGE(parse(text, names) == f, text);
  }
}
