#include <gtest/gtest.h>

#include "oracle.hpp"
#include "tlsf/emit.hpp"
#include "tlsf/ltl.hpp"
#include "tlsf/parser.hpp"

using namespace tlsf;

namespace {

Formula f(std::string_view s) { return parse_expr(s); }

void expect_rewrite(Formula (*rw)(const Formula&), const char* in, const char* out) {
  Formula got = rw(f(in));
  EXPECT_TRUE(structural_eq(got, f(out))) << in << " gave " << print_formula(got);
}

}  // namespace

TEST(Ltl, ExpandDerived) {
  expect_rewrite(expand_derived, "G a", "!(true U !a)");
  expect_rewrite(expand_derived, "a R b", "!(!a U !b)");
  expect_rewrite(expand_derived, "a", "a");
  expect_rewrite(expand_derived, "F a", "true U a");
  expect_rewrite(expand_derived, "a && b", "!(!a || !b)");
  expect_rewrite(expand_derived, "a -> b", "!a || b");
  expect_rewrite(expand_derived, "a W b", "(a U b) || !(true U !a)");
  expect_rewrite(expand_derived, "false", "!true");
  EXPECT_TRUE(is_core(*expand_derived(f("(a <-> b) W G F false"))));
}

TEST(Ltl, Nnf) {
  expect_rewrite(to_nnf, "!(a U b)", "!a R !b");
  expect_rewrite(to_nnf, "!(X a)", "X !a");
  expect_rewrite(to_nnf, "!!a", "a");
  expect_rewrite(to_nnf, "!(a -> b)", "a && !b");
  expect_rewrite(to_nnf, "!G F a", "F G !a");
  expect_rewrite(to_nnf, "!true", "false");
  expect_rewrite(to_nnf, "!(a W b)", "!b U (!a && !b)");
  EXPECT_TRUE(is_nnf(*to_nnf(f("!((a <-> !b) W X !(c R a))"))));
  EXPECT_FALSE(is_nnf(*f("!(a && b)")));
}

TEST(Ltl, PushPull) {
  expect_rewrite(push_next, "X(a && b)", "(X a) && (X b)");
  expect_rewrite(push_next, "X(a U !b)", "(X a) U !(X b)");
  expect_rewrite(push_next, "X X (a || G b)", "X X a || G X X b");
  expect_rewrite(pull_next, "(X a) U (X b)", "X(a U b)");
  expect_rewrite(pull_next, "X X a && X X b", "X X (a && b)");
  expect_rewrite(pull_next, "X a && b", "X a && b");
  expect_rewrite(push_globally, "G(a && G b)", "(G a) && (G b)");
  expect_rewrite(push_globally, "G G (a && b)", "G a && G b");
  expect_rewrite(push_eventually, "F(a || b)", "F a || F b");
  expect_rewrite(push_eventually, "F(a || F (b || c))", "F a || (F b || F c)");
  expect_rewrite(push_eventually, "F(a && b)", "F(a && b)");
}

TEST(Ltl, RewritesPreserveSemantics) {
  tlsf::testing::FormulaGen gen({"a", "b"}, 99);
  Formula (*rewrites[])(const Formula&) = {expand_derived, to_nnf,        push_next,
                                           pull_next,      push_globally, push_eventually};
  for (const Formula& phi : gen.corpus(80, 3)) {
    for (auto rw : rewrites) {
      Formula out = rw(phi);
      auto diff = tlsf::testing::find_difference(phi, out, {"a", "b"}, 5);
      EXPECT_FALSE(diff.has_value()) << print_formula(phi) << "  =>  " << print_formula(out)
                                     << "  on " << to_string(*diff);
    }
  }
}

TEST(Ltl, RewritesReachFixpoint) {
  tlsf::testing::FormulaGen gen({"a", "b", "c"}, 5);
  Formula (*rewrites[])(const Formula&) = {expand_derived, to_nnf,        push_next,
                                           pull_next,      push_globally, push_eventually};
  for (const Formula& phi : gen.corpus(100, 3)) {
    for (auto rw : rewrites) {
      Formula once = rw(phi);
      EXPECT_TRUE(structural_eq(once, rw(once))) << print_formula(phi);
    }
  }
}
