#include <gtest/gtest.h>

#include <cstdlib>

#include "tlsf/emit.hpp"
#include "tlsf/eval.hpp"
#include "tlsf/parser.hpp"

using namespace tlsf;

namespace {

Spec spec_with(const std::string& defs, const std::string& params = "n = 2;") {
  return parse_spec(R"(INFO { TITLE: "t" DESCRIPTION: "d" SEMANTICS: Mealy TARGET: Mealy }
GLOBAL { PARAMETERS { )" + params + " } DEFINITIONS { " + defs + R"( } }
MAIN { INPUTS { i; b[3]; } OUTPUTS { o; } })");
}

Value run(const std::string& expr, const std::string& defs = "", EvalOptions opts = {}) {
  Spec s = spec_with(defs);
  Env env(s, {}, opts);
  return eval(*parse_expr(expr), env);
}

std::vector<Nat> nats(const Value& set) {
  std::vector<Nat> out;
  for (const auto& v : set.elements()) out.push_back(v.as_nat());
  return out;
}

std::string formula(const std::string& expr, const std::string& defs = "") {
  return print_expr(*run(expr, defs).to_formula());
}

std::string eval_error(const std::string& expr, const std::string& defs = "",
                       EvalOptions opts = {}) {
  try {
    run(expr, defs, opts);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Eval);
    return e.message();
  }
  return "";
}

}  // namespace

TEST(Eval, Ranges) {
  EXPECT_EQ(nats(eval_range(0, 2, 7)), (std::vector<Nat>{0, 2, 4, 6}));
  EXPECT_EQ(nats(eval_range(0, 1, 1)), (std::vector<Nat>{0, 1}));
  EXPECT_TRUE(eval_range(5, 6, 3).elements().empty());
  EXPECT_THROW(eval_range(3, 3, 9), Error);
  EXPECT_THROW(eval_range(4, 2, 9), Error);
  EXPECT_EQ(range_domain(0, true, 2, false), (std::vector<Nat>{0, 1}));
  EXPECT_EQ(range_domain(0, false, 2, true), (std::vector<Nat>{1, 2}));
  EXPECT_TRUE(range_domain(0, true, 0, false).empty());
  EXPECT_TRUE(range_domain(3, true, 1, true).empty());
}

TEST(Eval, Arithmetic) {
  // * binds tighter than %: 7 / 2 + (7 % (2 * 10))
  EXPECT_EQ(run("7 / 2 + 7 % 2 * 10").as_nat(), 10u);
  EXPECT_EQ(run("n * n - 1").as_nat(), 3u);
  EXPECT_NE(eval_error("1 - 2").find("below zero"), std::string::npos);
  EXPECT_NE(eval_error("1 / 0").find("division by zero"), std::string::npos);
  EXPECT_NE(eval_error("1 % 0").find("modulo by zero"), std::string::npos);
  EXPECT_NE(eval_error("18446744073709551615 + 1").find("overflow"), std::string::npos);
}

TEST(Eval, Sets) {
  EXPECT_EQ(nats(run("{3, 1, 3, 2}")), (std::vector<Nat>{1, 2, 3}));
  EXPECT_EQ(nats(run("{0, 1 .. 5} (\\) {1, 3}")), (std::vector<Nat>{0, 2, 4, 5}));
  EXPECT_EQ(nats(run("{0, 1} (+) {4}")), (std::vector<Nat>{0, 1, 4}));
  EXPECT_EQ(nats(run("{0, 1 .. 5} (*) {1, 9}")), (std::vector<Nat>{1}));
  EXPECT_EQ(run("|{0, 2 .. 10}|").as_nat(), 6u);
  EXPECT_EQ(run("MIN {4, 2, 9} + MAX {4, 2, 9}").as_nat(), 11u);
  EXPECT_TRUE(run("2 IN {0, 2 .. 4}").as_bool());
  EXPECT_EQ(run("{i, i, o}").elements().size(), 2u);
  EXPECT_NE(eval_error("MIN {}").find("empty"), std::string::npos);
}

TEST(Eval, BigOperatorIdentities) {
  EXPECT_EQ(run("+[j IN {}] j").as_nat(), 0u);
  EXPECT_EQ(run("*[j IN {}] j").as_nat(), 1u);
  EXPECT_TRUE(run("&&[j IN {}] i").as_bool());
  EXPECT_FALSE(run("||[j IN {}] i").as_bool());
  EXPECT_TRUE(run("(+)[j IN {}] {j}").elements().empty());
  EXPECT_NE(eval_error("(*)[j IN {}] {j}").find("empty"), std::string::npos);
  EXPECT_EQ(run("+[1 <= j <= 4] j").as_nat(), 10u);
  EXPECT_EQ(run("+[j IN {1, 2}, j < k <= 3] k").as_nat(), 2u + 3u + 3u);
  EXPECT_EQ(formula("&&[0 <= j < n] b[j]"), "(b@0 && b@1)");
  EXPECT_EQ(formula("||[j IN {0, 1 .. 2}] b[j]"), "((b@0 || b@1) || b@2)");
}

TEST(Eval, BooleanFolding) {
  EXPECT_TRUE(run("n == 2 && true").as_bool());
  EXPECT_EQ(formula("i && n > 5"), "(i && false)");
  EXPECT_EQ(formula("!i -> X o"), "((! i) -> (X o))");
}

TEST(Eval, BusIndexing) {
  EXPECT_EQ(formula("b[2]"), "b@2");
  EXPECT_EQ(run("SIZEOF b").as_nat(), 3u);
  EXPECT_NE(eval_error("b[3]").find("out of range"), std::string::npos);
}

TEST(Eval, Sugar) {
  EXPECT_EQ(formula("X[3] i"), "(X (X (X i)))");
  EXPECT_EQ(formula("F[2:3] i"), "(X (X (i || (X i))))");
  EXPECT_EQ(formula("G[1:3] i"), "(X (i && (X (i && (X i)))))");
  EXPECT_EQ(formula("X[0] i"), "i");
  EXPECT_NE(eval_error("F[3:2] i").find("empty range"), std::string::npos);

  Spec s = spec_with("");
  Env env(s);
  EXPECT_EQ(print_expr(*expand_sugar(parse_expr("&&[0 <= j < n] b[j]"), env)),
            "(&&[j IN {0, 1 .. 1}] b[j])");
  EXPECT_EQ(print_expr(*expand_sugar(parse_expr("&&[0 < j <= 0] b[j]"), env)),
            "(&&[j IN {}] b[j])");
  EXPECT_EQ(print_expr(*expand_sugar(parse_expr("+[k IN {1}, k <= j < 3] j"), env)),
            "(+[k IN {1}, j IN ({k, (k + 1) .. 3} (\\) {3})] j)");
}

TEST(Eval, Functions) {
  const std::string fact = "fact(x) = x == 0 : 1 otherwise : x * fact(x - 1);";
  EXPECT_EQ(run("fact(5)", fact).as_nat(), 120u);
  const std::string parity = "even(x) = x == 0 : true x == 1 : false otherwise : even(x - 2);";
  EXPECT_TRUE(run("even(10)", parity).as_bool());
  const std::string partial = "p(x) = x == 0 : true;";
  EXPECT_NE(eval_error("p(1)", partial).find("no case"), std::string::npos);
  const std::string scoped = "h(x) = &&[j IN {0, 1}] b[j + x];";
  EXPECT_EQ(formula("h(1)", scoped), "(b@1 && b@2)");
}

TEST(Eval, RecursionLimit) {
  const std::string loop = "down(x) = x == 0 : 0 otherwise : down(x - 1);";
  EvalOptions small;
  small.recursion_limit = 50;
  EXPECT_EQ(run("down(40)", loop, small).as_nat(), 0u);
  EXPECT_NE(eval_error("down(60)", loop, small).find("recursion limit of 50"), std::string::npos);
  EXPECT_EQ(default_recursion_limit(), std::getenv("TLSF_RECURSION_LIMIT") ? default_recursion_limit()
                                                                           : 10000u);
}

TEST(Eval, PatternMatching) {
  Formula subject = parse_expr("(a U b) && G a");
  auto m = match_pattern(subject, *parse_expr("(x U y) && _", ExprMode::Pattern));
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(print_expr(*m->at("x")), "a");
  EXPECT_EQ(print_expr(*m->at("y")), "b");
  EXPECT_FALSE(match_pattern(subject, *parse_expr("x || y", ExprMode::Pattern)).has_value());
  EXPECT_TRUE(match_pattern(parse_expr("a && a"), *parse_expr("x && x", ExprMode::Pattern)).has_value());
  EXPECT_FALSE(match_pattern(parse_expr("a && b"), *parse_expr("x && x", ExprMode::Pattern)).has_value());

  const std::string swap = "sw(f) = f ~ x U y : y U x; otherwise : f;";
  EXPECT_EQ(formula("sw(i U o)", swap), "(o U i)");
  EXPECT_EQ(formula("sw(G o)", swap), "(G o)");
}

TEST(Eval, Overrides) {
  Spec s = spec_with("", "n = 2;");
  Env env(s, {{"n", 7}});
  EXPECT_EQ(eval(*parse_expr("n"), env).as_nat(), 7u);
  EXPECT_THROW(Env(s, {{"m", 1}}), Error);
}

TEST(Eval, DeepRecursionOnLargeStack) {
  const std::string loop = "down(x) = x == 0 : 0 otherwise : down(x - 1);";
  Spec s = spec_with(loop);
  Value v;
  run_with_large_stack([&] {
    Env env(s);
    v = eval(*parse_expr("down(9000)"), env);
  });
  EXPECT_EQ(v.as_nat(), 0u);
}
