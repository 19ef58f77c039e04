#include <gtest/gtest.h>

#include "oracle.hpp"
#include "tlsf/parser.hpp"
#include "tlsf/typecheck.hpp"

using namespace tlsf;

namespace {

std::string spec_with(const std::string& defs, const std::string& main_extra,
                      const std::string& params = "") {
  return R"(INFO { TITLE: "t" DESCRIPTION: "d" SEMANTICS: Mealy TARGET: Mealy }
GLOBAL { PARAMETERS { )" + params + " } DEFINITIONS { " + defs + R"( } }
MAIN { INPUTS { i; b[2]; } OUTPUTS { o; } )" + main_extra + " }";
}

std::string type_error_of(const std::string& src) {
  try {
    check_spec(parse_spec(src));
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Type) << e.what();
    return e.what();
  }
  return "";
}

Ty type_in(const std::string& expr, const std::string& defs = "") {
  TypeEnv env = check_spec(parse_spec(spec_with(defs, "")));
  env.bindings.insert_or_assign("n", Ty::nat());
  return infer(*parse_expr(expr), env);
}

}  // namespace

TEST(Typecheck, Subtyping) {
  EXPECT_TRUE(is_subtype(Ty::boolean(), Ty::ltl()));
  EXPECT_TRUE(is_subtype(Ty::signal(), Ty::ltl()));
  EXPECT_FALSE(is_subtype(Ty::ltl(), Ty::boolean()));
  EXPECT_FALSE(is_subtype(Ty::nat(), Ty::ltl()));
  EXPECT_TRUE(is_subtype(Ty::set_of(Ty::signal()), Ty::set_of(Ty::ltl())));
  EXPECT_EQ(join(Ty::boolean(), Ty::signal()), Ty::ltl());
  EXPECT_FALSE(join(Ty::nat(), Ty::ltl()).has_value());
}

TEST(Typecheck, Inference) {
  EXPECT_EQ(type_in("n + 1"), Ty::nat());
  EXPECT_EQ(type_in("n < 3 && true"), Ty::boolean());
  EXPECT_EQ(type_in("i && true"), Ty::ltl());
  EXPECT_EQ(type_in("G i"), Ty::ltl());
  EXPECT_EQ(type_in("{0, 1 .. n}"), Ty::set_of(Ty::nat()));
  EXPECT_EQ(type_in("{i, o}"), Ty::set_of(Ty::signal()));
  EXPECT_EQ(type_in("{i, true}"), Ty::set_of(Ty::ltl()));
  EXPECT_EQ(type_in("b[0]"), Ty::signal());
  EXPECT_EQ(type_in("SIZEOF b"), Ty::nat());
  EXPECT_EQ(type_in("&&[j IN {0, 1}] b[j]"), Ty::ltl());
  EXPECT_EQ(type_in("+[j IN {0, 1}] j"), Ty::nat());
  EXPECT_EQ(type_in("f(i, o)", "f(x, y) = x U y;"), Ty::ltl());
  EXPECT_EQ(type_in("h(2)", "h(x) = x == 0 : 1 otherwise : x * h(x - 1);"), Ty::nat());
}

TEST(Typecheck, ArbiterSignatures) {
  TypeEnv env = check_spec(parse_spec(tlsf::testing::read_fixture("arbiter.tlsf")));
  const FunctionSignature* mutual = env.signature("mutual");
  ASSERT_NE(mutual, nullptr);
  EXPECT_EQ(mutual->args, std::vector<Ty>{Ty::bus()});
  EXPECT_EQ(mutual->result, Ty::ltl());
  const FunctionSignature* reqres = env.signature("reqres");
  ASSERT_NE(reqres, nullptr);
  EXPECT_EQ(reqres->args, (std::vector<Ty>{Ty::signal(), Ty::signal()}));
}

TEST(Typecheck, Errors) {
  EXPECT_NE(type_error_of(spec_with("", "GUARANTEES { i + 1; }")).find("natural"),
            std::string::npos);
  EXPECT_NE(type_error_of(spec_with("", "GUARANTEES { nope; }")).find("unbound"),
            std::string::npos);
  EXPECT_NE(type_error_of(spec_with("x = y; y = x;", "GUARANTEES { x; }")).find("cyclic"),
            std::string::npos);
  EXPECT_NE(type_error_of(spec_with("i = true;", "")).find("already declared"),
            std::string::npos);
  EXPECT_NE(type_error_of(spec_with("", "GUARANTEES { b; }")).find("bus"), std::string::npos);
  EXPECT_NE(type_error_of(spec_with("", "GUARANTEES { i[0]; }")).find("indexed"),
            std::string::npos);
  EXPECT_NE(type_error_of(spec_with("f(x) = x;", "GUARANTEES { f(i, o); }")).find("expects"),
            std::string::npos);
  EXPECT_NE(type_error_of(spec_with("f(x) = x == 0 : 1 otherwise : i;", "GUARANTEES { f(1) ; }"))
                .find("different types"),
            std::string::npos);
  EXPECT_NE(type_error_of(spec_with("", "GUARANTEES { {1, i}; }")).find("heterogeneous"),
            std::string::npos);
  EXPECT_NE(type_error_of(spec_with("", "", "n = true;")).find("parameter"), std::string::npos);
  EXPECT_NE(type_error_of(spec_with("f(p) = p ~ i && _ : true;", "")).find("fresh"),
            std::string::npos);
}

TEST(Typecheck, PlainDefinitionsInAnyOrder) {
  EXPECT_NO_THROW(check_spec(parse_spec(spec_with("x = y && i; y = G o;", "GUARANTEES { x; }"))));
}
