#pragma once

// Syntax tree and specification types shared by every stage of the
// pipeline. Trees are immutable once built and are shared through
// `ExprPtr`; rewrites always allocate fresh nodes.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tlsf/error.hpp"

namespace tlsf {

using Nat = std::uint64_t;

struct Ident {
  std::string text;
  SourcePos pos;
};

/// Identifier charset: first char in [a-zA-Z_@], the rest in [a-zA-Z0-9_'@].
bool is_identifier_text(std::string_view text);

/// One row of the reserved word table (see README).
struct ReservedWord {
  std::string_view word;
  std::string_view role;
};

std::span<const ReservedWord> reserved_words();
bool is_reserved_word(std::string_view text);

enum class UnaryOp { Neg, Next, Globally, Finally, SetSize, SetMin, SetMax, SizeOf };

enum class BinaryOp {
  Add, Sub, Mul, Div, Mod,
  And, Or, Implies, Equiv,
  Until, Release, WeakUntil,
  Eq, Neq, Lt, Leq, Gt, Geq,
  In, Cup, Cap, SetMinus,
  PatternMatch, Guard,
};

enum class BigOpKind { Sum, Prod, Cup, Cap, And, Or };

const char* to_string(UnaryOp op);
const char* to_string(BinaryOp op);
const char* to_string(BigOpKind op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// A ground LTL formula: an `Expr` built only from boolean constants,
/// signal identifiers, boolean connectives and temporal operators.
using Formula = ExprPtr;

namespace node {

struct NatConst {
  Nat value;
};

struct BoolConst {
  bool value;
};

struct Id {
  Ident name;
};

/// `_` inside a pattern.
struct Wildcard {};

struct BusIndex {
  Ident bus;
  ExprPtr index;
};

struct Unary {
  UnaryOp op;
  ExprPtr arg;
};

struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct SetLiteral {
  std::vector<ExprPtr> elements;
};

/// `{first, second .. last}`
struct SetRange {
  ExprPtr first;
  ExprPtr second;
  ExprPtr last;
};

/// Either `name IN set` or the range form `lower (<|<=) name (<|<=) upper`.
struct Binder {
  Ident name;
  ExprPtr set;
  ExprPtr lower;
  ExprPtr upper;
  bool lower_inclusive = true;
  bool upper_inclusive = false;

  bool is_range() const { return set == nullptr; }
};

struct BigOp {
  BigOpKind op;
  std::vector<Binder> binders;
  ExprPtr body;
};

struct FnApp {
  Ident name;
  std::vector<ExprPtr> args;
};

/// `X[count] body`
struct NextN {
  ExprPtr count;
  ExprPtr body;
};

/// `F[from:to] body`
struct FinallyRange {
  ExprPtr from;
  ExprPtr to;
  ExprPtr body;
};

/// `G[from:to] body`
struct GloballyRange {
  ExprPtr from;
  ExprPtr to;
  ExprPtr body;
};

}  // namespace node

struct Expr {
  using Node = std::variant<node::NatConst, node::BoolConst, node::Id, node::Wildcard,
                            node::BusIndex, node::Unary, node::Binary, node::SetLiteral,
                            node::SetRange, node::BigOp, node::FnApp, node::NextN,
                            node::FinallyRange, node::GloballyRange>;

  Node node;
  SourcePos pos;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(node);
  }
};

ExprPtr make_expr(Expr::Node node, SourcePos pos = {});

ExprPtr make_nat(Nat value, SourcePos pos = {});
ExprPtr make_bool(bool value, SourcePos pos = {});
ExprPtr make_id(std::string name, SourcePos pos = {});
ExprPtr make_unary(UnaryOp op, ExprPtr arg, SourcePos pos = {});
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});

// Formula shorthands. Positions are taken from the first operand.
ExprPtr f_not(ExprPtr a);
ExprPtr f_next(ExprPtr a);
ExprPtr f_globally(ExprPtr a);
ExprPtr f_finally(ExprPtr a);
ExprPtr f_and(ExprPtr a, ExprPtr b);
ExprPtr f_or(ExprPtr a, ExprPtr b);
ExprPtr f_implies(ExprPtr a, ExprPtr b);
ExprPtr f_equiv(ExprPtr a, ExprPtr b);
ExprPtr f_until(ExprPtr a, ExprPtr b);
ExprPtr f_release(ExprPtr a, ExprPtr b);
ExprPtr f_weak_until(ExprPtr a, ExprPtr b);

/// Left fold with `&&`; `true` when empty.
ExprPtr conjunction(std::span<const ExprPtr> items);

/// Identifiers not bound by an enclosing big-operator binder or pattern
/// match guard within `e`. Function names in applications are free.
std::set<std::string> free_identifiers(const Expr& e);

/// Tree identity ignoring source positions.
bool structural_eq(const Expr& a, const Expr& b);
bool structural_eq(const ExprPtr& a, const ExprPtr& b);

/// Total order consistent with `structural_eq` (0 iff equal).
int structural_compare(const Expr& a, const Expr& b);

bool is_formula_unary(UnaryOp op);
bool is_formula_binary(BinaryOp op);
bool is_temporal(UnaryOp op);
bool is_temporal(BinaryOp op);

enum class Semantics { Mealy, Moore, MealyStrict, MooreStrict };
enum class Target { Mealy, Moore };

const char* to_string(Semantics s);  // "Mealy", "Moore,Strict", ...
const char* to_string(Target t);
Target model_of(Semantics s);
bool is_strict(Semantics s);
Semantics with_model(Semantics s, Target model);

struct Info {
  std::string title;
  std::string description;
  Semantics semantics = Semantics::Mealy;
  Target target = Target::Mealy;
  std::vector<std::string> tags;
};

struct SignalDecl {
  Ident name;
  ExprPtr width;  // null for a scalar signal

  bool is_bus() const { return width != nullptr; }
};

struct Parameter {
  Ident name;
  ExprPtr value;
};

enum class GuardKind { None, Expr, Otherwise };

struct Case {
  GuardKind guard_kind = GuardKind::None;
  ExprPtr guard;  // set iff guard_kind == Expr
  ExprPtr body;
};

/// `name = cases;` or `name(p1, ..., pn) = cases;`
struct Definition {
  Ident name;
  std::vector<Ident> params;
  std::vector<Case> cases;
  bool is_function = false;
};

struct Spec {
  Info info;
  std::vector<Parameter> parameters;
  std::vector<Definition> definitions;
  std::vector<SignalDecl> inputs;
  std::vector<SignalDecl> outputs;
  std::vector<ExprPtr> assumptions;
  std::vector<ExprPtr> invariants;
  std::vector<ExprPtr> guarantees;
};

}  // namespace tlsf
