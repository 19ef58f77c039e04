#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "tlsf/ast.hpp"
#include "tlsf/lexer.hpp"

namespace tlsf {

enum class Assoc { Left, Right, None };

// Operator table rows: 1 binds tightest, 19 loosest.
int precedence(BinaryOp op);
Assoc associativity(BinaryOp op);
int precedence(UnaryOp op);
int precedence(BigOpKind op);

/// Row of the loosest operator allowed in section entries. Pattern matches
/// (18) and guards (19) only occur inside function bodies.
inline constexpr int kTopRow = 17;
inline constexpr int kGuardRow = 19;

/// Full-format specification.
Spec parse_spec(const std::vector<Token>& tokens);
Spec parse_spec(std::string_view source);

/// What a standalone expression may contain.
///   Plain      an entry of a section or a case body: no '~', ':' or '_'
///   Case       a function case: `e`, `g : e` or `s ~ p : e`
///   Pattern    the right side of '~': identifiers, '_', constants, connectives
///   Unchecked  anything the operator table admits, e.g. `a : b : c`
enum class ExprMode { Plain, Case, Pattern, Unchecked };

/// One expression spanning all of `tokens`.
ExprPtr parse_expr(const std::vector<Token>& tokens, ExprMode mode = ExprMode::Plain);
ExprPtr parse_expr(std::string_view source, ExprMode mode = ExprMode::Plain);

/// Basic-format specification: no GLOBAL section, scalar signals only, and
/// every formula fully parenthesized. Anything else is rejected with a
/// "not in basic format" or "not fully parenthesized" diagnostic.
Spec parse_basic_spec(std::string_view source);

/// A single fully parenthesized basic formula, e.g. `((a) U (b))`.
Formula parse_basic_formula(std::string_view source);

}  // namespace tlsf
