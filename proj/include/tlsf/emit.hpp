#pragma once

#include <string>
#include <string_view>

#include "tlsf/ast.hpp"
#include "tlsf/reduce.hpp"

namespace tlsf {

/// Spellings and layout rules for flat LTL output. An empty spelling marks
/// an operator the consumer does not support; such operators are rewritten
/// away (policy RewriteAway) or rejected (policy Error).
struct LtlProfile {
  enum class Parens { Full, Minimal };
  enum class Unsupported { Error, RewriteAway };

  std::string name;
  std::string true_lit = "true";
  std::string false_lit = "false";
  std::string not_op = "!";
  std::string and_op = "&&";
  std::string or_op = "||";
  std::string implies_op = "->";
  std::string equiv_op = "<->";
  std::string next_op = "X";
  std::string finally_op = "F";
  std::string globally_op = "G";
  std::string until_op = "U";
  std::string release_op = "R";
  std::string weak_until_op = "W";
  Parens parens = Parens::Minimal;
  Unsupported policy = Unsupported::Error;

  /// Operator spellings of the format itself.
  static LtlProfile tlsf();
  /// !, &, |, ->, <->, X, F, G, U, R, W.
  static LtlProfile classic();
  /// Built-in profile by name ("tlsf" or "classic").
  static LtlProfile named(std::string_view name);

  /// Throws on empty or clashing spellings of the core operators and on
  /// unsupported operators combined with the Error policy.
  void validate() const;
};

/// Basic-format text of `b`: fully parenthesized formulas, two-space
/// indentation, one item per line, LF line endings, trailing newline.
std::string print_basic(const BasicSpec& b);

/// Fully parenthesized basic formula, e.g. `(G ((r) -> (F (g))))`.
std::string print_basic_formula(const Formula& f);

/// Flat LTL text under `profile`. In minimal mode parentheses appear only
/// where the operator table would otherwise read the text differently.
std::string print_formula(const Formula& f, const LtlProfile& profile = LtlProfile::tlsf());

/// Parses text produced by print_formula under the same profile.
Formula parse_formula(std::string_view text, const LtlProfile& profile = LtlProfile::tlsf());

/// Any full-format expression, fully parenthesized, in the format's own
/// syntax. Re-parsing the text yields a structurally equal tree.
std::string print_expr(const Expr& e);

/// `"..."` with `"` and `\` escaped.
std::string quote(std::string_view text);

}  // namespace tlsf
