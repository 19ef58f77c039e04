#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tlsf/error.hpp"

namespace tlsf {

enum class Tok {
  End,
  Identifier,
  Natural,
  String,
  Wildcard,  // `_`
  // punctuation
  LBrace, RBrace, LParen, RParen, LBracket, RBracket,
  Comma, Semicolon, Colon, DotDot, Assign, Tilde, Pipe,
  // arithmetic
  Plus, Minus, Star, Slash, Percent,
  // sets
  Cup, Cap, SetMinus,
  // comparisons and membership
  Eq, Neq, Lt, Leq, Gt, Geq, In,
  // boolean / temporal
  Not, Next, Finally, Globally, And, Or, Implies, Equiv, WeakUntil, Until, Release,
  // big-operator-only spellings
  Sum, Prod, Forall, Exists,
  // named unary operators
  Size, Min, Max, SizeOf,
  // keywords
  True, False, Otherwise,
  KwInfo, KwTitle, KwDescription, KwSemantics, KwTarget, KwTags,
  KwGlobal, KwParameters, KwDefinitions,
  KwMain, KwInputs, KwOutputs, KwAssumptions, KwInvariants, KwGuarantees,
};

const char* describe(Tok kind);

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier name, digits, unescaped string body, or spelling
  SourcePos pos;

  bool is(Tok k) const { return kind == k; }
};

/// Splits TLSF source into tokens. Whitespace and comments (`//` to end of
/// line, nested `/* ... */`) are dropped. Alternative operator names map to
/// the same token kind as their symbolic spelling. The returned vector always
/// ends with a `Tok::End` token.
std::vector<Token> tokenize(std::string_view source);

}  // namespace tlsf
